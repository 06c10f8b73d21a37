#ifndef PSBELL_STATS_HPP
#define PSBELL_STATS_HPP

// Finite-data machinery: the variance of the test observable under a state,
// the sample-size-dependent detection criterion  mean > bound + ΔJ/√N_runs,
// the tolerance of the detection to the grid rotation angle, and the success
// probability P_s = Δθ/(π/2) mapped over the squeezed-thermal family.

#include <vector>

#include "psbell/bounds.hpp"
#include "psbell/functionals.hpp"

namespace psbell {

struct MomentPair {
    double mean = 0.0;      // ⟨Ĥ⟩
    double variance = 0.0;  // ⟨Ĥ²⟩ − ⟨Ĥ⟩²
};

// ⟨Ĥ⟩ and ⟨Ĥ²⟩ for the test operator. Gaussian states at s = 0 use the
// closed form from the displaced-parity product identity
//   K̂(a)K̂(b) = e^{2(a* b − a b*)} D̂(2(a−b)),   K̂(a)² = 1,
// with ⟨D̂(β)⟩ the Gaussian characteristic function; everything else goes
// through the Fock route.
MomentPair test_operator_moments(const AnyState& state, const PointGeometry& geometry, double s,
                                 int fock_dim = 0);

struct FiniteDataCheck {
    MomentPair moments;
    double bound = 0.0;
    double threshold = 0.0;  // bound + √(variance / runs)
    bool detected = false;   // mean > threshold
    double margin = 0.0;     // mean − threshold
};

FiniteDataCheck finite_data_check(const AnyState& state, const PointGeometry& geometry, double s,
                                  double bound, double runs);

// Best finite-data margin over the grid (origin + dimensions) at the known
// optimal rotation θ = π/4 relative to the squeezing axis — the reference
// geometry an experiment with a calibrated phase would use. `runs` may be
// infinity for the asymptotic criterion.
struct FiniteDataOptimum {
    PointGeometry geometry;
    double margin = 0.0;
    MomentPair moments;
};
FiniteDataOptimum optimal_finite_data_geometry(const GaussianState& sigma, double s, Shape shape,
                                               double runs, double bound,
                                               const OptimizerSettings& settings = {},
                                               std::uint64_t seed = 0x9e3779b97f4a7c15ull);

// Measure Δ of rotation angles θ ∈ [0, π/2) at which the finite-data
// criterion still fires, holding the grid origin and dimensions of `base`
// fixed while θ sweeps. Counts the total satisfying measure (for Gaussian
// states a single interval centered on π/4). P_s = Δ/(π/2).
struct AngleTolerance {
    double delta = 0.0;                // measure of the satisfying θ set
    double success_probability = 0.0;  // Δ / (π/2)
    int satisfied = 0;
    int resolution = 0;
};
AngleTolerance angle_tolerance(const GaussianState& sigma, double s, Shape shape, double runs,
                               double bound, const PointGeometry& base, int resolution = 512);

// P_s over a (purity μ, shape parameter κ₀) grid of squeezed thermal states:
// μ = 1/(1+2n̄), κ₀ = 2 tanh 2r. Row-major, μ outer.
struct SuccessProbabilityMap {
    std::vector<double> mu;       // purity axis
    std::vector<double> kappa0;   // s = 0 shape-parameter axis
    std::vector<double> p;        // success probabilities, mu-major
    double runs = 0.0;

    double at(int i_mu, int i_kappa) const
    {
        return p[static_cast<std::size_t>(i_mu) * kappa0.size() + static_cast<std::size_t>(i_kappa)];
    }
};
SuccessProbabilityMap success_probability_map(const std::vector<double>& mu,
                                              const std::vector<double>& kappa0, double s, Shape shape,
                                              double runs, double bound, int resolution = 512,
                                              const OptimizerSettings& settings = {},
                                              std::uint64_t seed = 0x9e3779b97f4a7c15ull, int jobs = 0);

// Smallest purity (by bisection along μ at fixed κ₀) with nonzero success
// probability — the detection frontier of the map.
double success_frontier_mu(double kappa0, double s, Shape shape, double runs, double bound,
                           double mu_lo = 0.4, double mu_hi = 0.999, int steps = 20,
                           int resolution = 512, const OptimizerSettings& settings = {},
                           std::uint64_t seed = 0x9e3779b97f4a7c15ull);

}  // namespace psbell

#endif

#ifndef PSBELL_BOUNDS_HPP
#define PSBELL_BOUNDS_HPP

// Bounds hierarchy for the test functionals:
//   classical (coherent mixtures)  <  Gaussian mixtures  <  quantum (all states).
// Gaussian ceilings come from a two-parameter reduction (aspect-free rescaled
// frame, one shape parameter k); quantum ceilings from eigenproblems of the
// test operator — a closed lattice recurrence at s = 0 and dense Fock
// diagonalization for s < 0.

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "psbell/functionals.hpp"
#include "psbell/optimize.hpp"

namespace psbell {

// --- Gaussian ceilings -----------------------------------------------------

// max over grids of Σ ± exp(−x² − y² + k·x·y); k < 2 strictly (the k → 2
// limit is degenerate). Four-point and three-point variants.
double rescaled_frame_max(double k, Shape shape, const OptimizerSettings& settings = {});

struct GaussianBound {
    double value = 0.0;      // ceiling over single Gaussian states (at the squeezing cap)
    double asymptote = 0.0;  // r → ∞ limit of the s = 0 envelope for this shape family
    double s = 0.0;
    Shape shape = Shape::Rectangle;
    double r = 0.0;        // argmax squeezing
    double kappa0 = 0.0;   // 2 tanh 2r at the argmax
    double nbar = 0.0;     // optimal thermal occupation (0: pure states win)
    PointGeometry geometry;  // argmax pattern in the lab frame
};

// Ceiling of the functional over single Gaussian states at order s, maximized
// over pure-state squeezing r ∈ (0, cap] in the θ−φ = π/4 frame (thermal noise
// only lowers the value). At s = 0 the envelope grows monotonically with r
// toward a finite asymptote — 8/3^{9/8} ≈ 2.3245 four-point, 2 three-point —
// so `value` reports the envelope at the cap and `asymptote` the limit.
GaussianBound gaussian_max(double s, Shape shape);

// Best geometry for a *given* Gaussian state: the optimum pattern is analytic
// (θ = φ + π/4, grid scaled by the rotated inverse covariance, shape parameter
// κ_s). Returns the geometry and the functional re-evaluated through the
// production path.
struct GaussianOptimum {
    TestResult result;
    double kappa = 0.0;  // effective shape parameter of the rescaled frame
};
GaussianOptimum gaussian_optimal_for_state(const GaussianState& sigma, double s, Shape shape);

// Purity thresholds: squeezed thermal states beat the classical bound iff
// μ > μ* — 8/3^{9/8}·μ* = 2 (four-point, μ* ≈ 0.8604), μ* = 1/2 (three-point).
double purity_threshold(Shape shape);

// Largest s ≤ 0 at which the optimized Gaussian functional still exceeds the
// classical bound by `epsilon`; nullopt when even s = 0 fails, −2 when the
// whole range [−2, 0] passes.
std::optional<double> critical_s(const GaussianState& sigma, Shape shape, double epsilon = 1e-6);

// --- Quantum ceilings ------------------------------------------------------

// At s = 0 the pattern points close under the displaced-parity algebra on the
// lattice γ_{n,m} = 2 d_q n + 2 i d_p m of coherent labels, giving a finite
// eigenvalue recurrence; the variational method solves the generalized
// eigenproblem H C = λ G C in the (nonorthogonal) coherent span instead, a
// rigorous lower bound that is monotone in the truncation N.
enum class LatticeMethod { Recurrence, Variational };

struct LatticeBound {
    double lambda = 0.0;                 // top eigenvalue estimate
    double lambda_min = 0.0;             // bottom of the retained spectrum
    int N = 0;                           // lattice truncation (labels |n|,|m| ≤ N)
    std::vector<double> spectrum;        // real eigenvalues, descending
    Eigen::VectorXcd top_coefficients;   // lattice coefficients of the top state
    LatticeMethod method = LatticeMethod::Recurrence;
};

// d_sq = d_q·d_p is the lattice cell parameter; d_sq = π/4 (+ multiples of
// π/2) makes the displaced parities commute pairwise on the lattice.
LatticeBound lattice_eigenbounds(double d_sq, int N, Shape shape, LatticeMethod method);

// ⟨ψ|Ĥ|ψ⟩/⟨ψ|ψ⟩ for a state given by coefficients on the same lattice —
// used to cross-check the recurrence eigenvector against the variational one.
double lattice_state_expectation(const Eigen::VectorXcd& coeffs, double d_sq, int N, Shape shape,
                                 double d_q = 0.0);

// Fock-basis quantum ceiling at any s ≤ 0: top eigenvalue of the test
// operator on the D-dimensional truncation. Monotone increasing in D.
struct FockBound {
    double lambda = 0.0;
    double lambda_min = 0.0;
    int dim = 0;
    Eigen::VectorXd spectrum_top;  // a few leading eigenvalues, descending
};
// `verify_truncation` re-solves at dim+20 and throws convergence_error when
// the top eigenvalue still moves by more than 1e-6.
FockBound fock_eigenbounds(double s, double d_q, double d_p, int dim, Shape shape,
                           bool verify_truncation = false);

// Quantum ceiling optimized over the grid dimensions (d_q, d_p) ∈ (0,6]² by
// multi-start direct search.
struct QuantumBoundPoint {
    double s = 0.0;
    double lambda = 0.0;
    double d_q = 0.0;
    double d_p = 0.0;
};
QuantumBoundPoint quantum_bound(double s, int dim, Shape shape, const OptimizerSettings& settings = {},
                                std::uint64_t seed = 0x9e3779b97f4a7c15ull);

// s-sweep of the optimized quantum ceiling with warm starts, and the crossing
// s* where it meets a target level (the classical bound: the order below which
// even quantum states cannot violate).
std::vector<QuantumBoundPoint> quantum_bound_curve(const std::vector<double>& s_values, int dim,
                                                   Shape shape, const OptimizerSettings& settings = {},
                                                   std::uint64_t seed = 0x9e3779b97f4a7c15ull);
std::optional<double> quantum_crossing(double target, double s_lo, double s_hi, int dim, Shape shape,
                                       double s_tol = 1e-3, const OptimizerSettings& settings = {},
                                       std::uint64_t seed = 0x9e3779b97f4a7c15ull);

// --- Loss robustness -------------------------------------------------------

// Best functional value attainable at transmittance η by a number
// superposition Σ_{n ≤ n_trunc} C_n |n⟩, jointly optimized over the squeezed
// geometry (x0, x1, y0, y1, θ, r_t; φ_t = 0 by phase symmetry) and the
// coefficients. The coefficient block is exact: the loss channel's adjoint is
// block-local in the number basis, so the optimum C is the top eigenvector of
// the (n_trunc+1)² block of the loss-adjoint test operator.
struct SuperpositionOptimum {
    double value = 0.0;
    PointGeometry geometry;
    Eigen::VectorXcd coefficients;  // gauge: largest-magnitude entry real positive
};
SuperpositionOptimum optimized_superposition_value(int n_trunc, double s, Shape shape, double eta,
                                                   const OptimizerSettings& settings = {},
                                                   const std::vector<PointGeometry>& warm = {},
                                                   std::uint64_t seed = 0x9e3779b97f4a7c15ull,
                                                   int jobs = 0);

// Critical transmittance: smallest η at which the jointly optimized value
// still clears the Gaussian-mixture bound by `margin` (the violation size the
// threshold is quoted at). nullopt when even η = 1 shows no violation;
// `eta_floor` when the family survives the whole bracket.
struct CriticalEtaResult {
    double eta = 1.0;
    SuperpositionOptimum at_unit_eta;  // optimum at η = 1
};
std::optional<CriticalEtaResult> critical_eta(int n_trunc, double s, Shape shape,
                                              double margin = 1e-3, double eta_floor = 0.005,
                                              int bisection_steps = 10,
                                              const OptimizerSettings& settings = {},
                                              std::uint64_t seed = 0x9e3779b97f4a7c15ull, int jobs = 0);

// Optimized squeezed-shape value of a fixed state per squeeze strength r_t
// (φ_t = 0), optimizing the pattern and rotation at each point — the
// "squeeze the test instead of the state" enhancement curve.
struct SqueezeEnhancementPoint {
    double r_t = 0.0;
    TestResult best;
};
std::vector<SqueezeEnhancementPoint> squeeze_enhancement_curve(const FockDensityMatrix& rho, double s,
                                                               Shape shape,
                                                               const std::vector<double>& r_t_values,
                                                               const OptimizerSettings& settings = {},
                                                               std::uint64_t seed = 0x9e3779b97f4a7c15ull,
                                                               int jobs = 0);

}  // namespace psbell

#endif

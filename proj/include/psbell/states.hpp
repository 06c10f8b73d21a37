#ifndef PSBELL_STATES_HPP
#define PSBELL_STATES_HPP

// Single-mode bosonic states in two representations — analytic Gaussian
// (displacement, squeezing, thermal occupation) and truncated Fock density
// matrix — plus the Gaussian channels used throughout: loss, beam-splitter
// mixing with an arbitrary ancilla, squeezing.

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "psbell/geometry.hpp"

namespace psbell {

// Displaced squeezed thermal state  σ = D̂(α) Ŝ(r,φ) σ_th(n̄) Ŝ† D̂†.
// First moments ⟨q̂⟩ = Re α, ⟨p̂⟩ = Im α; purity μ = 1/(1+2n̄).
struct GaussianState {
    cxd alpha{0.0, 0.0};
    double r = 0.0;     // squeezing strength ≥ 0
    double phi = 0.0;   // squeezing axis
    double nbar = 0.0;  // thermal mean photon number ≥ 0

    double purity() const { return 1.0 / (1.0 + 2.0 * nbar); }
};

// Covariance matrix of the quadratures (q̂,p̂):
//   Γ11 = ½(n̄+½)(cosh 2r − sinh 2r cos 2φ)
//   Γ22 = ½(n̄+½)(cosh 2r + sinh 2r cos 2φ)
//   Γ12 = −½(n̄+½) sinh 2r sin 2φ
// det Γ = (2n̄+1)²/16 ≥ 1/16 (vacuum), the symplectic purity constraint.
Eigen::Matrix2d gaussian_covariance(const GaussianState& sigma);

// Truncated density matrix in the number basis; the universal numeric
// representation for non-Gaussian and decohered states.
struct FockDensityMatrix {
    Eigen::MatrixXcd rho;

    int dim() const { return static_cast<int>(rho.rows()); }
    // Population of the top 10% of levels — the truncation health metric.
    double tail_mass() const;
    double trace_real() const { return rho.trace().real(); }
    double purity() const { return (rho * rho).trace().real(); }
};

struct LossChannel {
    double eta = 1.0;  // beam-splitter transmittance ∈ [0,1]
};

// --- Fock-space operator builders (one code path for all Gaussian unitaries:
//     exponentiate the truncated generator; closed-form oracles validate them
//     in the test suite).
Eigen::MatrixXcd ladder_lower(int dim);                              // â
Eigen::MatrixXcd displacement_operator(cxd alpha, int dim);          // exp(αâ† − α*â)
Eigen::MatrixXcd squeeze_operator(double r, double phi, int dim);    // exp[−(r/2)(e^{2iφ}â†² − e^{−2iφ}â²)]
Eigen::MatrixXcd rotation_operator(double theta, int dim);           // exp(iθ n̂)

// Gaussian → Fock conversion. Throws truncation_error when the achieved tail
// mass exceeds `hard_tail_limit`.
FockDensityMatrix to_fock(const GaussianState& sigma, int dim, double hard_tail_limit = 1e-4);

// Normalized pure superposition Σ C_n |n⟩ embedded in dimension `dim`.
FockDensityMatrix superposition_state(const std::vector<cxd>& coeffs, int dim);

// Loss channel via the Kraus family A_k = (1−η)^{k/2} η^{n̂/2} â^k/√k!,
// truncated at the k where the remaining correction is below 1e-14.
FockDensityMatrix apply_loss(const FockDensityMatrix& rho, LossChannel channel);

// Beam-splitter interaction exp[θ(â†b̂ − âb̂†)], cos θ = √η, between the state
// and an ancilla mode, ancilla traced out. With a vacuum ancilla this equals
// apply_loss. Throws spec_error when the product space exceeds `dim_cap`.
FockDensityMatrix mix_with_ancilla(const FockDensityMatrix& rho, const FockDensityMatrix& ancilla,
                                   double eta, int dim_cap = 2048);

// Convex mixture of Gaussian states Σ wᵢ σᵢ (weights renormalized); the
// evaluation routes treat it by linearity.
struct GaussianMixture {
    std::vector<std::pair<double, GaussianState>> parts;
};

// Two-mode Wigner value obtained by splitting the state with vacuum on a
// balanced beam splitter, evaluated pointwise — never materialized as a
// two-mode density matrix:
//   W_AB(α,β) = W_ρ((α+β)/√2) · W_vac((−α+β)/√2),  W_vac(γ) = (2/π) e^{−2|γ|²}.
double bw_two_mode_wigner(const GaussianState& sigma, cxd alpha, cxd beta);
double bw_two_mode_wigner(const FockDensityMatrix& rho, cxd alpha, cxd beta);

}  // namespace psbell

#endif

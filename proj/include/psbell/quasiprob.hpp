#ifndef PSBELL_QUASIPROB_HPP
#define PSBELL_QUASIPROB_HPP

// s-parametrized quasiprobability distributions evaluated through the scaled
// observable
//   π(1−s)/2 · W_s(α) = tr[ρ K̂(α;s)],   K̂ = D̂(α) T̂(s) D̂†(α),
//   T̂(s) = ((s+1)/(s−1))^{n̂},
// so every test functional is a bounded expectation value: s = 0 gives the
// displaced parity (Wigner), s = −1 the coherent projector |α⟩⟨α| (Husimi Q).

#include <Eigen/Dense>
#include <variant>

#include "psbell/geometry.hpp"
#include "psbell/states.hpp"

namespace psbell {

struct ScaledQuasiprobValue {
    double value = 0.0;    // tr[ρ K̂(α;s)]
    double wigner = 0.0;   // raw W_s(α) = 2/(π(1−s)) · value
    double s = 0.0;
    PhaseSpacePoint point;
};

// Attainable range of the scaled value over all physical states:
//   −1 ≤ s ≤ 0 : ((s+1)/(s−1), 1]      (lower end open, reached only asymptotically)
//   s < −1     : (0, 1]                 (T̂(s) is then a positive operator)
std::pair<double, double> scaled_value_range(double s);

// Kernel matrix ⟨n|K̂(α;s)|m⟩ in the truncated number basis. For n ≥ m:
//   T_{n,m} = √(m!/n!) t^m e^{−2|α|²/(1−s)} (2α/(1−s))^{n−m} L_m^{(n−m)}(4|α|²/(1−s²)),
//   t = (s+1)/(s−1),
// Hermitian completion below the diagonal. The associated-Laguerre recurrence
// runs in scaled pair arithmetic so dimensions of several hundred stay finite.
// Results are memoized keyed by the exact bit patterns of (Re α, Im α, s, dim).
Eigen::MatrixXcd kernel_matrix(cxd alpha, double s, int dim);
void clear_kernel_cache();
std::size_t kernel_cache_size();

// Closed-form Gaussian route:  tr[σ K̂(α;s)] = f_s exp[−½ δᵀ Γ_s⁻¹ δ],
// Γ_s = Γ − (s/4)I, f_s = (1−s)/(4√det Γ_s), δ = (q−q̄, p−p̄).
ScaledQuasiprobValue eval_gaussian(const GaussianState& sigma, PhaseSpacePoint at, double s);

// Numeric route for arbitrary truncated states: tr[ρ K̂(α;s)].
ScaledQuasiprobValue eval_fock(const FockDensityMatrix& rho, PhaseSpacePoint at, double s);

// Exact Wigner route for the lossy even cat (|γ⟩+|−γ⟩)/norm after
// transmittance η — the analytic cross-check for the Kraus loss channel:
//   scaled(q,p) = (1+e^{−2γ²})⁻¹ e^{−2q²−2p²} ·
//                 [ e^{−2ηγ²} cosh(4√η γ q) + e^{−2(1−η)γ²} cos(4√η γ p) ] · 2 / (norm…)
// (full prefactor in the implementation).
ScaledQuasiprobValue eval_lossy_cat(double gamma, double eta, PhaseSpacePoint at);

// One state type for the evaluation router and the CLI. Route selection is by
// representation — Gaussian states and mixtures use the closed form, Fock
// matrices the kernel route — with no silent switching between them.
using AnyState = std::variant<GaussianState, GaussianMixture, FockDensityMatrix>;

ScaledQuasiprobValue scaled_at(const AnyState& state, PhaseSpacePoint at, double s);

}  // namespace psbell

#endif

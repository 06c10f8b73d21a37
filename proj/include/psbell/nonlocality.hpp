#ifndef PSBELL_NONLOCALITY_HPP
#define PSBELL_NONLOCALITY_HPP

// Bridge from the single-mode four-point test to a two-mode Bell inequality:
// splitting the state with vacuum on a balanced beam splitter turns the
// squeeze-mapped rectangle corners S_ij into displaced-parity settings for a
// CHSH-type combination B, with
//   N  = w00 + w10 + w01 − w11            (single-mode, squeeze-mapped corners)
//   B  = (w00 − w11) e^{−|D_b|²/2} + (w10 + w01) e^{−|D_a|²/2}
//   P  = N − 2 exp(+½ max(|D_a|,|D_b|)²)   (violation certificate: P > 0 ⇒ B > 2)
// where D_a = S11 − S00, D_b = S10 − S01 and the corners satisfy the
// parallelogram identity S00 + S11 = S10 + S01.

#include <array>
#include <cstdint>
#include <vector>

#include "psbell/functionals.hpp"
#include "psbell/optimize.hpp"

namespace psbell {

struct BridgeResult {
    double P = 0.0;   // certificate
    double B = 0.0;   // two-mode Bell combination
    double N = 0.0;   // single-mode four-point value at the mapped corners
    PointGeometry geometry;           // parallelogram (squeeze map included)
    std::array<cxd, 4> corners{};     // S00, S10, S01, S11 (lab frame, mapped)
    cxd D_a{0.0, 0.0};
    cxd D_b{0.0, 0.0};
    double vertex_identity_err = 0.0;  // |S00 + S11 − S10 − S01|
    bool positivity_ok = true;         // N > 2 ⇒ both Bell brackets positive
    bool chain_ok = true;              // N > 2 ⇒ B ≥ N e^{−½max²} − 1e-9
    double chain_slack = 0.0;          // B − N e^{−½ max(|D_a|,|D_b|)²}
};

// Evaluate the bridge at one parallelogram geometry (plain four-point values
// taken through the production evaluation path; B additionally cross-checked
// against the literal two-mode Wigner combination inside the test suite).
BridgeResult bridge_point(const AnyState& state, const PointGeometry& geometry);

// The two headline scalars by themselves: the two-mode Bell combination at
// the mapped settings, and the single-mode certificate margin.
double bw_test(const AnyState& state, const PointGeometry& geometry);     // = bridge_point(...).B
double cst_margin(const AnyState& state, const PointGeometry& geometry);  // = bridge_point(...).P

// B recomputed literally from the two-mode Wigner products at the mapped
// settings (α_i, β_j) — the identity partner of the closed single-mode form.
double bw_test_two_mode(const AnyState& state, const PointGeometry& geometry);

// Maximize P over the 7 geometry parameters (x0, x1, y0, y1, θ, r_t, φ_t).
BridgeResult optimize_bridge(const AnyState& state, const OptimizerSettings& settings = {},
                             std::uint64_t seed = 0x9e3779b97f4a7c15ull, int jobs = 0,
                             double squeeze_cap = 1.4);

// Parameter sweeps of the optimized certificate along the two benchmark
// families (pure squeezed vacuum in r; the f|0⟩⟨0| + (1−f)|2⟩⟨2| mixture).
enum class BridgeFamily { SqueezedVacuum, VacuumTwoPhotonMix };

struct BridgeSweepPoint {
    double parameter = 0.0;
    BridgeResult best;
};
std::vector<BridgeSweepPoint> bridge_sweep(BridgeFamily family, const std::vector<double>& parameters,
                                           const OptimizerSettings& settings = {},
                                           std::uint64_t seed = 0x9e3779b97f4a7c15ull, int jobs = 0);

}  // namespace psbell

#endif

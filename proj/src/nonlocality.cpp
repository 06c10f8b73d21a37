#include "psbell/nonlocality.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "psbell/errors.hpp"
#include "psbell/quasiprob.hpp"

namespace psbell {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kChainTol = 1e-9;

std::array<cxd, 4> mapped_corners(const PointGeometry& geometry)
{
    auto pts = geometry_points(geometry);  // (0,0), (1,0), (0,1), (1,1)
    return {to_complex(pts[0].pt), to_complex(pts[1].pt), to_complex(pts[2].pt),
            to_complex(pts[3].pt)};
}

double two_mode_wigner_value(const AnyState& state, cxd alpha, cxd beta)
{
    if (const auto* g = std::get_if<GaussianState>(&state)) return bw_two_mode_wigner(*g, alpha, beta);
    if (const auto* f = std::get_if<FockDensityMatrix>(&state))
        return bw_two_mode_wigner(*f, alpha, beta);
    const auto& mix = std::get<GaussianMixture>(state);
    if (mix.parts.empty()) throw spec_error("Gaussian mixture has no components");
    double acc = 0.0, wsum = 0.0;
    for (const auto& [w, comp] : mix.parts) {
        if (!(w >= 0.0)) throw spec_error("mixture weights must be >= 0");
        acc += w * bw_two_mode_wigner(comp, alpha, beta);
        wsum += w;
    }
    if (!(wsum > 0.0)) throw spec_error("mixture weights sum to zero");
    return acc / wsum;
}

}  // namespace

BridgeResult bridge_point(const AnyState& state, const PointGeometry& geometry)
{
    if (geometry.shape != Shape::Parallelogram)
        throw spec_error("the Bell bridge is defined on parallelogram (squeeze-mapped rectangle) geometries");

    BridgeResult out;
    out.geometry = geometry;
    out.corners = mapped_corners(geometry);
    const cxd s00 = out.corners[0], s10 = out.corners[1], s01 = out.corners[2], s11 = out.corners[3];

    double w00 = scaled_at(state, to_point(s00), 0.0).value;
    double w10 = scaled_at(state, to_point(s10), 0.0).value;
    double w01 = scaled_at(state, to_point(s01), 0.0).value;
    double w11 = scaled_at(state, to_point(s11), 0.0).value;

    out.N = w00 + w10 + w01 - w11;
    out.D_a = s11 - s00;
    out.D_b = s10 - s01;
    out.vertex_identity_err = std::abs(s00 + s11 - s10 - s01);

    double fa = std::exp(-0.5 * std::norm(out.D_a));
    double fb = std::exp(-0.5 * std::norm(out.D_b));
    out.B = (w00 - w11) * fb + (w10 + w01) * fa;

    double max_sq = std::max(std::norm(out.D_a), std::norm(out.D_b));
    out.P = out.N - 2.0 * std::exp(0.5 * max_sq);
    out.chain_slack = out.B - out.N * std::exp(-0.5 * max_sq);
    // the chain B ≥ N e^{−½max²} (hence B > 2 whenever P > 0) only holds in the
    // violation regime N > 2; outside it the slack may legitimately go negative
    out.chain_ok = out.N > 2.0 ? out.chain_slack >= -kChainTol : true;
    out.positivity_ok = out.N > 2.0 ? (w00 - w11 > 0.0 && w10 + w01 > 0.0) : true;
    return out;
}

double bw_test(const AnyState& state, const PointGeometry& geometry)
{
    return bridge_point(state, geometry).B;
}

double cst_margin(const AnyState& state, const PointGeometry& geometry)
{
    return bridge_point(state, geometry).P;
}

double bw_test_two_mode(const AnyState& state, const PointGeometry& geometry)
{
    if (geometry.shape != Shape::Parallelogram)
        throw spec_error("the Bell bridge is defined on parallelogram (squeeze-mapped rectangle) geometries");
    auto c = mapped_corners(geometry);
    const cxd s00 = c[0], s10 = c[1], s01 = c[2], s11 = c[3];
    const double rt2 = std::sqrt(2.0);

    // displaced-parity settings on the two beam-splitter output modes
    cxd a0 = (2.0 * s00 - s10 + s01) / (2.0 * rt2);
    cxd a1 = (2.0 * s11 + s10 - s01) / (2.0 * rt2);
    cxd b0 = (2.0 * s00 + s10 - s01) / (2.0 * rt2);
    cxd b1 = (2.0 * s11 - s10 + s01) / (2.0 * rt2);

    double w_ab = two_mode_wigner_value(state, a0, b0) + two_mode_wigner_value(state, a1, b0) +
                  two_mode_wigner_value(state, a0, b1) - two_mode_wigner_value(state, a1, b1);
    return kPi * kPi / 4.0 * w_ab;
}

namespace {

BridgeResult optimize_bridge_impl(const AnyState& state, const OptimizerSettings& settings,
                                  std::uint64_t seed, int jobs, double squeeze_cap,
                                  const std::vector<std::vector<double>>& warm,
                                  std::vector<double>* best_params)
{
    auto build = [](const std::vector<double>& v) {
        return make_parallelogram(v[0], v[2], v[1], v[3], v[4], SqueezeMap{v[5], v[6]});
    };

    OptimizationProblem problem;
    problem.objective = [&state, squeeze_cap, &build](const std::vector<double>& v) {
        if (v[5] < 0.0 || v[5] > squeeze_cap) return -1e9;
        for (int i = 0; i < 4; ++i)
            if (std::abs(v[i]) > 6.0) return -1e9;
        return bridge_point(state, build(v)).P;
    };
    problem.sample_start = [squeeze_cap](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> grid(-1.5, 1.5), angle(0.0, kPi),
            str(0.0, std::min(1.2, squeeze_cap));
        return std::vector<double>{grid(rng), grid(rng), grid(rng), grid(rng),
                                   angle(rng), str(rng),  angle(rng)};
    };
    problem.warm_starts = warm;
    problem.settings = settings;
    problem.seed = seed;
    problem.jobs = jobs;

    NelderMeadResult best = maximize(problem);
    if (best_params) *best_params = best.x;
    return bridge_point(state, build(best.x));
}

}  // namespace

BridgeResult optimize_bridge(const AnyState& state, const OptimizerSettings& settings,
                             std::uint64_t seed, int jobs, double squeeze_cap)
{
    if (!(squeeze_cap > 0.0)) throw spec_error("squeeze_cap must be positive");
    return optimize_bridge_impl(state, settings, seed, jobs, squeeze_cap, {}, nullptr);
}

std::vector<BridgeSweepPoint> bridge_sweep(BridgeFamily family, const std::vector<double>& parameters,
                                           const OptimizerSettings& settings, std::uint64_t seed,
                                           int jobs)
{
    std::vector<BridgeSweepPoint> sweep;
    sweep.reserve(parameters.size());
    std::vector<std::vector<double>> warm;

    for (std::size_t idx = 0; idx < parameters.size(); ++idx) {
        double p = parameters[idx];
        AnyState state;
        if (family == BridgeFamily::SqueezedVacuum) {
            if (!(p >= 0.0)) throw spec_error("squeezed-vacuum sweep needs r >= 0");
            state = GaussianState{cxd(0.0, 0.0), p, 0.0, 0.0};
        } else {
            if (!(p >= 0.0) || p > 1.0) throw spec_error("mixture sweep needs f in [0, 1]");
            FockDensityMatrix rho;
            rho.rho = Eigen::MatrixXcd::Zero(3, 3);  // support on n <= 2: dim 3 is exact
            rho.rho(0, 0) = p;
            rho.rho(2, 2) = 1.0 - p;
            state = std::move(rho);
        }

        std::vector<double> best_params;
        BridgeResult best = optimize_bridge_impl(state, settings, stream_seed(seed, idx), jobs, 1.4,
                                                 warm, &best_params);
        warm = {best_params};  // continue the optimum along the family
        sweep.push_back({p, best});
    }
    return sweep;
}

}  // namespace psbell

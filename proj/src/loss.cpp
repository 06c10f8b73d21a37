// Loss robustness of the test functionals: jointly optimized number
// superpositions under a transmittance-η loss channel, critical transmittance
// by bisection, and squeezed-geometry enhancement curves for fixed states.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <utility>

#include "psbell/bounds.hpp"
#include "psbell/errors.hpp"
#include "psbell/quasiprob.hpp"

namespace psbell {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kFourPointGaussianBound = 8.0 / std::pow(3.0, 9.0 / 8.0);

double sqrt_binom(int n, int k)
{
    return std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

// Adjoint of the loss channel on a number-basis block:
//   L†(H)_{n,m} = Σ_{k ≤ min(n,m)} √(C(n,k) C(m,k)) (1−η)^k η^{(n+m)/2 − k} H_{n−k,m−k}.
// Exact on the block — the adjoint never couples upward in photon number.
Eigen::MatrixXcd loss_adjoint_block(const Eigen::MatrixXcd& h, double eta)
{
    int dim = static_cast<int>(h.rows());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m) {
            cxd acc(0.0, 0.0);
            for (int k = 0; k <= std::min(n, m); ++k)
                acc += sqrt_binom(n, k) * sqrt_binom(m, k) * std::pow(1.0 - eta, k) *
                       std::pow(eta, 0.5 * (n + m) - k) * h(n - k, m - k);
            out(n, m) = acc;
        }
    return out;
}

// Parameter vector (x0, x1, y0, y1, θ, r_t); negative r_t encodes a squeeze
// along the conjugate axis (φ_t = π/2), which the direct search is free to use.
PointGeometry geometry_from_params(const std::vector<double>& v, Shape shape)
{
    SqueezeMap sq;
    sq.r_t = std::abs(v[5]);
    sq.phi_t = v[5] < 0.0 ? kPi / 2.0 : 0.0;
    return shape == Shape::Parallelogram
               ? make_parallelogram(v[0], v[2], v[1], v[3], v[4], sq)
               : make_sheared_triangle(v[0], v[2], v[1], v[3], v[4], sq);
}

struct BlockEig {
    double lambda = 0.0;
    Eigen::VectorXcd vec;
};

// Top eigenpair of the loss-adjoint test-operator block for one geometry.
BlockEig superposition_block_eig(const std::vector<double>& v, Shape shape, double s, int dim,
                                 double eta, bool want_vector)
{
    PointGeometry g = geometry_from_params(v, shape);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& lp : geometry_points(g))
        h += static_cast<double>(lp.sign) * kernel_matrix(to_complex(lp.pt), s, dim);
    if (eta < 1.0) h = loss_adjoint_block(h, eta);
    h = 0.5 * (h + h.adjoint().eval());

    BlockEig out;
    if (dim == 1) {
        out.lambda = h(0, 0).real();
        if (want_vector) out.vec = Eigen::VectorXcd::Ones(1);
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        h, want_vector ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    out.lambda = solver.eigenvalues()(dim - 1);
    if (want_vector) out.vec = solver.eigenvectors().col(dim - 1);
    return out;
}

std::vector<double> params_from_geometry(const PointGeometry& g)
{
    double rt = 0.0;
    if (g.squeeze) {
        rt = g.squeeze->r_t;
        if (std::abs(std::remainder(g.squeeze->phi_t, kPi) - kPi / 2.0) < 1e-6 ||
            std::abs(std::remainder(g.squeeze->phi_t, kPi) + kPi / 2.0) < 1e-6)
            rt = -rt;
    }
    return {g.x0, g.x1, g.y0, g.y1, g.theta, rt};
}

}  // namespace

SuperpositionOptimum optimized_superposition_value(int n_trunc, double s, Shape shape, double eta,
                                                   const OptimizerSettings& settings,
                                                   const std::vector<PointGeometry>& warm,
                                                   std::uint64_t seed, int jobs)
{
    require_order_parameter(s);
    if (!squeezed_shape(shape))
        throw spec_error("superposition optimization runs over the squeezed-geometry shapes");
    if (n_trunc < 0) throw spec_error("n_trunc must be >= 0");
    if (!(eta > 0.0) || eta > 1.0) throw spec_error("transmittance eta must lie in (0, 1]");
    int dim = n_trunc + 1;

    OptimizationProblem problem;
    problem.objective = [shape, s, dim, eta](const std::vector<double>& v) {
        if (std::abs(v[5]) > 3.0) return -9.0;
        for (int i = 0; i < 4; ++i)
            if (std::abs(v[i]) > 6.0) return -9.0;
        return superposition_block_eig(v, shape, s, dim, eta, false).lambda;
    };
    problem.sample_start = [](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> grid(-1.5, 1.5), angle(0.0, kPi), str(0.0, 2.0);
        return std::vector<double>{grid(rng), grid(rng), grid(rng), grid(rng), angle(rng), str(rng)};
    };
    {
        auto rng = seeded_rng(seed ^ 0x5eedc0ffeeull, 0);
        std::normal_distribution<double> jitter(0.0, 0.05);
        for (const auto& g : warm) {
            std::vector<double> base = params_from_geometry(g);
            problem.warm_starts.push_back(base);
            for (int j = 0; j < 5; ++j) {
                auto w = base;
                for (auto& c : w) c += jitter(rng);
                problem.warm_starts.push_back(w);
            }
        }
    }
    problem.settings = settings;
    problem.settings.nm.xatol = 1e-9;
    problem.settings.nm.fatol = 1e-12;
    problem.settings.nm.max_evals = 6000;
    problem.seed = seed;
    problem.jobs = jobs;

    NelderMeadResult best = maximize(problem);

    SuperpositionOptimum out;
    out.value = best.f;
    out.geometry = geometry_from_params(best.x, shape);
    BlockEig eig = superposition_block_eig(best.x, shape, s, dim, eta, true);
    out.coefficients = eig.vec;
    int lead = 0;
    for (int i = 1; i < dim; ++i)
        if (std::abs(out.coefficients(i)) > std::abs(out.coefficients(lead))) lead = i;
    cxd phase = out.coefficients(lead) / std::abs(out.coefficients(lead));
    out.coefficients /= phase;
    return out;
}

std::optional<CriticalEtaResult> critical_eta(int n_trunc, double s, Shape shape, double margin,
                                              double eta_floor, int bisection_steps,
                                              const OptimizerSettings& settings, std::uint64_t seed,
                                              int jobs)
{
    if (!(eta_floor > 0.0) || eta_floor >= 1.0) throw spec_error("eta_floor must lie in (0, 1)");
    double bound = three_point_shape(shape) ? 2.0 : kFourPointGaussianBound;

    OptimizerSettings wide = settings;
    wide.starts = std::max(2 * settings.starts, settings.starts + 8);
    SuperpositionOptimum at_unit =
        optimized_superposition_value(n_trunc, s, shape, 1.0, wide, {}, seed, jobs);
    if (!(at_unit.value > bound + margin)) return std::nullopt;

    double lo = eta_floor, hi = 1.0;
    std::vector<PointGeometry> warm = {at_unit.geometry};

    SuperpositionOptimum at_floor = optimized_superposition_value(
        n_trunc, s, shape, eta_floor, settings, warm, stream_seed(seed, 1), jobs);
    if (at_floor.value > bound + margin) return CriticalEtaResult{eta_floor, at_unit};

    for (int i = 0; i < bisection_steps; ++i) {
        double mid = 0.5 * (lo + hi);
        SuperpositionOptimum at_mid = optimized_superposition_value(
            n_trunc, s, shape, mid, settings, warm, stream_seed(seed, 2 + i), jobs);
        if (at_mid.value > bound + margin) {
            hi = mid;
            warm = {at_mid.geometry};  // carry the surviving optimum downward
        } else {
            lo = mid;
        }
    }
    return CriticalEtaResult{0.5 * (lo + hi), at_unit};
}

std::vector<SqueezeEnhancementPoint> squeeze_enhancement_curve(
    const FockDensityMatrix& rho, double s, Shape shape, const std::vector<double>& r_t_values,
    const OptimizerSettings& settings, std::uint64_t seed, int jobs)
{
    require_order_parameter(s);
    if (!squeezed_shape(shape))
        throw spec_error("squeeze enhancement runs over the squeezed-geometry shapes");

    std::vector<SqueezeEnhancementPoint> curve;
    curve.reserve(r_t_values.size());
    std::vector<std::vector<double>> warm;
    AnyState state{rho};

    for (std::size_t idx = 0; idx < r_t_values.size(); ++idx) {
        double r_t = r_t_values[idx];
        if (!(r_t >= 0.0)) throw spec_error("r_t values must be >= 0");
        auto build = [shape, r_t](const std::vector<double>& v) {
            SqueezeMap sq{r_t, 0.0};
            return shape == Shape::Parallelogram
                       ? make_parallelogram(v[0], v[2], v[1], v[3], v[4], sq)
                       : make_sheared_triangle(v[0], v[2], v[1], v[3], v[4], sq);
        };

        OptimizationProblem problem;
        problem.objective = [&state, s, build](const std::vector<double>& v) {
            for (int i = 0; i < 4; ++i)
                if (std::abs(v[i]) > 6.0) return -9.0;
            return evaluate_test(state, build(v), s).value;
        };
        problem.sample_start = [](std::mt19937_64& rng) {
            std::uniform_real_distribution<double> grid(-1.5, 1.5), angle(0.0, kPi);
            return std::vector<double>{grid(rng), grid(rng), grid(rng), grid(rng), angle(rng)};
        };
        problem.warm_starts = warm;
        problem.settings = settings;
        problem.seed = stream_seed(seed, static_cast<std::uint64_t>(idx));
        problem.jobs = jobs;

        NelderMeadResult best = maximize(problem);
        curve.push_back({r_t, evaluate_test(state, build(best.x), s)});
        warm = {best.x};  // continue the pattern along the strength sweep
    }
    return curve;
}

}  // namespace psbell

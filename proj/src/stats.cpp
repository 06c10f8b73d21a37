#include "psbell/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

#include "psbell/errors.hpp"
#include "psbell/parallel.hpp"
#include "psbell/quasiprob.hpp"

namespace psbell {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ⟨K̂(a)K̂(b)⟩ for a Gaussian state at s = 0 via the product identity
//   K̂(a)K̂(b) = e^{2(a* b − a b*)} D̂(2(a−b))
// and the Gaussian characteristic function
//   ⟨D̂(β)⟩ = exp(β ᾱ* − β* ᾱ) · exp(−½ wᵀ Γ w),  w = (2 Im β, −2 Re β).
cxd parity_product_mean(const GaussianState& sigma, cxd a, cxd b)
{
    cxd phase = std::exp(2.0 * (std::conj(a) * b - a * std::conj(b)));
    cxd beta = 2.0 * (a - b);
    cxd mean_phase = std::exp(beta * std::conj(sigma.alpha) - std::conj(beta) * sigma.alpha);
    double u = 2.0 * beta.imag(), v = -2.0 * beta.real();
    Eigen::Matrix2d gamma = gaussian_covariance(sigma);
    double quad = gamma(0, 0) * u * u + 2.0 * gamma(0, 1) * u * v + gamma(1, 1) * v * v;
    return phase * mean_phase * std::exp(-0.5 * quad);
}

struct RawMoments {
    double first = 0.0;   // ⟨Ĥ⟩
    double second = 0.0;  // ⟨Ĥ²⟩
};

RawMoments gaussian_raw_moments_s0(const GaussianState& sigma, const std::vector<LabeledPoint>& pts)
{
    RawMoments out;
    for (const auto& pi : pts) {
        out.first += pi.sign * eval_gaussian(sigma, pi.pt, 0.0).value;
        for (const auto& pj : pts) {
            if (&pi == &pj)
                out.second += 1.0;  // K̂² = 1
            else
                out.second += pi.sign * pj.sign *
                              parity_product_mean(sigma, to_complex(pi.pt), to_complex(pj.pt)).real();
        }
    }
    return out;
}

MomentPair gaussian_moments_s0(const GaussianState& sigma, const std::vector<LabeledPoint>& pts)
{
    RawMoments rm = gaussian_raw_moments_s0(sigma, pts);
    MomentPair out;
    out.mean = rm.first;
    out.variance = std::max(rm.second - rm.first * rm.first, 0.0);
    return out;
}

MomentPair fock_route_moments(const Eigen::MatrixXcd& rho, const PointGeometry& geometry, double s)
{
    int dim = static_cast<int>(rho.rows());
    Eigen::MatrixXcd h = test_operator(geometry, s, dim);
    h = 0.5 * (h + h.adjoint().eval());
    MomentPair out;
    out.mean = rho.transpose().cwiseProduct(h).sum().real();
    Eigen::MatrixXcd rho_h = rho * h;
    double second = rho_h.cwiseProduct(h.transpose()).sum().real();  // tr(ρ Ĥ Ĥ)
    out.variance = std::max(second - out.mean * out.mean, 0.0);
    return out;
}

GaussianState squeezed_thermal_from(double mu, double kappa0)
{
    if (!(mu > 0.0) || mu > 1.0) throw spec_error("purity mu must lie in (0, 1]");
    if (!(kappa0 >= 0.0) || kappa0 >= 2.0) throw spec_error("kappa0 must lie in [0, 2)");
    GaussianState sigma;
    sigma.alpha = cxd(0.0, 0.0);
    sigma.r = 0.5 * std::atanh(0.5 * kappa0);
    sigma.phi = 0.0;
    sigma.nbar = 0.5 * (1.0 / mu - 1.0);
    return sigma;
}

}  // namespace

MomentPair test_operator_moments(const AnyState& state, const PointGeometry& geometry, double s,
                                 int fock_dim)
{
    require_order_parameter(s);
    auto pts = geometry_points(geometry);

    // closed form for Gaussian families at s = 0 (fock_dim > 0 forces the Fock
    // route, which tests use to cross-validate the identity)
    if (s == 0.0 && fock_dim == 0) {
        if (const auto* g = std::get_if<GaussianState>(&state)) return gaussian_moments_s0(*g, pts);
        if (const auto* mix = std::get_if<GaussianMixture>(&state)) {
            if (mix->parts.empty()) throw spec_error("Gaussian mixture has no components");
            double wsum = 0.0;
            RawMoments acc;
            for (const auto& [w, comp] : mix->parts) {
                if (!(w >= 0.0)) throw spec_error("mixture weights must be >= 0");
                RawMoments rm = gaussian_raw_moments_s0(comp, pts);
                acc.first += w * rm.first;
                acc.second += w * rm.second;
                wsum += w;
            }
            if (!(wsum > 0.0)) throw spec_error("mixture weights sum to zero");
            MomentPair out;
            out.mean = acc.first / wsum;
            out.variance = std::max(acc.second / wsum - out.mean * out.mean, 0.0);
            return out;
        }
    }

    if (const auto* f = std::get_if<FockDensityMatrix>(&state)) {
        int dim = std::max(fock_dim, f->dim());
        if (dim == f->dim()) return fock_route_moments(f->rho, geometry, s);
        Eigen::MatrixXcd padded = Eigen::MatrixXcd::Zero(dim, dim);
        padded.topLeftCorner(f->dim(), f->dim()) = f->rho;
        return fock_route_moments(padded, geometry, s);
    }

    int dim = fock_dim > 0 ? fock_dim : 100;
    if (const auto* g = std::get_if<GaussianState>(&state))
        return fock_route_moments(to_fock(*g, dim).rho, geometry, s);

    const auto& mix = std::get<GaussianMixture>(state);
    if (mix.parts.empty()) throw spec_error("Gaussian mixture has no components");
    double wsum = 0.0;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [w, comp] : mix.parts) {
        if (!(w >= 0.0)) throw spec_error("mixture weights must be >= 0");
        rho += w * to_fock(comp, dim).rho;
        wsum += w;
    }
    if (!(wsum > 0.0)) throw spec_error("mixture weights sum to zero");
    return fock_route_moments(rho / wsum, geometry, s);
}

FiniteDataCheck finite_data_check(const AnyState& state, const PointGeometry& geometry, double s,
                                  double bound, double runs)
{
    if (!(runs > 0.0)) throw spec_error("number of runs must be positive (may be infinite)");
    FiniteDataCheck out;
    out.moments = test_operator_moments(state, geometry, s);
    out.bound = bound;
    double penalty = std::isinf(runs) ? 0.0 : std::sqrt(out.moments.variance / runs);
    out.threshold = bound + penalty;
    out.margin = out.moments.mean - out.threshold;
    out.detected = out.margin > 0.0;
    return out;
}

FiniteDataOptimum optimal_finite_data_geometry(const GaussianState& sigma, double s, Shape shape,
                                               double runs, double bound,
                                               const OptimizerSettings& settings, std::uint64_t seed)
{
    if (squeezed_shape(shape))
        throw spec_error("finite-data geometry search covers the plain rectangle/triangle shapes");
    if (!(runs > 0.0)) throw spec_error("number of runs must be positive (may be infinite)");
    bool three = three_point_shape(shape);
    double theta = sigma.phi + kPi / 4.0;  // optimal rotation for the squeezed family
    AnyState state{sigma};

    auto build = [three, theta](const std::vector<double>& v) {
        return three ? make_right_triangle(v[0], v[2], v[1], v[3], theta)
                     : make_rectangle(v[0], v[2], v[1], v[3], theta);
    };

    OptimizationProblem problem;
    problem.objective = [&state, s, bound, runs, &build](const std::vector<double>& v) {
        for (int i = 0; i < 4; ++i)
            if (std::abs(v[i]) > 6.0) return -1e9;
        return finite_data_check(state, build(v), s, bound, runs).margin;
    };
    problem.sample_start = [](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(-1.2, 1.2);
        return std::vector<double>{u(rng), u(rng), u(rng), u(rng)};
    };
    problem.settings = settings;
    problem.settings.nm.xatol = 1e-10;
    problem.settings.nm.fatol = 1e-13;
    problem.settings.nm.max_evals = 8000;
    problem.seed = seed;
    problem.jobs = 1;  // cells of the success map parallelize one level up

    NelderMeadResult best = maximize(problem);

    FiniteDataOptimum out;
    out.geometry = build(best.x);
    FiniteDataCheck check = finite_data_check(state, out.geometry, s, bound, runs);
    out.margin = check.margin;
    out.moments = check.moments;
    return out;
}

AngleTolerance angle_tolerance(const GaussianState& sigma, double s, Shape shape, double runs,
                               double bound, const PointGeometry& base, int resolution)
{
    if (resolution < 2) throw spec_error("angle resolution must be >= 2");
    if (base.shape != shape) throw spec_error("base geometry shape does not match the requested shape");
    AnyState state{sigma};

    AngleTolerance out;
    out.resolution = resolution;
    for (int k = 0; k < resolution; ++k) {
        PointGeometry g = base;  // grid coordinates stay fixed; only θ sweeps
        g.theta = normalize_theta(static_cast<double>(k) * (kPi / 2.0) / resolution);
        if (finite_data_check(state, g, s, bound, runs).detected) ++out.satisfied;
    }
    out.delta = static_cast<double>(out.satisfied) * (kPi / 2.0) / resolution;
    out.success_probability = static_cast<double>(out.satisfied) / resolution;
    return out;
}

SuccessProbabilityMap success_probability_map(const std::vector<double>& mu,
                                              const std::vector<double>& kappa0, double s, Shape shape,
                                              double runs, double bound, int resolution,
                                              const OptimizerSettings& settings, std::uint64_t seed,
                                              int jobs)
{
    if (mu.empty() || kappa0.empty()) throw spec_error("success map axes must be non-empty");
    SuccessProbabilityMap map;
    map.mu = mu;
    map.kappa0 = kappa0;
    map.runs = runs;
    map.p.assign(mu.size() * kappa0.size(), 0.0);

    std::size_t n_cells = map.p.size();
    parallel_for(n_cells, jobs, [&](std::size_t cell) {
        std::size_t i = cell / kappa0.size(), j = cell % kappa0.size();
        GaussianState sigma = squeezed_thermal_from(mu[i], kappa0[j]);
        FiniteDataOptimum opt = optimal_finite_data_geometry(sigma, s, shape, runs, bound, settings,
                                                             stream_seed(seed, cell));
        if (!(opt.margin > 0.0)) return;  // no detection even at the optimal angle
        map.p[cell] =
            angle_tolerance(sigma, s, shape, runs, bound, opt.geometry, resolution).success_probability;
    });
    return map;
}

double success_frontier_mu(double kappa0, double s, Shape shape, double runs, double bound,
                           double mu_lo, double mu_hi, int steps, int resolution,
                           const OptimizerSettings& settings, std::uint64_t seed)
{
    (void)resolution;  // success is decided by the optimal-angle margin; the θ
                       // sweep only grades how large the success set is
    auto detects = [&](double mu, std::uint64_t stream) {
        GaussianState sigma = squeezed_thermal_from(mu, kappa0);
        return optimal_finite_data_geometry(sigma, s, shape, runs, bound, settings,
                                            stream_seed(seed, stream))
                   .margin > 0.0;
    };
    if (detects(mu_lo, 0))
        throw spec_error("frontier bracket invalid: detection already present at mu_lo");
    if (!detects(mu_hi, 1))
        throw spec_error("frontier bracket invalid: no detection at mu_hi");
    for (int i = 0; i < steps; ++i) {
        double mid = 0.5 * (mu_lo + mu_hi);
        (detects(mid, static_cast<std::uint64_t>(2 + i)) ? mu_hi : mu_lo) = mid;
    }
    return 0.5 * (mu_lo + mu_hi);
}

}  // namespace psbell

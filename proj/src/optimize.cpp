#include "psbell/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "psbell/errors.hpp"
#include "psbell/parallel.hpp"

namespace psbell {

std::uint64_t stream_seed(std::uint64_t base, std::uint64_t stream)
{
    // splitmix64 step on base + stream·golden — independent, reproducible streams
    std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::mt19937_64 seeded_rng(std::uint64_t base, std::uint64_t stream)
{
    return std::mt19937_64(stream_seed(base, stream));
}

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const NelderMeadOptions& options)
{
    const std::size_t n = x0.size();
    if (n == 0) throw spec_error("nelder_mead needs at least one coordinate");
    auto g = [&](const std::vector<double>& x) { return -f(x); };  // minimize −f

    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        double v = g(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    // initial simplex: x0 plus one step along each coordinate
    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> value(n + 1);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
    for (std::size_t i = 0; i <= n; ++i) value[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
    };

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    while (evals < options.max_evals) {
        sort_simplex();
        std::size_t best = order[0], worst = order[n], second = order[n - 1];

        // convergence: simplex collapsed in both x and f
        double xspread = 0.0, fspread = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                xspread = std::max(xspread, std::abs(simplex[order[i]][j] - simplex[best][j]));
            fspread = std::max(fspread, std::abs(value[order[i]] - value[best]));
        }
        if (xspread <= options.xatol && fspread <= options.fatol) {
            return {simplex[best], -value[best], evals, true};
        }

        for (std::size_t j = 0; j < n; ++j) {
            double c = 0.0;
            for (std::size_t i = 0; i <= n; ++i)
                if (i != worst) c += simplex[i][j];
            centroid[j] = c / static_cast<double>(n);
        }

        for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + (centroid[j] - simplex[worst][j]);
        double fr = eval(xr);

        if (fr < value[best]) {
            for (std::size_t j = 0; j < n; ++j) xe[j] = centroid[j] + 2.0 * (centroid[j] - simplex[worst][j]);
            double fe = eval(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                value[worst] = fe;
            } else {
                simplex[worst] = xr;
                value[worst] = fr;
            }
        } else if (fr < value[second]) {
            simplex[worst] = xr;
            value[worst] = fr;
        } else {
            bool shrink = false;
            if (fr < value[worst]) {  // outside contraction
                for (std::size_t j = 0; j < n; ++j) xc[j] = centroid[j] + 0.5 * (centroid[j] - simplex[worst][j]);
                double fc = eval(xc);
                if (fc <= fr) {
                    simplex[worst] = xc;
                    value[worst] = fc;
                } else {
                    shrink = true;
                }
            } else {  // inside contraction
                for (std::size_t j = 0; j < n; ++j) xc[j] = centroid[j] - 0.5 * (centroid[j] - simplex[worst][j]);
                double fc = eval(xc);
                if (fc < value[worst]) {
                    simplex[worst] = xc;
                    value[worst] = fc;
                } else {
                    shrink = true;
                }
            }
            if (shrink) {
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
                    value[i] = eval(simplex[i]);
                }
            }
        }
    }

    sort_simplex();
    return {simplex[order[0]], -value[order[0]], evals, false};
}

NelderMeadResult maximize(const OptimizationProblem& problem)
{
    if (!problem.objective || !problem.sample_start)
        throw spec_error("optimization problem needs an objective and a start sampler");

    const std::size_t warm_n = problem.warm_starts.size();
    const std::size_t fresh_n = static_cast<std::size_t>(std::max(0, problem.settings.starts));
    const std::size_t total = warm_n + fresh_n;
    if (total == 0) throw spec_error("optimization problem has zero starts");

    std::vector<NelderMeadResult> slots(total);
    parallel_for(total, problem.jobs, [&](std::size_t i) {
        std::vector<double> x0;
        if (i < warm_n) {
            x0 = problem.warm_starts[i];
        } else {
            // fresh start drawn from a per-start stream: thread-count independent
            auto rng = seeded_rng(problem.seed, i - warm_n);
            x0 = problem.sample_start(rng);
        }
        slots[i] = nelder_mead(problem.objective, x0, problem.settings.nm);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < total; ++i)
        if (slots[i].f > slots[best].f) best = i;
    NelderMeadResult out = slots[best];
    int evals = 0;
    bool any_converged = false;
    for (const auto& r : slots) {
        evals += r.evals;
        any_converged = any_converged || r.converged;
    }
    out.evals = evals;
    out.converged = any_converged;
    return out;
}

}  // namespace psbell

#ifndef PSBELL_OPTIMIZE_HPP
#define PSBELL_OPTIMIZE_HPP

// Derivative-free maximization used everywhere a geometry or grid is tuned:
// classic Nelder–Mead simplex with multi-start, deterministic under a seed.
// Every random stream is derived from (base seed, stream index) so parallel
// multi-starts give identical results regardless of thread count.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace psbell {

struct NelderMeadOptions {
    double xatol = 1e-8;   // simplex size tolerance
    double fatol = 1e-10;  // function value spread tolerance
    int max_evals = 20000;
    double initial_step = 0.25;  // simplex edge along each coordinate
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;   // maximized objective value
    int evals = 0;
    bool converged = false;
};

// Maximizes f (internally runs the textbook minimizer on −f with the standard
// coefficients: reflection 1, expansion 2, contraction ½, shrink ½).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0, const NelderMeadOptions& options = {});

// splitmix64 hash of (base, stream) — the seed for one multi-start stream.
std::uint64_t stream_seed(std::uint64_t base, std::uint64_t stream);
std::mt19937_64 seeded_rng(std::uint64_t base, std::uint64_t stream);

struct OptimizerSettings {
    int starts = 16;        // independent multi-start count
    NelderMeadOptions nm{};
};

// Multi-start driver: `sample_start(rng)` draws a start point, optional
// `warm_starts` are run first (perturbed), best result over all runs wins.
// `jobs` = 0 uses the hardware concurrency; results are independent of it.
struct OptimizationProblem {
    std::function<double(const std::vector<double>&)> objective;  // maximize
    std::function<std::vector<double>(std::mt19937_64&)> sample_start;
    std::vector<std::vector<double>> warm_starts;
    OptimizerSettings settings{};
    std::uint64_t seed = 0x9e3779b97f4a7c15ull;
    int jobs = 1;
};

NelderMeadResult maximize(const OptimizationProblem& problem);

}  // namespace psbell

#endif

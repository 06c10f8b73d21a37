// Command-line front end: state/geometry spec ingestion, single-point and
// grid evaluation, bound tables, reference-figure data regeneration, and the
// nonlocality-bridge sweeps. All numbers come from library calls — the CLI
// only formats them. Exit codes: 0 success, 2 malformed specs/parameters,
// 3 numerical non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "psbell/bounds.hpp"
#include "psbell/functionals.hpp"
#include "psbell/nonlocality.hpp"
#include "psbell/quasiprob.hpp"
#include "psbell/spec_io.hpp"
#include "psbell/states.hpp"
#include "psbell/stats.hpp"

using namespace psbell;
using nlohmann::json;

namespace {

struct RunConfig {
    std::uint64_t seed = 0x9e3779b97f4a7c15ull;
    int fock_dim = 0;   // 0: library default truncation
    int jobs = 0;       // 0: hardware concurrency
    std::string format = "csv";
    std::string output_dir;
    bool paper = false;  // full-resolution grids instead of the fast defaults
};

json config_json(const RunConfig& cfg, const std::string& command)
{
    return json{{"command", command}, {"seed", cfg.seed},    {"fock_dim", cfg.fock_dim},
                {"jobs", cfg.jobs},   {"format", cfg.format}, {"paper", cfg.paper}};
}

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// Generic table artifact: named columns + numeric rows, emitted as CSV (with
// the configuration in comment lines) and/or JSON (configuration embedded).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    json summary = json::object();

    void add(std::initializer_list<double> row) { rows.emplace_back(row); }
};

std::string table_csv(const Table& t, const json& config)
{
    std::string out = "# psbell artifact\n# config: " + config.dump() + "\n";
    if (!t.summary.empty()) out += "# summary: " + t.summary.dump() + "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        out += t.columns[c] + (c + 1 < t.columns.size() ? "," : "\n");
    for (const auto& row : t.rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            out += num(row[c]) + (c + 1 < row.size() ? "," : "\n");
    return out;
}

json table_json(const Table& t, const json& config)
{
    json rows = json::array();
    for (const auto& row : t.rows) rows.push_back(row);
    json j{{"config", config}, {"columns", t.columns}, {"rows", rows}};
    if (!t.summary.empty()) j["summary"] = t.summary;
    return j;
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw spec_error("cannot open output file: " + path);
    out << content;
}

// Emit a table according to --format / --output. Without --output the CSV (or
// JSON) goes to stdout; with it, files land in the output directory.
void emit(const Table& t, const RunConfig& cfg, const std::string& command,
          const std::string& stem, bool both_formats = false)
{
    json config = config_json(cfg, command);
    if (cfg.output_dir.empty()) {
        if (cfg.format == "json")
            std::printf("%s\n", table_json(t, config).dump(2).c_str());
        else
            std::fputs(table_csv(t, config).c_str(), stdout);
        return;
    }
    std::string base = cfg.output_dir + "/" + stem;
    if (both_formats || cfg.format == "csv") write_file(base + ".csv", table_csv(t, config));
    if (both_formats || cfg.format == "json")
        write_file(base + ".json", table_json(t, config).dump(2) + "\n");
    std::printf("wrote %s.%s\n", base.c_str(),
                both_formats ? "{csv,json}" : cfg.format.c_str());
}

std::vector<double> linspace(double lo, double hi, int n)
{
    if (n < 1) throw spec_error("grid needs at least one point");
    if (n == 1) return {lo};
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return v;
}

double shape_code(Shape s) { return static_cast<double>(static_cast<int>(s)); }

FockDensityMatrix vacuum_two_photon_mix(double f, int dim)
{
    FockDensityMatrix rho;
    rho.rho = Eigen::MatrixXcd::Zero(dim, dim);
    rho.rho(0, 0) = f;
    rho.rho(2, 2) = 1.0 - f;
    return rho;
}

// ---------------------------------------------------------------------------
// eval: scaled quasiprobability of a state over a phase-space grid

int cmd_eval(const RunConfig& cfg, const std::string& state_path, double s, double qmin, double qmax,
             double pmin, double pmax, int nq, int np)
{
    ParsedState st = parse_state_file(state_path, cfg.fock_dim > 0 ? cfg.fock_dim : 100);
    Table t;
    t.columns = {"q", "p", "W", "scaled"};
    for (double p : linspace(pmin, pmax, np))
        for (double q : linspace(qmin, qmax, nq)) {
            ScaledQuasiprobValue v = scaled_at(st.state, PhaseSpacePoint{q, p}, s);
            t.add({q, p, v.wigner, v.value});
        }
    t.summary = {{"state", st.label}, {"s", s}};
    emit(t, cfg, "eval", "eval");
    return 0;
}

// ---------------------------------------------------------------------------
// test: one functional evaluation with bounds, margins and verdicts

int cmd_test(const RunConfig& cfg, const std::string& state_path, const std::string& geometry_path,
             double s)
{
    ParsedState st = parse_state_file(state_path, cfg.fock_dim > 0 ? cfg.fock_dim : 100);
    PointGeometry g = parse_geometry_file(geometry_path);
    TestResult res = evaluate_test(st.state, g, s);

    std::printf("state:              %s\n", st.label.c_str());
    std::printf("shape:              %s\n", shape_name(res.shape).c_str());
    std::printf("order parameter s:  %s\n", num(res.s).c_str());
    std::printf("value:              %s\n", num(res.value).c_str());
    std::printf("classical bound:    %s  (margin %s)\n", num(res.classical_bound).c_str(),
                num(res.margin_classical).c_str());
    std::printf("gaussian bound:     %s  (margin %s)\n", num(res.gaussian_mixture_bound).c_str(),
                num(res.margin_gaussian).c_str());
    std::printf("algebraic range:    [%s, %s]\n", num(res.algebraic_range.first).c_str(),
                num(res.algebraic_range.second).c_str());
    std::printf("nonclassical:       %s\n", res.nonclassical ? "yes" : "no");
    std::printf("genuinely non-Gaussian: %s\n", res.genuinely_non_gaussian ? "yes" : "no");
    if (res.degenerate_geometry) std::printf("degenerate geometry: verdicts suppressed\n");
    for (const ScaledQuasiprobValue& v : res.point_values)
        std::printf("  point (%s, %s): scaled %s\n", num(v.point.q).c_str(), num(v.point.p).c_str(),
                    num(v.value).c_str());

    if (!cfg.output_dir.empty()) {
        json j{{"config", config_json(cfg, "test")}, {"state", st.label}, {"result", to_json(res)}};
        write_file(cfg.output_dir + "/test.json", j.dump(2) + "\n");
        std::printf("wrote %s/test.json\n", cfg.output_dir.c_str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// bounds: classical / Gaussian (/ quantum) ceilings keyed by (s, kind)

int cmd_bounds(const RunConfig& cfg, double s_from, double s_to, int steps, int dim, bool verify)
{
    Table t;
    t.columns = {"s", "kind", "classical", "gaussian", "gaussian_asymptote"};
    if (dim > 0) {
        t.columns.push_back("quantum");
        t.columns.push_back("quantum_d_q");
        t.columns.push_back("quantum_d_p");
    }
    OptimizerSettings settings;
    for (Shape shape : {Shape::Rectangle, Shape::RightTriangle}) {
        double classical = three_point_shape(shape) ? 1.0 : 2.0;
        std::vector<double> grid = linspace(s_from, s_to, steps);
        std::vector<QuantumBoundPoint> qcurve;
        if (dim > 0) {
            qcurve = quantum_bound_curve(grid, dim, shape, settings, cfg.seed);
            // trust gate: re-solve the deepest-s point with truncation
            // verification — throws (exit 3) if the ceiling is still moving
            if (verify)
                fock_eigenbounds(qcurve.back().s, qcurve.back().d_q, qcurve.back().d_p, dim, shape,
                                 true);
        }
        for (int i = 0; i < steps; ++i) {
            GaussianBound gb = gaussian_max(grid[static_cast<std::size_t>(i)], shape);
            std::vector<double> row = {gb.s, shape_code(shape), classical, gb.value, gb.asymptote};
            if (dim > 0) {
                const QuantumBoundPoint& qp = qcurve[static_cast<std::size_t>(i)];
                row.push_back(qp.lambda);
                row.push_back(qp.d_q);
                row.push_back(qp.d_p);
            }
            t.rows.push_back(row);
        }
    }
    t.summary = {{"kind_codes", {{"0", "rectangle"}, {"1", "right_triangle"}}},
                 {"purity_thresholds",
                  {{"four_point", purity_threshold(Shape::Rectangle)},
                   {"three_point", purity_threshold(Shape::RightTriangle)}}}};
    emit(t, cfg, "bounds", "bounds");
    return 0;
}

// ---------------------------------------------------------------------------
// repro: regenerate the reference data sets

void repro_gaussian_ceilings(const RunConfig& cfg)  // optimized value vs shape parameter
{
    Table t;
    t.columns = {"kappa0", "kind", "value"};
    for (double kappa0 : linspace(0.02, 1.98, cfg.paper ? 99 : 25)) {
        GaussianState sq;
        sq.r = 0.5 * std::atanh(kappa0 / 2.0);
        for (Shape shape : {Shape::Rectangle, Shape::RightTriangle})
            t.add({kappa0, shape_code(shape),
                   gaussian_optimal_for_state(sq, 0.0, shape).result.value});
    }
    GaussianBound four = gaussian_max(0.0, Shape::Rectangle);
    GaussianBound three = gaussian_max(0.0, Shape::RightTriangle);
    t.summary = {{"kind_codes", {{"0", "rectangle"}, {"1", "right_triangle"}}},
                 {"four_point_asymptote", four.asymptote},
                 {"three_point_asymptote", three.asymptote},
                 {"purity_threshold_four", purity_threshold(Shape::Rectangle)},
                 {"purity_threshold_three", purity_threshold(Shape::RightTriangle)}};
    emit(t, cfg, "repro", "repro_gaussian_ceilings", true);
}

void repro_success_maps(const RunConfig& cfg)
{
    int n = cfg.paper ? 50 : 20;
    int resolution = cfg.paper ? 512 : 256;
    std::vector<double> mu = linspace(0.30, 1.00, n);
    std::vector<double> kappa = linspace(0.02, 1.98, n);
    Table t;
    t.columns = {"mu", "kappa0", "kind", "P_s"};
    for (Shape shape : {Shape::Rectangle, Shape::RightTriangle}) {
        double bound = three_point_shape(shape) ? 1.0 : 2.0;
        SuccessProbabilityMap map = success_probability_map(mu, kappa, 0.0, shape, 1e5, bound,
                                                            resolution, {}, cfg.seed, cfg.jobs);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                t.add({mu[static_cast<std::size_t>(i)], kappa[static_cast<std::size_t>(k)],
                       shape_code(shape), map.at(i, k)});
    }
    t.summary = {{"kind_codes", {{"0", "rectangle"}, {"1", "right_triangle"}}},
                 {"runs", 1e5}, {"s", 0.0}};
    emit(t, cfg, "repro", "repro_success_maps", true);
}

void repro_frontiers(const RunConfig& cfg)
{
    Table t;
    t.columns = {"kappa0", "kind", "runs", "mu_frontier"};
    const double inf = std::numeric_limits<double>::infinity();
    for (double kappa0 : linspace(1.0, 1.98, cfg.paper ? 15 : 7))
        for (Shape shape : {Shape::Rectangle, Shape::RightTriangle}) {
            double bound = three_point_shape(shape) ? 1.0 : 2.0;
            for (double runs : {1e5, inf})
                t.add({kappa0, shape_code(shape), runs,
                       success_frontier_mu(kappa0, 0.0, shape, runs, bound, 0.4, 0.999, 20, 512, {},
                                           cfg.seed)});
        }
    t.summary = {{"kind_codes", {{"0", "rectangle"}, {"1", "right_triangle"}}},
                 {"purity_threshold_four", purity_threshold(Shape::Rectangle)},
                 {"purity_threshold_three", purity_threshold(Shape::RightTriangle)}};
    emit(t, cfg, "repro", "repro_frontiers", true);
}

void repro_lattice(const RunConfig& cfg)
{
    const double d_sq = std::acos(-1.0) / 4.0;
    Table t;
    t.columns = {"N", "method", "lambda", "expectation"};
    for (int n = 0; n <= (cfg.paper ? 4 : 3); ++n) {
        LatticeBound rec = lattice_eigenbounds(d_sq, n, Shape::Rectangle, LatticeMethod::Recurrence);
        double mu = lattice_state_expectation(rec.top_coefficients, d_sq, n, Shape::Rectangle);
        t.add({static_cast<double>(n), 0.0, rec.lambda, mu});
    }
    for (int n = 1; n <= 5; ++n) {
        LatticeBound var = lattice_eigenbounds(d_sq, n, Shape::Rectangle, LatticeMethod::Variational);
        double mu = lattice_state_expectation(var.top_coefficients, d_sq, n, Shape::Rectangle);
        t.add({static_cast<double>(n), 1.0, var.lambda, mu});
    }
    LatticeBound rec2 = lattice_eigenbounds(d_sq, 2, Shape::Rectangle, LatticeMethod::Recurrence);
    t.summary = {{"method_codes", {{"0", "recurrence"}, {"1", "variational"}}},
                 {"J0_5x5", lattice_state_expectation(rec2.top_coefficients, d_sq, 2,
                                                      Shape::Rectangle)},
                 {"d_sq", d_sq}};
    emit(t, cfg, "repro", "repro_lattice", true);
}

void repro_quantum_curves(const RunConfig& cfg)
{
    int dim = cfg.paper ? 150 : 60;
    OptimizerSettings settings;
    Table t;
    t.columns = {"s", "kind", "lambda", "d_q", "d_p"};
    for (Shape shape : {Shape::Rectangle, Shape::RightTriangle}) {
        double lo = three_point_shape(shape) ? -2.2 : -1.2;
        for (const QuantumBoundPoint& qp :
             quantum_bound_curve(linspace(lo, 0.0, cfg.paper ? 23 : 12), dim, shape, settings,
                                 cfg.seed))
            t.add({qp.s, shape_code(shape), qp.lambda, qp.d_q, qp.d_p});
    }
    auto s4 = quantum_crossing(2.0, -1.2, -0.8, dim, Shape::Rectangle, 1e-3, settings, cfg.seed);
    auto s3 = quantum_crossing(1.0, -2.2, -1.8, dim, Shape::RightTriangle, 1e-3, settings, cfg.seed);
    t.summary = {{"kind_codes", {{"0", "rectangle"}, {"1", "right_triangle"}}},
                 {"dim", dim},
                 {"four_point_crossing", s4 ? json(*s4) : json()},
                 {"three_point_crossing", s3 ? json(*s3) : json()}};
    emit(t, cfg, "repro", "repro_quantum_curves", true);
}

void repro_squeeze_enhancement(const RunConfig& cfg)
{
    OptimizerSettings settings;
    std::vector<double> r_t = linspace(0.0, 1.0, cfg.paper ? 11 : 6);
    Table t;
    t.columns = {"r_t", "state", "value", "gaussian_bound", "genuinely_non_gaussian"};
    double gamma = 1.2;
    std::vector<cxd> coeffs(31, cxd(0.0, 0.0));
    for (int n = 0; n <= 30; n += 2)
        coeffs[static_cast<std::size_t>(n)] =
            std::exp(n * std::log(gamma) - 0.5 * std::lgamma(n + 1.0));
    struct Entry { double code; FockDensityMatrix rho; };
    const Entry states[] = {
        {0.0, superposition_state(coeffs, 50)},      // even cat, gamma = 1.2
        {1.0, vacuum_two_photon_mix(0.3, 30)},       // 0.3|0><0| + 0.7|2><2|
    };
    for (const Entry& entry : states)
        for (const SqueezeEnhancementPoint& pt :
             squeeze_enhancement_curve(entry.rho, 0.0, Shape::Parallelogram, r_t, settings, cfg.seed,
                                       cfg.jobs))
            t.add({pt.r_t, entry.code, pt.best.value, pt.best.gaussian_mixture_bound,
                   pt.best.genuinely_non_gaussian ? 1.0 : 0.0});
    t.summary = {{"state_codes", {{"0", "even_cat_gamma_1.2"}, {"1", "mix_f_0.3"}}}};
    emit(t, cfg, "repro", "repro_squeeze_enhancement", true);
}

void repro_critical_eta(const RunConfig& cfg)
{
    OptimizerSettings settings;
    settings.starts = cfg.paper ? 24 : 16;
    Table t;
    t.columns = {"n_trunc", "s", "kind", "eta_c", "value_at_unit_eta"};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    struct Probe { int n; double s; Shape shape; };
    const Probe probes[] = {
        {1, 0.0, Shape::Parallelogram},  {2, 0.0, Shape::Parallelogram},
        {3, 0.0, Shape::Parallelogram},  {1, -1.0, Shape::Parallelogram},
        {2, -1.0, Shape::Parallelogram}, {3, -1.0, Shape::Parallelogram},
        {1, 0.0, Shape::ShearedTriangle}, {2, 0.0, Shape::ShearedTriangle},
        {3, 0.0, Shape::ShearedTriangle},
    };
    for (const Probe& probe : probes) {
        auto res = critical_eta(probe.n, probe.s, probe.shape, 1e-3, 0.005, 10, settings, cfg.seed,
                                cfg.jobs);
        t.add({static_cast<double>(probe.n), probe.s, shape_code(probe.shape),
               res ? res->eta : nan, res ? res->at_unit_eta.value : nan});
    }
    t.summary = {{"margin", 1e-3},
                 {"kind_codes", {{"2", "parallelogram"}, {"3", "sheared_triangle"}}},
                 {"note", "eta_c is NaN when even eta=1 shows no violation"}};
    emit(t, cfg, "repro", "repro_critical_eta", true);
}

void repro_bridge(const RunConfig& cfg)
{
    OptimizerSettings settings;
    Table t;
    t.columns = {"parameter", "family", "P", "B", "chain_ok"};
    int n = cfg.paper ? 50 : 12;
    auto record = [&t](BridgeFamily family, const std::vector<BridgeSweepPoint>& sweep) {
        for (const BridgeSweepPoint& pt : sweep)
            t.add({pt.parameter, family == BridgeFamily::SqueezedVacuum ? 0.0 : 1.0, pt.best.P,
                   pt.best.B, pt.best.chain_ok ? 1.0 : 0.0});
    };
    record(BridgeFamily::SqueezedVacuum,
           bridge_sweep(BridgeFamily::SqueezedVacuum, linspace(0.0, 1.2, n), settings, cfg.seed,
                        cfg.jobs));
    record(BridgeFamily::VacuumTwoPhotonMix,
           bridge_sweep(BridgeFamily::VacuumTwoPhotonMix, linspace(0.0, 1.0, n), settings, cfg.seed,
                        cfg.jobs));
    t.summary = {{"family_codes", {{"0", "squeezed_vacuum_r"}, {"1", "mix_f"}}}};
    emit(t, cfg, "repro", "repro_bridge", true);
}

void repro_cat_grid(const RunConfig& cfg)
{
    int n = cfg.paper ? 121 : 61;
    Table t;
    t.columns = {"q", "p", "W", "scaled"};
    for (double p : linspace(-3.0, 3.0, n))
        for (double q : linspace(-3.0, 3.0, n)) {
            ScaledQuasiprobValue v = eval_lossy_cat(2.0, 1.0, PhaseSpacePoint{q, p});
            t.add({q, p, v.wigner, v.value});
        }
    t.summary = {{"gamma", 2.0}, {"eta", 1.0}, {"s", 0.0}};
    emit(t, cfg, "repro", "repro_cat_grid", true);
}

int cmd_repro(const RunConfig& cfg, const std::string& id)
{
    if (id == "fig2") repro_gaussian_ceilings(cfg);
    else if (id == "fig3") repro_success_maps(cfg);
    else if (id == "fig4") repro_frontiers(cfg);
    else if (id == "fig5") repro_lattice(cfg);
    else if (id == "fig6") repro_quantum_curves(cfg);
    else if (id == "fig7") repro_squeeze_enhancement(cfg);
    else if (id == "fig8") repro_critical_eta(cfg);
    else if (id == "fig9") repro_bridge(cfg);
    else if (id == "catfig") repro_cat_grid(cfg);
    else throw spec_error("unknown repro id: " + id +
                          " (expected fig2..fig9 or catfig)");
    return 0;
}

// ---------------------------------------------------------------------------
// sweep: nonlocality-bridge families

int cmd_sweep(const RunConfig& cfg, const std::string& family_name, double from, double to, int n)
{
    BridgeFamily family;
    if (family_name == "squeezed_vacuum") family = BridgeFamily::SqueezedVacuum;
    else if (family_name == "vacuum_two_photon_mix") family = BridgeFamily::VacuumTwoPhotonMix;
    else throw spec_error("unknown sweep family: " + family_name);

    OptimizerSettings settings;
    Table t;
    t.columns = {"parameter", "P", "B", "chain_ok"};
    for (const BridgeSweepPoint& pt :
         bridge_sweep(family, linspace(from, to, n), settings, cfg.seed, cfg.jobs))
        t.add({pt.parameter, pt.best.P, pt.best.B, pt.best.chain_ok ? 1.0 : 0.0});
    t.summary = {{"family", family_name}};
    emit(t, cfg, "sweep", "sweep_" + family_name);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"phase-space Bell-type tests of nonclassicality and genuine non-Gaussianity"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "base seed for every stochastic optimizer");
    app.add_option("--fock-dim", cfg.fock_dim, "Fock truncation override (0: library default)");
    app.add_option("--jobs", cfg.jobs, "worker thread cap (0: hardware concurrency)");
    app.add_option("--format", cfg.format, "table format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", cfg.output_dir, "output directory (default: print to stdout)");
    app.add_flag("--paper", cfg.paper, "full-resolution grids instead of the fast defaults");

    // eval
    std::string state_path, geometry_path;
    double s = 0.0, qmin = -3.0, qmax = 3.0, pmin = -3.0, pmax = 3.0;
    int nq = 61, np = 61;
    CLI::App* eval = app.add_subcommand("eval", "scaled quasiprobability over a phase-space grid");
    eval->add_option("--state", state_path, "state spec file (JSON)")->required();
    eval->add_option("--s", s, "order parameter (<= 0)");
    eval->add_option("--qmin", qmin);
    eval->add_option("--qmax", qmax);
    eval->add_option("--pmin", pmin);
    eval->add_option("--pmax", pmax);
    eval->add_option("--nq", nq, "grid points along q");
    eval->add_option("--np", np, "grid points along p");

    // test
    CLI::App* test = app.add_subcommand("test", "evaluate one test functional with verdicts");
    test->add_option("--state", state_path, "state spec file (JSON)")->required();
    test->add_option("--geometry", geometry_path, "geometry spec file (JSON)")->required();
    test->add_option("--s", s, "order parameter (<= 0)");

    // bounds
    double s_from = 0.0, s_to = -2.0;
    int steps = 9, dim = 0;
    bool verify = false;
    CLI::App* bounds = app.add_subcommand("bounds", "bound tables keyed by (s, kind)");
    bounds->add_option("--s-from", s_from);
    bounds->add_option("--s-to", s_to);
    bounds->add_option("--steps", steps)->check(CLI::PositiveNumber);
    bounds->add_option("--dim", dim, "Fock dimension for quantum ceilings (0: skip)");
    bounds->add_flag("--verify", verify, "verify Fock truncation of the quantum ceiling");

    // repro
    std::string repro_id;
    CLI::App* repro = app.add_subcommand("repro", "regenerate a reference data set");
    repro->add_option("id", repro_id, "fig2..fig9 or catfig")->required();

    // sweep
    std::string family = "squeezed_vacuum";
    double from = 0.0, to = 1.2;
    int points = 25;
    CLI::App* sweep = app.add_subcommand("sweep", "nonlocality-bridge certificate sweep");
    sweep->add_option("--family", family, "squeezed_vacuum or vacuum_two_photon_mix");
    sweep->add_option("--from", from);
    sweep->add_option("--to", to);
    sweep->add_option("--points", points)->check(CLI::PositiveNumber);

    for (CLI::App* sub : {eval, test, bounds, repro, sweep}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // malformed command line is a spec error
    }

    try {
        if (app.got_subcommand(eval)) return cmd_eval(cfg, state_path, s, qmin, qmax, pmin, pmax, nq, np);
        if (app.got_subcommand(test)) return cmd_test(cfg, state_path, geometry_path, s);
        if (app.got_subcommand(bounds)) return cmd_bounds(cfg, s_from, s_to, steps, dim, verify);
        if (app.got_subcommand(repro)) return cmd_repro(cfg, repro_id);
        if (app.got_subcommand(sweep)) return cmd_sweep(cfg, family, from, to, points);
    } catch (const spec_error& e) {
        std::fprintf(stderr, "spec error: %s\n", e.what());
        return 2;
    } catch (const convergence_error& e) {
        std::fprintf(stderr, "convergence error: %s\n", e.what());
        return 3;
    }
    return 0;
}

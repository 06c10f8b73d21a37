#include "psbell/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <variant>

#include "psbell/errors.hpp"
#include "psbell/states.hpp"

namespace psbell {

namespace {

using nlohmann::json;

double get_number(const json& j, const std::string& key, void* /*tag*/)
{
    if (!j.contains(key)) throw spec_error("missing required field '" + key + "'");
    if (!j.at(key).is_number()) throw spec_error("field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

double get_number_or(const json& j, const std::string& key, double fallback)
{
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw spec_error("field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

int get_int_or(const json& j, const std::string& key, int fallback)
{
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) throw spec_error("field '" + key + "' must be an integer");
    return j.at(key).get<int>();
}

std::string brief(double v)
{
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

GaussianState parse_gaussian(const json& j)
{
    GaussianState g;
    g.alpha = cxd(get_number_or(j, "alpha_re", 0.0), get_number_or(j, "alpha_im", 0.0));
    g.r = get_number_or(j, "r", 0.0);
    g.phi = get_number_or(j, "phi", 0.0);
    g.nbar = get_number_or(j, "nbar", 0.0);
    if (g.r < 0.0) throw spec_error("field 'r' must be >= 0");
    if (g.nbar < 0.0) throw spec_error("field 'nbar' must be >= 0");
    return g;
}

json complex_pair(cxd z) { return json::array({z.real(), z.imag()}); }

}  // namespace

Shape parse_shape(const std::string& name)
{
    if (name == "rectangle") return Shape::Rectangle;
    if (name == "right_triangle") return Shape::RightTriangle;
    if (name == "parallelogram") return Shape::Parallelogram;
    if (name == "sheared_triangle") return Shape::ShearedTriangle;
    throw spec_error("unknown shape '" + name +
                     "' (expected rectangle, right_triangle, parallelogram, sheared_triangle)");
}

std::string shape_name(Shape shape)
{
    switch (shape) {
        case Shape::Rectangle: return "rectangle";
        case Shape::RightTriangle: return "right_triangle";
        case Shape::Parallelogram: return "parallelogram";
        case Shape::ShearedTriangle: return "sheared_triangle";
    }
    return "unknown";
}

ParsedState parse_state_spec(const json& j, int default_dim)
{
    if (!j.is_object()) throw spec_error("state description must be a JSON object");
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw spec_error("state description needs a string field 'kind'");
    std::string kind = j.at("kind").get<std::string>();

    ParsedState out;
    out.requested_dim = get_int_or(j, "dim", 0);
    int dim = out.requested_dim > 0 ? out.requested_dim : default_dim;
    if (dim < 1) throw spec_error("field 'dim' must be >= 1");

    if (kind == "gaussian") {
        GaussianState g = parse_gaussian(j);
        out.state = g;
        out.label = "gaussian(alpha=" + brief(g.alpha.real()) + "+" + brief(g.alpha.imag()) +
                    "i, r=" + brief(g.r) + ", phi=" + brief(g.phi) + ", nbar=" + brief(g.nbar) + ")";
        return out;
    }

    if (kind == "fock") {
        FockDensityMatrix rho;
        if (j.contains("n")) {
            int n = get_int_or(j, "n", 0);
            if (n < 0) throw spec_error("field 'n' must be >= 0");
            int d = std::max(dim, n + 1);
            rho.rho = Eigen::MatrixXcd::Zero(d, d);
            rho.rho(n, n) = 1.0;
            out.label = "fock(n=" + std::to_string(n) + ")";
        } else if (j.contains("rho_diag")) {
            const json& diag = j.at("rho_diag");
            if (!diag.is_array() || diag.empty())
                throw spec_error("field 'rho_diag' must be a non-empty array");
            int d = std::max<int>(dim, static_cast<int>(diag.size()));
            rho.rho = Eigen::MatrixXcd::Zero(d, d);
            double wsum = 0.0;
            for (std::size_t n = 0; n < diag.size(); ++n) {
                if (!diag[n].is_number()) throw spec_error("field 'rho_diag' must contain numbers");
                double w = diag[n].get<double>();
                if (w < 0.0) throw spec_error("field 'rho_diag' entries must be >= 0");
                rho.rho(static_cast<int>(n), static_cast<int>(n)) = w;
                wsum += w;
            }
            if (!(wsum > 0.0)) throw spec_error("field 'rho_diag' must have positive total weight");
            rho.rho /= wsum;
            out.label = "fock_diag(" + std::to_string(diag.size()) + " levels)";
        } else {
            throw spec_error("fock state needs field 'n' or 'rho_diag'");
        }
        out.state = std::move(rho);
        return out;
    }

    if (kind == "superposition") {
        if (!j.contains("coeffs") || !j.at("coeffs").is_array() || j.at("coeffs").empty())
            throw spec_error("superposition needs a non-empty array field 'coeffs'");
        std::vector<cxd> coeffs;
        for (const json& c : j.at("coeffs")) {
            if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
                throw spec_error("field 'coeffs' entries must be [re, im] pairs");
            coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
        }
        int d = std::max<int>(dim, static_cast<int>(coeffs.size()));
        out.state = superposition_state(coeffs, d);
        out.label = "superposition(" + std::to_string(coeffs.size()) + " levels)";
        return out;
    }

    if (kind == "cat") {
        double gamma = get_number(j, "gamma", nullptr);
        if (!(gamma > 0.0)) throw spec_error("field 'gamma' must be > 0");
        double eta = get_number_or(j, "eta", 1.0);
        if (!(eta > 0.0) || eta > 1.0) throw spec_error("field 'eta' must lie in (0, 1]");
        // even cat |γ⟩ + |−γ⟩: coefficients ∝ γⁿ/√n! on even n
        std::vector<cxd> coeffs(static_cast<std::size_t>(dim), cxd(0.0, 0.0));
        for (int n = 0; n < dim; n += 2)
            coeffs[static_cast<std::size_t>(n)] =
                std::exp(n * std::log(gamma) - 0.5 * std::lgamma(n + 1.0));
        FockDensityMatrix rho = superposition_state(coeffs, dim);
        if (eta < 1.0) rho = apply_loss(rho, LossChannel{eta});
        out.state = std::move(rho);
        out.label = "cat(gamma=" + brief(gamma) + ", eta=" + brief(eta) + ")";
        return out;
    }

    if (kind == "mixture") {
        if (!j.contains("parts") || !j.at("parts").is_array() || j.at("parts").empty())
            throw spec_error("mixture needs a non-empty array field 'parts'");
        GaussianMixture mix;
        for (const json& part : j.at("parts")) {
            if (!part.is_object() || !part.contains("weight") || !part.contains("state"))
                throw spec_error("mixture parts must be objects with 'weight' and 'state'");
            double w = get_number(part, "weight", nullptr);
            if (w < 0.0) throw spec_error("mixture weights must be >= 0");
            const json& sub = part.at("state");
            if (!sub.is_object() || !sub.contains("kind") ||
                sub.at("kind").get<std::string>() != "gaussian")
                throw spec_error("mixture parts must be gaussian states");
            mix.parts.emplace_back(w, parse_gaussian(sub));
        }
        out.label = "mixture(" + std::to_string(mix.parts.size()) + " gaussians)";
        out.state = std::move(mix);
        return out;
    }

    throw spec_error("unknown state kind '" + kind +
                     "' (expected gaussian, fock, superposition, cat, mixture)");
}

ParsedState parse_state_file(const std::string& path, int default_dim)
{
    std::ifstream in(path);
    if (!in) throw spec_error("cannot open state file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw spec_error("state file '" + path + "': " + e.what());
    }
    return parse_state_spec(j, default_dim);
}

PointGeometry parse_geometry_spec(const json& j)
{
    if (!j.is_object()) throw spec_error("geometry description must be a JSON object");
    if (!j.contains("shape") || !j.at("shape").is_string())
        throw spec_error("geometry description needs a string field 'shape'");
    Shape shape = parse_shape(j.at("shape").get<std::string>());

    double x0 = get_number(j, "x0", nullptr);
    double y0 = get_number(j, "y0", nullptr);
    double x1 = get_number(j, "x1", nullptr);
    double y1 = get_number(j, "y1", nullptr);
    double theta = get_number_or(j, "theta", 0.0);

    if (!squeezed_shape(shape)) {
        if (j.contains("r_t") || j.contains("phi_t"))
            throw spec_error("fields 'r_t'/'phi_t' only apply to parallelogram and sheared_triangle");
        return shape == Shape::Rectangle ? make_rectangle(x0, y0, x1, y1, theta)
                                         : make_right_triangle(x0, y0, x1, y1, theta);
    }
    SqueezeMap sq{get_number_or(j, "r_t", 0.0), get_number_or(j, "phi_t", 0.0)};
    return shape == Shape::Parallelogram ? make_parallelogram(x0, y0, x1, y1, theta, sq)
                                         : make_sheared_triangle(x0, y0, x1, y1, theta, sq);
}

PointGeometry parse_geometry_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw spec_error("cannot open geometry file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw spec_error("geometry file '" + path + "': " + e.what());
    }
    return parse_geometry_spec(j);
}

json to_json(const ScaledQuasiprobValue& v)
{
    return json{{"q", v.point.q}, {"p", v.point.p}, {"s", v.s},
                {"scaled", v.value}, {"wigner", v.wigner}};
}

json to_json(const PointGeometry& g)
{
    json j{{"shape", shape_name(g.shape)}, {"x0", g.x0}, {"y0", g.y0},
           {"x1", g.x1},                   {"y1", g.y1}, {"theta", g.theta}};
    if (g.squeeze) {
        j["r_t"] = g.squeeze->r_t;
        j["phi_t"] = g.squeeze->phi_t;
    }
    return j;
}

json to_json(const TestResult& r)
{
    json points = json::array();
    for (const auto& pv : r.point_values) points.push_back(to_json(pv));
    return json{{"value", r.value},
                {"s", r.s},
                {"shape", shape_name(r.shape)},
                {"geometry", to_json(r.geometry)},
                {"classical_bound", r.classical_bound},
                {"gaussian_mixture_bound", r.gaussian_mixture_bound},
                {"algebraic_range", json::array({r.algebraic_range.first, r.algebraic_range.second})},
                {"nonclassical", r.nonclassical},
                {"genuinely_non_gaussian", r.genuinely_non_gaussian},
                {"margin_classical", r.margin_classical},
                {"margin_gaussian", r.margin_gaussian},
                {"degenerate_geometry", r.degenerate_geometry},
                {"points", points}};
}

json to_json(const BridgeResult& r)
{
    return json{{"P", r.P},
                {"B", r.B},
                {"N", r.N},
                {"geometry", to_json(r.geometry)},
                {"corners",
                 json::array({complex_pair(r.corners[0]), complex_pair(r.corners[1]),
                              complex_pair(r.corners[2]), complex_pair(r.corners[3])})},
                {"D_a", complex_pair(r.D_a)},
                {"D_b", complex_pair(r.D_b)},
                {"vertex_identity_err", r.vertex_identity_err},
                {"positivity_ok", r.positivity_ok},
                {"chain_ok", r.chain_ok},
                {"chain_slack", r.chain_slack}};
}

}  // namespace psbell

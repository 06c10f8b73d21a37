#include <doctest.h>

#include <cmath>
#include <fstream>
#include <variant>

#include "psbell/spec_io.hpp"

using namespace psbell;
using nlohmann::json;

TEST_CASE("every state kind parses")
{
    ParsedState g = parse_state_spec(json{{"kind", "gaussian"},
                                          {"alpha_re", 0.3}, {"alpha_im", -0.2},
                                          {"r", 0.5}, {"phi", 0.1}, {"nbar", 0.2}});
    auto* gs = std::get_if<GaussianState>(&g.state);
    REQUIRE(gs != nullptr);
    CHECK(gs->alpha == cxd(0.3, -0.2));
    CHECK(gs->r == doctest::Approx(0.5));

    ParsedState f = parse_state_spec(json{{"kind", "fock"}, {"n", 2}});
    auto* fs = std::get_if<FockDensityMatrix>(&f.state);
    REQUIRE(fs != nullptr);
    CHECK(fs->rho(2, 2).real() == doctest::Approx(1.0));

    ParsedState d = parse_state_spec(json{{"kind", "fock"}, {"rho_diag", {0.25, 0.0, 0.75}}});
    auto* ds = std::get_if<FockDensityMatrix>(&d.state);
    REQUIRE(ds != nullptr);
    CHECK(ds->rho(0, 0).real() == doctest::Approx(0.25));
    CHECK(ds->rho(2, 2).real() == doctest::Approx(0.75));

    ParsedState sup = parse_state_spec(json{{"kind", "superposition"},
                                            {"coeffs", {{0.6, 0.0}, {0.0, 0.8}}}});
    auto* ss = std::get_if<FockDensityMatrix>(&sup.state);
    REQUIRE(ss != nullptr);
    CHECK(ss->rho(0, 0).real() == doctest::Approx(0.36));
    CHECK(ss->rho(1, 1).real() == doctest::Approx(0.64));

    ParsedState cat = parse_state_spec(json{{"kind", "cat"}, {"gamma", 1.1}, {"eta", 0.8}}, 60);
    REQUIRE(std::holds_alternative<FockDensityMatrix>(cat.state));

    ParsedState mix = parse_state_spec(json{
        {"kind", "mixture"},
        {"parts", {{{"weight", 0.4}, {"state", {{"kind", "gaussian"}, {"r", 0.3}}}},
                   {{"weight", 0.6}, {"state", {{"kind", "gaussian"}, {"alpha_re", 0.5}}}}}}});
    auto* ms = std::get_if<GaussianMixture>(&mix.state);
    REQUIRE(ms != nullptr);
    CHECK(ms->parts.size() == 2);
    CHECK_FALSE(mix.label.empty());
}

TEST_CASE("state parse errors carry field diagnostics")
{
    CHECK_THROWS_AS(parse_state_spec(json{{"alpha_re", 0.1}}), spec_error);        // no kind
    CHECK_THROWS_AS(parse_state_spec(json{{"kind", "warp"}}), spec_error);         // unknown kind
    CHECK_THROWS_AS(parse_state_spec(json{{"kind", "gaussian"}, {"r", -0.2}}), spec_error);
    CHECK_THROWS_AS(parse_state_spec(json{{"kind", "fock"}, {"rho_diag", {-0.1, 1.1}}}), spec_error);
    // unnormalized diagonals are renormalized, matching the mixture convention
    ParsedState renorm = parse_state_spec(json{{"kind", "fock"}, {"rho_diag", {0.5, 0.2}}});
    auto* rr = std::get_if<FockDensityMatrix>(&renorm.state);
    REQUIRE(rr != nullptr);
    CHECK(rr->trace_real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rr->rho(0, 0).real() == doctest::Approx(5.0 / 7.0));
    CHECK_THROWS_AS(parse_state_spec(json{{"kind", "cat"}, {"gamma", -1.0}}), spec_error);
    CHECK_THROWS_AS(parse_state_spec(json{
        {"kind", "mixture"},
        {"parts", {{{"weight", 1.0}, {"state", {{"kind", "fock"}, {"n", 1}}}}}}}), spec_error);
    try {
        parse_state_spec(json{{"kind", "gaussian"}, {"r", "big"}});
        FAIL("expected spec_error");
    } catch (const spec_error& e) {
        CHECK(std::string(e.what()).find("r") != std::string::npos);
    }
}

TEST_CASE("geometry round trip through JSON")
{
    PointGeometry g = make_parallelogram(-0.4, -0.2, 0.5, 0.6, 0.7, SqueezeMap{0.3, 0.8});
    PointGeometry back = parse_geometry_spec(to_json(g));
    CHECK(back.shape == g.shape);
    CHECK(back.x0 == doctest::Approx(g.x0));
    CHECK(back.y1 == doctest::Approx(g.y1));
    CHECK(back.theta == doctest::Approx(g.theta));
    REQUIRE(back.squeeze.has_value());
    CHECK(back.squeeze->r_t == doctest::Approx(0.3));
    CHECK(back.squeeze->phi_t == doctest::Approx(0.8));

    auto lhs = geometry_points(g);
    auto rhs = geometry_points(back);
    REQUIRE(lhs.size() == rhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        CHECK(lhs[i].pt.q == doctest::Approx(rhs[i].pt.q).epsilon(1e-14));
        CHECK(lhs[i].pt.p == doctest::Approx(rhs[i].pt.p).epsilon(1e-14));
    }
}

TEST_CASE("geometry parse errors")
{
    CHECK_THROWS_AS(parse_geometry_spec(json{{"shape", "blob"}, {"x0", 0.0}, {"y0", 0.0},
                                             {"x1", 1.0}, {"y1", 1.0}}), spec_error);
    CHECK_THROWS_AS(parse_geometry_spec(json{{"shape", "rectangle"}, {"x0", 0.0}}), spec_error);
    // plain shapes must not carry squeeze parameters
    CHECK_THROWS_AS(parse_geometry_spec(json{{"shape", "rectangle"}, {"x0", 0.0}, {"y0", 0.0},
                                             {"x1", 1.0}, {"y1", 1.0}, {"r_t", 0.2}}), spec_error);
    CHECK(parse_shape("sheared_triangle") == Shape::ShearedTriangle);
    CHECK(shape_name(Shape::RightTriangle) == "right_triangle");
    CHECK_THROWS_AS(parse_shape("hexagon"), spec_error);
}

TEST_CASE("parsed lossy cat matches the closed-form distribution")
{
    ParsedState cat = parse_state_spec(json{{"kind", "cat"}, {"gamma", 1.1}, {"eta", 0.8}}, 60);
    PhaseSpacePoint pt{0.3, -0.25};
    double via_parse = scaled_at(cat.state, pt, 0.0).value;
    double closed = eval_lossy_cat(1.1, 0.8, pt).value;
    CHECK(std::abs(via_parse - closed) < 1e-10);
}

TEST_CASE("file loading")
{
    const char* path = "psbell_test_state.json";
    {
        std::ofstream out(path);
        out << R"({"kind": "gaussian", "r": 0.4, "dim": 64})";
    }
    ParsedState st = parse_state_file(path);
    CHECK(st.requested_dim == 64);
    CHECK(std::holds_alternative<GaussianState>(st.state));
    std::remove(path);

    CHECK_THROWS_AS(parse_state_file("definitely_missing_file.json"), spec_error);
    {
        std::ofstream out(path);
        out << "{not json";
    }
    CHECK_THROWS_AS(parse_state_file(path), spec_error);
    std::remove(path);
}

TEST_CASE("result serialization carries the full verdict")
{
    GaussianState sq; sq.r = 1.0;
    PointGeometry g = make_rectangle(-0.4, -0.4, 0.4, 0.4, 0.3);
    TestResult res = evaluate_test(AnyState{sq}, g, 0.0);
    json j = to_json(res);
    CHECK(j["value"].get<double>() == doctest::Approx(res.value));
    CHECK(j["classical_bound"].get<double>() == doctest::Approx(2.0));
    CHECK(j["points"].size() == 4);
    CHECK(j.contains("nonclassical"));
    CHECK(j.contains("genuinely_non_gaussian"));
    CHECK(j["geometry"]["shape"].get<std::string>() == "rectangle");
}

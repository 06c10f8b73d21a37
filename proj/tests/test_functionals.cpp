#include <doctest.h>

#include <cmath>
#include <random>

#include "psbell/bounds.hpp"
#include "psbell/functionals.hpp"
#include "psbell/states.hpp"

using namespace psbell;

TEST_CASE("algebraic ranges of the functionals")
{
    auto r4 = algebraic_range(0.0, Shape::Rectangle);
    CHECK(r4.first == doctest::Approx(-4.0));
    CHECK(r4.second == doctest::Approx(4.0));
    r4 = algebraic_range(-1.0, Shape::Parallelogram);
    CHECK(r4.first == doctest::Approx(-1.0));
    CHECK(r4.second == doctest::Approx(3.0));
    auto r3 = algebraic_range(0.0, Shape::RightTriangle);
    CHECK(r3.first == doctest::Approx(-3.0));
    CHECK(r3.second == doctest::Approx(3.0));
    r3 = algebraic_range(-1.0, Shape::ShearedTriangle);
    CHECK(r3.first == doctest::Approx(-1.0));
    CHECK(r3.second == doctest::Approx(2.0));
    // below s = -1 the kernel is positive: open (-1,3) / (-1,2)
    r4 = algebraic_range(-2.0, Shape::Rectangle);
    CHECK(r4.first == doctest::Approx(-1.0));
    CHECK(r4.second == doctest::Approx(3.0));
}

TEST_CASE("evaluate_test equals the signed sum over geometry_points")
{
    GaussianState sigma; sigma.alpha = cxd(0.3, -0.2); sigma.r = 0.5; sigma.phi = 0.4; sigma.nbar = 0.2;
    AnyState state = sigma;
    PointGeometry g = make_rectangle(-0.4, -0.1, 0.5, 0.6, 0.7);
    for (double s : {0.0, -0.7, -1.0}) {
        TestResult res = evaluate_test(state, g, s);
        double manual = 0.0;
        for (const auto& lp : geometry_points(g))
            manual += lp.sign * scaled_at(state, lp.pt, s).value;
        CHECK(res.value == doctest::Approx(manual).epsilon(1e-13));
        CHECK(res.point_values.size() == 4);
    }

    AnyState fock = superposition_state({cxd(0.8, 0.0), cxd(0.0, 0.0), cxd(0.55, 0.2)}, 40);
    PointGeometry t = make_sheared_triangle(-0.3, 0.1, 0.6, 0.8, 0.4, SqueezeMap{0.3, 0.9});
    TestResult res = evaluate_test(fock, t, -0.5);
    double manual = 0.0;
    for (const auto& lp : geometry_points(t))
        manual += lp.sign * scaled_at(fock, lp.pt, -0.5).value;
    CHECK(res.value == doctest::Approx(manual).epsilon(1e-12));
    CHECK(res.point_values.size() == 3);
    CHECK(res.classical_bound == doctest::Approx(1.0));
}

TEST_CASE("classical states respect the classical ceilings (mini soak)")
{
    std::mt19937_64 rng(0x51a7e5u);
    std::uniform_real_distribution<double> coord(-2.5, 2.5);
    std::uniform_real_distribution<double> angle(0.0, 3.2);
    std::uniform_real_distribution<double> order(-1.5, 0.0);
    std::uniform_real_distribution<double> amp(-1.8, 1.8);
    std::exponential_distribution<double> wdist(1.0);

    int worst_checked = 0;
    for (int it = 0; it < 200; ++it) {
        GaussianMixture mix;
        int parts = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < parts; ++k) {
            GaussianState c;
            if (rng() % 3 == 0) c.nbar = 0.8 * wdist(rng);  // thermal component
            else c.alpha = cxd(amp(rng), amp(rng));          // coherent component
            mix.parts.emplace_back(wdist(rng) + 1e-3, c);
        }
        AnyState state = mix;
        double s = (it % 5 == 0) ? 0.0 : order(rng);
        bool three = (it % 2 == 0);
        PointGeometry g = three ? make_right_triangle(coord(rng), coord(rng), coord(rng), coord(rng), angle(rng))
                                : make_rectangle(coord(rng), coord(rng), coord(rng), coord(rng), angle(rng));
        TestResult res = evaluate_test(state, g, s);
        CHECK(res.value <= res.classical_bound + 1e-9);
        CHECK(res.nonclassical == false);
        ++worst_checked;
    }
    CHECK(worst_checked == 200);
}

TEST_CASE("squeezed vacuum flags nonclassical but not genuinely non-Gaussian")
{
    GaussianState sq; sq.r = 1.0;
    GaussianOptimum opt = gaussian_optimal_for_state(sq, 0.0, Shape::Rectangle);
    CHECK(opt.result.value > 2.0 + 1e-3);
    CHECK(opt.result.nonclassical);
    CHECK_FALSE(opt.result.genuinely_non_gaussian);  // single Gaussian state
    CHECK(opt.result.margin_classical == doctest::Approx(opt.result.value - 2.0));
    CHECK(opt.result.margin_gaussian < 0.0);
    CHECK(opt.result.gaussian_mixture_bound == doctest::Approx(8.0 / std::pow(3.0, 9.0 / 8.0)));
}

TEST_CASE("squeezed shapes never claim nonclassicality")
{
    // A squeezed coherent mixture can push the squeezed-shape functional past 2,
    // so the classical verdict is only defined for plain shapes.
    GaussianState sq; sq.r = 0.9;
    AnyState state = sq;
    PointGeometry g = make_parallelogram(-0.5, -0.5, 0.5, 0.5, 0.3, SqueezeMap{0.9, 0.0});
    TestResult res = evaluate_test(state, g, 0.0);
    CHECK_FALSE(res.nonclassical);
    PointGeometry t = make_sheared_triangle(-0.5, -0.5, 0.5, 0.5, 0.3, SqueezeMap{0.9, 0.0});
    res = evaluate_test(state, t, 0.0);
    CHECK_FALSE(res.nonclassical);
}

TEST_CASE("degenerate geometry suppresses verdicts")
{
    GaussianState sq; sq.r = 1.0;
    AnyState state = sq;
    PointGeometry g = make_rectangle(0.2, -0.4, 0.2, 0.6, 0.0);  // zero width
    TestResult res = evaluate_test(state, g, 0.0);
    CHECK(res.degenerate_geometry);
    CHECK_FALSE(res.nonclassical);
    CHECK_FALSE(res.genuinely_non_gaussian);
}

TEST_CASE("shape-checked wrappers reject the wrong geometry")
{
    GaussianState vac;
    AnyState state = vac;
    PointGeometry rect = make_rectangle(-0.3, -0.3, 0.3, 0.3, 0.0);
    PointGeometry tri = make_right_triangle(-0.3, -0.3, 0.3, 0.3, 0.0);
    CHECK_THROWS_AS(triangle_test(state, rect, 0.0), spec_error);
    CHECK_THROWS_AS(rectangle_test(state, tri, 0.0), spec_error);
    CHECK_THROWS_AS(parallelogram_test(state, rect, 0.0), spec_error);
    CHECK_THROWS_AS(sheared_triangle_test(state, tri, 0.0), spec_error);
    CHECK_NOTHROW(rectangle_test(state, rect, 0.0));
    CHECK_NOTHROW(triangle_test(state, tri, 0.0));
}

TEST_CASE("test_operator reproduces the functional as an expectation value")
{
    FockDensityMatrix rho = superposition_state({cxd(0.6, 0.0), cxd(0.4, 0.3), cxd(0.0, 0.5)}, 60);
    PointGeometry g = make_parallelogram(-0.35, -0.2, 0.45, 0.5, 0.25, SqueezeMap{0.4, 0.0});
    for (double s : {0.0, -1.0}) {
        Eigen::MatrixXcd h = test_operator(g, s, 60);
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-11);
        double expect = (rho.rho.transpose().cwiseProduct(h)).sum().real();
        TestResult res = evaluate_test(AnyState{rho}, g, s);
        CHECK(expect == doctest::Approx(res.value).epsilon(1e-10));
    }
}

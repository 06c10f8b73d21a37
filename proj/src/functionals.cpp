#include "psbell/functionals.hpp"

#include <cmath>

#include "psbell/errors.hpp"

namespace psbell {

namespace {

// Gaussian-mixture ceilings at s = 0; valid as verdict bounds for every s ≤ 0
// and for the squeezed shape variants (the Gaussian maximum only decreases
// away from s = 0, and squeezing a Gaussian mixture gives a Gaussian mixture).
const double kFourPointGaussianBound = 8.0 / std::pow(3.0, 9.0 / 8.0);  // ≈ 2.3244948
const double kThreePointGaussianBound = 2.0;

}  // namespace

std::pair<double, double> algebraic_range(double s, Shape shape)
{
    require_order_parameter(s);
    bool three = three_point_shape(shape);
    if (s >= -1.0) {
        // signed sum of the per-point extremes (s+1)/(s−1) and 1
        if (three) return {(s + 3.0) / (s - 1.0), (s - 3.0) / (s - 1.0)};
        return {(2.0 * s + 4.0) / (s - 1.0), (2.0 * s - 4.0) / (s - 1.0)};
    }
    // s < −1: every scaled value lies in (0, 1], so the extremes are open
    return three ? std::pair{-1.0, 2.0} : std::pair{-1.0, 3.0};
}

TestResult evaluate_test(const AnyState& state, const PointGeometry& geometry, double s)
{
    require_order_parameter(s);
    auto points = geometry_points(geometry);
    bool three = three_point_shape(geometry.shape);

    TestResult out;
    out.s = s;
    out.shape = geometry.shape;
    out.geometry = geometry;
    out.classical_bound = three ? 1.0 : 2.0;
    out.gaussian_mixture_bound = three ? kThreePointGaussianBound : kFourPointGaussianBound;
    out.algebraic_range = algebraic_range(s, geometry.shape);
    out.degenerate_geometry = zero_area(geometry);

    out.point_values.reserve(points.size());
    for (const auto& lp : points) {
        out.point_values.push_back(scaled_at(state, lp.pt, s));
        out.value += lp.sign * out.point_values.back().value;
    }

    out.margin_classical = out.value - out.classical_bound;
    out.margin_gaussian = out.value - out.gaussian_mixture_bound;
    bool plain = !squeezed_shape(geometry.shape);
    out.nonclassical =
        plain && !out.degenerate_geometry && out.value > out.classical_bound + kVerdictDelta;
    out.genuinely_non_gaussian =
        !out.degenerate_geometry && out.value > out.gaussian_mixture_bound + kVerdictDelta;
    return out;
}

namespace {

TestResult checked(const AnyState& state, const PointGeometry& geometry, double s, Shape expect,
                   const char* name)
{
    if (geometry.shape != expect)
        throw spec_error(std::string(name) + " requires a matching geometry shape");
    return evaluate_test(state, geometry, s);
}

}  // namespace

TestResult rectangle_test(const AnyState& state, const PointGeometry& g, double s)
{
    return checked(state, g, s, Shape::Rectangle, "rectangle_test");
}

TestResult triangle_test(const AnyState& state, const PointGeometry& g, double s)
{
    return checked(state, g, s, Shape::RightTriangle, "triangle_test");
}

TestResult parallelogram_test(const AnyState& state, const PointGeometry& g, double s)
{
    return checked(state, g, s, Shape::Parallelogram, "parallelogram_test");
}

TestResult sheared_triangle_test(const AnyState& state, const PointGeometry& g, double s)
{
    return checked(state, g, s, Shape::ShearedTriangle, "sheared_triangle_test");
}

Eigen::MatrixXcd test_operator(const PointGeometry& geometry, double s, int dim)
{
    require_order_parameter(s);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& lp : geometry_points(geometry))
        h += static_cast<double>(lp.sign) * kernel_matrix(to_complex(lp.pt), s, dim);
    return h;
}

}  // namespace psbell

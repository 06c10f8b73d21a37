#include "psbell/geometry.hpp"

#include <cmath>
#include <string>

namespace psbell {

void require_order_parameter(double s)
{
    if (!std::isfinite(s) || s > 0.0)
        throw spec_error("order parameter s must be finite and <= 0, got " + std::to_string(s));
}

PhaseSpacePoint rotate(PhaseSpacePoint pt, double theta)
{
    double c = std::cos(theta), sn = std::sin(theta);
    return {c * pt.q + sn * pt.p, -sn * pt.q + c * pt.p};
}

cxd squeeze_map(cxd alpha, const SqueezeMap& map)
{
    // S[α] = α cosh r_t + α* e^{2iφ_t} sinh r_t — how squeezing the state acts
    // on the kernel label: tr[ŜρŜ†K̂(α;0)] = tr[ρ K̂(S[α];0)].
    return alpha * std::cosh(map.r_t) +
           std::conj(alpha) * std::exp(cxd(0.0, 2.0 * map.phi_t)) * std::sinh(map.r_t);
}

double normalize_theta(double theta)
{
    constexpr double pi = 3.14159265358979323846;
    double t = std::fmod(theta, pi);
    if (t < 0.0) t += pi;
    return t;
}

bool zero_area(const PointGeometry& g)
{
    return std::abs(g.d_x()) < 1e-12 || std::abs(g.d_y()) < 1e-12;
}

namespace {

PointGeometry make_geometry(Shape shape, double x0, double y0, double x1, double y1, double theta,
                            std::optional<SqueezeMap> squeeze)
{
    PointGeometry g;
    g.x0 = x0;
    g.y0 = y0;
    g.x1 = x1;
    g.y1 = y1;
    g.theta = theta;
    g.squeeze = squeeze;
    g.shape = shape;
    return g;
}

}  // namespace

PointGeometry make_rectangle(double x0, double y0, double x1, double y1, double theta)
{
    return make_geometry(Shape::Rectangle, x0, y0, x1, y1, theta, std::nullopt);
}

PointGeometry make_right_triangle(double x0, double y0, double x1, double y1, double theta)
{
    return make_geometry(Shape::RightTriangle, x0, y0, x1, y1, theta, std::nullopt);
}

PointGeometry make_parallelogram(double x0, double y0, double x1, double y1, double theta,
                                 SqueezeMap squeeze)
{
    return make_geometry(Shape::Parallelogram, x0, y0, x1, y1, theta, squeeze);
}

PointGeometry make_sheared_triangle(double x0, double y0, double x1, double y1, double theta,
                                    SqueezeMap squeeze)
{
    return make_geometry(Shape::ShearedTriangle, x0, y0, x1, y1, theta, squeeze);
}

std::vector<LabeledPoint> geometry_points(const PointGeometry& g)
{
    bool needs_map = squeezed_shape(g.shape);
    if (needs_map && !g.squeeze)
        throw spec_error("squeezed pattern shape requires a squeeze map");
    if (!needs_map && g.squeeze)
        throw spec_error("plain pattern shape must not carry a squeeze map");
    if (g.squeeze && (!std::isfinite(g.squeeze->r_t) || g.squeeze->r_t < 0.0))
        throw spec_error("squeeze map strength r_t must be finite and >= 0");

    double c = std::cos(g.theta), sn = std::sin(g.theta);
    auto lab = [&](double x, double y) -> PhaseSpacePoint {
        // lab frame = R(−θ) · rotated frame
        return {c * x - sn * y, sn * x + c * y};
    };

    std::vector<LabeledPoint> pts;
    pts.reserve(4);
    if (!three_point_shape(g.shape)) pts.push_back({0, 0, +1, lab(g.x0, g.y0)});
    pts.push_back({1, 0, +1, lab(g.x1, g.y0)});
    pts.push_back({0, 1, +1, lab(g.x0, g.y1)});
    pts.push_back({1, 1, -1, lab(g.x1, g.y1)});

    if (needs_map) {
        for (auto& lp : pts) lp.pt = to_point(squeeze_map(to_complex(lp.pt), *g.squeeze));
    }
    return pts;
}

}  // namespace psbell

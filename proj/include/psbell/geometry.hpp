#ifndef PSBELL_GEOMETRY_HPP
#define PSBELL_GEOMETRY_HPP

// Phase-space coordinate conventions shared by the whole library.
//
// Quadrature convention: q̂ = (â+â†)/2, p̂ = (â−â†)/(2i), so the vacuum has
// variance 1/4 in each quadrature and α = q+ip is the coherent-state label
// (annihilation eigenvalue). All angles are radians.

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "psbell/errors.hpp"

namespace psbell {

using cxd = std::complex<double>;

struct PhaseSpacePoint {
    double q = 0.0;
    double p = 0.0;
};

inline cxd to_complex(PhaseSpacePoint pt) { return {pt.q, pt.p}; }
inline PhaseSpacePoint to_point(cxd a) { return {a.real(), a.imag()}; }

// Frame rotation R(θ) = [[cos θ, sin θ], [−sin θ, cos θ]]: (x,y) = R(θ)(q,p)
// are the rotated-frame coordinates of a lab point (q,p).
PhaseSpacePoint rotate(PhaseSpacePoint pt, double theta);

// Reject positive order parameters: the library evaluates smoothed
// distributions only (s ≤ 0); s > 0 kernels are unbounded.
void require_order_parameter(double s);

// Single-axis squeeze acting on phase-space labels,
//   S[α] = α cosh r_t + α* e^{2iφ_t} sinh r_t.
// Area-preserving: |det| of the induced real-linear map on (q,p) is 1.
struct SqueezeMap {
    double r_t = 0.0;   // transform strength, ≥ 0
    double phi_t = 0.0; // transform axis
};

cxd squeeze_map(cxd alpha, const SqueezeMap& map);

enum class Shape { Rectangle, RightTriangle, Parallelogram, ShearedTriangle };

inline bool three_point_shape(Shape s) {
    return s == Shape::RightTriangle || s == Shape::ShearedTriangle;
}
inline bool squeezed_shape(Shape s) {
    return s == Shape::Parallelogram || s == Shape::ShearedTriangle;
}

// Test-point generator: a base rectangle {x0,x1} × {y0,y1} laid out in a frame
// rotated by θ, optionally pushed through a squeeze map. Triangles drop the
// (x0,y0) corner. θ is normalized to [0, π) (geometries are π-periodic up to
// vertex relabeling).
struct PointGeometry {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    double theta = 0.0;
    std::optional<SqueezeMap> squeeze;
    Shape shape = Shape::Rectangle;

    double d_x() const { return x1 - x0; }
    double d_y() const { return y1 - y0; }
};

PointGeometry make_rectangle(double x0, double y0, double x1, double y1, double theta = 0.0);
PointGeometry make_right_triangle(double x0, double y0, double x1, double y1, double theta = 0.0);
PointGeometry make_parallelogram(double x0, double y0, double x1, double y1, double theta,
                                 SqueezeMap squeeze);
PointGeometry make_sheared_triangle(double x0, double y0, double x1, double y1, double theta,
                                    SqueezeMap squeeze);

double normalize_theta(double theta);  // into [0, π)

// True when the base rectangle has zero area (x0==x1 or y0==y1). Degenerate
// geometries are accepted as test inputs; results flag them so bound logic can
// report boundary cases.
bool zero_area(const PointGeometry& g);

// One evaluated vertex: corner label (i,j) ∈ {0,1}², the sign it carries in
// the test combination (+,+,+,− with (1,1) negated), and its lab-frame point
// after un-rotation R(−θ) and the optional squeeze map.
struct LabeledPoint {
    int i = 0;
    int j = 0;
    int sign = +1;
    PhaseSpacePoint pt;
};

// Vertices in evaluation order (0,0),(1,0),(0,1),(1,1); triangles omit (0,0).
// Throws spec_error on an invalid shape/squeeze combination.
std::vector<LabeledPoint> geometry_points(const PointGeometry& g);

}  // namespace psbell

#endif

#ifndef PSBELL_FUNCTIONALS_HPP
#define PSBELL_FUNCTIONALS_HPP

// The four phase-space Bell-type test functionals. Each one is a signed sum of
// scaled quasiprobability values on a small point pattern in a rotated frame:
//
//   four-point (rectangle / parallelogram):
//     J = +K(0,0) + K(x1,0) + K(0,y1) − K(x1,y1)   with pattern corner at (x0,y0)
//   three-point (right triangle / sheared triangle):
//     J = +K(x1,0) + K(0,y1) − K(x1,y1)
//
// Classical (coherent/thermal mixtures, s ≤ 0) ceilings: 2 for four-point,
// 1 for three-point. Squeezed variants apply a squeeze map to the corner
// labels first, probing genuine non-Gaussianity rather than nonclassicality.

#include <array>
#include <optional>
#include <vector>

#include "psbell/geometry.hpp"
#include "psbell/quasiprob.hpp"

namespace psbell {

struct TestResult {
    double value = 0.0;   // the functional J
    double s = 0.0;
    Shape shape = Shape::Rectangle;
    PointGeometry geometry;

    double classical_bound = 0.0;        // 2 (four-point) or 1 (three-point)
    double gaussian_mixture_bound = 0.0; // ceiling over Gaussian mixtures
    std::pair<double, double> algebraic_range{0.0, 0.0};

    bool nonclassical = false;              // value > classical bound + δ (plain shapes)
    bool genuinely_non_gaussian = false;    // value > Gaussian-mixture bound + δ
    double margin_classical = 0.0;          // value − classical bound
    double margin_gaussian = 0.0;           // value − Gaussian-mixture bound

    bool degenerate_geometry = false;       // zero-area pattern: verdicts suppressed

    std::vector<ScaledQuasiprobValue> point_values;  // in geometry_points order
};

// Attainable range of the functional over all states (sum of per-point ranges
// with the signs applied):
//   four-point, −1 ≤ s ≤ 0: [(2s+4)/(s−1), (2s−4)/(s−1)];  s < −1: (−1, 3)
//   three-point, −1 ≤ s ≤ 0: [(s+3)/(s−1), (s−3)/(s−1)];   s < −1: (−1, 2)
std::pair<double, double> algebraic_range(double s, Shape shape);

// Verdict margin: strict inequalities are enforced with this cushion.
inline constexpr double kVerdictDelta = 1e-9;

// Evaluate one functional. Verdicts follow the shape: plain shapes compare
// against the classical bound (nonclassicality), squeezed shapes suppress the
// classical verdict (their ceiling is the Gaussian one). The Gaussian-mixture
// bound quoted in the verdict uses the s = 0 ceilings (8/3^{9/8} four-point,
// 2 three-point), valid for every s ≤ 0 because the Gaussian maximum decreases
// away from s = 0.
TestResult evaluate_test(const AnyState& state, const PointGeometry& geometry, double s);

// Shape-checked spellings of the four functionals (thin wrappers over
// evaluate_test that reject a geometry of the wrong shape).
TestResult rectangle_test(const AnyState& state, const PointGeometry& geometry, double s);
TestResult triangle_test(const AnyState& state, const PointGeometry& geometry, double s);
TestResult parallelogram_test(const AnyState& state, const PointGeometry& geometry, double s);
TestResult sheared_triangle_test(const AnyState& state, const PointGeometry& geometry, double s);

// The test functional as an operator in the truncated number basis,
//   Ĥ = Σ ±K̂(α_k; s),  α_k the lab-frame pattern points.
Eigen::MatrixXcd test_operator(const PointGeometry& geometry, double s, int dim);

}  // namespace psbell

#endif

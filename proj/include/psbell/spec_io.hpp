#ifndef PSBELL_SPEC_IO_HPP
#define PSBELL_SPEC_IO_HPP

// JSON ingestion of state and geometry descriptions, and JSON emission of
// results. The state schema is {"kind": ..., parameters...} with kinds
//   gaussian      {alpha_re, alpha_im, r, phi, nbar}
//   fock          {n} or {rho_diag: [...]} — number state / diagonal mixture
//   superposition {coeffs: [[re, im], ...]}
//   cat           {gamma, eta?} — even cat, optional loss
//   mixture       {parts: [{weight, state}, ...]} — Gaussian parts only
// and the geometry schema is
//   {"shape": rectangle|right_triangle|parallelogram|sheared_triangle,
//    "x0", "y0", "x1", "y1", "theta"?, "r_t"?, "phi_t"?}.
// Parse problems throw spec_error with a field diagnostic.

#include <json.hpp>
#include <string>

#include "psbell/functionals.hpp"
#include "psbell/nonlocality.hpp"
#include "psbell/quasiprob.hpp"

namespace psbell {

struct ParsedState {
    AnyState state;
    int requested_dim = 0;  // 0 = caller default
    std::string label;      // human-readable summary for reports
};

ParsedState parse_state_spec(const nlohmann::json& j, int default_dim = 100);
ParsedState parse_state_file(const std::string& path, int default_dim = 100);

PointGeometry parse_geometry_spec(const nlohmann::json& j);
PointGeometry parse_geometry_file(const std::string& path);

Shape parse_shape(const std::string& name);
std::string shape_name(Shape shape);

nlohmann::json to_json(const ScaledQuasiprobValue& v);
nlohmann::json to_json(const PointGeometry& g);
nlohmann::json to_json(const TestResult& r);
nlohmann::json to_json(const BridgeResult& r);

}  // namespace psbell

#endif

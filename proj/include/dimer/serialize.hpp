#pragma once

#include <json.hpp>

#include "dimer/model.hpp"

namespace dimer {

// Self-describing records: {basis, trace_convention, data}.
// Matrices are row-major over (phi1, phi2, phi3); complex entries are [re, im].
nlohmann::json to_json(const Mat3& m);
nlohmann::json to_json(const CMat3& m);
nlohmann::json to_json(const Rdm& r);
nlohmann::json to_json(const SingletState& s);

Mat3 real_matrix_from_json(const nlohmann::json& j);
CMat3 complex_matrix_from_json(const nlohmann::json& j);
Rdm rdm_from_json(const nlohmann::json& j);

}  // namespace dimer

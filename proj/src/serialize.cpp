#include "dimer/serialize.hpp"

#include <stdexcept>

namespace dimer {

namespace {

constexpr const char* kSingletBasis = "phi1,phi2,phi3";
constexpr const char* kSiteBasis = "site1,site2";
constexpr const char* kTraceConvention = "per_spin_block_trace1";

nlohmann::json header(const char* basis, const char* kind) {
  return {{"basis", basis}, {"trace_convention", kTraceConvention}, {"kind", kind}};
}

nlohmann::json pair(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

cplx unpair(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("complex entry must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

void check_header(const nlohmann::json& j, const char* basis) {
  if (j.value("basis", "") != basis)
    throw std::invalid_argument(std::string("expected basis ") + basis);
  if (j.value("trace_convention", "") != kTraceConvention)
    throw std::invalid_argument("unexpected trace convention");
  if (!j.contains("data") || !j["data"].is_array())
    throw std::invalid_argument("record has no data array");
}

}  // namespace

nlohmann::json to_json(const Mat3& m) {
  nlohmann::json j = header(kSingletBasis, "real_matrix");
  nlohmann::json data = nlohmann::json::array();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) data.push_back(m(r, c));
  j["data"] = data;
  return j;
}

nlohmann::json to_json(const CMat3& m) {
  nlohmann::json j = header(kSingletBasis, "complex_matrix");
  nlohmann::json data = nlohmann::json::array();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) data.push_back(pair(m(r, c)));
  j["data"] = data;
  return j;
}

nlohmann::json to_json(const Rdm& r) {
  nlohmann::json j = header(kSiteBasis, "rdm");
  j["data"] = nlohmann::json::array(
      {pair(r.g11), pair(r.g12), pair(std::conj(r.g12)), pair(1.0 - r.g11)});
  return j;
}

nlohmann::json to_json(const SingletState& s) {
  nlohmann::json j = header(kSingletBasis, "state");
  j["data"] = nlohmann::json::array({pair(s.a()), pair(s.b()), pair(s.c())});
  return j;
}

Mat3 real_matrix_from_json(const nlohmann::json& j) {
  check_header(j, kSingletBasis);
  const auto& d = j["data"];
  if (d.size() != 9) throw std::invalid_argument("matrix record needs 9 entries");
  Mat3 m;
  for (int k = 0; k < 9; ++k) m(k / 3, k % 3) = d[k].get<double>();
  return m;
}

CMat3 complex_matrix_from_json(const nlohmann::json& j) {
  check_header(j, kSingletBasis);
  const auto& d = j["data"];
  if (d.size() != 9) throw std::invalid_argument("matrix record needs 9 entries");
  CMat3 m;
  for (int k = 0; k < 9; ++k) m(k / 3, k % 3) = unpair(d[k]);
  return m;
}

Rdm rdm_from_json(const nlohmann::json& j) {
  check_header(j, kSiteBasis);
  const auto& d = j["data"];
  if (d.size() != 4) throw std::invalid_argument("rdm record needs 4 entries");
  Rdm r{unpair(d[0]).real(), unpair(d[1])};
  require_in_disk(r);
  return r;
}

}  // namespace dimer

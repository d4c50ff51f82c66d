#pragma once

// JSON interchange for algebras and reports. All scalars are strings in the
// Scalar grammar; indices are 0-based.

#include <json.hpp>

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>

#include "coneforge/algebra.hpp"
#include "coneforge/errors.hpp"
#include "coneforge/report.hpp"

namespace coneforge {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Scalar scalar_from_json(const Json& j, const std::string& where) {
  if (!j.is_string()) throw DomainError(where + ": expected a scalar string");
  try {
    return Scalar::parse(j.get<std::string>());
  } catch (const ParseError& e) {
    throw DomainError(where + ": " + e.what());
  }
}

inline Matrix matrix_from_json(const Json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) throw DomainError(what + " must be a " + std::to_string(n) + "x" + std::to_string(n) + " array");
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) throw DomainError(what + " row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < n; ++c)
      m(r, c) = scalar_from_json(j[r][c], what + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

inline std::size_t index_from_json(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_number_integer()) throw DomainError(where + ": expected an integer index");
  const auto v = j.get<long long>();
  if (v < 0 || static_cast<std::size_t>(v) >= n) throw DomainError(where + ": index " + std::to_string(v) + " out of range");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

inline Json to_json(const Algebra& alg) {
  Json doc;
  doc["name"] = alg.name();
  doc["dim"] = alg.dim();
  doc["field"] = field_tag(alg.field());
  doc["commutative"] = alg.commutative();
  doc["metric"] = detail::matrix_to_json(alg.metric());
  if (alg.has_explicit_involution()) doc["involution"] = detail::matrix_to_json(alg.involution());
  Json structure = Json::array();
  for (const auto& e : alg.entries()) {
    if (alg.commutative() && e.i > e.j) continue;
    structure.push_back(Json{{"i", e.i}, {"j", e.j}, {"k", e.k}, {"c", e.c.to_string()}});
  }
  doc["structure"] = std::move(structure);
  return doc;
}

inline Algebra algebra_from_json(const Json& doc) {
  if (!doc.is_object()) throw DomainError("algebra document must be a JSON object");
  for (const char* key : {"name", "dim", "field", "commutative", "metric", "structure"})
    if (!doc.contains(key)) throw DomainError(std::string("algebra document lacks \"") + key + "\"");
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() <= 0) throw DomainError("dim must be a positive integer");
  const auto n = static_cast<std::size_t>(doc["dim"].get<long long>());
  const std::string field = doc["field"].get<std::string>();
  if (field != "Q" && field != "Qr3") throw DomainError("field must be \"Q\" or \"Qr3\"");
  const bool commutative = doc["commutative"].get<bool>();
  Matrix metric = detail::matrix_from_json(doc["metric"], n, "metric");
  std::optional<Matrix> involution;
  if (doc.contains("involution") && !doc["involution"].is_null())
    involution = detail::matrix_from_json(doc["involution"], n, "involution");
  if (!doc["structure"].is_array()) throw DomainError("structure must be an array");
  std::vector<StructureEntry> entries;
  std::size_t idx = 0;
  for (const auto& e : doc["structure"]) {
    const std::string where = "structure[" + std::to_string(idx++) + "]";
    if (!e.is_object() || !e.contains("i") || !e.contains("j") || !e.contains("k") || !e.contains("c"))
      throw DomainError(where + ": expected {i, j, k, c}");
    StructureEntry se{detail::index_from_json(e["i"], n, where), detail::index_from_json(e["j"], n, where),
                      detail::index_from_json(e["k"], n, where), detail::scalar_from_json(e["c"], where)};
    if (commutative && se.i > se.j) throw DomainError(where + ": commutative documents store only i <= j");
    entries.push_back(se);
    if (commutative && se.i != se.j) entries.push_back({se.j, se.i, se.k, se.c});
  }
  Algebra alg(doc["name"].get<std::string>(), n, entries, std::move(metric), std::move(involution), commutative);
  if (field == "Q" && alg.field() != Field::rational) throw DomainError("document is tagged \"Q\" but contains sqrt 3");
  return alg;
}

inline std::string format_document(const Algebra& alg) { return to_json(alg).dump(2) + "\n"; }

inline Algebra parse_document(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(e.what());
  }
  try {
    return algebra_from_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed algebra document: ") + e.what());
  }
}

inline Algebra load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

inline void save_document(const Algebra& alg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path);
  out << format_document(alg);
}

inline Json to_json(const Report& r) {
  Json j;
  j["check"] = r.check;
  j["pass"] = r.pass;
  j["theta"] = r.theta ? Json(r.theta->to_string()) : Json(nullptr);
  j["delta"] = r.delta ? Json(*r.delta) : Json(nullptr);
  j["n1"] = r.n1 ? Json(*r.n1) : Json(nullptr);
  j["n2"] = r.n2 ? Json(*r.n2) : Json(nullptr);
  j["d"] = r.d ? Json(*r.d) : Json(nullptr);
  j["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
  j["summary"] = r.summary;
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (!r.children.empty()) {
    Json kids = Json::array();
    for (const auto& c : r.children) kids.push_back(to_json(c));
    j["children"] = std::move(kids);
  }
  return j;
}

}  // namespace coneforge

#pragma once

// JSON encoding of exact values. Integers beyond ±2^53 are written as
// decimal strings; rationals as {"num", "den"}; forms as {"g", "matrix"}.

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "voronoi/forms.hpp"

namespace voronoi {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

inline Json to_json(const Integer& x) {
  static const Integer limit = Integer(1) << 53;
  if (abs(x) <= limit) return Json(x.get_si());
  return Json(x.get_str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw Error("json: malformed integer '" + j.get<std::string>() + "'");
    return x;
  }
  throw Error("json: expected an integer");
}

inline Json to_json(const Rational& x) { return Json{{"num", to_json(x.get_num())}, {"den", to_json(x.get_den())}}; }

inline Rational rational_from_json(const Json& j) {
  if (j.is_object()) {
    Rational r(integer_from_json(j.at("num")), integer_from_json(j.at("den")));
    if (r.get_den() == 0) throw Error("json: zero denominator");
    r.canonicalize();
    return r;
  }
  return Rational(integer_from_json(j));
}

inline Json to_json(const VectorZ& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline VectorZ vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error("json: expected a vector");
  VectorZ v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

inline Json to_json(const std::vector<VectorZ>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline std::vector<VectorZ> vectors_from_json(const Json& j) {
  if (!j.is_array()) throw Error("json: expected a vector list");
  std::vector<VectorZ> out;
  for (const auto& v : j) out.push_back(vector_from_json(v));
  return out;
}

template <class T>
Json matrix_to_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline MatrixZ matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error("json: expected a nonempty matrix");
  const std::size_t n = j.size(), c = j.at(0).size();
  MatrixZ m(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    if (j[i].size() != c) throw Error("json: ragged matrix");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = integer_from_json(j[i][k]);
  }
  return m;
}

inline MatrixQ rational_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error("json: expected a nonempty matrix");
  const std::size_t n = j.size(), c = j.at(0).size();
  MatrixQ m(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    if (j[i].size() != c) throw Error("json: ragged matrix");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = rational_from_json(j[i][k]);
  }
  return m;
}

inline Json to_json(const SymForm& q) { return Json{{"g", q.dim()}, {"matrix", matrix_to_json(q.matrix())}}; }
inline Json to_json(const RationalSymForm& q) { return Json{{"g", q.dim()}, {"matrix", matrix_to_json(q.matrix())}}; }
inline Json to_json(const Unimodular& u) { return matrix_to_json(u.matrix()); }

inline SymForm form_from_json(const Json& j) {
  const Json& m = j.is_object() ? j.at("matrix") : j;
  SymForm q(matrix_from_json(m));
  if (j.is_object() && j.contains("g") && j.at("g").get<std::size_t>() != q.dim())
    throw DimensionMismatch("json: declared g differs from the matrix size");
  return q;
}

inline RationalSymForm rational_form_from_json(const Json& j) {
  const Json& m = j.is_object() ? j.at("matrix") : j;
  return RationalSymForm(rational_matrix_from_json(m));
}

inline Unimodular unimodular_from_json(const Json& j) { return Unimodular(matrix_from_json(j)); }

inline Json to_json(const ConicCombination& c) {
  Json terms = Json::array();
  for (std::size_t k = 0; k < c.rays.size(); ++k)
    terms.push_back(Json{{"ray", to_json(c.rays[k])}, {"coeff", to_json(c.coeffs[k])}});
  return Json{{"target", to_json(c.target)}, {"terms", terms}};
}

inline ConicCombination combination_from_json(const Json& j) {
  ConicCombination c;
  c.target = rational_form_from_json(j.at("target"));
  for (const auto& t : j.at("terms")) {
    c.rays.push_back(vector_from_json(t.at("ray")));
    c.coeffs.push_back(rational_from_json(t.at("coeff")));
  }
  return c;
}

}  // namespace voronoi

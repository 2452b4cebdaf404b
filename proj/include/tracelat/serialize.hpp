#ifndef TRACELAT_SERIALIZE_HPP
#define TRACELAT_SERIALIZE_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "tracelat/matrix.hpp"

namespace tracelat {

using Json = nlohmann::json;

inline Json to_json(const Rational& q) { return to_string(q); }

inline Json to_json(const std::vector<Rational>& v) {
  Json arr = Json::array();
  for (const auto& q : v) arr.push_back(to_string(q));
  return arr;
}

inline Json to_json(const Matrix& m) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) arr.push_back(to_json(m.row_vector(i)));
  return arr;
}

inline Json to_json(const std::vector<Integer>& v) {
  Json arr = Json::array();
  for (const auto& z : v) arr.push_back(to_string(z));
  return arr;
}

/// Accepts "p/q" strings or JSON integers.
inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw Error(Errc::Parse, "expected rational string or integer, got " + j.dump());
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(Errc::Parse, "expected a nested array matrix");
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw Error(Errc::Parse, "expected matrix row array");
    std::vector<Rational> row;
    for (const auto& v : r) row.push_back(rational_from_json(v));
    rows.push_back(std::move(row));
  }
  return Matrix::from_rows(rows);
}

}  // namespace tracelat

#endif  // TRACELAT_SERIALIZE_HPP

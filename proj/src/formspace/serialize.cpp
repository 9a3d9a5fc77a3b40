#include "nondeg/serialize.hpp"

namespace nondeg {

using nlohmann::json;

json element_to_json(const Field& f, Elem a) { return json(f.digits(a)); }

Elem element_from_json(const Field& f, const json& j) {
  const auto digits = j.get<std::vector<std::uint32_t>>();
  if (digits.size() != f.degree()) throw FormError("element has the wrong number of coefficients");
  for (auto c : digits)
    if (c >= f.characteristic()) throw FormError("coefficient out of range");
  return f.from_digits(digits);
}

json to_json(const Mat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(element_to_json(m.field(), m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const Field& f, const json& j) {
  const std::size_t r = j.size();
  const std::size_t c = r == 0 ? 0 : j.at(0).size();
  Mat m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (j.at(i).size() != c) throw FormError("ragged matrix");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = element_from_json(f, j.at(i).at(k));
  }
  return m;
}

json to_json(const ClassicalSpace& V) {
  json j;
  j["field"] = {{"p", V.field().characteristic()}, {"k", V.field().degree()}};
  j["kind"] = to_string(V.kind());
  j["q"] = V.q();
  j["d"] = V.dim();
  if (V.kind() == Kind::Orthogonal) j["eps"] = to_int(V.eps());
  j["gram"] = to_json(V.gram());
  if (V.kind() == Kind::Orthogonal) j["quad"] = to_json(V.quad());
  return j;
}

ClassicalSpace space_from_json(const json& j) {
  const Field f = Field::make(j.at("field").at("p").get<std::uint32_t>(), j.at("field").at("k").get<unsigned>());
  const Kind kind = parse_kind(j.at("kind").get<std::string>());
  const auto q = j.at("q").get<std::uint32_t>();
  Mat gram = mat_from_json(f, j.at("gram"));
  if (gram.rows() != j.at("d").get<std::size_t>()) throw FormError("dimension does not match Gram matrix");
  if (kind != Kind::Orthogonal) return ClassicalSpace(kind, f, q, std::move(gram));
  return ClassicalSpace(kind, f, q, std::move(gram), mat_from_json(f, j.at("quad")),
                        sign_from_int(j.at("eps").get<int>()));
}

json to_json(const Subspace& S) {
  json j;
  j["dim"] = S.dim();
  j["basis"] = to_json(S.basis());
  j["nondegenerate"] = S.nondegenerate();
  if (S.type()) j["type"] = to_int(*S.type());
  return j;
}

Subspace subspace_from_json(const ClassicalSpace& V, const json& j) {
  const Mat rows = j.at("basis").empty() ? Mat(V.field(), 0, V.dim()) : mat_from_json(V.field(), j.at("basis"));
  return Subspace(V, rows);
}

}  // namespace nondeg

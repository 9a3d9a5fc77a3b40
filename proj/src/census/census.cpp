#include "nondeg/census.hpp"

#include <algorithm>
#include <set>

namespace nondeg {

namespace {

BigCount require_integer(const ExactRatio& v, const char* what) {
  if (denominator(v) != 1) throw std::logic_error(std::string(what) + " is not an integer: " + to_string(v));
  if (v < 0) throw std::logic_error(std::string(what) + " is negative: " + to_string(v));
  return numerator(v);
}

}  // namespace

bool nondegenerate_basis(const ClassicalSpace& V, const Mat& basis, std::optional<Sign> sigma) {
  if (basis.rows() == 0) return !sigma || *sigma == Sign::Plus;
  const Mat g = restricted_gram(V, basis);
  if (determinant(g) == 0) return false;
  if (!sigma) return true;
  return quadratic_type(V.field(), restricted_quad(V, basis)) == *sigma;
}

std::vector<Mat> nondegenerate_bases(const ClassicalSpace& V, std::size_t e, std::optional<Sign> sigma,
                                     std::uint64_t cap) {
  if (sigma && V.kind() != Kind::Orthogonal) throw CensusError("sigma applies to orthogonal spaces only");
  std::vector<Mat> out;
  for_each_subspace(V.field(), V.dim(), e, cap, [&](const Mat& m) {
    if (nondegenerate_basis(V, m, sigma)) out.push_back(m);
  });
  return out;
}

void CensusKey::validate() const {
  if (e > d) throw CensusError("e exceeds d");
  switch (kind) {
    case Kind::Symplectic:
      if (d == 0 || d % 2 || e % 2) throw CensusError("symplectic census needs d and e even, d >= 2");
      if (sigma) throw CensusError("sigma applies to orthogonal spaces only");
      break;
    case Kind::Unitary:
      if (d == 0) throw CensusError("unitary dimension must be positive");
      if (sigma) throw CensusError("sigma applies to orthogonal spaces only");
      break;
    case Kind::Orthogonal:
      if (d == 0) throw CensusError("orthogonal dimension must be positive");
      if (e % 2) throw CensusError("orthogonal census covers even e only");
      if (!sigma || *sigma == Sign::Circ) throw CensusError("orthogonal census needs sigma = + or -");
      if ((d % 2 == 1) != (eps == Sign::Circ)) throw CensusError("eps is circ exactly when d is odd");
      if (d % 2 == 1 && q % 2 == 0) throw CensusError("odd-dimensional orthogonal space needs odd q");
      break;
  }
}

ClassicalSpace CensusKey::space() const {
  validate();
  return standard_space(kind, d, q, kind == Kind::Orthogonal ? eps : Sign::Circ);
}

const char* to_string(CensusMethod m) { return m == CensusMethod::Enumerated ? "enumerated" : "formula"; }

std::vector<std::vector<std::size_t>> pivot_patterns(std::size_t d, std::size_t e) {
  std::vector<std::vector<std::size_t>> out;
  if (e > d) return out;
  std::vector<std::size_t> c(e);
  for (std::size_t i = 0; i < e; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    std::size_t i = e;
    while (i > 0 && c[i - 1] == d - e + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < e; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

std::uint64_t subspace_total(const Field& f, std::size_t d, std::size_t e, std::uint64_t cap) {
  const BigCount n = gauss_binom_count(static_cast<unsigned>(d), static_cast<unsigned>(e), f.order());
  if (n > cap) throw BudgetError("subspace enumeration", to_string(n), cap);
  return static_cast<std::uint64_t>(n);
}

void for_each_echelon(const Field& f, std::size_t d, const std::vector<std::size_t>& pivots,
                      const std::function<void(const Mat&)>& visit) {
  const std::size_t e = pivots.size();
  const std::set<std::size_t> piv(pivots.begin(), pivots.end());
  std::vector<std::pair<std::size_t, std::size_t>> free;
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = pivots[i] + 1; j < d; ++j)
      if (!piv.count(j)) free.emplace_back(i, j);
  Mat m(f, e, d);
  for (std::size_t i = 0; i < e; ++i) m(i, pivots[i]) = f.one();
  const Elem top = f.order() - 1;
  while (true) {
    visit(m);
    std::size_t k = free.size();
    while (k > 0) {
      auto& x = m(free[k - 1].first, free[k - 1].second);
      if (x < top) {
        ++x;
        break;
      }
      x = 0;
      --k;
    }
    if (k == 0) return;
  }
}

void for_each_subspace(const Field& f, std::size_t d, std::size_t e, std::uint64_t cap,
                       const std::function<void(const Mat&)>& visit) {
  subspace_total(f, d, e, cap);
  for (const auto& p : pivot_patterns(d, e)) for_each_echelon(f, d, p, visit);
}

std::vector<Subspace> enumerate_subspaces(const ClassicalSpace& V, std::size_t e, std::uint64_t cap) {
  std::vector<Subspace> out;
  out.reserve(static_cast<std::size_t>(subspace_total(V.field(), V.dim(), e, cap)));
  for_each_subspace(V.field(), V.dim(), e, cap, [&](const Mat& m) { out.emplace_back(V, m); });
  return out;
}

std::vector<Subspace> nondegenerate_subspaces(const ClassicalSpace& V, std::size_t e, std::optional<Sign> sigma,
                                              std::uint64_t cap) {
  if (sigma && V.kind() != Kind::Orthogonal) throw CensusError("sigma applies to orthogonal spaces only");
  std::vector<Subspace> out;
  for_each_subspace(V.field(), V.dim(), e, cap, [&](const Mat& m) {
    if (nondegenerate_basis(V, m, sigma)) out.emplace_back(V, m);
  });
  return out;
}

BigCount formula_count(const CensusKey& key) {
  key.validate();
  const ExactRatio q = key.q;
  const unsigned d = key.d, e = key.e;
  switch (key.kind) {
    case Kind::Unitary: {
      const ExactRatio v = power(q, 2L * e * (d - e)) * omega(d, q, true) / (omega(e, q, true) * omega(d - e, q, true));
      return require_integer(v, "unitary count");
    }
    case Kind::Symplectic: {
      const ExactRatio q2 = q * q;
      const ExactRatio v = power(q, static_cast<long>(e) * (d - e)) * omega(d / 2, q2) /
                           (omega(e / 2, q2) * omega((d - e) / 2, q2));
      return require_integer(v, "symplectic count");
    }
    case Kind::Orthogonal: {
      const ExactRatio q2 = q * q;
      const unsigned h = d / 2;
      const ExactRatio v = power(q, static_cast<long>(e) * (d - e)) *
                           kappa(e, d - e, to_int(key.eps), to_int(*key.sigma), q) * omega(h, q2) /
                           (omega(e / 2, q2) * omega(h - e / 2, q2));
      return require_integer(v, "orthogonal count");
    }
  }
  throw CensusError("unknown kind");
}

CensusResult count_nondegenerate(const CensusKey& key, CensusMethod method, const Budget& budget) {
  if (method == CensusMethod::Formula) return {formula_count(key), method};
  const ClassicalSpace V = key.space();
  std::uint64_t n = 0;
  for_each_subspace(V.field(), V.dim(), key.e, budget.subspaces, [&](const Mat& m) { n += nondegenerate_basis(V, m, key.sigma); });
  return {BigCount(n), method};
}

BigCount count_all_nondegenerate(const ClassicalSpace& V, std::size_t e, const Budget& budget) {
  std::uint64_t n = 0;
  for_each_subspace(V.field(), V.dim(), e, budget.subspaces, [&](const Mat& m) { n += nondegenerate_basis(V, m, std::nullopt); });
  return BigCount(n);
}

bool perp_type_check(const ClassicalSpace& V, const Subspace& S) {
  if (V.kind() != Kind::Orthogonal || !S.nondegenerate() || S.dim() % 2)
    throw CensusError("perp_type_check needs a non-degenerate even-dimensional orthogonal subspace");
  const Subspace P = perp(V, S);
  if (!P.nondegenerate() && P.dim() > 0) return false;
  const Sign expect = V.eps() * *S.type();
  if (P.dim() % 2) return expect == Sign::Circ && V.eps() == Sign::Circ;
  return P.type() && *P.type() == expect;
}

}  // namespace nondeg

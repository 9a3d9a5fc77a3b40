#include "nondeg/duos.hpp"

#include <sstream>

namespace nondeg {

namespace {

bool duo_bases(const ClassicalSpace& V, const Mat& a, const Mat& b) {
  return determinant(restricted_gram(V, a.stacked(b))) != 0;
}

ExactRatio ratio(const BigCount& n, const BigCount& d) { return ExactRatio(n, d); }

DuoKey inner_key(const DuoKey& key, Sign tau) {
  DuoKey k = key;
  k.d = key.e + key.e2;
  k.eps = key.kind == Kind::Orthogonal ? tau : Sign::Circ;
  return k;
}

std::uint64_t count_duo_pairs(const ClassicalSpace& V, unsigned e, std::optional<Sign> s, unsigned e2,
                              std::optional<Sign> s2, const Budget& budget, std::uint64_t* n1, std::uint64_t* n2) {
  const auto A = nondegenerate_bases(V, e, s, budget.subspaces);
  const auto B = (e == e2 && s == s2) ? A : nondegenerate_bases(V, e2, s2, budget.subspaces);
  if (n1) *n1 = A.size();
  if (n2) *n2 = B.size();
  const BigCount pairs = BigCount(A.size()) * B.size();
  if (pairs > budget.pairs) throw BudgetError("pair scan", to_string(pairs), budget.pairs);
  std::uint64_t n = 0;
  for (const Mat& a : A)
    for (const Mat& b : B) n += duo_bases(V, a, b);
  return n;
}

DuoReport make_report(const DuoKey& key, DuoMethod m, BigCount count, BigCount den) {
  DuoReport r;
  r.key = key;
  r.method = m;
  r.duo_count = std::move(count);
  r.denominator = std::move(den);
  r.rho = r.denominator == 0 ? ExactRatio(0) : ratio(r.duo_count, r.denominator);
  r.in_scope = !(key.kind == Kind::Orthogonal && key.q == 2);
  return r;
}

}  // namespace

void DuoKey::validate() const {
  if (e == 0 || e2 == 0) throw DuoError("e and e2 must be positive");
  if (e + e2 > d) throw DuoError("e + e2 exceeds d");
  try {
    first().validate();
    second().validate();
  } catch (const CensusError& err) {
    throw DuoError(err.what());
  }
}

CensusKey DuoKey::first() const {
  CensusKey k;
  k.kind = kind;
  k.d = d;
  k.q = q;
  k.eps = eps;
  k.e = e;
  k.sigma = sigma;
  return k;
}

CensusKey DuoKey::second() const {
  CensusKey k = first();
  k.e = e2;
  k.sigma = sigma2;
  return k;
}

ClassicalSpace DuoKey::space() const {
  validate();
  return first().space();
}

std::string DuoKey::describe() const {
  std::ostringstream os;
  os << to_string(kind);
  if (kind == Kind::Orthogonal) os << (eps == Sign::Circ ? "o" : to_string(eps));
  os << "(" << d << "," << q << ") e=" << e;
  if (sigma) os << to_string(*sigma);
  os << " e2=" << e2;
  if (sigma2) os << to_string(*sigma2);
  return os.str();
}

const char* to_string(DuoMethod m) {
  switch (m) {
    case DuoMethod::Direct: return "direct";
    case DuoMethod::FixedU: return "fixedU";
    case DuoMethod::Reduction: return "reduction";
    case DuoMethod::Auto: return "auto";
  }
  return "?";
}

DuoMethod parse_method(const std::string& s) {
  if (s == "direct") return DuoMethod::Direct;
  if (s == "fixedU") return DuoMethod::FixedU;
  if (s == "reduction") return DuoMethod::Reduction;
  if (s == "auto") return DuoMethod::Auto;
  throw DuoError("unknown method '" + s + "'");
}

bool is_duo(const ClassicalSpace& V, const Subspace& U, const Subspace& U2) {
  if (U.dim() == 0 || U2.dim() == 0) return false;
  return duo_bases(V, U.basis(), U2.basis());
}

bool is_duo_by_complement(const ClassicalSpace& V, const Subspace& U, const Subspace& U2) {
  const Subspace E = intersect(perp(V, U), perp(V, U2));
  const Subspace W = sum(U, U2);
  return W.dim() == U.dim() + U2.dim() && E.dim() + W.dim() == V.dim() && intersect(E, W).dim() == 0;
}

DuoReport rho_direct(const DuoKey& key, const Budget& budget) {
  const ClassicalSpace V = key.space();
  const BigCount n1 = formula_count(key.first()), n2 = formula_count(key.second());
  if (n1 * n2 > budget.pairs)
    throw BudgetError("direct pair scan (try fixedU or reduction)", to_string(BigCount(n1 * n2)), budget.pairs);
  std::uint64_t a = 0, b = 0;
  const std::uint64_t n = count_duo_pairs(V, key.e, key.sigma, key.e2, key.sigma2, budget, &a, &b);
  return make_report(key, DuoMethod::Direct, BigCount(n), BigCount(a) * b);
}

Subspace representative(const ClassicalSpace& V, unsigned e, std::optional<Sign> sigma, const Budget& budget) {
  Mat lead(V.field(), e, V.dim());
  for (unsigned i = 0; i < e; ++i) lead(i, i) = V.field().one();
  if (nondegenerate_basis(V, lead, sigma)) return Subspace(V, lead);
  std::optional<Mat> found;
  try {
    for_each_subspace(V.field(), V.dim(), e, budget.subspaces, [&](const Mat& m) {
      if (!found && nondegenerate_basis(V, m, sigma)) {
        found = m;
        throw std::out_of_range("found");
      }
    });
  } catch (const std::out_of_range&) {
  }
  if (!found) throw DuoError("no non-degenerate subspace of the requested dimension and type");
  return Subspace(V, *found);
}

DuoReport rho_fixed_U(const DuoKey& key, const Budget& budget) {
  const ClassicalSpace V = key.space();
  const Subspace U = representative(V, key.e, key.sigma, budget);
  std::uint64_t n = 0, total = 0;
  for_each_subspace(V.field(), V.dim(), key.e2, budget.subspaces, [&](const Mat& m) {
    if (!nondegenerate_basis(V, m, key.sigma2)) return;
    ++total;
    n += duo_bases(V, U.basis(), m);
  });
  const BigCount n1 = formula_count(key.first());
  return make_report(key, DuoMethod::FixedU, n1 * n, n1 * total);
}

DuoReport rho_reduction(const DuoKey& key, const Budget& budget) {
  key.validate();
  if (key.d == key.e + key.e2) {
    DuoReport r = rho_direct(key, budget);
    r.method = DuoMethod::Reduction;
    return r;
  }
  const BigCount n1 = formula_count(key.first()), n2 = formula_count(key.second());
  std::vector<Sign> taus;
  if (key.kind == Kind::Orthogonal) taus = {Sign::Minus, Sign::Plus};
  else taus = {Sign::Circ};
  BigCount duos = 0;
  for (Sign tau : taus) {
    CensusKey outer = key.first();
    outer.e = key.e + key.e2;
    if (key.kind == Kind::Orthogonal) outer.sigma = tau;
    const BigCount spans = formula_count(outer);
    if (spans == 0) continue;
    const DuoKey inner = inner_key(key, tau);
    if (formula_count(inner.first()) == 0 || formula_count(inner.second()) == 0) continue;
    duos += spans * rho_direct(inner, budget).duo_count;
  }
  return make_report(key, DuoMethod::Reduction, duos, n1 * n2);
}

DuoReport compute_rho(const DuoKey& key, DuoMethod method, const Budget& budget) {
  switch (method) {
    case DuoMethod::Direct: return rho_direct(key, budget);
    case DuoMethod::FixedU: return rho_fixed_U(key, budget);
    case DuoMethod::Reduction: return rho_reduction(key, budget);
    case DuoMethod::Auto: break;
  }
  key.validate();
  // Pair scans above this size lose to fixedU, which scans one orbit only.
  const BigCount cap = std::min<std::uint64_t>(budget.pairs, kAutoPairScan);
  if (key.d > key.e + key.e2) {
    BigCount inner_pairs = 0;
    for (Sign tau : key.kind == Kind::Orthogonal ? std::vector<Sign>{Sign::Minus, Sign::Plus}
                                                 : std::vector<Sign>{Sign::Circ}) {
      CensusKey outer = key.first();
      outer.e = key.e + key.e2;
      if (key.kind == Kind::Orthogonal) outer.sigma = tau;
      if (formula_count(outer) == 0) continue;
      const DuoKey inner = inner_key(key, tau);
      inner_pairs += formula_count(inner.first()) * formula_count(inner.second());
    }
    if (inner_pairs <= cap) return rho_reduction(key, budget);
  } else if (formula_count(key.first()) * formula_count(key.second()) <= cap) {
    return rho_direct(key, budget);
  }
  return rho_fixed_U(key, budget);
}

std::vector<BoundCheck> applicable_bounds(const DuoKey& key, const ExactRatio& rho) {
  std::vector<BoundCheck> out;
  const ExactRatio q = key.q;
  const bool base = key.d == key.e + key.e2;
  const auto add = [&](const char* name, const ExactRatio& b) { out.push_back({name, b, rho >= b}); };
  out.push_back({"positive", 0, rho > 0});
  switch (key.kind) {
    case Kind::Symplectic:
      add("sp_general", 1 - ExactRatio(7, 4) / q);
      if (base) add("sp_base", 1 - ExactRatio(5, 3) / q);
      break;
    case Kind::Unitary:
      add("u_general", 1 - ExactRatio(43, 25) / q);
      if (base && !(key.e == 1 && key.e2 == 1 && key.q == 2)) add("u_base", 1 - ExactRatio(9, 5) / (q * q));
      break;
    case Kind::Orthogonal:
      if (key.q == 3) add("o_q3", 1 - ExactRatio(57, 20) / q);
      if (key.q >= 4) add("o_general", 1 - ExactRatio(25, 8) / q);
      if (base && key.q >= 3) add("o_base", 1 - ExactRatio(43, 16) / q);
      break;
  }
  return out;
}

DuoReport audit_bounds(DuoReport report) {
  report.bounds = applicable_bounds(report.key, report.rho);
  report.pass = true;
  for (const auto& b : report.bounds) report.pass = report.pass && b.pass;
  return report;
}

std::map<Sign, std::vector<BigCount>> duo_counts_by_span(const DuoKey& key, std::size_t limit_per_type,
                                                         const Budget& budget) {
  const ClassicalSpace V = key.space();
  std::map<Sign, std::vector<BigCount>> out;
  const unsigned w = key.e + key.e2;
  for_each_subspace(V.field(), V.dim(), w, budget.subspaces, [&](const Mat& m) {
    if (!nondegenerate_basis(V, m, std::nullopt)) return;
    const Subspace W(V, m);
    const Sign tau = key.kind == Kind::Orthogonal ? *W.type() : Sign::Plus;
    auto& bucket = out[tau];
    if (limit_per_type && bucket.size() >= limit_per_type) return;
    const ClassicalSpace R = restrict_to(V, W);
    bucket.push_back(count_duo_pairs(R, key.e, key.sigma, key.e2, key.sigma2, budget, nullptr, nullptr));
  });
  return out;
}

std::vector<std::uint64_t> duo_counts_per_U(const DuoKey& key, const Budget& budget) {
  const ClassicalSpace V = key.space();
  const auto A = nondegenerate_bases(V, key.e, key.sigma, budget.subspaces);
  const auto B = nondegenerate_bases(V, key.e2, key.sigma2, budget.subspaces);
  const BigCount pairs = BigCount(A.size()) * B.size();
  if (pairs > budget.pairs) throw BudgetError("per-U scan", to_string(pairs), budget.pairs);
  std::vector<std::uint64_t> out;
  for (const Mat& a : A) {
    std::uint64_t n = 0;
    for (const Mat& b : B) n += duo_bases(V, a, b);
    out.push_back(n);
  }
  return out;
}

std::map<Sign, std::uint64_t> complement_types(const ClassicalSpace& V, const Subspace& U2, unsigned e,
                                               const Budget& budget) {
  std::map<Sign, std::uint64_t> out;
  for_each_subspace(V.field(), V.dim(), e, budget.subspaces, [&](const Mat& m) {
    if (!nondegenerate_basis(V, m, std::nullopt) || !duo_bases(V, m, U2.basis())) return;
    const Subspace U(V, m);
    ++out[U.type().value_or(Sign::Plus)];
  });
  return out;
}

}  // namespace nondeg

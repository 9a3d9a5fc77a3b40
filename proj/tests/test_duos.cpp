#include <gtest/gtest.h>

#include "nondeg/duos.hpp"

using namespace nondeg;

namespace {

DuoKey dk(Kind k, unsigned d, std::uint32_t q, unsigned e, unsigned e2, Sign eps = Sign::Circ,
          std::optional<Sign> s = std::nullopt, std::optional<Sign> s2 = std::nullopt) {
  DuoKey key;
  key.kind = k;
  key.d = d;
  key.q = q;
  key.e = e;
  key.e2 = e2;
  key.eps = eps;
  key.sigma = s;
  key.sigma2 = s2;
  return key;
}

ExactRatio R(long n, long d = 1) { return ExactRatio(n, d); }

}  // namespace

TEST(IsDuo, Examples) {
  const ClassicalSpace V = standard_space(Kind::Symplectic, 4, 2);
  const Subspace U = representative(V, 2, std::nullopt);
  EXPECT_FALSE(is_duo(V, U, U));
  const Subspace P = perp(V, U);
  EXPECT_TRUE(is_duo(V, U, P));
  EXPECT_TRUE(is_duo_by_complement(V, U, P));
  EXPECT_FALSE(is_duo_by_complement(V, U, U));
}

TEST(IsDuo, CriteriaAgreeWithComplementForm) {
  // All pairs of 2-subspaces of Sp(4,2), degenerate ones included.
  const ClassicalSpace V = standard_space(Kind::Symplectic, 4, 2);
  const auto all = enumerate_subspaces(V, 2);
  ASSERT_EQ(all.size(), 35u);
  std::size_t duos = 0;
  for (const auto& U : all)
    for (const auto& U2 : all) {
      const Subspace E = intersect(perp(V, U), perp(V, U2));
      const Subspace W = sum(U, U2);
      // E = W^perp.
      ASSERT_EQ(E, perp(V, W));
      // dim E = d - e - e' iff W = U + U' is direct.
      ASSERT_EQ(E.dim() == 0, W.dim() == 4);
      // W non-degenerate of dim e+e' iff V = E perp W.
      const bool split = W.dim() == 4 && E.dim() + W.dim() == 4 && intersect(E, W).dim() == 0;
      ASSERT_EQ(W.dim() == 4 && W.nondegenerate(), split);
      if (U.nondegenerate() && U2.nondegenerate()) {
        ASSERT_EQ(is_duo(V, U, U2), is_duo_by_complement(V, U, U2));
        duos += is_duo(V, U, U2);
      }
    }
  EXPECT_EQ(duos, 200u);
}

TEST(Rho, DirectExamplesMatchIndependentOracle) {
  // Values from a separate brute force (span sets, no echelon forms).
  const DuoReport sp = rho_direct(dk(Kind::Symplectic, 4, 2, 2, 2));
  EXPECT_EQ(sp.rho, R(1, 2));
  EXPECT_EQ(sp.duo_count, 200);
  EXPECT_EQ(sp.denominator, 400);
  EXPECT_GE(sp.rho, R(1, 6));
  EXPECT_EQ(rho_direct(dk(Kind::Symplectic, 4, 3, 2, 2)).rho, R(19, 30));
  const DuoReport u = rho_direct(dk(Kind::Unitary, 2, 2, 1, 1));
  EXPECT_EQ(u.rho, R(1, 2));
  EXPECT_EQ(u.denominator, 4);
  EXPECT_EQ(rho_direct(dk(Kind::Unitary, 3, 2, 1, 1)).rho, R(1, 6));
  EXPECT_EQ(rho_direct(dk(Kind::Unitary, 3, 2, 2, 1)).rho, R(5, 6));
  const Sign P = Sign::Plus, M = Sign::Minus;
  EXPECT_EQ(rho_direct(dk(Kind::Orthogonal, 4, 3, 2, 2, P, P, P)).rho, R(5, 8));
  EXPECT_EQ(rho_direct(dk(Kind::Orthogonal, 4, 3, 2, 2, P, P, M)).rho, R(2, 3));
  EXPECT_EQ(rho_direct(dk(Kind::Orthogonal, 4, 3, 2, 2, P, M, P)).rho, R(2, 3));
  const DuoReport o = rho_direct(dk(Kind::Orthogonal, 4, 3, 2, 2, P, M, M));
  EXPECT_EQ(o.rho, R(1, 2));
  EXPECT_EQ(o.duo_count, 162);
  EXPECT_EQ(o.denominator, 324);
  const DuoReport sp6 = rho_fixed_U(dk(Kind::Symplectic, 6, 2, 2, 2));
  EXPECT_EQ(sp6.rho, R(25, 42));
  EXPECT_EQ(sp6.duo_count, 67200);
  for (Sign s : {P, M})
    for (Sign s2 : {P, M}) EXPECT_EQ(rho_reduction(dk(Kind::Orthogonal, 5, 3, 2, 2, Sign::Circ, s, s2)).rho, R(19, 30));
}

TEST(Rho, RoutesAgree) {
  const Sign P = Sign::Plus, M = Sign::Minus, C = Sign::Circ;
  const std::vector<DuoKey> keys = {
      dk(Kind::Symplectic, 4, 2, 2, 2),         dk(Kind::Symplectic, 6, 2, 2, 2),
      dk(Kind::Symplectic, 6, 2, 4, 2),         dk(Kind::Unitary, 3, 2, 1, 1),
      dk(Kind::Unitary, 4, 2, 1, 1),            dk(Kind::Unitary, 4, 2, 2, 1),
      dk(Kind::Unitary, 3, 3, 1, 1),            dk(Kind::Orthogonal, 4, 3, 2, 2, P, M, M),
      dk(Kind::Orthogonal, 5, 3, 2, 2, C, M, M), dk(Kind::Orthogonal, 5, 3, 2, 2, C, P, M),
      dk(Kind::Orthogonal, 6, 2, 2, 2, M, M, P), dk(Kind::Orthogonal, 6, 2, 4, 2, P, P, M),
  };
  for (const auto& k : keys) {
    const DuoReport d = rho_direct(k), f = rho_fixed_U(k), r = rho_reduction(k);
    EXPECT_EQ(d.rho, f.rho) << k.describe();
    EXPECT_EQ(d.rho, r.rho) << k.describe();
    EXPECT_EQ(d.duo_count, f.duo_count) << k.describe();
    EXPECT_EQ(d.duo_count, r.duo_count) << k.describe();
    EXPECT_EQ(d.denominator, r.denominator) << k.describe();
    EXPECT_GT(d.rho, 0) << k.describe();
    EXPECT_LE(d.rho, 1) << k.describe();
    EXPECT_EQ(compute_rho(k, DuoMethod::Auto).rho, d.rho);
  }
}

TEST(Rho, BudgetErrors) {
  Budget b;
  b.pairs = 399;
  EXPECT_THROW(rho_direct(dk(Kind::Symplectic, 4, 2, 2, 2), b), BudgetError);
  EXPECT_NO_THROW(rho_fixed_U(dk(Kind::Symplectic, 4, 2, 2, 2), b));
  b = Budget{};
  b.subspaces = 100;
  EXPECT_THROW(rho_fixed_U(dk(Kind::Symplectic, 6, 2, 2, 2), b), BudgetError);
  // Auto falls back to fixedU when the pair scan is over budget.
  b = Budget{};
  b.pairs = 10;
  EXPECT_EQ(compute_rho(dk(Kind::Symplectic, 4, 2, 2, 2), DuoMethod::Auto, b).method, DuoMethod::FixedU);
}

TEST(Rho, RejectsInvalidKeys) {
  EXPECT_THROW(rho_direct(dk(Kind::Symplectic, 4, 2, 2, 4)), DuoError);
  EXPECT_THROW(rho_direct(dk(Kind::Symplectic, 4, 2, 1, 1)), DuoError);
  EXPECT_THROW(rho_direct(dk(Kind::Orthogonal, 4, 3, 2, 2, Sign::Plus)), DuoError);
  EXPECT_THROW(rho_direct(dk(Kind::Unitary, 3, 2, 0, 1)), DuoError);
  EXPECT_THROW(parse_method("fast"), DuoError);
}

TEST(Rho, FixedUCountIsConstantOverTheOrbit) {
  const Sign P = Sign::Plus, M = Sign::Minus;
  for (const auto& k : {dk(Kind::Symplectic, 6, 2, 2, 2), dk(Kind::Unitary, 3, 3, 1, 1),
                        dk(Kind::Orthogonal, 5, 3, 2, 2, Sign::Circ, M, P),
                        dk(Kind::Orthogonal, 4, 3, 2, 2, P, P, M), dk(Kind::Orthogonal, 6, 2, 2, 2, M, M, M)}) {
    const auto counts = duo_counts_per_U(k);
    ASSERT_FALSE(counts.empty());
    for (auto c : counts) ASSERT_EQ(c, counts.front()) << k.describe();
    EXPECT_EQ(ExactRatio(BigCount(counts.front()), formula_count(k.second())), rho_fixed_U(k).rho) << k.describe();
  }
}

TEST(Rho, DuoCountsDependOnlyOnTheSpanOrbit) {
  // Every non-degenerate 4-subspace of Sp(6,2).
  const auto sp = duo_counts_by_span(dk(Kind::Symplectic, 6, 2, 2, 2));
  ASSERT_EQ(sp.size(), 1u);
  const auto& v = sp.at(Sign::Plus);
  EXPECT_EQ(BigCount(v.size()), formula_count(CensusKey{Kind::Symplectic, 6, 2, Sign::Circ, 4, std::nullopt}));
  for (const auto& c : v) ASSERT_EQ(c, v.front());
  // Sampled W of each type in O(6,3).
  const Sign M = Sign::Minus;
  const auto o = duo_counts_by_span(dk(Kind::Orthogonal, 6, 3, 2, 2, Sign::Plus, M, M), 12);
  ASSERT_EQ(o.size(), 2u);
  for (const auto& [tau, counts] : o) {
    EXPECT_EQ(counts.size(), 12u);
    for (const auto& c : counts) ASSERT_EQ(c, counts.front()) << to_string(tau);
  }
  EXPECT_NE(o.at(Sign::Plus).front(), o.at(Sign::Minus).front());
}

TEST(Rho, ComplementTypesBothOccur) {
  for (std::uint32_t q : {3, 4, 5})
    for (Sign tau : {Sign::Plus, Sign::Minus})
      for (Sign s2 : {Sign::Plus, Sign::Minus}) {
        const ClassicalSpace W = standard_space(Kind::Orthogonal, 4, q, tau);
        const Subspace U2 = representative(W, 2, s2);
        const auto types = complement_types(W, U2, 2);
        EXPECT_GT(types.count(Sign::Plus) ? types.at(Sign::Plus) : 0, 0u) << W.describe();
        EXPECT_GT(types.count(Sign::Minus) ? types.at(Sign::Minus) : 0, 0u) << W.describe();
      }
}

TEST(Audit, BoundsAndScope) {
  const DuoReport sp = audit_bounds(rho_direct(dk(Kind::Symplectic, 4, 2, 2, 2)));
  EXPECT_TRUE(sp.pass);
  ASSERT_EQ(sp.bounds.size(), 3u);
  EXPECT_EQ(sp.bounds[1].name, "sp_general");
  EXPECT_EQ(sp.bounds[1].bound, R(1, 8));
  EXPECT_EQ(sp.bounds[2].bound, R(1, 6));

  const Sign P = Sign::Plus, M = Sign::Minus;
  const DuoReport o3 = audit_bounds(rho_direct(dk(Kind::Orthogonal, 4, 3, 2, 2, P, M, M)));
  EXPECT_TRUE(o3.pass);
  EXPECT_TRUE(o3.in_scope);
  EXPECT_EQ(o3.bounds[1].bound, R(1, 20));

  const DuoReport o2 = audit_bounds(rho_direct(dk(Kind::Orthogonal, 4, 2, 2, 2, P, M, M)));
  EXPECT_FALSE(o2.in_scope);
  EXPECT_EQ(o2.bounds.size(), 1u);
  EXPECT_GT(o2.rho, 0);

  // The (1,1,2) unitary corner gets the outer bound only.
  const DuoReport u = audit_bounds(rho_direct(dk(Kind::Unitary, 2, 2, 1, 1)));
  ASSERT_EQ(u.bounds.size(), 2u);
  EXPECT_EQ(u.bounds[1].bound, R(7, 50));
  EXPECT_TRUE(u.pass);

  const auto fake = applicable_bounds(dk(Kind::Orthogonal, 4, 4, 2, 2, P, P, P), R(1, 2));
  ASSERT_EQ(fake.size(), 3u);
  EXPECT_EQ(fake[1].bound, R(7, 32));
  EXPECT_EQ(fake[2].bound, R(21, 64));
  EXPECT_TRUE(fake[1].pass && fake[2].pass);
  EXPECT_FALSE(applicable_bounds(dk(Kind::Orthogonal, 4, 4, 2, 2, P, P, P), R(1, 4))[2].pass);
}

#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <set>

#include "nondeg/stingray.hpp"

using namespace nondeg;

namespace {

struct GroupCase {
  Kind kind;
  unsigned d;
  std::uint32_t q;
  Sign eps;
};

std::string name(const GroupCase& c) { return standard_space(c.kind, c.d, c.q, c.eps).describe(); }

const std::vector<GroupCase>& parity_cases() {
  static const std::vector<GroupCase> cases = {
      {Kind::Symplectic, 2, 2, Sign::Circ},  {Kind::Symplectic, 2, 3, Sign::Circ},
      {Kind::Symplectic, 2, 4, Sign::Circ},  {Kind::Symplectic, 4, 2, Sign::Circ},
      {Kind::Symplectic, 4, 3, Sign::Circ},  {Kind::Unitary, 2, 2, Sign::Circ},
      {Kind::Unitary, 2, 3, Sign::Circ},     {Kind::Unitary, 3, 2, Sign::Circ},
      {Kind::Orthogonal, 4, 2, Sign::Plus},  {Kind::Orthogonal, 4, 2, Sign::Minus},
      {Kind::Orthogonal, 4, 3, Sign::Plus},  {Kind::Orthogonal, 4, 3, Sign::Minus},
      {Kind::Orthogonal, 3, 3, Sign::Circ},
  };
  return cases;
}

const IsometryGroup& group(Kind k, unsigned d, std::uint32_t q, Sign eps = Sign::Circ) {
  static std::map<std::string, IsometryGroup> cache;
  const ClassicalSpace V = standard_space(k, d, q, eps);
  auto it = cache.find(V.describe());
  if (it == cache.end()) it = cache.emplace(V.describe(), IsometryGroup::enumerate(V)).first;
  return it->second;
}

Mat mat(const Field& f, std::size_t n, std::vector<Elem> e) { return Mat(f, n, n, std::move(e)); }

double chi_square_p(const std::vector<std::uint64_t>& observed, const std::vector<double>& expected) {
  double stat = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = static_cast<double>(observed[i]) - expected[i];
    stat += d * d / expected[i];
  }
  boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace

TEST(Isometry, RejectsNonIsometries) {
  const ClassicalSpace V = standard_space(Kind::Symplectic, 2, 3);
  const Field& f = V.field();
  EXPECT_NO_THROW(Isometry(V, Mat::identity(f, 2)));
  EXPECT_THROW(Isometry(V, mat(f, 2, {2, 0, 0, 1})), StingrayError);
  const ClassicalSpace O = standard_space(Kind::Orthogonal, 2, 2, Sign::Plus);
  // Swapping the hyperbolic pair preserves Q = x0 x1.
  EXPECT_TRUE(is_isometry(O, mat(O.field(), 2, {0, 1, 1, 0})));
  // The shear e0 -> e0 + e1 keeps the polar form but sends Q(e0) = 0 to 1.
  const Mat shear = mat(O.field(), 2, {1, 1, 0, 1});
  EXPECT_TRUE(restricted_gram(O, shear) == O.gram());
  EXPECT_FALSE(is_isometry(O, shear));
  EXPECT_THROW(Isometry(O, shear), StingrayError);
}

TEST(Profile, Examples) {
  const ClassicalSpace V = standard_space(Kind::Symplectic, 2, 2);
  const Field& f = V.field();
  const StingrayProfile id = profile(Isometry(V, Mat::identity(f, 2)));
  EXPECT_EQ(id.e, 0u);
  EXPECT_EQ(id.F_g.dim(), 2u);
  EXPECT_FALSE(id.is_stingray);
  // Order 3 in SL_2(2): char-poly x^2 + x + 1.
  const Mat g = mat(f, 2, {0, 1, 1, 1});
  EXPECT_EQ(element_order(g), 3u);
  const StingrayProfile p = profile(Isometry(V, g));
  EXPECT_EQ(p.e, 2u);
  EXPECT_EQ(p.F_g.dim(), 0u);
  ASSERT_TRUE(p.restriction);
  EXPECT_EQ(*p.restriction, Poly(f, {1, 1, 1}));
  EXPECT_TRUE(p.is_stingray);
  // Transvection v -> v + beta(v, e0) e0 in Sp_4(2).
  const ClassicalSpace W = standard_space(Kind::Symplectic, 4, 2);
  Mat t = Mat::identity(W.field(), 4);
  t(1, 0) = 1;
  const StingrayProfile tp = profile(Isometry(W, t));
  EXPECT_EQ(tp.e, 1u);
  EXPECT_TRUE(tp.trivial_on_U);
  EXPECT_EQ(*tp.restriction, Poly::linear(W.field(), 1));
  EXPECT_FALSE(tp.is_stingray);
  EXPECT_FALSE(parity_allowed(Kind::Symplectic, 1));
}

TEST(Group, OrdersMatchClosedFormula) {
  std::vector<GroupCase> cases = parity_cases();
  cases.push_back({Kind::Orthogonal, 2, 3, Sign::Plus});
  cases.push_back({Kind::Orthogonal, 2, 3, Sign::Minus});
  cases.push_back({Kind::Unitary, 1, 3, Sign::Circ});
  for (const auto& c : cases) {
    const IsometryGroup& G = group(c.kind, c.d, c.q, c.eps);
    EXPECT_EQ(BigCount(G.size()), group_order(c.kind, c.d, c.q, c.eps)) << name(c);
  }
  EXPECT_EQ(group(Kind::Unitary, 3, 2).size(), 648u);
  EXPECT_EQ(group(Kind::Symplectic, 4, 2).size(), 720u);
  EXPECT_EQ(group(Kind::Orthogonal, 4, 3, Sign::Plus).size(), 1152u);
}

TEST(Group, ElementsAreDistinctIsometriesClosedUnderProducts) {
  for (const auto& c : parity_cases()) {
    if (c.kind == Kind::Symplectic && c.q == 3 && c.d == 4) continue;
    const IsometryGroup& G = group(c.kind, c.d, c.q, c.eps);
    std::set<std::vector<Elem>> seen;
    for (std::size_t i = 0; i < G.size(); ++i) {
      ASSERT_TRUE(is_isometry(G.space(), G[i])) << name(c);
      seen.insert(G[i].entries());
      ASSERT_TRUE((G[i] * G[G.inverse_of(i)]).is_identity());
    }
    EXPECT_EQ(seen.size(), G.size());
    for (std::size_t i = 0; i < G.size(); i += 7)
      for (std::size_t j = 0; j < G.size(); j += 11) ASSERT_NO_THROW(G.index_of(G[i] * G[j])) << name(c);
  }
  Budget b;
  b.group = 719;
  EXPECT_THROW(IsometryGroup::enumerate(standard_space(Kind::Symplectic, 4, 2), b), BudgetError);
}

TEST(Structure, FixedAndImageSpacesForEveryElement) {
  for (const auto& c : parity_cases()) {
    const IsometryGroup& G = group(c.kind, c.d, c.q, c.eps);
    const ClassicalSpace& V = G.space();
    for (const Mat& g : G.elements()) {
      const StingrayProfile p = profile(Isometry(V, g));
      ASSERT_EQ(p.U_g.dim() + p.F_g.dim(), V.dim()) << name(c);
      // beta(v - v^g, f) = 0 for every isometry.
      ASSERT_TRUE((p.U_g.basis() * V.gram() * V.conj(p.F_g.basis()).transpose()).is_zero()) << name(c);
    }
  }
}

TEST(Structure, StingrayStructureAndParityHold) {
  for (const auto& c : parity_cases()) {
    const IsometryGroup& G = group(c.kind, c.d, c.q, c.eps);
    const bool search = c.d <= 4 && c.q <= 3 && G.size() <= 2000;
    std::size_t stingrays = 0;
    for (const Mat& g : G.elements()) {
      const StingrayProfile p = profile(Isometry(G.space(), g));
      if (!p.is_stingray) continue;
      ++stingrays;
      const StructureReport r = verify_structure(p, search);
      ASSERT_TRUE(r.lies_in_image) << name(c);
      ASSERT_TRUE(r.perpendicular && r.nondegenerate && r.perp_is_fixed) << name(c);
      ASSERT_TRUE(r.minus_type) << name(c);
      ASSERT_TRUE(r.parity) << name(c) << " e=" << p.e;
      ASSERT_EQ(r.uniqueness_checked, search);
      ASSERT_TRUE(r.unique_invariant) << name(c);
    }
    EXPECT_GT(stingrays, 0u) << name(c);
  }
}

TEST(Structure, DetectionAgreesWithInvariantSubspaceSearch) {
  const std::vector<GroupCase> tiny = {{Kind::Symplectic, 4, 2, Sign::Circ},
                                       {Kind::Unitary, 2, 2, Sign::Circ},
                                       {Kind::Orthogonal, 4, 2, Sign::Minus},
                                       {Kind::Orthogonal, 4, 3, Sign::Plus},
                                       {Kind::Orthogonal, 3, 3, Sign::Circ}};
  for (const auto& c : tiny) {
    const IsometryGroup& G = group(c.kind, c.d, c.q, c.eps);
    for (const Mat& g : G.elements()) {
      const StingrayProfile p = profile(Isometry(G.space(), g));
      if (p.e == 0) continue;
      const auto irr = irreducible_nontrivial_invariants(G.space(), g);
      const bool found = std::find(irr.begin(), irr.end(), p.U_g) != irr.end();
      ASSERT_EQ(found, p.is_stingray) << name(c) << "\n" << g.to_string();
    }
  }
}

TEST(Census, ClassesHaveConstantFibers) {
  for (const auto& c : parity_cases()) {
    if (c.kind == Kind::Symplectic && c.q == 3 && c.d == 4) continue;
    const IsometryGroup& G = group(c.kind, c.d, c.q, c.eps);
    const ClassCensus cen = class_census(G);
    ASSERT_FALSE(cen.classes.empty()) << name(c);
    for (const auto& k : cen.classes) {
      EXPECT_TRUE(k.fiber_constant) << name(c);
      EXPECT_EQ(k.size, k.subspaces * k.fiber) << name(c);
      if (k.orbit_count_matches) EXPECT_TRUE(*k.orbit_count_matches) << name(c) << " e=" << k.e;
      // |C| = |G : C_G(g)| with the centralizer counted directly.
      const Mat& g = G[k.representative];
      std::uint64_t cent = 0;
      for (const Mat& h : G.elements()) cent += (h * g == g * h);
      EXPECT_EQ(k.size * cent, G.size()) << name(c);
    }
    EXPECT_TRUE(cen.pass());
  }
}

TEST(Census, FrozenClassStructure) {
  // Sp_4(2) = S_6: 40 elements of order 3 with e = 2, 144 of order 5 with e = 4.
  const ClassCensus sp = class_census(group(Kind::Symplectic, 4, 2));
  ASSERT_EQ(sp.classes.size(), 2u);
  EXPECT_EQ(sp.classes[0].e, 2u);
  EXPECT_EQ(sp.classes[0].size, 40u);
  EXPECT_EQ(sp.classes[0].subspaces, 20u);
  EXPECT_EQ(sp.classes[0].fiber, 2u);
  EXPECT_EQ(sp.classes[1].e, 4u);
  EXPECT_EQ(sp.classes[1].size, 144u);
  EXPECT_EQ(sp.classes[1].order, 5u);
  // GU_2(2): two classes of order-3 quasi-reflections, one per non-trivial eigenvalue.
  const ClassCensus gu = class_census(group(Kind::Unitary, 2, 2));
  ASSERT_EQ(gu.classes.size(), 2u);
  for (const auto& k : gu.classes) {
    EXPECT_EQ(k.e, 1u);
    EXPECT_EQ(k.size, 2u);
    EXPECT_EQ(k.fiber, 1u);
  }
  // O+_4(3): reflections (two classes) and one class of e = 2 on the 18 minus planes.
  const ClassCensus o = class_census(group(Kind::Orthogonal, 4, 3, Sign::Plus));
  std::uint64_t reflections = 0;
  for (const auto& k : o.classes) {
    if (k.e == 1) reflections += k.size;
    if (k.e == 2) {
      EXPECT_EQ(k.type, Sign::Minus);
      EXPECT_EQ(k.subspaces, 18u);
      EXPECT_EQ(k.size, 36u);
    }
  }
  EXPECT_EQ(reflections, 24u);
}

TEST(Sampler, UniformOnTinyGroups) {
  const std::vector<GroupCase> tiny = {{Kind::Symplectic, 2, 2, Sign::Circ},
                                       {Kind::Symplectic, 2, 3, Sign::Circ},
                                       {Kind::Unitary, 2, 2, Sign::Circ},
                                       {Kind::Orthogonal, 3, 3, Sign::Circ},
                                       {Kind::Orthogonal, 4, 2, Sign::Plus}};
  for (const auto& c : tiny) {
    const IsometryGroup& G = group(c.kind, c.d, c.q, c.eps);
    const IsometrySampler s(G.space());
    std::mt19937_64 rng(20240601);
    std::vector<std::uint64_t> freq(G.size(), 0);
    const std::uint64_t n = 1000 * G.size();
    for (std::uint64_t k = 0; k < n; ++k) ++freq[G.index_of(s.sample(rng))];
    const double p = chi_square_p(freq, std::vector<double>(G.size(), 1000.0));
    EXPECT_GT(p, 1e-3) << name(c);
  }
}

TEST(Sampler, OrderDistributionMatchesExhaustiveSp43) {
  const IsometryGroup& G = group(Kind::Symplectic, 4, 3);
  // Bins: orders 1..4 individually, then everything else.
  const auto bin = [](const Mat& g) { return std::min<std::uint64_t>(element_order(g), 5) - 1; };
  std::vector<double> expected(5, 0);
  for (const Mat& g : G.elements()) expected[bin(g)] += 1;
  const std::uint64_t n = 10000;
  for (auto& e : expected) e = e * n / static_cast<double>(G.size());
  const IsometrySampler s(G.space());
  std::mt19937_64 rng(7);
  std::vector<std::uint64_t> freq(5, 0);
  for (std::uint64_t k = 0; k < n; ++k) {
    const Mat g = s.sample(rng);
    ASSERT_TRUE(is_isometry(G.space(), g));
    ++freq[bin(g)];
  }
  EXPECT_GT(chi_square_p(freq, expected), 1e-3);
}

TEST(Sampler, DeterministicPerSeed) {
  const ClassicalSpace V = standard_space(Kind::Unitary, 3, 2);
  EXPECT_EQ(sample_isometry(V, 99).matrix(), sample_isometry(V, 99).matrix());
  EXPECT_TRUE(is_isometry(V, sample_isometry(V, 5).matrix()));
  Budget b;
  b.vectors = 63;
  EXPECT_THROW(IsometrySampler(V, b), BudgetError);
}

TEST(DuoRate, ExhaustiveEqualsSubspaceRho) {
  // Sp_4(2), pooled e = e' = 2 and the single class pair.
  const IsometryGroup& sp = group(Kind::Symplectic, 4, 2);
  const ClassCensus spc = class_census(sp);
  const DuoRate a = stingray_duo_rate(sp, spc, {2, std::nullopt}, {2, std::nullopt});
  EXPECT_FALSE(a.empty);
  EXPECT_EQ(a.pairs, 1600u);
  EXPECT_EQ(a.rate, ExactRatio(1, 2));
  ASSERT_TRUE(a.rho);
  EXPECT_TRUE(a.equal);
  const DuoRate b = stingray_duo_rate(sp, spc, {2, 0}, {2, 0});
  EXPECT_EQ(b.rate, a.rate);
  // O+_4(3), e = e' = 2 on minus planes.
  const IsometryGroup& o = group(Kind::Orthogonal, 4, 3, Sign::Plus);
  const ClassCensus oc = class_census(o);
  const DuoRate r = stingray_duo_rate(o, oc, {2, std::nullopt}, {2, std::nullopt});
  ASSERT_TRUE(r.key);
  EXPECT_EQ(r.key->sigma, Sign::Minus);
  EXPECT_EQ(r.rate, ExactRatio(1, 2));
  EXPECT_TRUE(r.equal);
  // e > e' also matches: Sp_4(2) has no room, so use O-_4(3) with e = 2, e' = 1 reflections.
  const IsometryGroup& om = group(Kind::Orthogonal, 4, 3, Sign::Minus);
  const DuoRate mixed = stingray_duo_rate(om, class_census(om), {2, std::nullopt}, {1, std::nullopt});
  EXPECT_FALSE(mixed.empty);
  EXPECT_FALSE(mixed.key);  // odd e' has no subspace census key
  EXPECT_GT(mixed.rate, 0);
}

TEST(DuoRate, SameElementIsNeverADuoAndEdgeCases) {
  const IsometryGroup& sp = group(Kind::Symplectic, 4, 2);
  const ClassCensus spc = class_census(sp);
  for (std::size_t i = 0; i < sp.size(); ++i) {
    if (!spc.class_of[i]) continue;
    const Subspace U(sp.space(), sp[i] - Mat::identity(sp.space().field(), 4));
    ASSERT_FALSE(is_duo(sp.space(), U, U));
  }
  EXPECT_THROW(stingray_duo_rate(sp, spc, {2, std::nullopt}, {4, std::nullopt}), StingrayError);
  EXPECT_TRUE(stingray_duo_rate(sp, spc, {3, std::nullopt}, {1, std::nullopt}).empty);
  EXPECT_THROW(stingray_duo_rate(sp, spc, {2, 1}, {2, std::nullopt}), StingrayError);
}

TEST(DuoRate, MonteCarloSp62WithinFourSigma) {
  const ClassicalSpace V = standard_space(Kind::Symplectic, 6, 2);
  const Mat g = stingray_element(V, 2, std::nullopt, 1);
  const Mat g2 = stingray_element(V, 2, std::nullopt, 2);
  const Estimate est = stingray_duo_rate_sampled(V, g, g2, 100000, 42);
  ASSERT_TRUE(est.exact);
  EXPECT_EQ(*est.exact, ExactRatio(25, 42));
  EXPECT_TRUE(est.within) << est.estimate << " +- " << est.std_error;
  EXPECT_NEAR(est.estimate, 25.0 / 42, 4 * std::sqrt(25.0 / 42 * 17 / 42 / 1e5));
  const Estimate again = stingray_duo_rate_sampled(V, g, g2, 1000, 42);
  const Estimate same = stingray_duo_rate_sampled(V, g, g2, 1000, 42);
  EXPECT_EQ(again.hits, same.hits);
}

TEST(DuoRate, ConstructedElementsLieOnTheRepresentative) {
  const ClassicalSpace V = standard_space(Kind::Orthogonal, 6, 3, Sign::Plus);
  const Mat g = stingray_element(V, 2, Sign::Minus, 3);
  const StingrayProfile p = profile(Isometry(V, g));
  EXPECT_TRUE(p.is_stingray);
  EXPECT_EQ(p.U_g, representative(V, 2, Sign::Minus));
  EXPECT_EQ(p.type, Sign::Minus);
  EXPECT_EQ(g, stingray_element(V, 2, Sign::Minus, 3));
  // Plus-type planes carry no irreducible isometry.
  Budget b;
  b.samples = 200;
  EXPECT_THROW(stingray_element(V, 2, Sign::Plus, 3, b), StingrayError);
}

TEST(TSet, ExhaustiveEqualsRhoAndExceedsOneTwentieth) {
  const IsometryGroup& sp = group(Kind::Symplectic, 4, 2);
  const Subspace U = representative(sp.space(), 2, std::nullopt);
  const TSetRate a = t_set_rate(sp, U, U);
  EXPECT_EQ(a.total, 720u);
  EXPECT_EQ(a.rate, ExactRatio(1, 2));
  EXPECT_TRUE(a.equal);
  EXPECT_TRUE(a.bound_applies && a.above_bound);

  const IsometryGroup& o = group(Kind::Orthogonal, 4, 3, Sign::Plus);
  const Subspace M = representative(o.space(), 2, Sign::Minus);
  const TSetRate b = t_set_rate(o, M, M);
  EXPECT_EQ(b.rate, ExactRatio(1, 2));
  EXPECT_TRUE(b.equal);
  EXPECT_TRUE(b.above_bound);
  const Subspace P = representative(o.space(), 2, Sign::Plus);
  const TSetRate c = t_set_rate(o, P, M);
  EXPECT_EQ(c.rate, ExactRatio(2, 3));
  EXPECT_TRUE(c.equal);

  const IsometryGroup& u = group(Kind::Unitary, 3, 2);
  const Subspace L = representative(u.space(), 1, std::nullopt);
  const TSetRate d = t_set_rate(u, L, L);
  EXPECT_EQ(d.rate, ExactRatio(1, 6));
  EXPECT_TRUE(d.equal);
}

TEST(TSet, SampledAgreesWithExact) {
  const ClassicalSpace V = standard_space(Kind::Orthogonal, 4, 3, Sign::Plus);
  const Subspace M = representative(V, 2, Sign::Minus);
  const TSetRate s = t_set_rate_sampled(V, M, M, 20000, 11);
  EXPECT_FALSE(s.exact_mode);
  ASSERT_TRUE(s.rho);
  EXPECT_EQ(*s.rho, ExactRatio(1, 2));
  EXPECT_TRUE(s.sampled.within) << s.sampled.estimate;
  EXPECT_TRUE(s.above_bound);
}

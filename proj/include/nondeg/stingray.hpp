#pragma once

// Isometry groups of small classical spaces and their stingray elements.
//
// For an isometry g, U_g = image(g - 1) and F_g = kernel(g - 1). g is an
// e-stingray element when dim U_g = e and g acts non-trivially and
// irreducibly on U_g (irreducible characteristic polynomial of the
// restriction). Groups are enumerated or sampled by frame completion: the
// image of basis vector i is any vector outside the span of the earlier
// images whose form values against them match the Gram matrix.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "nondeg/budget.hpp"
#include "nondeg/duos.hpp"

namespace nondeg {

class StingrayError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// g preserves the Gram matrix and, for orthogonal spaces, the quadratic part.
bool is_isometry(const ClassicalSpace& V, const Mat& g);

class Isometry {
 public:
  // Throws StingrayError when g is not an isometry of V.
  Isometry(ClassicalSpace V, Mat g);

  const ClassicalSpace& space() const { return V_; }
  const Mat& matrix() const { return g_; }

 private:
  ClassicalSpace V_;
  Mat g_;
};

// Parity of e for stingray elements: odd for U, even for Sp and O.
// Orthogonal reflections (e = 1, odd q) are exempt.
bool parity_allowed(Kind kind, unsigned e);

struct StingrayProfile {
  Mat element;
  Subspace U_g;
  Subspace F_g;
  unsigned e = 0;
  bool trivial_on_U = true;         // g fixes U_g pointwise
  std::optional<Poly> restriction;  // char-poly of g on U_g, when e > 0
  bool is_stingray = false;
  std::optional<Sign> type;  // orthogonal, e even and U_g non-degenerate
};

StingrayProfile profile(const Isometry& g);

struct StructureReport {
  bool lies_in_image = true;      // 0 != v^g - v in U_g for every v outside F_g
  bool perpendicular = true;      // beta(U_g, F_g) = 0
  bool nondegenerate = true;      // U_g and F_g non-degenerate
  bool perp_is_fixed = true;      // U_g^perp = F_g
  bool minus_type = true;         // orthogonal, e >= 2
  bool parity = true;             // e has the allowed parity
  bool unique_invariant = true;   // only when the invariant-subspace search ran
  bool uniqueness_checked = false;
  bool pass() const {
    return lies_in_image && perpendicular && nondegenerate && perp_is_fixed && minus_type && parity &&
           unique_invariant;
  }
};

// Checks the structure statements for a stingray element. With
// `search_invariant`, also enumerates every <g>-invariant subspace of V and
// confirms U_g is the only one on which g acts non-trivially and
// irreducibly (needs all subspaces within budget.subspaces).
StructureReport verify_structure(const StingrayProfile& p, bool search_invariant, const Budget& budget = {});

// The <g>-invariant subspaces of V, dimension 1..d, in enumeration order.
std::vector<Subspace> invariant_subspaces(const ClassicalSpace& V, const Mat& g, const Budget& budget = {});
// Invariant subspaces containing no smaller non-zero invariant subspace,
// restricted to those on which g acts non-trivially.
std::vector<Subspace> irreducible_nontrivial_invariants(const ClassicalSpace& V, const Mat& g,
                                                        const Budget& budget = {});

// Exact hash of a matrix over a fixed field.
struct MatHash {
  std::size_t operator()(const Mat& m) const;
};

class IsometryGroup {
 public:
  // Every isometry of V, in frame-completion order. Throws BudgetError when
  // the group order exceeds budget.group or |V| exceeds budget.vectors.
  static IsometryGroup enumerate(const ClassicalSpace& V, const Budget& budget = {});

  const ClassicalSpace& space() const { return V_; }
  std::size_t size() const { return elements_.size(); }
  const Mat& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Mat>& elements() const { return elements_; }
  std::size_t index_of(const Mat& g) const;  // throws std::out_of_range
  std::size_t inverse_of(std::size_t i) const { return inverse_[i]; }

 private:
  IsometryGroup(ClassicalSpace V, std::vector<Mat> elements);

  ClassicalSpace V_;
  std::vector<Mat> elements_;
  std::vector<std::size_t> inverse_;
  std::unordered_map<Mat, std::size_t, MatHash> index_;
};

// Uniform sampler over the full isometry group. Each level picks uniformly
// among the admissible images; the counts per level do not depend on the
// earlier choices (Witt), so the product is uniform.
class IsometrySampler {
 public:
  explicit IsometrySampler(const ClassicalSpace& V, const Budget& budget = {});
  ~IsometrySampler();
  IsometrySampler(IsometrySampler&&) noexcept;
  IsometrySampler& operator=(IsometrySampler&&) noexcept;

  Mat sample(std::mt19937_64& rng) const;
  const ClassicalSpace& space() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Isometry sample_isometry(const ClassicalSpace& V, std::uint64_t seed, const Budget& budget = {});

// Element order of an invertible matrix (brute force; throws above `cap`).
std::uint64_t element_order(const Mat& g, std::uint64_t cap = 1'000'000);

struct StingrayClass {
  std::size_t representative = 0;  // index into the group
  unsigned e = 0;
  std::uint64_t order = 0;
  std::string char_poly;  // of g on V
  std::optional<Sign> type;
  std::uint64_t size = 0;        // |C|
  std::uint64_t subspaces = 0;   // |{U_g : g in C}|
  std::uint64_t fiber = 0;       // |C| / |U| when constant
  bool fiber_constant = false;
  bool parity = false;
  // |U| equals the number of non-degenerate e-subspaces of that type; unset
  // when no census key applies (orthogonal reflections).
  std::optional<bool> orbit_count_matches;
  bool pass() const { return fiber_constant && size == subspaces * fiber && orbit_count_matches.value_or(true); }
};

struct ClassCensus {
  std::vector<StingrayClass> classes;  // by first element in group order
  std::vector<std::optional<std::size_t>> class_of;  // per group element; set for stingray elements
  bool pass() const {
    for (const auto& c : classes)
      if (!c.pass()) return false;
    return true;
  }
};

// Partitions the stingray elements of G into conjugacy classes by direct
// conjugation and checks the fiber-size statement for each class.
ClassCensus class_census(const IsometryGroup& G, const Budget& budget = {});

// An e-stingray class selected by e alone (all classes with that e, parity
// respected) or by class index.
struct ClassSelection {
  unsigned e = 0;
  std::optional<std::size_t> class_index;
};

struct DuoRate {
  std::uint64_t pairs = 0;
  std::uint64_t duos = 0;
  ExactRatio rate;                 // duos / pairs (0 when empty)
  bool empty = false;              // no elements selected
  std::optional<DuoKey> key;       // the matching subspace orbit pair
  std::optional<ExactRatio> rho;   // duos-module value for `key`
  bool equal = false;              // rate == rho
};

// Exhaustive count over C x C'. Throws StingrayError when e < e'.
DuoRate stingray_duo_rate(const IsometryGroup& G, const ClassCensus& census, const ClassSelection& first,
                          const ClassSelection& second, const Budget& budget = {});

struct Estimate {
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;
  double estimate = 0;
  double std_error = 0;             // binomial, from the estimate
  std::optional<ExactRatio> exact;  // when computable within budget
  bool within = true;               // |estimate - exact| <= 4 sigma(exact)
};

// A stingray element acting on a representative e-subspace of type sigma
// and trivially on its perp; the action on the subspace is sampled from its
// own isometry group until irreducible.
Mat stingray_element(const ClassicalSpace& V, unsigned e, std::optional<Sign> sigma, std::uint64_t seed,
                     const Budget& budget = {});

// Monte Carlo over C x C' with C = g^G, C' = g2^G, sampling uniform
// conjugates. Parallel over 8 seeded streams (seed + stream index).
Estimate stingray_duo_rate_sampled(const ClassicalSpace& V, const Mat& g, const Mat& g2, std::uint64_t samples,
                                   std::uint64_t seed, const Budget& budget = {});

struct TSetRate {
  bool exact_mode = true;
  std::uint64_t total = 0;
  std::uint64_t hits = 0;
  ExactRatio rate;                // exact mode
  Estimate sampled;               // sampled mode
  DuoKey key;
  std::optional<ExactRatio> rho;
  bool equal = false;             // exact mode: rate == rho
  bool bound_applies = false;     // not orthogonal with q = 2
  bool above_bound = false;       // rate (or estimate) > 1/20
};

// Proportion of h in G with V = E(h) perp (U + U2 h), E(h) = U^perp cap (U2 h)^perp.
TSetRate t_set_rate(const IsometryGroup& G, const Subspace& U, const Subspace& U2, const Budget& budget = {});
TSetRate t_set_rate_sampled(const ClassicalSpace& V, const Subspace& U, const Subspace& U2, std::uint64_t samples,
                            std::uint64_t seed, const Budget& budget = {});

// DuoKey for the orbits of two non-degenerate subspaces.
DuoKey duo_key_for(const ClassicalSpace& V, const Subspace& U, const Subspace& U2);

}  // namespace nondeg

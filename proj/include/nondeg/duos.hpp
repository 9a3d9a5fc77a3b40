#pragma once

// Duo proportions rho(X, V, U, U'): the fraction of pairs (U, U') of
// non-degenerate subspaces with U + U' direct and non-degenerate.
//
// Three routes compute the same exact rational:
//   direct     scan every pair in U x U'
//   fixedU     fix one U and scan U' only (the count is orbit-invariant)
//   reduction  outer formula counts times rho inside a (e+e')-space W,
//              summed over the type of W in the orthogonal case
// and audit_bounds compares the result with the 1 - c/q lower bounds.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nondeg/census.hpp"

namespace nondeg {

class DuoError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DuoKey {
  Kind kind = Kind::Symplectic;
  unsigned d = 0;
  std::uint32_t q = 2;
  Sign eps = Sign::Circ;
  unsigned e = 0;
  std::optional<Sign> sigma;
  unsigned e2 = 0;
  std::optional<Sign> sigma2;

  // e, e2 >= 1, e + e2 <= d, and both census keys valid.
  void validate() const;
  CensusKey first() const;
  CensusKey second() const;
  ClassicalSpace space() const;
  std::string describe() const;
};

enum class DuoMethod { Direct, FixedU, Reduction, Auto };
const char* to_string(DuoMethod m);
DuoMethod parse_method(const std::string& s);

struct BoundCheck {
  std::string name;  // e.g. "sp_general", "o_base"
  ExactRatio bound;
  bool pass = false;
};

struct DuoReport {
  DuoKey key;
  DuoMethod method = DuoMethod::Direct;
  BigCount duo_count;    // duos in U x U'
  BigCount denominator;  // |U| * |U'|
  ExactRatio rho;
  std::vector<BoundCheck> bounds;  // filled by audit_bounds
  bool in_scope = true;            // false for orthogonal q = 2
  bool pass = true;                // all bounds hold (and rho > 0)
};

// U cap U' = 0 and U + U' non-degenerate, via the Gram determinant of the
// stacked bases.
bool is_duo(const ClassicalSpace& V, const Subspace& U, const Subspace& U2);
// Same predicate through E = U^perp cap U'^perp: V = E perp (U + U').
bool is_duo_by_complement(const ClassicalSpace& V, const Subspace& U, const Subspace& U2);

DuoReport rho_direct(const DuoKey& key, const Budget& budget = {});
DuoReport rho_fixed_U(const DuoKey& key, const Budget& budget = {});
DuoReport rho_reduction(const DuoKey& key, const Budget& budget = {});
// Auto: reduction when d > e + e2, direct when d = e + e2, each only while
// the pair scan stays under min(budget.pairs, kAutoPairScan); fixedU
// otherwise.
inline constexpr std::uint64_t kAutoPairScan = 2'000'000;
DuoReport compute_rho(const DuoKey& key, DuoMethod method, const Budget& budget = {});

// Leading coordinate block when it has the right type, otherwise the first
// match in canonical enumeration order.
Subspace representative(const ClassicalSpace& V, unsigned e, std::optional<Sign> sigma,
                        const Budget& budget = {});

// Applicable lower bounds, as exact rationals.
std::vector<BoundCheck> applicable_bounds(const DuoKey& key, const ExactRatio& rho);
DuoReport audit_bounds(DuoReport report);

// Duo counts inside each non-degenerate (e+e2)-subspace W, grouped by the
// type of W (Plus for Sp and U). At most `limit_per_type` W of each type
// are visited (0 = all). Constant values per type are the orbit claim.
std::map<Sign, std::vector<BigCount>> duo_counts_by_span(const DuoKey& key, std::size_t limit_per_type = 0,
                                                         const Budget& budget = {});

// Per-U duo counts over all of U (fixed-U count for every U in the orbit).
std::vector<std::uint64_t> duo_counts_per_U(const DuoKey& key, const Budget& budget = {});

// For a fixed e2-subspace U2 of a space of dimension e + e2, the number of
// e-dimensional duo partners of each type.
std::map<Sign, std::uint64_t> complement_types(const ClassicalSpace& V, const Subspace& U2, unsigned e,
                                               const Budget& budget = {});

}  // namespace nondeg

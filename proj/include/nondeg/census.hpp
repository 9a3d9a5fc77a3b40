#pragma once

// Non-degenerate e-subspace counts: closed formulas and brute-force
// enumeration in canonical echelon order.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "nondeg/budget.hpp"
#include "nondeg/formspace.hpp"
#include "nondeg/qseries.hpp"

namespace nondeg {

class CensusError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CensusKey {
  Kind kind = Kind::Symplectic;
  unsigned d = 0;
  std::uint32_t q = 2;
  Sign eps = Sign::Circ;  // orthogonal only
  unsigned e = 0;
  std::optional<Sign> sigma;  // orthogonal only: Plus or Minus

  // Throws CensusError on inconsistent parameters: Sp needs d, e even; O
  // needs e even, sigma set, eps = Circ exactly when d is odd (q odd then).
  void validate() const;
  ClassicalSpace space() const;
};

enum class CensusMethod { Enumerated, Formula };
const char* to_string(CensusMethod m);

struct CensusResult {
  BigCount count;
  CensusMethod method;
};

// Pivot columns of an e x d reduced echelon basis, lexicographic.
std::vector<std::vector<std::size_t>> pivot_patterns(std::size_t d, std::size_t e);

// Number of e-subspaces of F^d, throwing BudgetError above cap.
std::uint64_t subspace_total(const Field& f, std::size_t d, std::size_t e, std::uint64_t cap);

// Visits every e x d reduced echelon basis with the given pivots. Free
// entries run as an odometer, last free entry fastest.
void for_each_echelon(const Field& f, std::size_t d, const std::vector<std::size_t>& pivots,
                      const std::function<void(const Mat&)>& visit);
// All e-subspaces of F^d: pivot patterns in order, then for_each_echelon.
void for_each_subspace(const Field& f, std::size_t d, std::size_t e, std::uint64_t cap,
                       const std::function<void(const Mat&)>& visit);

// Row space of `basis` (full rank) is non-degenerate, and of type sigma when set.
bool nondegenerate_basis(const ClassicalSpace& V, const Mat& basis, std::optional<Sign> sigma);
// Echelon bases of the non-degenerate e-subspaces (of type sigma when set).
std::vector<Mat> nondegenerate_bases(const ClassicalSpace& V, std::size_t e, std::optional<Sign> sigma,
                                     std::uint64_t cap = Budget{}.subspaces);

std::vector<Subspace> enumerate_subspaces(const ClassicalSpace& V, std::size_t e,
                                          std::uint64_t cap = Budget{}.subspaces);
// Non-degenerate e-subspaces, filtered by type when sigma is set.
std::vector<Subspace> nondegenerate_subspaces(const ClassicalSpace& V, std::size_t e, std::optional<Sign> sigma,
                                              std::uint64_t cap = Budget{}.subspaces);

// Closed-form count; throws std::logic_error if the value is not an integer.
BigCount formula_count(const CensusKey& key);
CensusResult count_nondegenerate(const CensusKey& key, CensusMethod method, const Budget& budget = {});

// Orthogonal: every non-degenerate even-dimensional subspace, regardless of type.
BigCount count_all_nondegenerate(const ClassicalSpace& V, std::size_t e, const Budget& budget = {});

// Type of S^perp equals eps * type(S); S non-degenerate, orthogonal, even dim.
bool perp_type_check(const ClassicalSpace& V, const Subspace& S);

}  // namespace nondeg

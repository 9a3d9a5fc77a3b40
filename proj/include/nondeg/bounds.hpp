#pragma once

// Inequality battery for omega products and q-binomials. Exact rational
// comparisons throughout; log/exp sides use certified enclosures.

#include <string>
#include <vector>

#include "nondeg/qseries.hpp"

namespace nondeg {

struct Check {
  std::string name;
  std::string params;
  bool pass = false;
  // The chain has no members for these parameters; reported, never failed.
  bool vacuous = false;
};

// Per-q data shared by the predicates.
class BatteryContext {
 public:
  BatteryContext(const ExactRatio& q, unsigned nmax);

  const ExactRatio& q() const { return q_; }
  unsigned nmax() const { return nmax_; }
  const ExactRatio& omega(unsigned d, bool is_signed) const;
  const Interval& omega_inf(bool is_signed) const { return is_signed ? inf_signed_ : inf_; }
  const Interval& log_q() const { return log_q_; }

 private:
  ExactRatio q_;
  unsigned nmax_;
  std::vector<ExactRatio> omega_;
  std::vector<ExactRatio> omega_signed_;
  Interval inf_;
  Interval inf_signed_;
  Interval log_q_;
};

// omega(d, q) strictly decreasing down to omega(inf, q) > 1 - q^-1 - q^-2 + q^-5;
// omega(d, -q) even terms increasing, odd terms decreasing, separated by the limit.
std::vector<Check> check_omega_chain(const BatteryContext& ctx);
// Monotone q-binomial chains and their limits, unsigned and signed, for one n.
std::vector<Check> check_binom_chain(const BatteryContext& ctx, unsigned n);
// Bounds on prod (1 + q^-i) and prod (1 + (-q)^-i).
std::vector<Check> check_omega_minus(const BatteryContext& ctx, unsigned n);
// Bounds on omega(b, +-q)/omega(a, +-q) for 1 <= a <= b.
std::vector<Check> check_omega_ratio(const BatteryContext& ctx, unsigned a, unsigned b);
// omega(m-a)omega(m-b)/(omega(m-a-b)omega(m)) > 1 - 1/(q log q) for m > a + b.
std::vector<Check> check_omega_quotient(const BatteryContext& ctx, unsigned m, unsigned a, unsigned b);

struct Battery {
  std::vector<Check> checks;
  std::size_t failures() const;
  std::size_t vacuous() const;
  bool all_pass() const { return failures() == 0; }
};

// Every predicate for each q and all parameters up to nmax.
Battery verify_lemmas(const std::vector<ExactRatio>& qs, unsigned nmax);

}  // namespace nondeg

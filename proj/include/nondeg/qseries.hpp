#pragma once

// Exact rational functions of q evaluated at concrete q: omega products,
// q-binomials, classical group orders, kappa factors and the K sum.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "nondeg/formspace.hpp"

namespace nondeg {

using BigCount = boost::multiprecision::cpp_int;
using ExactRatio = boost::multiprecision::cpp_rational;

class QSeriesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// "num/den" with den > 0 (den = 1 is written).
std::string to_string(const ExactRatio& x);
std::string to_string(const BigCount& x);
// Decimal rounded half away from zero to `digits` places; display only.
std::string to_decimal(const ExactRatio& x, int digits = 6);
ExactRatio parse_ratio(const std::string& s);

// x^n for any integer n (x != 0 when n < 0).
ExactRatio power(const ExactRatio& x, long n);

// prod_{i=1}^{d} (1 - x^{-i}) with x = q, or x = -q when is_signed.
ExactRatio omega(unsigned d, const ExactRatio& q, bool is_signed = false);
// prod_{i=1}^{n} (1 + x^{-i}) with x = q, or x = -q when is_signed.
ExactRatio omega_minus(unsigned n, const ExactRatio& q, bool is_signed = false);

// Closed interval with exact rational endpoints.
struct Interval {
  ExactRatio lo;
  ExactRatio hi;

  static Interval point(const ExactRatio& x) { return {x, x}; }
  ExactRatio width() const { return hi - lo; }
  bool contains(const ExactRatio& x) const { return lo <= x && x <= hi; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
// Certified orderings: true only when the relation holds for every pair of points.
bool certainly_less(const Interval& a, const Interval& b);
bool certainly_leq(const Interval& a, const Interval& b);

// Outward-widened enclosures of log(x) (x > 0) and exp(x). The double result
// is widened by 2^-40 (1 + |value|) relative, which dominates the conversion
// and libm errors; exp(0) is the exact point 1.
Interval log_enclosure(const ExactRatio& x);
Interval exp_enclosure(const ExactRatio& x);
// Exact rational value of a finite double.
ExactRatio exact_from_double(double x);

// Enclosure of omega(infinity, +-q) from `terms` exact factors and a
// geometric tail bound.
Interval omega_infinity_terms(const ExactRatio& q, bool is_signed, unsigned terms);
// As above with the fewest terms (at least min_terms) giving width <= precision.
Interval omega_infinity(const ExactRatio& q, bool is_signed, const ExactRatio& precision, unsigned min_terms = 1);

// Normalized q-binomial omega(n)/(omega(k) omega(n-k)), tending to 1 as q grows.
ExactRatio gauss_binom(unsigned n, unsigned k, const ExactRatio& q, bool is_signed = false);
// Classical Gaussian binomial: the number of k-subspaces of GF(q)^n.
BigCount gauss_binom_count(unsigned n, unsigned k, std::uint64_t q);

// Order of the full isometry group GU_d(q), Sp_d(q) or GO^eps_d(q).
BigCount group_order(Kind kind, unsigned d, std::uint64_t q, Sign eps = Sign::Circ);

// kappa(e, m, eps, sigma) for a space of dimension d = e + m.
ExactRatio kappa(unsigned e, unsigned m, int eps, int sigma, const ExactRatio& q);

ExactRatio abcd_lhs(const ExactRatio& a, const ExactRatio& b, const ExactRatio& c, const ExactRatio& d);
ExactRatio abcd_rhs(const ExactRatio& a, const ExactRatio& b, const ExactRatio& c, const ExactRatio& d);

struct KSum {
  ExactRatio value;
  // (1 - q^-3)(1 - 2q^-2 - 3q^-3 - q^-5) / (1 + q^-2)^2
  ExactRatio bound_fine;
  // 1 - 9/(2q^2)
  ExactRatio bound_coarse;
};

// Sum over tau of the kappa quotient; requires d >= e + e2 + 1, e and e2
// positive and even, eps = 0 exactly when d is odd.
KSum K_sum(unsigned d, unsigned e, unsigned e2, int eps, int sigma, int sigma2, const ExactRatio& q);
// Same value from the cancelled single-fraction form.
ExactRatio K_sum_factored(unsigned d, unsigned e, unsigned e2, int eps, int sigma, int sigma2, const ExactRatio& q);

}  // namespace nondeg

#include "nondeg/qseries.hpp"

#include <algorithm>
#include <cmath>

namespace nondeg {

namespace mp = boost::multiprecision;

std::string to_string(const ExactRatio& x) {
  return mp::numerator(x).str() + "/" + mp::denominator(x).str();
}

std::string to_string(const BigCount& x) { return x.str(); }

std::string to_decimal(const ExactRatio& x, int digits) {
  BigCount scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const bool negative = x < 0;
  const ExactRatio a = negative ? ExactRatio(-x) : x;
  const BigCount num = mp::numerator(a) * scale * 2 + mp::denominator(a);
  const BigCount rounded = num / (mp::denominator(a) * 2);
  std::string s = rounded.str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return (negative && rounded != 0 ? "-" : "") + s;
}

namespace {

// Decimal only; the cpp_int string constructor would read "010" as octal.
BigCount parse_decimal(const std::string& s, const std::string& whole) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) throw QSeriesError("not a rational number: '" + whole + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') throw QSeriesError("not a rational number: '" + whole + "'");
  while (i + 1 < s.size() && s[i] == '0') ++i;
  const BigCount v(s.substr(i));
  return s[0] == '-' ? BigCount(-v) : v;
}

}  // namespace

ExactRatio parse_ratio(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return ExactRatio(parse_decimal(s, s));
  const BigCount den = parse_decimal(s.substr(slash + 1), s);
  if (den == 0) throw QSeriesError("zero denominator in '" + s + "'");
  const BigCount num = parse_decimal(s.substr(0, slash), s);
  return den < 0 ? ExactRatio(BigCount(-num), BigCount(-den)) : ExactRatio(num, den);
}

ExactRatio power(const ExactRatio& x, long n) {
  if (n < 0) {
    if (x == 0) throw QSeriesError("zero to a negative power");
    return power(ExactRatio(1) / x, -n);
  }
  ExactRatio r = 1, b = x;
  for (unsigned long e = static_cast<unsigned long>(n); e; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

namespace {

void require_q(const ExactRatio& q) {
  if (q <= 1) throw QSeriesError("q must exceed 1");
}

}  // namespace

ExactRatio omega(unsigned d, const ExactRatio& q, bool is_signed) {
  require_q(q);
  const ExactRatio inv = ExactRatio(1) / (is_signed ? ExactRatio(-q) : q);
  ExactRatio r = 1, x = 1;
  for (unsigned i = 1; i <= d; ++i) {
    x *= inv;
    r *= 1 - x;
  }
  return r;
}

ExactRatio omega_minus(unsigned n, const ExactRatio& q, bool is_signed) {
  require_q(q);
  const ExactRatio inv = ExactRatio(1) / (is_signed ? ExactRatio(-q) : q);
  ExactRatio r = 1, x = 1;
  for (unsigned i = 1; i <= n; ++i) {
    x *= inv;
    r *= 1 + x;
  }
  return r;
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  const ExactRatio p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo <= 0 && b.hi >= 0) throw QSeriesError("interval division by an interval containing zero");
  return a * Interval{ExactRatio(1) / b.hi, ExactRatio(1) / b.lo};
}

bool certainly_less(const Interval& a, const Interval& b) { return a.hi < b.lo; }
bool certainly_leq(const Interval& a, const Interval& b) { return a.hi <= b.lo; }

ExactRatio exact_from_double(double x) {
  if (!std::isfinite(x)) throw QSeriesError("non-finite double");
  if (x == 0) return 0;
  int exp = 0;
  const double m = std::frexp(x, &exp);
  const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  ExactRatio r(mant);
  return r * power(ExactRatio(2), static_cast<long>(exp) - 53);
}

namespace {

const ExactRatio& widen_unit() {
  static const ExactRatio u = power(ExactRatio(2), -40);
  return u;
}

}  // namespace

Interval log_enclosure(const ExactRatio& x) {
  if (x <= 0) throw QSeriesError("log of a non-positive number");
  if (x == 1) return Interval::point(0);
  const double v = std::log(x.convert_to<double>());
  const ExactRatio c = exact_from_double(v);
  const ExactRatio m = widen_unit() * (1 + mp::abs(c));
  return {c - m, c + m};
}

Interval exp_enclosure(const ExactRatio& x) {
  if (x == 0) return Interval::point(1);
  const double xd = x.convert_to<double>();
  if (std::fabs(xd) > 600) throw QSeriesError("exp argument out of range");
  const ExactRatio c = exact_from_double(std::exp(xd));
  const ExactRatio m = widen_unit() * (1 + mp::abs(x));
  return {c * (1 - m), c * (1 + m)};
}

Interval omega_infinity_terms(const ExactRatio& q, bool is_signed, unsigned terms) {
  require_q(q);
  const ExactRatio p = omega(terms, q, is_signed);
  // Sum of q^-i over i > terms.
  const ExactRatio s = power(q, -static_cast<long>(terms)) / (q - 1);
  if (!is_signed) return {p * (1 - s), p};
  // Each remaining factor lies in [1 - q^-i, 1 + q^-i]; their product lies
  // in [1 - s, exp(s)] and exp(s) <= 1 + 2s for s <= 1.
  if (s > 1) throw QSeriesError("too few terms for the tail bound");
  return {p * (1 - s), p * (1 + 2 * s)};
}

Interval omega_infinity(const ExactRatio& q, bool is_signed, const ExactRatio& precision, unsigned min_terms) {
  require_q(q);
  if (precision <= 0) throw QSeriesError("precision must be positive");
  unsigned n = std::max(1u, min_terms);
  // Width is at most 3 p s with p <= 2.
  while (6 * power(q, -static_cast<long>(n)) / (q - 1) > precision) ++n;
  return omega_infinity_terms(q, is_signed, n);
}

ExactRatio gauss_binom(unsigned n, unsigned k, const ExactRatio& q, bool is_signed) {
  if (k > n) throw QSeriesError("binomial index out of range");
  return omega(n, q, is_signed) / (omega(k, q, is_signed) * omega(n - k, q, is_signed));
}

namespace {

BigCount as_integer(const ExactRatio& x, const char* what) {
  if (mp::denominator(x) != 1) throw std::logic_error(std::string(what) + " is not an integer: " + to_string(x));
  return mp::numerator(x);
}

}  // namespace

BigCount gauss_binom_count(unsigned n, unsigned k, std::uint64_t q) {
  if (q < 2) throw QSeriesError("q must be at least 2");
  const ExactRatio qq(q);
  return as_integer(power(qq, static_cast<long>(k) * (n - k)) * gauss_binom(n, k, qq), "Gaussian binomial");
}

BigCount group_order(Kind kind, unsigned d, std::uint64_t q, Sign eps) {
  if (q < 2) throw QSeriesError("q must be at least 2");
  const ExactRatio qq(q);
  switch (kind) {
    case Kind::Unitary:
      if (d < 1) throw QSeriesError("unitary dimension must be positive");
      return as_integer(power(qq, static_cast<long>(d) * d) * omega(d, qq, true), "|GU|");
    case Kind::Symplectic:
      if (d < 2 || d % 2) throw QSeriesError("symplectic dimension must be even and positive");
      return as_integer(power(qq, static_cast<long>(d) * (d + 1) / 2) * omega(d / 2, qq * qq), "|Sp|");
    case Kind::Orthogonal: {
      if (d < 1) throw QSeriesError("orthogonal dimension must be positive");
      if ((d % 2 == 1) != (eps == Sign::Circ)) throw QSeriesError("type circ exactly when d is odd");
      if (d % 2 == 1 && q % 2 == 0) throw QSeriesError("odd-dimensional orthogonal groups need odd q");
      const long h = d / 2;
      const ExactRatio v = 2 * power(qq, static_cast<long>(d) * (d - 1) / 2) * omega(static_cast<unsigned>(h), qq * qq) /
                           (1 + to_int(eps) * power(qq, -h));
      return as_integer(v, "|GO|");
    }
  }
  throw QSeriesError("unknown kind");
}

ExactRatio kappa(unsigned e, unsigned m, int eps, int sigma, const ExactRatio& q) {
  require_q(q);
  if (e % 2) throw QSeriesError("kappa needs even e");
  if (sigma != 1 && sigma != -1) throw QSeriesError("sigma must be +1 or -1");
  const unsigned d = e + m;
  if (eps < -1 || eps > 1 || ((d % 2 == 1) != (eps == 0))) throw QSeriesError("eps is 0 exactly when d is odd");
  const long h = d / 2, he = e / 2;
  return (1 + sigma * power(q, -he)) * (1 + eps * sigma * power(q, -h + he)) / (2 * (1 + eps * power(q, -h)));
}

ExactRatio abcd_lhs(const ExactRatio& a, const ExactRatio& b, const ExactRatio& c, const ExactRatio& d) {
  if (d == 1 || d == -1) throw QSeriesError("delta must differ from +-1");
  ExactRatio s = 0;
  for (int t : {-1, 1}) s += (1 - t * a) * (1 - t * b) * (1 - t * c) / (1 + t * d);
  return s / 2;
}

ExactRatio abcd_rhs(const ExactRatio& a, const ExactRatio& b, const ExactRatio& c, const ExactRatio& d) {
  if (d == 1 || d == -1) throw QSeriesError("delta must differ from +-1");
  return (1 + a * b + a * c + a * d + b * c + b * d + c * d + a * b * c * d) / (1 - d * d);
}

namespace {

void check_K_params(unsigned d, unsigned e, unsigned e2, int eps, int sigma, int sigma2) {
  if (e == 0 || e2 == 0 || e % 2 || e2 % 2) throw QSeriesError("e and e2 must be positive and even");
  if (d < e + e2 + 1) throw QSeriesError("K needs d >= e + e2 + 1");
  if ((d % 2 == 1) != (eps == 0) || eps < -1 || eps > 1) throw QSeriesError("eps is 0 exactly when d is odd");
  for (int s : {sigma, sigma2})
    if (s != 1 && s != -1) throw QSeriesError("sigma must be +1 or -1");
}

}  // namespace

KSum K_sum(unsigned d, unsigned e, unsigned e2, int eps, int sigma, int sigma2, const ExactRatio& q) {
  check_K_params(d, e, e2, eps, sigma, sigma2);
  const ExactRatio den = kappa(e, d - e, eps, sigma, q) * kappa(e2, d - e2, eps, sigma2, q);
  ExactRatio v = 0;
  for (int tau : {-1, 1})
    v += kappa(e + e2, d - e - e2, eps, tau, q) * kappa(e, e2, tau, sigma, q) * kappa(e2, e, tau, sigma2, q);
  const ExactRatio qi = 1 / q;
  const ExactRatio fine = (1 - power(qi, 3)) * (1 - 2 * power(qi, 2) - 3 * power(qi, 3) - power(qi, 5)) /
                          power(1 + power(qi, 2), 2);
  return {v / den, fine, 1 - ExactRatio(9, 2) * power(qi, 2)};
}

ExactRatio K_sum_factored(unsigned d, unsigned e, unsigned e2, int eps, int sigma, int sigma2, const ExactRatio& q) {
  check_K_params(d, e, e2, eps, sigma, sigma2);
  require_q(q);
  const long h = d / 2, he = e / 2, he2 = e2 / 2;
  ExactRatio lambda = 0;
  for (int tau : {-1, 1})
    lambda += (1 + eps * tau * power(q, -h + he + he2)) * (1 + tau * sigma * power(q, -he2)) *
              (1 + tau * sigma2 * power(q, -he)) / (1 + tau * power(q, -(he + he2)));
  lambda /= 2;
  return (1 + eps * power(q, -h)) /
         ((1 + eps * sigma * power(q, -h + he)) * (1 + eps * sigma2 * power(q, -h + he2))) * lambda;
}

}  // namespace nondeg

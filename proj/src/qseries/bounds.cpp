#include "nondeg/bounds.hpp"

#include <algorithm>
#include <sstream>

namespace nondeg {

namespace {

std::string fmt(std::initializer_list<std::pair<const char*, long>> kv, const ExactRatio& q) {
  std::ostringstream os;
  os << "q=" << to_string(q);
  for (const auto& [k, v] : kv) os << ' ' << k << '=' << v;
  return os.str();
}

Interval inverse(const Interval& x) { return Interval::point(1) / x; }

long floor_div2(long x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

}  // namespace

BatteryContext::BatteryContext(const ExactRatio& q, unsigned nmax) : q_(q), nmax_(nmax) {
  if (q < 2) throw QSeriesError("the battery needs q >= 2");
  omega_.push_back(1);
  omega_signed_.push_back(1);
  for (unsigned d = 1; d <= nmax + 1; ++d) {
    omega_.push_back(omega_.back() * (1 - power(q, -static_cast<long>(d))));
    omega_signed_.push_back(omega_signed_.back() * (1 - power(ExactRatio(-q), -static_cast<long>(d))));
  }
  // Enough terms that the enclosure is far narrower than any gap at n <= nmax.
  const unsigned terms = 3 * nmax + 40;
  inf_ = omega_infinity_terms(q, false, terms);
  inf_signed_ = omega_infinity_terms(q, true, terms);
  log_q_ = log_enclosure(q);
  if (log_q_.lo <= 0) throw QSeriesError("log enclosure not positive");
}

const ExactRatio& BatteryContext::omega(unsigned d, bool is_signed) const {
  if (d > nmax_ + 1) throw QSeriesError("omega index beyond context");
  return is_signed ? omega_signed_[d] : omega_[d];
}

std::vector<Check> check_omega_chain(const BatteryContext& ctx) {
  std::vector<Check> out;
  const ExactRatio& q = ctx.q();
  const unsigned n = ctx.nmax();
  const auto P = [](const ExactRatio& x) { return Interval::point(x); };
  const ExactRatio qi = 1 / q;

  const ExactRatio floor_val = 1 - qi - qi * qi + power(qi, 5);
  out.push_back({"omega_inf_lower", fmt({}, q), certainly_less(P(floor_val), ctx.omega_inf(false))});
  bool mono = true;
  for (unsigned d = 0; d < n; ++d) mono = mono && ctx.omega(d + 1, false) < ctx.omega(d, false);
  out.push_back({"omega_decreasing", fmt({{"d_max", n}}, q), mono && ctx.omega(0, false) == 1});
  out.push_back({"omega_inf_below_partial", fmt({{"d", n}}, q),
                 certainly_less(ctx.omega_inf(false), P(ctx.omega(n, false)))});

  bool even_up = true, odd_down = true;
  for (unsigned d = 0; d + 2 <= n; d += 2) even_up = even_up && ctx.omega(d, true) < ctx.omega(d + 2, true);
  for (unsigned d = 1; d + 2 <= n; d += 2) odd_down = odd_down && ctx.omega(d + 2, true) < ctx.omega(d, true);
  out.push_back({"omega_signed_even_increasing", fmt({{"d_max", n}}, q), even_up && ctx.omega(0, true) == 1});
  out.push_back({"omega_signed_odd_decreasing", fmt({{"d_max", n}}, q), odd_down});
  out.push_back({"omega_signed_first", fmt({}, q), ctx.omega(1, true) == 1 + qi});
  const unsigned top_even = n - n % 2;
  const unsigned top_odd = n % 2 ? n : n - 1;
  out.push_back({"omega_signed_even_below_limit", fmt({{"d", top_even}}, q),
                 certainly_less(P(ctx.omega(top_even, true)), ctx.omega_inf(true))});
  if (n >= 1)
    out.push_back({"omega_signed_limit_below_odd", fmt({{"d", top_odd}}, q),
                   certainly_less(ctx.omega_inf(true), P(ctx.omega(top_odd, true)))});
  return out;
}

std::vector<Check> check_binom_chain(const BatteryContext& ctx, unsigned n) {
  std::vector<Check> out;
  const ExactRatio& q = ctx.q();
  const auto P = [](const ExactRatio& x) { return Interval::point(x); };
  const auto binom = [&](unsigned k, bool s) {
    return ctx.omega(n, s) / (ctx.omega(k, s) * ctx.omega(n - k, s));
  };
  const unsigned half = n / 2;
  const ExactRatio qi = 1 / q;

  bool mono = binom(0, false) == 1;
  for (unsigned k = 1; k <= half; ++k) mono = mono && binom(k - 1, false) < binom(k, false);
  out.push_back({"binom_increasing", fmt({{"n", n}}, q), mono});
  const Interval inv_inf = inverse(ctx.omega_inf(false));
  out.push_back({"binom_middle_below_limit", fmt({{"n", n}}, q), certainly_less(P(binom(half, false)), inv_inf)});
  out.push_back({"binom_limit_below_floor", fmt({{"n", n}}, q),
                 certainly_less(inv_inf, P(1 / (1 - qi - qi * qi)))});

  const Interval inv_inf_s = inverse(ctx.omega_inf(true));
  if (n >= 1)
    out.push_back({"binom_signed_first", fmt({{"n", n}}, q),
                   binom(1, true) == (1 - power(ExactRatio(-q), -static_cast<long>(n))) / (1 + qi)});
  const long i = floor_div2(static_cast<long>(half) - 1);
  const long j = static_cast<long>(half) / 2;
  Check odd{"binom_signed_odd_chain", fmt({{"n", n}, {"i", i}}, q)};
  if (i < 0) {
    odd.pass = true;
    odd.vacuous = true;
  } else {
    bool ok = 2 * i + 1 <= static_cast<long>(half);
    for (long k = 3; k <= 2 * i + 1; k += 2)
      ok = ok && binom(static_cast<unsigned>(k - 2), true) < binom(static_cast<unsigned>(k), true);
    ok = ok && certainly_less(P(binom(static_cast<unsigned>(2 * i + 1), true)), inv_inf_s);
    odd.pass = ok;
  }
  out.push_back(odd);
  bool even = 2 * j <= static_cast<long>(half) && binom(0, true) == 1;
  even = even && certainly_less(inv_inf_s, P(binom(static_cast<unsigned>(2 * j), true)));
  for (long k = 2; k <= 2 * j; k += 2)
    even = even && binom(static_cast<unsigned>(k), true) < binom(static_cast<unsigned>(k - 2), true);
  out.push_back({"binom_signed_even_chain", fmt({{"n", n}, {"j", j}}, q), even});
  return out;
}

std::vector<Check> check_omega_minus(const BatteryContext& ctx, unsigned n) {
  std::vector<Check> out;
  const ExactRatio& q = ctx.q();
  const ExactRatio qi = 1 / q;
  const ExactRatio w = omega_minus(n, q, false);
  const ExactRatio lower = (1 - power(qi, n + 1)) / (1 - qi);
  out.push_back({"omega_minus_lower", fmt({{"n", n}}, q), lower <= w});
  const ExactRatio arg = qi * (1 - power(qi, n)) / (1 - qi);
  out.push_back({"omega_minus_exp_upper", fmt({{"n", n}}, q), certainly_leq(Interval::point(w), exp_enclosure(arg))});
  const ExactRatio ws = omega_minus(n, q, true);
  out.push_back({"omega_minus_signed_bracket", fmt({{"n", n}}, q), 1 - qi <= ws && ws <= 1});
  return out;
}

std::vector<Check> check_omega_ratio(const BatteryContext& ctx, unsigned a, unsigned b) {
  if (a < 1 || a > b) throw QSeriesError("ratio bounds need 1 <= a <= b");
  std::vector<Check> out;
  const ExactRatio& q = ctx.q();
  const std::string p = fmt({{"a", a}, {"b", b}}, q);
  const Interval& L = ctx.log_q();
  const ExactRatio qa = power(q, -static_cast<long>(a)), qb = power(q, -static_cast<long>(b));
  const ExactRatio r = ctx.omega(b, false) / ctx.omega(a, false);
  out.push_back({"ratio_log_strict", p, certainly_less(Interval::point(0), Interval::point(qb) / L)});
  out.push_back({"ratio_log_lower", p, certainly_leq(Interval::point(1 - r) * L, Interval::point(qa - qb))});
  out.push_back({"ratio_at_most_one", p, r <= 1});
  const ExactRatio s = ctx.omega(b, true) / ctx.omega(a, true);
  const ExactRatio qa1 = qa / q;
  const ExactRatio q2 = 1 / (q * q);
  out.push_back({"ratio_signed_bracket", p, 1 - q2 <= 1 - qa1 && 1 - qa1 <= s && s <= 1 + qa1 && 1 + qa1 <= 1 + q2});
  return out;
}

std::vector<Check> check_omega_quotient(const BatteryContext& ctx, unsigned m, unsigned a, unsigned b) {
  if (a < 1 || b < 1 || m <= a + b) throw QSeriesError("quotient bound needs a, b >= 1 and m > a + b");
  const ExactRatio& q = ctx.q();
  const ExactRatio y = ctx.omega(m - a, false) * ctx.omega(m - b, false) /
                       (ctx.omega(m - a - b, false) * ctx.omega(m, false));
  const bool ok = certainly_less(Interval::point((1 - y) * q) * ctx.log_q(), Interval::point(1));
  return {{"omega_quotient", fmt({{"m", m}, {"a", a}, {"b", b}}, q), ok}};
}

std::size_t Battery::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

std::size_t Battery::vacuous() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.vacuous; }));
}

Battery verify_lemmas(const std::vector<ExactRatio>& qs, unsigned nmax) {
  Battery out;
  const auto take = [&out](std::vector<Check> v) {
    for (auto& c : v) out.checks.push_back(std::move(c));
  };
  for (const auto& q : qs) {
    const BatteryContext ctx(q, nmax);
    take(check_omega_chain(ctx));
    for (unsigned n = 0; n <= nmax; ++n) take(check_binom_chain(ctx, n));
    for (unsigned n = 0; n <= nmax; ++n) take(check_omega_minus(ctx, n));
    for (unsigned a = 1; a <= nmax; ++a)
      for (unsigned b = a; b <= nmax; ++b) take(check_omega_ratio(ctx, a, b));
    for (unsigned m = 3; m <= nmax; ++m)
      for (unsigned a = 1; a + 1 < m; ++a)
        for (unsigned b = 1; a + b < m; ++b) take(check_omega_quotient(ctx, m, a, b));
  }
  return out;
}

}  // namespace nondeg

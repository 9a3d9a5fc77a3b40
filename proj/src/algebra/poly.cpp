#include "nondeg/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace nondeg {

Poly::Poly(Field field, std::vector<Elem> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
  for (Elem e : c_) {
    if (!field_.contains(e)) throw FieldError("polynomial coefficient outside field");
  }
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const Field& f, Elem c) { return Poly(f, {c}); }

Poly Poly::x(const Field& f) { return Poly(f, {0, 1}); }

Poly Poly::linear(const Field& f, Elem root) { return Poly(f, {f.neg(root), 1}); }

Elem Poly::eval(Elem at) const {
  Elem acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, at), c_[i]);
  return acc;
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return scaled(field_.inv(c_.back()));
}

Poly Poly::reversed() const {
  if (c_.empty() || c_.front() == 0)
    throw std::invalid_argument("reverse polynomial needs nonzero constant term");
  std::vector<Elem> r(c_.rbegin(), c_.rend());
  return Poly(field_, std::move(r)).scaled(field_.inv(c_.front()));
}

Poly Poly::scaled(Elem s) const {
  std::vector<Elem> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = field_.mul(c_[i], s);
  return Poly(field_, std::move(out));
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Elem> out(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_.add(coeff(i), o.coeff(i));
  return Poly(field_, std::move(out));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Elem> out(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_.sub(coeff(i), o.coeff(i));
  return Poly(field_, std::move(out));
}

Poly Poly::operator*(const Poly& o) const {
  if (c_.empty() || o.c_.empty()) return Poly(field_);
  std::vector<Elem> out(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      out[i + j] = field_.add(out[i + j], field_.mul(c_[i], o.c_[j]));
  }
  return Poly(field_, std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Elem> rem = c_;
  const int dd = divisor.degree();
  if (degree() < dd) return {Poly(field_), *this};
  std::vector<Elem> quot(static_cast<std::size_t>(degree() - dd + 1), 0);
  const Elem lead_inv = field_.inv(divisor.leading());
  for (int i = degree(); i >= dd; --i) {
    const Elem c = rem[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const Elem t = field_.mul(c, lead_inv);
    quot[static_cast<std::size_t>(i - dd)] = t;
    for (int j = 0; j <= dd; ++j) {
      auto& r = rem[static_cast<std::size_t>(i - dd + j)];
      r = field_.sub(r, field_.mul(t, divisor.c_[static_cast<std::size_t>(j)]));
    }
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Poly(field_, std::move(quot)), Poly(field_, std::move(rem))};
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c_[i] != 1) os << "[" << c_[i] << "]";
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly powmod(const Poly& base, std::uint64_t n, const Poly& m) {
  Poly result = Poly::constant(base.field(), 1) % m;
  Poly b = base % m;
  while (n > 0) {
    if (n & 1) result = (result * b) % m;
    n >>= 1;
    if (n > 0) b = (b * b) % m;
  }
  return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) throw std::invalid_argument("irreducibility test needs degree >= 1");
  if (!f.is_monic()) throw std::invalid_argument("irreducibility test needs a monic polynomial");
  const auto n = static_cast<std::uint64_t>(f.degree());
  if (n == 1) return true;
  const Field& F = f.field();
  const std::uint64_t Q = F.order();
  const Poly x = Poly::x(F);

  // frob[m] = x^(Q^m) mod f, computed by repeated Q-th powers.
  std::vector<Poly> frob;
  frob.reserve(n + 1);
  frob.push_back(x % f);
  for (std::uint64_t m = 1; m <= n; ++m) frob.push_back(powmod(frob.back(), Q, f));

  if (!(frob[n] == x % f)) return false;
  for (std::uint64_t l : prime_factors(n)) {
    const Poly g = gcd(f, frob[n / l] - x);
    if (g.degree() != 0) return false;
  }
  return true;
}

}  // namespace nondeg

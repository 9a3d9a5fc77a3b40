#pragma once

// Univariate polynomials over a Field, coefficients stored constant-first.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nondeg/field.hpp"

namespace nondeg {

class Poly {
 public:
  static constexpr int kZeroDegree = -1;

  explicit Poly(Field field) : field_(std::move(field)) {}
  Poly(Field field, std::vector<Elem> coeffs);

  static Poly constant(const Field& f, Elem c);
  static Poly x(const Field& f);
  // Monic x - a.
  static Poly linear(const Field& f, Elem root);

  const Field& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Elem leading() const { return c_.empty() ? 0 : c_.back(); }
  Elem eval(Elem at) const;

  Poly monic() const;
  // f^rev(t) = f(0)^-1 t^deg f(1/t); requires f(0) != 0.
  Poly reversed() const;
  // Apply a coefficient map (e.g. x -> x^q).
  template <class Fn>
  Poly map_coeffs(Fn&& fn) const {
    std::vector<Elem> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = fn(c_[i]);
    return Poly(field_, std::move(out));
  }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator%(const Poly& o) const { return divmod(o).second; }
  Poly operator/(const Poly& o) const { return divmod(o).first; }
  Poly scaled(Elem s) const;
  bool operator==(const Poly& o) const { return c_ == o.c_ && field_ == o.field_; }

  std::pair<Poly, Poly> divmod(const Poly& divisor) const;

  std::string to_string() const;

 private:
  void trim();

  Field field_;
  std::vector<Elem> c_;
};

Poly gcd(Poly a, Poly b);
// base^n mod m.
Poly powmod(const Poly& base, std::uint64_t n, const Poly& m);

// Rabin's test: f of degree n is irreducible iff x^(Q^n) = x mod f and
// gcd(x^(Q^(n/l)) - x, f) = 1 for every prime l | n, where Q = |field|.
// Throws std::invalid_argument on non-monic or constant input.
bool is_irreducible(const Poly& f);

// Distinct prime divisors, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace nondeg

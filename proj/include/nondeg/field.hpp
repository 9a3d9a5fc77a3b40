#pragma once

// Finite fields GF(p^k) with canonical integer-coded elements.
//
// An element is the residue polynomial c_0 + c_1 x + ... + c_{k-1} x^{k-1}
// modulo the field's defining polynomial, stored as the integer
// c_0 + c_1 p + ... + c_{k-1} p^{k-1}. Every element has exactly one code.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nondeg {

using Elem = std::uint32_t;

inline constexpr std::uint64_t kDefaultFieldBudget = std::uint64_t{1} << 20;

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime(std::uint64_t n);

class Field {
 public:
  // Lexicographically least monic irreducible modulus of degree k over GF(p);
  // the modulus of a prime field (k = 1) is x.
  static Field make(std::uint32_t p, unsigned k,
                    std::uint64_t budget = kDefaultFieldBudget);

  // Convenience for a prime power order q = p^k.
  static Field of_order(std::uint32_t q,
                        std::uint64_t budget = kDefaultFieldBudget);

  std::uint32_t characteristic() const { return impl_->p; }
  unsigned degree() const { return impl_->k; }
  std::uint32_t order() const { return impl_->q; }
  bool is_prime_field() const { return impl_->k == 1; }

  // Coefficients over GF(p), constant term first; size degree()+1, monic.
  const std::vector<std::uint32_t>& modulus() const { return impl_->modulus; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t n) const;

  // x -> x^p.
  Elem frobenius(Elem a) const;
  // x -> x^(p^times).
  Elem frobenius(Elem a, unsigned times) const;

  // Image of an integer under Z -> GF(p) -> GF(p^k).
  Elem from_int(std::int64_t n) const;
  bool in_prime_field(Elem a) const { return a < impl_->p; }
  bool contains(Elem a) const { return a < impl_->q; }

  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(std::span<const std::uint32_t> coeffs) const;

  // A generator of the multiplicative group (least code).
  Elem primitive_element() const { return impl_->generator; }

  // Polynomial-arithmetic multiplication, bypassing all tables. Used as the
  // reference that the table paths must agree with.
  Elem mul_reference(Elem a, Elem b) const;
  Elem add_reference(Elem a, Elem b) const;

  // Embedding GF(p^m) -> this field for m | k, defined by sending the
  // generator x of the smaller field to the least root of its modulus here.
  Elem embed(const Field& sub, Elem a) const;

  std::string name() const;

  bool operator==(const Field& other) const {
    return impl_ == other.impl_ ||
           (impl_->p == other.impl_->p && impl_->k == other.impl_->k);
  }

 private:
  struct Impl {
    std::uint32_t p = 0;
    unsigned k = 0;
    std::uint32_t q = 0;
    std::vector<std::uint32_t> modulus;
    Elem generator = 1;
    std::vector<std::uint32_t> exp_table;  // generator^i, i < 2(q-1)
    std::vector<std::uint32_t> log_table;  // log_generator(a), a != 0
    std::vector<std::uint32_t> add_table;  // q*q when q <= kAddTableMax
    std::vector<std::uint32_t> pow_p;      // p^i
  };

  static constexpr std::uint32_t kAddTableMax = 256;
  static constexpr std::uint32_t kLogTableMax = std::uint32_t{1} << 16;

  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  Elem add_digits(Elem a, Elem b, bool subtract) const;

  std::shared_ptr<const Impl> impl_;
};

}  // namespace nondeg

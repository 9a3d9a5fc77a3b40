#include "nondeg/field.hpp"

#include <sstream>

#include "nondeg/poly.hpp"

namespace nondeg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

namespace {

// Multiply residues given as GF(p) coefficient vectors modulo a monic modulus.
std::vector<std::uint32_t> mulmod_digits(const std::vector<std::uint32_t>& a,
                                         const std::vector<std::uint32_t>& b,
                                         const std::vector<std::uint32_t>& modulus,
                                         std::uint32_t p) {
  const std::size_t k = modulus.size() - 1;
  std::vector<std::uint64_t> prod(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  for (std::size_t i = 2 * k - 1; i >= k; --i) {
    const std::uint64_t c = prod[i] % p;
    if (c == 0) continue;
    prod[i] = 0;
    // x^i = x^(i-k) * x^k and x^k = -sum_{j<k} modulus[j] x^j.
    for (std::size_t j = 0; j < k; ++j) {
      prod[i - k + j] = (prod[i - k + j] + (p - modulus[j]) % p * c) % p;
    }
  }
  std::vector<std::uint32_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<std::uint32_t>(prod[i] % p);
  return out;
}

}  // namespace

Field Field::make(std::uint32_t p, unsigned k, std::uint64_t budget) {
  if (!is_prime(p)) throw FieldError("field characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw FieldError("field degree must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > budget) throw FieldError("field order " + std::to_string(p) + "^" + std::to_string(k) +
                                     " exceeds budget " + std::to_string(budget));
  }

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->k = k;
  impl->q = static_cast<std::uint32_t>(q);
  impl->pow_p.resize(k + 1);
  impl->pow_p[0] = 1;
  for (unsigned i = 1; i <= k; ++i) impl->pow_p[i] = impl->pow_p[i - 1] * p;

  if (k == 1) {
    impl->modulus = {0, 1};
  } else {
    // Candidates x^k + c_{k-1} x^{k-1} + ... + c_0 in increasing order of the
    // code sum c_i p^i, i.e. lexicographic on (c_{k-1}, ..., c_0).
    const Field prime = make(p, 1, budget);
    const std::uint32_t count = impl->pow_p[k];
    for (std::uint32_t code = 0; code < count; ++code) {
      std::vector<Elem> coeffs(k + 1);
      std::uint32_t c = code;
      for (unsigned i = 0; i < k; ++i) {
        coeffs[i] = c % p;
        c /= p;
      }
      coeffs[k] = 1;
      if (coeffs[0] == 0) continue;
      if (is_irreducible(Poly(prime, coeffs))) {
        impl->modulus.assign(coeffs.begin(), coeffs.end());
        break;
      }
    }
    if (impl->modulus.empty()) throw FieldError("no irreducible modulus found");
  }

  Field partial(impl);

  // Least primitive element by order testing against the prime divisors of q-1.
  const auto factors = prime_factors(q - 1);
  for (Elem g = 1; g < q; ++g) {
    bool ok = true;
    for (auto f : factors) {
      if (partial.pow(g, (q - 1) / f) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      impl->generator = g;
      break;
    }
  }

  if (q <= kLogTableMax) {
    impl->exp_table.resize(2 * (q - 1) + 1);
    impl->log_table.assign(q, 0);
    Elem acc = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
      impl->exp_table[i] = acc;
      impl->log_table[acc] = i;
      acc = partial.mul_reference(acc, impl->generator);
    }
    for (std::uint32_t i = q - 1; i < impl->exp_table.size(); ++i)
      impl->exp_table[i] = impl->exp_table[i - (q - 1)];
  }
  if (q <= kAddTableMax && p != 2) {
    impl->add_table.resize(std::size_t{q} * q);
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b) impl->add_table[std::size_t{a} * q + b] = partial.add_digits(a, b, false);
  }
  return Field(std::move(impl));
}

Field Field::of_order(std::uint32_t q, std::uint64_t budget) {
  if (q < 2) throw FieldError("field order must be at least 2");
  std::uint32_t p = 0;
  for (std::uint32_t f = 2; f <= q; ++f) {
    if (q % f == 0) {
      p = f;
      break;
    }
  }
  unsigned k = 0;
  std::uint32_t r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) throw FieldError(std::to_string(q) + " is not a prime power");
  return make(p, k, budget);
}

Elem Field::add_digits(Elem a, Elem b, bool subtract) const {
  const std::uint32_t p = impl_->p;
  Elem out = 0;
  for (unsigned i = 0; i < impl_->k; ++i) {
    const std::uint32_t da = a % p, db = b % p;
    a /= p;
    b /= p;
    const std::uint32_t d = subtract ? (da + p - db) % p : (da + db) % p;
    out += d * impl_->pow_p[i];
  }
  return out;
}

Elem Field::add_reference(Elem a, Elem b) const { return add_digits(a, b, false); }

Elem Field::add(Elem a, Elem b) const {
  if (impl_->p == 2) return a ^ b;
  if (impl_->k == 1) {
    const Elem s = a + b;
    return s >= impl_->p ? s - impl_->p : s;
  }
  if (!impl_->add_table.empty()) return impl_->add_table[std::size_t{a} * impl_->q + b];
  return add_digits(a, b, false);
}

Elem Field::sub(Elem a, Elem b) const {
  if (impl_->p == 2) return a ^ b;
  if (impl_->k == 1) return a >= b ? a - b : a + impl_->p - b;
  return add_digits(a, b, true);
}

Elem Field::neg(Elem a) const { return sub(0, a); }

Elem Field::mul_reference(Elem a, Elem b) const {
  if (impl_->k == 1) return static_cast<Elem>(std::uint64_t{a} * b % impl_->p);
  return from_digits(mulmod_digits(digits(a), digits(b), impl_->modulus, impl_->p));
}

Elem Field::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (impl_->k == 1) return static_cast<Elem>(std::uint64_t{a} * b % impl_->p);
  if (!impl_->log_table.empty()) return impl_->exp_table[impl_->log_table[a] + impl_->log_table[b]];
  return mul_reference(a, b);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero in " + name());
  if (!impl_->log_table.empty()) {
    const std::uint32_t l = impl_->log_table[a];
    return impl_->exp_table[l == 0 ? 0 : (impl_->q - 1) - l];
  }
  return pow(a, impl_->q - 2);
}

Elem Field::pow(Elem a, std::uint64_t n) const {
  Elem result = 1;
  Elem base = a;
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return result;
}

Elem Field::frobenius(Elem a) const { return pow(a, impl_->p); }

Elem Field::frobenius(Elem a, unsigned times) const {
  for (unsigned i = 0; i < times; ++i) a = frobenius(a);
  return a;
}

Elem Field::from_int(std::int64_t n) const {
  const auto p = static_cast<std::int64_t>(impl_->p);
  return static_cast<Elem>(((n % p) + p) % p);
}

std::vector<std::uint32_t> Field::digits(Elem a) const {
  std::vector<std::uint32_t> out(impl_->k);
  for (unsigned i = 0; i < impl_->k; ++i) {
    out[i] = a % impl_->p;
    a /= impl_->p;
  }
  return out;
}

Elem Field::from_digits(std::span<const std::uint32_t> coeffs) const {
  Elem out = 0;
  for (std::size_t i = 0; i < coeffs.size() && i < impl_->k; ++i) out += (coeffs[i] % impl_->p) * impl_->pow_p[i];
  return out;
}

Elem Field::embed(const Field& sub, Elem a) const {
  if (sub.characteristic() != characteristic() || degree() % sub.degree() != 0)
    throw FieldError(sub.name() + " is not a subfield of " + name());
  if (sub.degree() == 1) return a;
  // Least root of the subfield modulus in this field.
  const auto& m = sub.modulus();
  Elem root = 0;
  bool found = false;
  for (Elem r = 0; r < order() && !found; ++r) {
    Elem acc = 0;
    for (std::size_t i = m.size(); i-- > 0;) acc = add(mul(acc, r), m[i]);
    if (acc == 0) {
      root = r;
      found = true;
    }
  }
  if (!found) throw FieldError("subfield modulus has no root");
  const auto d = sub.digits(a);
  Elem acc = 0;
  for (std::size_t i = d.size(); i-- > 0;) acc = add(mul(acc, root), d[i]);
  return acc;
}

std::string Field::name() const {
  std::ostringstream os;
  os << "GF(" << impl_->p;
  if (impl_->k > 1) os << "^" << impl_->k;
  os << ")";
  return os.str();
}

}  // namespace nondeg

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "nondeg/kernels.hpp"

namespace nondeg::kernels {

void batch_dot_scalar(const std::uint8_t* data, std::size_t count, std::size_t dim,
                      const std::uint8_t* w, std::uint32_t p, std::uint8_t* out) {
  for (std::size_t n = 0; n < count; ++n) {
    std::uint32_t acc = 0;
    for (std::size_t j = 0; j < dim; ++j) acc += std::uint32_t{w[j]} * data[j * count + n];
    out[n] = static_cast<std::uint8_t>(acc % p);
  }
}

void batch_quadratic_scalar(const std::uint8_t* data, std::size_t count, std::size_t dim,
                            const std::uint8_t* upper, std::uint32_t p, std::uint8_t* out) {
  for (std::size_t n = 0; n < count; ++n) {
    std::uint32_t acc = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      const std::uint32_t vi = data[i * count + n];
      if (vi == 0) continue;
      std::uint32_t inner = 0;
      for (std::size_t j = i; j < dim; ++j) inner += std::uint32_t{upper[i * dim + j]} * data[j * count + n];
      acc += vi * (inner % p);
    }
    out[n] = static_cast<std::uint8_t>(acc % p);
  }
}

namespace {

Backend detect() {
  if (const char* env = std::getenv("NONDEG_KERNEL")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && avx2_available()) return Backend::Avx2;
  }
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

void check_args(std::size_t dim, std::uint32_t p) {
  if (dim > kMaxDim) throw std::invalid_argument("kernel dimension above " + std::to_string(kMaxDim));
  if (p < 2 || p > kMaxPrime) throw std::invalid_argument("kernel prime out of range");
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() {
  static const Backend b = detect();
  return b;
}

const char* backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

void batch_dot(const std::uint8_t* data, std::size_t count, std::size_t dim,
               const std::uint8_t* w, std::uint32_t p, std::uint8_t* out) {
  check_args(dim, p);
  if (active_backend() == Backend::Avx2)
    batch_dot_avx2(data, count, dim, w, p, out);
  else
    batch_dot_scalar(data, count, dim, w, p, out);
}

void batch_quadratic(const std::uint8_t* data, std::size_t count, std::size_t dim,
                     const std::uint8_t* upper, std::uint32_t p, std::uint8_t* out) {
  check_args(dim, p);
  if (active_backend() == Backend::Avx2)
    batch_quadratic_avx2(data, count, dim, upper, p, out);
  else
    batch_quadratic_scalar(data, count, dim, upper, p, out);
}

VectorTable::VectorTable(std::uint32_t p, std::size_t dim) : p_(p), dim_(dim), count_(1) {
  check_args(dim, p);
  for (std::size_t j = 0; j < dim; ++j) {
    count_ *= p;
    if (count_ > (std::size_t{1} << 26)) throw std::length_error("vector table too large");
  }
  data_.resize(count_ * dim_);
  for (std::size_t n = 0; n < count_; ++n) {
    std::size_t r = n;
    for (std::size_t j = 0; j < dim_; ++j) {
      data_[j * count_ + n] = static_cast<std::uint8_t>(r % p);
      r /= p;
    }
  }
}

std::vector<std::uint8_t> VectorTable::dot_all(std::span<const std::uint8_t> w) const {
  if (w.size() != dim_) throw std::invalid_argument("functional length mismatch");
  std::vector<std::uint8_t> out(count_);
  batch_dot(data_.data(), count_, dim_, w.data(), p_, out.data());
  return out;
}

std::vector<std::uint8_t> VectorTable::quadratic_all(std::span<const std::uint8_t> upper) const {
  if (upper.size() != dim_ * dim_) throw std::invalid_argument("quadratic form size mismatch");
  std::vector<std::uint8_t> out(count_);
  batch_quadratic(data_.data(), count_, dim_, upper.data(), p_, out.data());
  return out;
}

}  // namespace nondeg::kernels

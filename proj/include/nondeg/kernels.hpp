#pragma once

// Batched prime-field kernels over a column-major table of vectors.
//
// A table holds `count` vectors of F_p^dim with coordinate j of vector n at
// data[j * count + n]; entries are < p <= 251 and dim <= kMaxDim. Every
// kernel has a scalar reference and an AVX2 variant; the dispatching entry
// points pick one at runtime (CPU support, overridable with the environment
// variable NONDEG_KERNEL=scalar|avx2).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nondeg::kernels {

inline constexpr std::size_t kMaxDim = 16;
inline constexpr std::uint32_t kMaxPrime = 251;

enum class Backend { Scalar, Avx2 };

Backend active_backend();
bool avx2_available();
const char* backend_name(Backend b);

// out[n] = sum_j w[j] * v_n[j] mod p.
void batch_dot_scalar(const std::uint8_t* data, std::size_t count, std::size_t dim,
                      const std::uint8_t* w, std::uint32_t p, std::uint8_t* out);
void batch_dot_avx2(const std::uint8_t* data, std::size_t count, std::size_t dim,
                    const std::uint8_t* w, std::uint32_t p, std::uint8_t* out);

// out[n] = sum_{i <= j} upper[i*dim + j] * v_n[i] * v_n[j] mod p.
void batch_quadratic_scalar(const std::uint8_t* data, std::size_t count, std::size_t dim,
                            const std::uint8_t* upper, std::uint32_t p, std::uint8_t* out);
void batch_quadratic_avx2(const std::uint8_t* data, std::size_t count, std::size_t dim,
                          const std::uint8_t* upper, std::uint32_t p, std::uint8_t* out);

void batch_dot(const std::uint8_t* data, std::size_t count, std::size_t dim,
               const std::uint8_t* w, std::uint32_t p, std::uint8_t* out);
void batch_quadratic(const std::uint8_t* data, std::size_t count, std::size_t dim,
                     const std::uint8_t* upper, std::uint32_t p, std::uint8_t* out);

// All p^dim vectors of F_p^dim; vector n has coordinate j equal to digit j of
// n in base p.
class VectorTable {
 public:
  VectorTable(std::uint32_t p, std::size_t dim);

  std::uint32_t prime() const { return p_; }
  std::size_t dim() const { return dim_; }
  std::size_t count() const { return count_; }
  const std::uint8_t* data() const { return data_.data(); }
  std::uint8_t at(std::size_t n, std::size_t j) const { return data_[j * count_ + n]; }

  std::vector<std::uint8_t> dot_all(std::span<const std::uint8_t> w) const;
  std::vector<std::uint8_t> quadratic_all(std::span<const std::uint8_t> upper) const;

 private:
  std::uint32_t p_;
  std::size_t dim_;
  std::size_t count_;
  std::vector<std::uint8_t> data_;
};

}  // namespace nondeg::kernels

#pragma once

// Enumeration caps shared by census, duos and stingray.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nondeg {

struct Budget {
  std::uint64_t subspaces = 100'000'000;  // e-subspaces enumerated per census
  std::uint64_t pairs = 1'000'000'000;    // subspace or element pairs scanned
  std::uint64_t group = 1'000'000;        // isometry group order
  std::uint64_t samples = 100'000;        // default Monte Carlo sample count
  std::uint64_t vectors = 10'000'000;     // |V| for frame-completion sampling

  // Overrides from "key=value,key=value"; keys are the field names above.
  // Values accept plain integers or mantissa-exponent form such as 1e7.
  static Budget parse(const std::string& spec, Budget base);
  // parse(getenv(NONDEG_BUDGET)) when set, defaults otherwise.
  static Budget from_env();
};

inline constexpr const char* kBudgetEnv = "NONDEG_BUDGET";

class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, std::string needed, std::uint64_t cap)
      : std::runtime_error(what + ": needs " + needed + ", cap " + std::to_string(cap)),
        needed_(std::move(needed)),
        cap_(cap) {}
  const std::string& needed() const { return needed_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::string needed_;
  std::uint64_t cap_;
};

}  // namespace nondeg

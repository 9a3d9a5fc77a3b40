#pragma once

// Report builders behind the command-line tool. Each returns a JSON body in
// a fixed envelope plus the exit status it implies.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nondeg/bounds.hpp"
#include "nondeg/stingray.hpp"

namespace nondeg::cli {

inline constexpr const char* kSchemaName = "nondeg-report";
inline constexpr const char* kSchemaVersion = "1.0.0";

enum Exit : int { kPass = 0, kCheckFailed = 1, kUsage = 2 };

using Json = nlohmann::ordered_json;

struct Report {
  Json body;
  int status = kPass;
};

// Usage-level failures (bad parameters, empty orbits). Mapped to exit 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SpaceSpec {
  Kind kind = Kind::Symplectic;
  unsigned d = 0;
  std::uint32_t q = 2;
  Sign eps = Sign::Circ;

  ClassicalSpace space() const;
};

// eps may be empty: Circ for Sp/U and odd-dimensional O.
SpaceSpec make_space(const std::string& kind, unsigned d, std::uint32_t q, const std::string& eps);
std::optional<Sign> parse_sigma(const std::string& s);

Json budget_json(const Budget& b);

Report census_report(const CensusKey& key, const std::string& method, const Budget& budget);
Report rho_report(const DuoKey& key, DuoMethod method, bool audit, bool cross_check, const Budget& budget);

struct SweepGrid {
  std::vector<Kind> kinds;
  std::vector<unsigned> ds;
  std::vector<std::uint32_t> qs;
  std::vector<unsigned> es;
  std::vector<unsigned> e2s;
  DuoMethod method = DuoMethod::Auto;
  bool skip_budget = false;
  unsigned threads = 1;
};

// Valid keys with e >= e2, non-empty orbits, every type combination, in
// sort order (kind, d, q, eps, e, sigma, e2, sigma2).
std::vector<DuoKey> sweep_keys(const SweepGrid& grid);
Report sweep_report(const SweepGrid& grid, const Budget& budget);
// Tab-separated rendering of sweep_report rows, header first.
std::string sweep_tsv(const Report& sweep);
extern const std::vector<std::string> kSweepColumns;
std::string census_tsv(const Report& census);
extern const std::vector<std::string> kCensusColumns;
// census or sweep; UsageError otherwise.
std::string render_tsv(const Report& r);

Report verify_lemmas_report(const std::vector<ExactRatio>& qs, unsigned nmax);
Report omega_report(unsigned d, const ExactRatio& q, bool is_signed);
Report ksum_report(unsigned d, unsigned e, unsigned e2, int eps, int sigma, int sigma2, const ExactRatio& q);
Report abcd_report(std::uint64_t count, std::uint64_t seed);

Report stingray_profile_report(const SpaceSpec& s, std::optional<std::uint64_t> seed, bool search_invariant,
                               const Budget& budget);
Report stingray_census_report(const SpaceSpec& s, const Budget& budget);
Report stingray_duorate_report(const SpaceSpec& s, unsigned e, unsigned e2, std::optional<std::size_t> cls,
                               std::optional<std::size_t> cls2, bool exhaustive, std::uint64_t samples,
                               std::uint64_t seed, const Budget& budget);
Report stingray_tset_report(const SpaceSpec& s, unsigned e, std::optional<Sign> sigma, unsigned e2,
                            std::optional<Sign> sigma2, bool exhaustive, std::uint64_t samples, std::uint64_t seed,
                            const Budget& budget);

// "2..9" or "2,3,5" (integers) into a sorted, de-duplicated list.
std::vector<std::uint64_t> parse_int_list(const std::string& s);

// Pretty JSON with a trailing newline.
std::string render_json(const Report& r);

}  // namespace nondeg::cli

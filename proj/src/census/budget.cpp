#include "nondeg/budget.hpp"

#include <cstdlib>
#include <sstream>

namespace nondeg {

namespace {

std::uint64_t parse_count(const std::string& key, const std::string& v) {
  const auto bad = [&] { return std::invalid_argument("bad budget value for " + key + ": '" + v + "'"); };
  if (v.empty()) throw bad();
  const auto epos = v.find_first_of("eE");
  const std::string mant = v.substr(0, epos);
  if (mant.empty() || mant.find_first_not_of("0123456789") != std::string::npos) throw bad();
  std::uint64_t x = std::stoull(mant);
  if (epos != std::string::npos) {
    const std::string ex = v.substr(epos + 1);
    if (ex.empty() || ex.size() > 2 || ex.find_first_not_of("0123456789") != std::string::npos) throw bad();
    for (int i = std::stoi(ex); i > 0; --i) {
      if (x > UINT64_MAX / 10) throw bad();
      x *= 10;
    }
  }
  return x;
}

}  // namespace

Budget Budget::parse(const std::string& spec, Budget base) {
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("budget entry without '=': '" + item + "'");
    const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    const std::uint64_t n = parse_count(key, val);
    if (key == "subspaces") base.subspaces = n;
    else if (key == "pairs") base.pairs = n;
    else if (key == "group") base.group = n;
    else if (key == "samples") base.samples = n;
    else if (key == "vectors") base.vectors = n;
    else throw std::invalid_argument("unknown budget key '" + key + "'");
  }
  return base;
}

Budget Budget::from_env() {
  const char* s = std::getenv(kBudgetEnv);
  return s ? parse(s, Budget{}) : Budget{};
}

}  // namespace nondeg

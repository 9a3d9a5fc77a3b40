#include "report.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <thread>

#include "nondeg/serialize.hpp"

namespace nondeg::cli {

namespace {

Json envelope(const std::string& command, Json config) {
  Json j;
  j["schema"] = kSchemaName;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["config"] = std::move(config);
  return j;
}

Report finish(Json j, Json result, bool pass) {
  j["result"] = std::move(result);
  j["pass"] = pass;
  return {std::move(j), pass ? kPass : kCheckFailed};
}

std::string sign_field(std::optional<Sign> s) { return s ? to_string(*s) : "."; }

std::string eps_field(Kind k, Sign eps) { return k == Kind::Orthogonal ? to_string(eps) : "."; }

Json ratio_json(const ExactRatio& r) {
  Json j;
  j["exact"] = to_string(r);
  j["approx"] = to_decimal(r, 6);
  return j;
}

Json space_json(const SpaceSpec& s) {
  Json j;
  j["kind"] = to_string(s.kind);
  j["d"] = s.d;
  j["q"] = s.q;
  j["eps"] = eps_field(s.kind, s.eps);
  return j;
}

Json census_key_json(const CensusKey& k) {
  Json j;
  j["kind"] = to_string(k.kind);
  j["d"] = k.d;
  j["q"] = k.q;
  j["eps"] = eps_field(k.kind, k.eps);
  j["e"] = k.e;
  j["sigma"] = sign_field(k.sigma);
  return j;
}

Json duo_key_json(const DuoKey& k) {
  Json j;
  j["kind"] = to_string(k.kind);
  j["d"] = k.d;
  j["q"] = k.q;
  j["eps"] = eps_field(k.kind, k.eps);
  j["e"] = k.e;
  j["sigma"] = sign_field(k.sigma);
  j["e2"] = k.e2;
  j["sigma2"] = sign_field(k.sigma2);
  return j;
}

Json estimate_json(const Estimate& e) {
  Json j;
  j["samples"] = e.samples;
  j["hits"] = e.hits;
  j["seed"] = e.seed;
  j["estimate"] = ratio_json(ExactRatio(BigCount(e.hits), BigCount(std::max<std::uint64_t>(e.samples, 1))));
  std::ostringstream se;
  se.precision(6);
  se << std::fixed << e.std_error;
  j["std_error_approx"] = se.str();
  j["exact"] = e.exact ? Json(to_string(*e.exact)) : Json(nullptr);
  j["within_4_sigma"] = e.within;
  return j;
}

const BoundCheck* strongest(const std::vector<BoundCheck>& bounds) {
  const BoundCheck* best = nullptr;
  for (const auto& b : bounds)
    if (!best || b.bound > best->bound) best = &b;
  return best;
}

std::optional<Sign> orthogonal_sigma(const SpaceSpec& s, unsigned e) {
  if (s.kind != Kind::Orthogonal || e % 2) return std::nullopt;
  return Sign::Minus;
}

}  // namespace

ClassicalSpace SpaceSpec::space() const { return standard_space(kind, d, q, eps); }

SpaceSpec make_space(const std::string& kind, unsigned d, std::uint32_t q, const std::string& eps) {
  SpaceSpec s;
  s.kind = parse_kind(kind);
  s.d = d;
  s.q = q;
  if (s.kind == Kind::Orthogonal) {
    if (eps.empty()) {
      if (d % 2 == 0) throw UsageError("--eps (+ or -) is required for even-dimensional orthogonal spaces");
      s.eps = Sign::Circ;
    } else {
      s.eps = parse_sign(eps);
    }
  } else if (!eps.empty() && parse_sign(eps) != Sign::Circ) {
    throw UsageError("--eps applies to orthogonal spaces only");
  }
  return s;
}

std::optional<Sign> parse_sigma(const std::string& s) {
  if (s.empty() || s == ".") return std::nullopt;
  return parse_sign(s);
}

Json budget_json(const Budget& b) {
  Json j;
  j["subspaces"] = b.subspaces;
  j["pairs"] = b.pairs;
  j["group"] = b.group;
  j["samples"] = b.samples;
  j["vectors"] = b.vectors;
  return j;
}

Report census_report(const CensusKey& key, const std::string& method, const Budget& budget) {
  if (method != "enum" && method != "formula" && method != "both")
    throw UsageError("--method must be enum, formula or both");
  Json config = census_key_json(key);
  config["method"] = method;
  config["budget"] = budget_json(budget);
  Json j = envelope("census", std::move(config));
  Json counts = Json::array();
  std::vector<BigCount> values;
  for (CensusMethod m : {CensusMethod::Enumerated, CensusMethod::Formula}) {
    if (method != "both" && (method == "enum") != (m == CensusMethod::Enumerated)) continue;
    const CensusResult r = count_nondegenerate(key, m, budget);
    Json c;
    c["method"] = to_string(m);
    c["count"] = to_string(r.count);
    counts.push_back(std::move(c));
    values.push_back(r.count);
  }
  const bool agree = std::all_of(values.begin(), values.end(), [&](const BigCount& v) { return v == values.front(); });
  Json result;
  result["counts"] = std::move(counts);
  result["agree"] = agree;
  return finish(std::move(j), std::move(result), agree);
}

Report rho_report(const DuoKey& key, DuoMethod method, bool audit, bool cross_check, const Budget& budget) {
  key.validate();
  if (formula_count(key.first()) == 0 || formula_count(key.second()) == 0)
    throw UsageError("no non-degenerate subspaces of the requested type");
  Json config = duo_key_json(key);
  config["method"] = to_string(method);
  config["audit"] = audit;
  config["cross_check"] = cross_check;
  config["budget"] = budget_json(budget);
  Json j = envelope("rho", std::move(config));
  DuoReport r = compute_rho(key, method, budget);
  bool pass = true;
  Json result;
  result["method"] = to_string(r.method);
  result["duo_count"] = to_string(r.duo_count);
  result["denominator"] = to_string(r.denominator);
  result["rho"] = ratio_json(r.rho);
  result["in_scope"] = r.in_scope;
  if (!r.in_scope) result["scope_note"] = "orthogonal q = 2: outside the proven bounds, positivity reported only";
  if (audit) {
    r = audit_bounds(std::move(r));
    Json bounds = Json::array();
    for (const auto& b : r.bounds) {
      Json bj;
      bj["name"] = b.name;
      bj["bound"] = ratio_json(b.bound);
      bj["margin"] = ratio_json(r.rho - b.bound);
      bj["pass"] = b.pass;
      bounds.push_back(std::move(bj));
    }
    result["bounds"] = std::move(bounds);
    pass = r.pass;
  }
  if (cross_check) {
    Json routes = Json::array();
    for (DuoMethod m : {DuoMethod::Direct, DuoMethod::FixedU, DuoMethod::Reduction}) {
      Json rj;
      rj["method"] = to_string(m);
      try {
        const ExactRatio v = compute_rho(key, m, budget).rho;
        rj["rho"] = to_string(v);
        rj["agree"] = v == r.rho;
        pass = pass && v == r.rho;
      } catch (const BudgetError& e) {
        rj["rho"] = nullptr;
        rj["skipped"] = e.what();
      }
      routes.push_back(std::move(rj));
    }
    result["cross_check"] = std::move(routes);
  }
  return finish(std::move(j), std::move(result), pass);
}

const std::vector<std::string> kSweepColumns = {"kind", "d", "q", "eps", "e", "sigma", "e2", "sigma2", "method",
                                                "rho", "rho_decimal", "bound_name", "bound", "margin", "pass"};

std::vector<DuoKey> sweep_keys(const SweepGrid& grid) {
  std::vector<Kind> kinds = grid.kinds;
  std::sort(kinds.begin(), kinds.end());
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
  auto sorted = [](auto v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const auto ds = sorted(grid.ds), es = sorted(grid.es), e2s = sorted(grid.e2s);
  const auto qs = sorted(grid.qs);
  std::vector<DuoKey> out;
  for (Kind k : kinds)
    for (unsigned d : ds)
      for (std::uint32_t q : qs) {
        std::vector<Sign> epss = {Sign::Circ};
        if (k == Kind::Orthogonal && d % 2 == 0) epss = {Sign::Minus, Sign::Plus};
        std::vector<std::optional<Sign>> sigmas = {std::nullopt};
        if (k == Kind::Orthogonal) sigmas = {Sign::Minus, Sign::Plus};
        for (Sign eps : epss)
          for (unsigned e : es)
            for (auto s : sigmas)
              for (unsigned e2 : e2s)
                for (auto s2 : sigmas) {
                  if (e2 > e) continue;
                  DuoKey key{k, d, q, eps, e, s, e2, s2};
                  try {
                    key.validate();
                    if (formula_count(key.first()) == 0 || formula_count(key.second()) == 0) continue;
                  } catch (const std::invalid_argument&) {
                    continue;
                  }
                  out.push_back(key);
                }
      }
  return out;
}

Report sweep_report(const SweepGrid& grid, const Budget& budget) {
  Json config;
  auto kinds = Json::array();
  for (Kind k : grid.kinds) kinds.push_back(to_string(k));
  config["kinds"] = std::move(kinds);
  config["d"] = grid.ds;
  config["q"] = grid.qs;
  config["e"] = grid.es;
  config["e2"] = grid.e2s;
  config["method"] = to_string(grid.method);
  config["skip_budget"] = grid.skip_budget;
  config["budget"] = budget_json(budget);
  Json j = envelope("sweep", std::move(config));
  const auto keys = sweep_keys(grid);
  struct Cell {
    std::optional<DuoReport> report;
    std::string budget_error;
  };
  std::vector<Cell> cells(keys.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(std::max(1u, grid.threads));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, grid.threads); ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < keys.size(); i = next++) {
          try {
            cells[i].report = audit_bounds(compute_rho(keys[i], grid.method, budget));
          } catch (const BudgetError& e) {
            cells[i].budget_error = e.what();
          }
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  Json rows = Json::array();
  bool pass = true, over_budget = false;
  std::size_t failures = 0, skipped = 0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const DuoKey& k = keys[i];
    if (!cells[i].report && grid.skip_budget) {
      ++skipped;
      continue;
    }
    Json row;
    row["kind"] = to_string(k.kind);
    row["d"] = k.d;
    row["q"] = k.q;
    row["eps"] = eps_field(k.kind, k.eps);
    row["e"] = k.e;
    row["sigma"] = sign_field(k.sigma);
    row["e2"] = k.e2;
    row["sigma2"] = sign_field(k.sigma2);
    if (!cells[i].report) {
      over_budget = true;
      row["method"] = to_string(grid.method);
      for (const char* c : {"rho", "rho_decimal", "bound_name", "bound", "margin"}) row[c] = ".";
      row["pass"] = "budget";
      row["note"] = cells[i].budget_error;
    } else {
      const DuoReport& r = *cells[i].report;
      const BoundCheck* b = strongest(r.bounds);
      row["method"] = to_string(r.method);
      row["rho"] = to_string(r.rho);
      row["rho_decimal"] = to_decimal(r.rho, 6);
      row["bound_name"] = b->name;
      row["bound"] = to_string(b->bound);
      row["margin"] = to_string(r.rho - b->bound);
      row["pass"] = r.pass ? "pass" : "FAIL";
      if (!r.pass) ++failures;
      pass = pass && r.pass;
    }
    rows.push_back(std::move(row));
  }
  Json result;
  result["columns"] = kSweepColumns;
  result["rows"] = std::move(rows);
  result["keys"] = keys.size();
  result["failures"] = failures;
  result["skipped_over_budget"] = skipped;
  Report rep = finish(std::move(j), std::move(result), pass && !over_budget);
  if (pass && over_budget) rep.status = kUsage;
  return rep;
}

const std::vector<std::string> kCensusColumns = {"kind", "d", "q", "eps", "e", "sigma", "method", "count"};

namespace {

std::string tsv_field(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string tsv_header(const std::vector<std::string>& cols) {
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "\t" : "") + cols[i];
  return out + "\n";
}

}  // namespace

std::string sweep_tsv(const Report& sweep) {
  std::string out = tsv_header(kSweepColumns);
  for (const auto& row : sweep.body.at("result").at("rows")) {
    for (std::size_t i = 0; i < kSweepColumns.size(); ++i) out += (i ? "\t" : "") + tsv_field(row.at(kSweepColumns[i]));
    out += "\n";
  }
  return out;
}

std::string census_tsv(const Report& census) {
  const Json& cfg = census.body.at("config");
  std::string key;
  for (const char* c : {"kind", "d", "q", "eps", "e", "sigma"}) key += tsv_field(cfg.at(c)) + "\t";
  std::string out = tsv_header(kCensusColumns);
  for (const auto& c : census.body.at("result").at("counts"))
    out += key + tsv_field(c.at("method")) + "\t" + tsv_field(c.at("count")) + "\n";
  return out;
}

std::string render_tsv(const Report& r) {
  const std::string cmd = r.body.at("command");
  if (cmd == "sweep") return sweep_tsv(r);
  if (cmd == "census") return census_tsv(r);
  throw UsageError("tsv output is available for census and sweep only");
}

Report verify_lemmas_report(const std::vector<ExactRatio>& qs, unsigned nmax) {
  Json config;
  auto qj = Json::array();
  for (const auto& q : qs) qj.push_back(to_string(q));
  config["q"] = std::move(qj);
  config["n_max"] = nmax;
  Json j = envelope("qseries verify-lemmas", std::move(config));
  const Battery b = verify_lemmas(qs, nmax);
  std::map<std::string, std::array<std::size_t, 3>> by_name;  // checks, failures, vacuous
  Json failed = Json::array();
  for (const auto& c : b.checks) {
    auto& n = by_name[c.name];
    ++n[0];
    if (c.vacuous) ++n[2];
    else if (!c.pass) {
      ++n[1];
      Json f;
      f["name"] = c.name;
      f["params"] = c.params;
      failed.push_back(std::move(f));
    }
  }
  Json predicates = Json::array();
  for (const auto& [name, n] : by_name) {
    Json p;
    p["name"] = name;
    p["checks"] = n[0];
    p["failures"] = n[1];
    p["vacuous"] = n[2];
    predicates.push_back(std::move(p));
  }
  Json result;
  result["checks"] = b.checks.size();
  result["failures"] = b.failures();
  result["vacuous"] = b.vacuous();
  result["predicates"] = std::move(predicates);
  result["failed"] = std::move(failed);
  return finish(std::move(j), std::move(result), b.all_pass());
}

Report omega_report(unsigned d, const ExactRatio& q, bool is_signed) {
  Json config;
  config["d"] = d;
  config["q"] = to_string(q);
  config["signed"] = is_signed;
  Json j = envelope("qseries omega", std::move(config));
  Json result;
  result["omega"] = ratio_json(omega(d, q, is_signed));
  const Interval inf = omega_infinity(q, is_signed, ExactRatio(1, 1000000000));
  // Widen the enclosure outward to denominator 10^12 to keep it readable.
  const BigCount scale = boost::multiprecision::pow(BigCount(10), 12);
  const auto floor_div = [](const BigCount& n, const BigCount& d) -> BigCount {
    return n >= 0 ? BigCount(n / d) : BigCount(-((-n + d - 1) / d));
  };
  const ExactRatio lo(floor_div(numerator(inf.lo) * scale, denominator(inf.lo)), scale);
  const ExactRatio hi(-floor_div(-numerator(inf.hi) * scale, denominator(inf.hi)), scale);
  Json enclosure;
  enclosure["lo"] = ratio_json(lo);
  enclosure["hi"] = ratio_json(hi);
  result["omega_infinity"] = std::move(enclosure);
  return finish(std::move(j), std::move(result), true);
}

Report ksum_report(unsigned d, unsigned e, unsigned e2, int eps, int sigma, int sigma2, const ExactRatio& q) {
  Json config;
  config["d"] = d;
  config["e"] = e;
  config["e2"] = e2;
  config["eps"] = eps;
  config["sigma"] = sigma;
  config["sigma2"] = sigma2;
  config["q"] = to_string(q);
  Json j = envelope("qseries ksum", std::move(config));
  const KSum k = K_sum(d, e, e2, eps, sigma, sigma2, q);
  const ExactRatio factored = K_sum_factored(d, e, e2, eps, sigma, sigma2, q);
  Json result;
  result["K"] = ratio_json(k.value);
  result["factored_agrees"] = factored == k.value;
  result["bound_fine"] = ratio_json(k.bound_fine);
  result["bound_coarse"] = ratio_json(k.bound_coarse);
  const bool bounds_apply = q >= 3;
  result["bounds_apply"] = bounds_apply;
  bool ok = factored == k.value && (!bounds_apply || (k.value >= k.bound_fine && k.value >= k.bound_coarse));
  result["bounds_hold"] = k.value >= k.bound_fine && k.value >= k.bound_coarse;
  // Claimed closed value K = 1 when d = e + e2 + 1; checked, not assumed.
  if (d == e + e2 + 1) {
    result["equals_one"] = k.value == 1;
    ok = ok && k.value == 1;
  } else {
    result["equals_one"] = nullptr;
  }
  return finish(std::move(j), std::move(result), ok);
}

Report abcd_report(std::uint64_t count, std::uint64_t seed) {
  Json config;
  config["count"] = count;
  config["seed"] = seed;
  Json j = envelope("qseries abcd", std::move(config));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  std::uint64_t failures = 0;
  Json first_failure = nullptr;
  for (std::uint64_t t = 0; t < count; ++t) {
    const ExactRatio a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    ExactRatio d(num(rng), den(rng));
    if (d == 1 || d == -1) d += 1;
    if (abcd_lhs(a, b, c, d) != abcd_rhs(a, b, c, d)) {
      if (!failures) first_failure = Json::array({to_string(a), to_string(b), to_string(c), to_string(d)});
      ++failures;
    }
  }
  Json result;
  result["tuples"] = count;
  result["failures"] = failures;
  result["first_failure"] = first_failure;
  return finish(std::move(j), std::move(result), failures == 0);
}

Report stingray_profile_report(const SpaceSpec& s, std::optional<std::uint64_t> seed, bool search_invariant,
                               const Budget& budget) {
  Json config = space_json(s);
  config["mode"] = seed ? "sample" : "exhaustive";
  config["seed"] = seed ? Json(*seed) : Json(nullptr);
  config["search_invariant"] = search_invariant;
  config["budget"] = budget_json(budget);
  Json j = envelope("stingray profile", std::move(config));
  const ClassicalSpace V = s.space();
  Json result;
  if (seed) {
    const Isometry g = sample_isometry(V, *seed, budget);
    const StingrayProfile p = profile(g);
    result["element"] = to_json(p.element);
    result["order"] = element_order(p.element);
    result["e"] = p.e;
    result["U_g"] = to_json(p.U_g);
    result["F_g"] = to_json(p.F_g);
    result["restriction_char_poly"] = p.restriction ? Json(p.restriction->to_string()) : Json(nullptr);
    result["trivial_on_U"] = p.trivial_on_U;
    result["is_stingray"] = p.is_stingray;
    result["type"] = sign_field(p.type);
    bool pass = true;
    if (p.is_stingray) {
      const StructureReport r = verify_structure(p, search_invariant, budget);
      Json checks;
      checks["lies_in_image"] = r.lies_in_image;
      checks["perpendicular"] = r.perpendicular;
      checks["nondegenerate"] = r.nondegenerate;
      checks["perp_is_fixed"] = r.perp_is_fixed;
      checks["minus_type"] = r.minus_type;
      checks["parity"] = r.parity;
      checks["unique_invariant"] = r.uniqueness_checked ? Json(r.unique_invariant) : Json(nullptr);
      result["checks"] = std::move(checks);
      pass = r.pass();
    }
    return finish(std::move(j), std::move(result), pass);
  }
  const IsometryGroup G = IsometryGroup::enumerate(V, budget);
  std::map<unsigned, std::uint64_t> by_e;
  std::map<std::string, std::uint64_t> violations;
  for (const char* c : {"dimension_sum", "image_perp_fixed", "lies_in_image", "perpendicular", "nondegenerate",
                        "perp_is_fixed", "minus_type", "parity", "unique_invariant"})
    violations[c] = 0;
  std::uint64_t stingrays = 0, searched = 0;
  for (const Mat& g : G.elements()) {
    const StingrayProfile p = profile(Isometry(V, g));
    violations["dimension_sum"] += p.U_g.dim() + p.F_g.dim() != V.dim();
    violations["image_perp_fixed"] += !(p.U_g.basis() * V.gram() * V.conj(p.F_g.basis()).transpose()).is_zero();
    if (!p.is_stingray) continue;
    ++stingrays;
    ++by_e[p.e];
    const StructureReport r = verify_structure(p, search_invariant, budget);
    violations["lies_in_image"] += !r.lies_in_image;
    violations["perpendicular"] += !r.perpendicular;
    violations["nondegenerate"] += !r.nondegenerate;
    violations["perp_is_fixed"] += !r.perp_is_fixed;
    violations["minus_type"] += !r.minus_type;
    violations["parity"] += !r.parity;
    violations["unique_invariant"] += !r.unique_invariant;
    searched += r.uniqueness_checked;
  }
  Json byj = Json::array();
  for (const auto& [e, n] : by_e) {
    Json x;
    x["e"] = e;
    x["count"] = n;
    byj.push_back(std::move(x));
  }
  std::uint64_t total = 0;
  Json vj;
  for (const auto& [name, n] : violations) {
    vj[name] = n;
    total += n;
  }
  result["group_order"] = G.size();
  result["group_order_formula"] = to_string(group_order(s.kind, s.d, s.q, s.eps));
  result["stingray_elements"] = stingrays;
  result["uniqueness_searched"] = searched;
  result["by_e"] = std::move(byj);
  result["violations"] = std::move(vj);
  const bool order_ok = BigCount(G.size()) == group_order(s.kind, s.d, s.q, s.eps);
  return finish(std::move(j), std::move(result), total == 0 && order_ok);
}

Report stingray_census_report(const SpaceSpec& s, const Budget& budget) {
  Json config = space_json(s);
  config["budget"] = budget_json(budget);
  Json j = envelope("stingray census", std::move(config));
  const IsometryGroup G = IsometryGroup::enumerate(s.space(), budget);
  const ClassCensus c = class_census(G, budget);
  Json classes = Json::array();
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    const StingrayClass& k = c.classes[i];
    Json x;
    x["index"] = i;
    x["e"] = k.e;
    x["order"] = k.order;
    x["char_poly"] = k.char_poly;
    x["type"] = sign_field(k.type);
    x["size"] = k.size;
    x["subspaces"] = k.subspaces;
    x["fiber"] = k.fiber;
    x["fiber_constant"] = k.fiber_constant;
    x["parity"] = k.parity;
    x["orbit_count_matches"] = k.orbit_count_matches ? Json(*k.orbit_count_matches) : Json(nullptr);
    x["pass"] = k.pass();
    classes.push_back(std::move(x));
  }
  Json result;
  result["group_order"] = G.size();
  result["classes"] = std::move(classes);
  return finish(std::move(j), std::move(result), c.pass());
}

Report stingray_duorate_report(const SpaceSpec& s, unsigned e, unsigned e2, std::optional<std::size_t> cls,
                               std::optional<std::size_t> cls2, bool exhaustive, std::uint64_t samples,
                               std::uint64_t seed, const Budget& budget) {
  if (e < e2) throw UsageError("stingray duos need e >= e2");
  Json config = space_json(s);
  config["e"] = e;
  config["e2"] = e2;
  config["class"] = cls ? Json(*cls) : Json(nullptr);
  config["class2"] = cls2 ? Json(*cls2) : Json(nullptr);
  config["mode"] = exhaustive ? "exhaustive" : "montecarlo";
  config["samples"] = exhaustive ? Json(nullptr) : Json(samples);
  config["seed"] = exhaustive ? Json(nullptr) : Json(seed);
  config["budget"] = budget_json(budget);
  Json j = envelope("stingray duorate", std::move(config));
  const ClassicalSpace V = s.space();
  Json result;
  if (exhaustive) {
    const IsometryGroup G = IsometryGroup::enumerate(V, budget);
    const ClassCensus c = class_census(G, budget);
    const DuoRate r = stingray_duo_rate(G, c, {e, cls}, {e2, cls2}, budget);
    result["empty"] = r.empty;
    result["pairs"] = r.pairs;
    result["duos"] = r.duos;
    result["rate"] = ratio_json(r.rate);
    result["key"] = r.key ? duo_key_json(*r.key) : Json(nullptr);
    result["rho"] = r.rho ? Json(to_string(*r.rho)) : Json(nullptr);
    result["equal"] = r.rho ? Json(r.equal) : Json(nullptr);
    return finish(std::move(j), std::move(result), r.empty || !r.rho || r.equal);
  }
  if (cls || cls2) throw UsageError("--class selects enumerated classes; use --exhaustive");
  const Mat g = stingray_element(V, e, orthogonal_sigma(s, e), seed, budget);
  const Mat g2 = stingray_element(V, e2, orthogonal_sigma(s, e2), seed + 1, budget);
  const Estimate est = stingray_duo_rate_sampled(V, g, g2, samples, seed, budget);
  result["representative"] = to_json(g);
  result["representative2"] = to_json(g2);
  result["estimate"] = estimate_json(est);
  return finish(std::move(j), std::move(result), est.within);
}

Report stingray_tset_report(const SpaceSpec& s, unsigned e, std::optional<Sign> sigma, unsigned e2,
                            std::optional<Sign> sigma2, bool exhaustive, std::uint64_t samples, std::uint64_t seed,
                            const Budget& budget) {
  Json config = space_json(s);
  config["e"] = e;
  config["sigma"] = sign_field(sigma);
  config["e2"] = e2;
  config["sigma2"] = sign_field(sigma2);
  config["mode"] = exhaustive ? "exhaustive" : "sampled";
  config["samples"] = exhaustive ? Json(nullptr) : Json(samples);
  config["seed"] = exhaustive ? Json(nullptr) : Json(seed);
  config["budget"] = budget_json(budget);
  Json j = envelope("stingray tset", std::move(config));
  const ClassicalSpace V = s.space();
  const Subspace U = representative(V, e, sigma, budget), U2 = representative(V, e2, sigma2, budget);
  const TSetRate r = exhaustive ? t_set_rate(IsometryGroup::enumerate(V, budget), U, U2, budget)
                                : t_set_rate_sampled(V, U, U2, samples, seed, budget);
  Json result;
  result["key"] = duo_key_json(r.key);
  result["U"] = to_json(U);
  result["U2"] = to_json(U2);
  if (exhaustive) {
    result["group_order"] = r.total;
    result["hits"] = r.hits;
    result["rate"] = ratio_json(r.rate);
    result["equal"] = r.equal;
  } else {
    result["estimate"] = estimate_json(r.sampled);
  }
  result["rho"] = r.rho ? Json(to_string(*r.rho)) : Json(nullptr);
  result["bound"] = "1/20";
  result["bound_applies"] = r.bound_applies;
  result["above_bound"] = r.above_bound;
  bool pass = exhaustive ? (!r.rho || r.equal) : r.sampled.within;
  if (r.bound_applies) pass = pass && r.above_bound;
  return finish(std::move(j), std::move(result), pass);
}

std::vector<std::uint64_t> parse_int_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  const auto num = [&](const std::string& t) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("expected a non-negative integer, got '" + t + "'");
    return std::stoull(t);
  };
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(num(part));
      continue;
    }
    const std::uint64_t a = num(part.substr(0, dots)), b = num(part.substr(dots + 2));
    if (a > b) throw UsageError("empty range '" + part + "'");
    if (b - a > 100000) throw UsageError("range too long '" + part + "'");
    for (std::uint64_t x = a; x <= b; ++x) out.push_back(x);
  }
  if (out.empty()) throw UsageError("empty list");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string render_json(const Report& r) { return r.body.dump(2) + "\n"; }

}  // namespace nondeg::cli

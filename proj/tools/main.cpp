#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "report.hpp"

using namespace nondeg;
using namespace nondeg::cli;

namespace {

struct SpaceArgs {
  std::string kind;
  unsigned d = 0;
  std::uint32_t q = 0;
  std::string eps;

  void add(CLI::App* app) {
    app->add_option("--kind", kind, "Sp, U or O")->required();
    app->add_option("-d,--d", d, "dimension")->required();
    app->add_option("-q,--q", q, "q; unitary spaces use GF(q^2)")->required();
    app->add_option("--eps", eps, "orthogonal type: + or - (even d)");
  }
  SpaceSpec spec() const { return make_space(kind, d, q, eps); }
};

template <class T>
std::vector<T> int_list(const std::string& s) {
  std::vector<T> out;
  for (auto v : parse_int_list(s)) out.push_back(static_cast<T>(v));
  return out;
}

std::vector<Kind> kind_list(const std::string& s) {
  std::vector<Kind> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_kind(part));
  if (out.empty()) throw UsageError("empty kind list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact census, duo proportions and stingray checks for classical spaces over finite fields"};
  app.name("nondeg");
  app.require_subcommand(1);

  std::string budget_spec, output, format = "json";
  std::uint64_t seed = 1;
  std::uint64_t samples = 0;
  bool exhaustive = false;
  app.add_option("--budget", budget_spec, "overrides key=value,... (applied after NONDEG_BUDGET)");
  app.add_option("-o,--output", output, "write the report here instead of stdout");
  app.add_option("--format,--out", format, "json or tsv (census and sweep)")->check(CLI::IsMember({"json", "tsv"}));
  app.add_option("--seed", seed, "random seed");
  app.add_option("--samples", samples, "Monte Carlo samples (default: budget.samples)");
  app.add_flag("--exhaustive", exhaustive, "enumerate instead of sampling");

  std::function<Report(const Budget&)> run;

  // census
  auto* census = app.add_subcommand("census", "count non-degenerate e-subspaces");
  SpaceArgs census_space;
  census_space.add(census);
  unsigned census_e = 0;
  std::string census_sigma, census_method = "both";
  census->add_option("-e,--e", census_e)->required();
  census->add_option("--sigma", census_sigma, "orthogonal subspace type");
  census->add_option("--method", census_method, "enum, formula or both");
  census->callback([&] {
    run = [&](const Budget& b) {
      const SpaceSpec s = census_space.spec();
      return census_report({s.kind, s.d, s.q, s.eps, census_e, parse_sigma(census_sigma)}, census_method, b);
    };
  });

  // rho
  auto* rho = app.add_subcommand("rho", "exact duo proportion");
  SpaceArgs rho_space;
  rho_space.add(rho);
  unsigned rho_e = 0, rho_e2 = 0;
  std::string rho_sigma, rho_sigma2, rho_method = "auto";
  bool rho_audit = false, rho_cross = false;
  rho->add_option("-e,--e", rho_e)->required();
  rho->add_option("--e2", rho_e2)->required();
  rho->add_option("--sigma", rho_sigma);
  rho->add_option("--sigma2", rho_sigma2);
  rho->add_option("--method", rho_method, "direct, fixedU, reduction or auto");
  rho->add_flag("--audit", rho_audit, "check the lower bounds");
  rho->add_flag("--cross-check", rho_cross, "compare all routes within budget");
  rho->callback([&] {
    run = [&](const Budget& b) {
      const SpaceSpec s = rho_space.spec();
      const DuoKey key{s.kind, s.d, s.q, s.eps, rho_e, parse_sigma(rho_sigma), rho_e2, parse_sigma(rho_sigma2)};
      return rho_report(key, parse_method(rho_method), rho_audit, rho_cross, b);
    };
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "bound audit over a parameter grid");
  std::string sw_kinds = "Sp,U,O", sw_d = "2..6", sw_q = "2,3", sw_e = "1..4", sw_e2 = "1..4", sw_method = "auto";
  bool sw_skip = false;
  unsigned sw_threads = 1;
  sweep->add_option("--kind", sw_kinds, "comma-separated kinds");
  sweep->add_option("-d,--d", sw_d, "dimensions, e.g. 2..8");
  sweep->add_option("-q,--q", sw_q, "field orders, e.g. 2,3,4");
  sweep->add_option("-e,--e", sw_e);
  sweep->add_option("--e2", sw_e2);
  sweep->add_option("--method", sw_method);
  sweep->add_flag("--skip-budget", sw_skip, "drop keys that exceed the budget");
  sweep->add_option("--threads", sw_threads)->check(CLI::Range(1u, 256u));
  sweep->callback([&] {
    run = [&](const Budget& b) {
      SweepGrid g;
      g.kinds = kind_list(sw_kinds);
      g.ds = int_list<unsigned>(sw_d);
      g.qs = int_list<std::uint32_t>(sw_q);
      g.es = int_list<unsigned>(sw_e);
      g.e2s = int_list<unsigned>(sw_e2);
      g.method = parse_method(sw_method);
      g.skip_budget = sw_skip;
      g.threads = sw_threads;
      return sweep_report(g, b);
    };
  });

  // qseries
  auto* qs = app.add_subcommand("qseries", "q-series identities and inequalities");
  qs->require_subcommand(1);
  auto* lemmas = qs->add_subcommand("verify-lemmas", "inequality battery");
  std::string lm_q = "2..9";
  unsigned lm_n = 20;
  lemmas->add_option("-q,--q", lm_q);
  lemmas->add_option("--n-max", lm_n);
  lemmas->callback([&] {
    run = [&](const Budget&) {
      std::vector<ExactRatio> q;
      for (auto v : parse_int_list(lm_q)) q.emplace_back(v);
      return verify_lemmas_report(q, lm_n);
    };
  });
  auto* om = qs->add_subcommand("omega", "omega(d, q)");
  unsigned om_d = 0;
  std::string om_q;
  bool om_signed = false;
  om->add_option("-d,--d", om_d)->required();
  om->add_option("-q,--q", om_q, "rational, e.g. 3 or 5/2")->required();
  om->add_flag("--signed", om_signed, "use -q");
  om->callback([&] { run = [&](const Budget&) { return omega_report(om_d, parse_ratio(om_q), om_signed); }; });
  auto* ks = qs->add_subcommand("ksum", "the signed K sum and its lower bounds");
  unsigned ks_d = 0, ks_e = 0, ks_e2 = 0;
  std::optional<int> ks_eps;
  int ks_s = 1, ks_s2 = 1;
  std::string ks_q;
  ks->add_option("-d,--d", ks_d)->required();
  ks->add_option("-e,--e", ks_e)->required();
  ks->add_option("--e2", ks_e2)->required();
  ks->add_option("--eps", ks_eps, "-1, 0 or 1 (default 0 for odd d, 1 for even d)")->check(CLI::IsMember({-1, 0, 1}));
  ks->add_option("--sigma", ks_s)->check(CLI::IsMember({-1, 1}));
  ks->add_option("--sigma2", ks_s2)->check(CLI::IsMember({-1, 1}));
  ks->add_option("-q,--q", ks_q)->required();
  ks->callback([&] {
    run = [&](const Budget&) {
      const int eps = ks_eps.value_or(ks_d % 2 ? 0 : 1);
      return ksum_report(ks_d, ks_e, ks_e2, eps, ks_s, ks_s2, parse_ratio(ks_q));
    };
  });
  auto* ab = qs->add_subcommand("abcd", "random rational identity check");
  std::uint64_t ab_count = 10000;
  ab->add_option("--count", ab_count);
  ab->callback([&] { run = [&](const Budget&) { return abcd_report(ab_count, seed); }; });

  // stingray
  auto* st = app.add_subcommand("stingray", "stingray elements of small isometry groups");
  st->require_subcommand(1);
  SpaceArgs st_space;
  auto* prof = st->add_subcommand("profile", "U_g, F_g and structure checks");
  st_space.add(prof);
  bool pf_search = false;
  prof->add_flag("--search-invariant", pf_search, "also search all invariant subspaces");
  prof->callback([&] {
    run = [&](const Budget& b) {
      return stingray_profile_report(st_space.spec(), exhaustive ? std::nullopt : std::optional(seed), pf_search, b);
    };
  });
  SpaceArgs sc_space;
  auto* sc = st->add_subcommand("census", "conjugacy classes of stingray elements");
  sc_space.add(sc);
  sc->callback([&] { run = [&](const Budget& b) { return stingray_census_report(sc_space.spec(), b); }; });
  SpaceArgs dr_space;
  auto* dr = st->add_subcommand("duorate", "duo rate over pairs of stingray classes");
  dr_space.add(dr);
  unsigned dr_e = 0, dr_e2 = 0;
  std::optional<std::size_t> dr_c, dr_c2;
  dr->add_option("-e,--e", dr_e)->required();
  dr->add_option("--e2", dr_e2)->required();
  dr->add_option("--class", dr_c, "class index from stingray census");
  dr->add_option("--class2", dr_c2);
  dr->callback([&] {
    run = [&](const Budget& b) {
      return stingray_duorate_report(dr_space.spec(), dr_e, dr_e2, dr_c, dr_c2, exhaustive,
                                     samples ? samples : b.samples, seed, b);
    };
  });
  SpaceArgs ts_space;
  auto* ts = st->add_subcommand("tset", "proportion of h with V = E(h) perp (U + U2 h)");
  ts_space.add(ts);
  unsigned ts_e = 0, ts_e2 = 0;
  std::string ts_s, ts_s2;
  ts->add_option("-e,--e", ts_e)->required();
  ts->add_option("--e2", ts_e2)->required();
  ts->add_option("--sigma", ts_s);
  ts->add_option("--sigma2", ts_s2);
  ts->callback([&] {
    run = [&](const Budget& b) {
      return stingray_tset_report(ts_space.spec(), ts_e, parse_sigma(ts_s), ts_e2, parse_sigma(ts_s2), exhaustive,
                                  samples ? samples : b.samples, seed, b);
    };
  });

  for (auto* sub : {census, rho, sweep, qs, lemmas, om, ks, ab, st, prof, sc, dr, ts}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    const Budget budget = Budget::parse(budget_spec, Budget::from_env());
    const Report report = run(budget);
    const std::string text = format == "tsv" ? render_tsv(report) : render_json(report);
    if (output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(output, std::ios::binary);
      if (!out) throw UsageError("cannot open " + output);
      out << text;
    }
    if (report.status == kCheckFailed) std::cerr << "nondeg: check failed\n";
    return report.status;
  } catch (const BudgetError& e) {
    std::cerr << "nondeg: budget exceeded: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "nondeg: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "nondeg: error: " << e.what() << "\n";
    return kUsage;
  }
}

// plsat: generate, decide, and probe power-law random 2-SAT instances.
//
// Subcommands: gen, solve, tspan, probe, sweep, beta0. Machine-readable
// output throughout: DIMACS for formulas, JSON summaries on stdout, CSV for
// per-trial data. PLSAT_SEED sets the default seed.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "plsat/dist.hpp"
#include "plsat/errors.hpp"
#include "plsat/genmodel.hpp"
#include "plsat/probe.hpp"
#include "plsat/solver.hpp"
#include "plsat/sweep.hpp"
#include "plsat/tspan.hpp"
#include "plsat/zeta.hpp"

using nlohmann::json;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PLSAT_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

plsat::Formula load_formula(const std::string& path) {
  if (path == "-") return plsat::parse_dimacs(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return plsat::parse_dimacs(in);
}

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               start)
      .count();
}

json certificate_json(const plsat::PathCertificate& cert) {
  const auto steps_json = [](const std::vector<plsat::PathStep>& steps) {
    json arr = json::array();
    for (const auto& s : steps)
      arr.push_back({{"from", s.from_lit}, {"to", s.to_lit}, {"clause", s.clause}});
    return arr;
  };
  return {{"witness_var", cert.witness_var},
          {"forward", steps_json(cert.forward)},
          {"backward", steps_json(cert.backward)}};
}

std::ofstream open_or_die(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

int run_gen(const std::string& dist_text, std::int64_t n, int k, std::uint64_t seed,
            const std::string& out_path) {
  const plsat::DistSpec dist = plsat::DistSpec::parse(dist_text);
  plsat::RngStream rng(seed);
  const plsat::Formula f = plsat::generate(dist, n, k, rng);
  if (out_path == "-") {
    plsat::write_dimacs(f, std::cout);
  } else {
    auto out = open_or_die(out_path);
    plsat::write_dimacs(f, out);
  }
  return 0;
}

int run_solve(const std::string& in_path, bool with_certificate) {
  const plsat::Formula f = load_formula(in_path);
  const auto start = std::chrono::steady_clock::now();
  const plsat::ImplicationDigest digest = plsat::decide(f);
  json out = {{"verdict", digest.sat ? "SAT" : "UNSAT"},
              {"longest_path", digest.condensation_longest_path},
              {"time_ms", elapsed_ms(start)}};
  if (!digest.sat) {
    out["witness"] = digest.witness_var;
    if (with_certificate)
      out["certificate"] = certificate_json(plsat::extract_contradictory_paths(f, digest));
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_tspan(const std::string& in_path, double alpha, std::uint64_t seed,
              std::int64_t max_rounds, double overlap_frac, bool clone_pair_pick, bool force) {
  const plsat::Formula f = load_formula(in_path);
  const plsat::FormulaStats st = plsat::stats(f);
  const plsat::SpanParams params = plsat::SpanParams::compute(f.n_vars, alpha, st, force);
  plsat::SearchOptions opts;
  opts.overlap_frac = overlap_frac;
  opts.pick_clone_pair = clone_pair_pick;
  if (max_rounds > 0) opts.max_rounds = max_rounds;
  plsat::RngStream rng(seed);
  const auto start = std::chrono::steady_clock::now();
  const plsat::SearchResult res = plsat::search_contradictory_paths(f, params, rng, opts);
  json out = {{"outcome", res.found ? "found" : "exhausted"},
              {"rounds_used", res.rounds_used},
              {"pairings", res.pairings},
              {"ratio", st.ratio},
              {"params", {{"s1", params.s1}, {"sigma", params.sigma}, {"s2", params.s2},
                          {"K", params.rounds}, {"mu", params.mu}}},
              {"time_ms", elapsed_ms(start)}};
  if (res.found) out["found_variable"] = res.found_var;
  std::cout << out.dump(2) << '\n';
  return 0;
}

void write_csv_rows(const std::string& path, const std::string& header,
                    const std::vector<std::string>& rows) {
  if (path.empty()) return;
  auto out = open_or_die(path);
  out << "# plsat-probe-csv v1\n" << header << '\n';
  for (const auto& r : rows) out << r << '\n';
}

int run_probe_scaling(const std::string& dist_text, const std::string& stat_name,
                      std::vector<std::int64_t> ns, std::int64_t trials, std::uint64_t seed,
                      const std::string& csv_path) {
  const plsat::DistSpec dist = plsat::DistSpec::parse(dist_text);
  const auto stat = stat_name == "max" ? plsat::ScalingStatistic::MaxDegree
                                       : plsat::ScalingStatistic::SumDegrees;
  const auto report = plsat::scaling_probe(dist, stat, std::move(ns), trials, seed);
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < report.ns.size(); ++i)
    for (std::size_t t = 0; t < report.samples[i].size(); ++t) {
      std::ostringstream row;
      row << report.ns[i] << ',' << t << ',' << report.samples[i][t];
      rows.push_back(row.str());
    }
  write_csv_rows(csv_path, "n,trial,value", rows);
  json out = {{"kind", "scaling"},
              {"dist", dist.to_string()},
              {"statistic", stat_name},
              {"ns", report.ns},
              {"medians", report.medians},
              {"fitted_exponent", report.fitted_exponent},
              {"max_abs_residual", report.max_abs_residual},
              {"trials", report.trials},
              {"seed", report.seed}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_probe_pairmoment(const std::string& dist_text, std::int64_t n, std::int64_t trials,
                         std::uint64_t seed, const std::string& csv_path) {
  const plsat::DistSpec dist = plsat::DistSpec::parse(dist_text);
  const auto report = plsat::pair_moment_probe(dist, n, trials, seed);
  std::vector<std::string> rows;
  for (std::size_t t = 0; t < report.trial_means.size(); ++t) {
    std::ostringstream row;
    row << n << ',' << t << ',' << report.trial_means[t];
    rows.push_back(row.str());
  }
  write_csv_rows(csv_path, "n,trial,mean_dplus_dminus", rows);
  json out = {{"kind", "pairmoment"}, {"dist", dist.to_string()},
              {"n", n},               {"mean", report.mean},
              {"std_error", report.std_error}, {"samples", report.samples},
              {"nonconvergent_reference", report.nonconvergent_reference}};
  if (report.reference) out["reference"] = *report.reference;
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_probe_azuma(double mu, double alpha, std::int64_t t, double eps, std::int64_t trials,
                    std::uint64_t seed, const std::string& csv_path) {
  const auto report = plsat::azuma_probe(mu, alpha, t, eps, trials, seed);
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < report.finals.size(); ++i) {
    std::ostringstream row;
    row << t << ',' << i << ',' << report.finals[i] << ','
        << (report.finals[i] <= report.threshold ? 1 : 0);
    rows.push_back(row.str());
  }
  write_csv_rows(csv_path, "t,trial,walk_final,below_threshold", rows);
  json out = {{"kind", "azuma"},   {"mu", mu},
              {"alpha", alpha},    {"t", t},
              {"eps", eps},        {"empirical", report.empirical},
              {"bound", report.bound}, {"std_error", report.std_error},
              {"threshold", report.threshold}, {"trials", report.trials}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_probe_bicycles(const std::string& dist_text, std::int64_t n, std::int64_t trials,
                       int max_len, std::uint64_t seed, const std::string& csv_path) {
  const plsat::DistSpec dist = plsat::DistSpec::parse(dist_text);
  const auto report = plsat::bicycle_count_probe(dist, n, trials, max_len, seed);
  std::vector<std::string> rows;
  for (std::size_t t = 0; t < report.counts.size(); ++t) {
    std::ostringstream row;
    row << n << ',' << t << ',' << report.counts[t];
    rows.push_back(row.str());
  }
  write_csv_rows(csv_path, "n,trial,bicycles", rows);
  json out = {{"kind", "bicycles"},        {"dist", dist.to_string()},
              {"n", n},                    {"max_len", max_len},
              {"mean_count", report.mean_count}, {"mean_bound", report.mean_bound},
              {"trials", report.trials}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_probe_heavy(const std::string& dist_text, std::int64_t n, int k, std::uint64_t seed,
                    std::vector<std::int64_t> vars) {
  const plsat::DistSpec dist = plsat::DistSpec::parse(dist_text);
  plsat::RngStream rng(seed);
  const plsat::Formula f = plsat::generate(dist, n, k, rng);
  if (vars.empty()) {
    // default: the k highest-degree variables
    std::vector<std::int64_t> order(static_cast<std::size_t>(f.n_vars));
    for (std::int64_t i = 0; i < f.n_vars; ++i) order[static_cast<std::size_t>(i)] = i;
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](std::int64_t a, std::int64_t b) {
                        const auto& da = f.lit_degrees[static_cast<std::size_t>(a)];
                        const auto& db = f.lit_degrees[static_cast<std::size_t>(b)];
                        return da.first + da.second > db.first + db.second;
                      });
    for (int i = 0; i < k; ++i) vars.push_back(order[static_cast<std::size_t>(i)] + 1);
  }
  const std::int64_t h = plsat::heavy_clause_count(f, vars);
  json out = {{"kind", "heavy"}, {"dist", dist.to_string()}, {"n", n},
              {"vars", vars},    {"heavy_clauses", h},       {"clauses", f.clause_count()}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int run_beta0() {
  const double beta0 = plsat::solve_beta0();
  const double residual =
      plsat::riemann_zeta(beta0 - 2.0) - 3.0 * plsat::riemann_zeta(beta0 - 1.0);
  json out = {{"beta0", beta0}, {"residual", residual}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"power-law random 2-SAT: configuration-model generator, exact solver, "
               "span search, and Monte Carlo sweeps"};
  app.require_subcommand(1);

  // gen
  std::string gen_dist = "zeta:4.0", gen_out = "-";
  std::int64_t gen_n = 1000;
  int gen_k = 2;
  std::uint64_t gen_seed = default_seed();
  auto* gen = app.add_subcommand("gen", "emit one random CNF as DIMACS");
  gen->add_option("--dist", gen_dist, "degree law: zeta:<beta> | pareto:<alpha> | const:<d>");
  gen->add_option("--n", gen_n, "number of variables")->required();
  gen->add_option("--k", gen_k, "clause width");
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--out", gen_out, "output path ('-' for stdout)");

  // solve
  std::string solve_in = "-";
  bool solve_cert = false;
  auto* solve = app.add_subcommand("solve", "decide a 2-CNF exactly");
  solve->add_option("--in", solve_in, "DIMACS path ('-' for stdin)");
  solve->add_flag("--certificate", solve_cert, "emit contradictory paths on UNSAT");

  // tspan
  std::string tspan_in = "-";
  double tspan_alpha = 3.0, tspan_overlap = 0.1;
  std::uint64_t tspan_seed = default_seed();
  std::int64_t tspan_rounds = 0;
  bool tspan_force = false, tspan_clonepair = false;
  auto* tspan = app.add_subcommand("tspan", "run the contradictory-path span search");
  tspan->add_option("--in", tspan_in, "DIMACS path ('-' for stdin)");
  tspan->add_option("--alpha", tspan_alpha, "tail exponent used for the schedule")->required();
  tspan->add_option("--seed", tspan_seed, "rng seed");
  tspan->add_option("--max-rounds", tspan_rounds, "override the restart budget K");
  tspan->add_option("--overlap-frac", tspan_overlap, "step-3 overlap threshold as fraction of s1");
  tspan->add_flag("--pick-clone-pair", tspan_clonepair,
                  "pick step-1 variables weighted by d+*d-");
  tspan->add_flag("--force", tspan_force, "run even when 2Tn/Sn <= 1");

  // probe
  std::string probe_kind, probe_dist = "zeta:4.0", probe_stat = "max", probe_csv;
  std::vector<std::int64_t> probe_ns{1000, 10000, 100000};
  std::vector<std::int64_t> probe_vars;
  std::int64_t probe_n = 10000, probe_trials = 30, probe_t = 1000;
  int probe_maxlen = 25, probe_k = 2;
  double probe_mu = 0.5, probe_alpha = 2.5, probe_eps = 0.1;
  std::uint64_t probe_seed = default_seed();
  auto* probe = app.add_subcommand("probe", "statistical probes of the model");
  probe->add_option("--kind", probe_kind, "scaling | pairmoment | azuma | bicycles | heavy")
      ->required();
  probe->add_option("--dist", probe_dist, "degree law");
  probe->add_option("--stat", probe_stat, "scaling statistic: max | sum");
  probe->add_option("--ns", probe_ns, "instance sizes (scaling)");
  probe->add_option("--n", probe_n, "instance size");
  probe->add_option("--trials", probe_trials, "trials");
  probe->add_option("--seed", probe_seed, "rng seed");
  probe->add_option("--mu", probe_mu, "azuma drift");
  probe->add_option("--alpha", probe_alpha, "azuma step-tail exponent");
  probe->add_option("--t", probe_t, "azuma walk length");
  probe->add_option("--eps", probe_eps, "azuma epsilon in (0, 1/2)");
  probe->add_option("--max-len", probe_maxlen, "bicycle length cap");
  probe->add_option("--k", probe_k, "clause width (heavy)");
  probe->add_option("--vars", probe_vars, "variable ids (heavy; default: top-degree)");
  probe->add_option("--csv", probe_csv, "write per-(n,trial) CSV rows here");

  // sweep
  std::string sweep_config;
  plsat::SweepConfig sc;
  sc.master_seed = default_seed();
  std::vector<std::string> sweep_dists;
  std::vector<std::int64_t> sweep_ns;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over (dist, n) cells");
  sweep->add_option("--config", sweep_config, "JSON config (overrides other flags)");
  sweep->add_option("--dists", sweep_dists, "degree laws");
  sweep->add_option("--ns", sweep_ns, "instance sizes");
  sweep->add_option("--trials", sc.trials, "trials per cell");
  sweep->add_option("--seed", sc.master_seed, "master seed");
  sweep->add_option("--k", sc.k, "clause width");
  sweep->add_flag("--run-tspan", sc.run_tspan, "run the span search on eligible trials");
  sweep->add_flag("--run-probes", sc.run_probes, "add per-cell bicycle counts to the summary");
  sweep->add_flag("--emit-dimacs", sc.emit_dimacs, "write each instance as DIMACS");
  sweep->add_option("--out-csv", sc.out_csv, "per-trial CSV path");
  sweep->add_option("--out-json", sc.out_json, "summary JSON path");
  sweep->add_option("--dimacs-dir", sc.dimacs_dir, "directory for emitted DIMACS");
  sweep->add_option("--threads", sc.threads, "worker threads (0 = hardware)");

  // beta0
  app.add_subcommand("beta0", "zeta-law satisfiability threshold");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_gen(gen_dist, gen_n, gen_k, gen_seed, gen_out);
    if (solve->parsed()) return run_solve(solve_in, solve_cert);
    if (tspan->parsed())
      return run_tspan(tspan_in, tspan_alpha, tspan_seed, tspan_rounds, tspan_overlap,
                       tspan_clonepair, tspan_force);
    if (probe->parsed()) {
      if (probe_kind == "scaling")
        return run_probe_scaling(probe_dist, probe_stat, probe_ns, probe_trials, probe_seed,
                                 probe_csv);
      if (probe_kind == "pairmoment")
        return run_probe_pairmoment(probe_dist, probe_n, probe_trials, probe_seed, probe_csv);
      if (probe_kind == "azuma")
        return run_probe_azuma(probe_mu, probe_alpha, probe_t, probe_eps, probe_trials,
                               probe_seed, probe_csv);
      if (probe_kind == "bicycles")
        return run_probe_bicycles(probe_dist, probe_n, probe_trials, probe_maxlen, probe_seed,
                                  probe_csv);
      if (probe_kind == "heavy")
        return run_probe_heavy(probe_dist, probe_n, probe_k, probe_seed, probe_vars);
      std::cerr << "unknown probe kind: " << probe_kind << '\n';
      return 2;
    }
    if (sweep->parsed()) {
      plsat::SweepConfig cfg;
      if (!sweep_config.empty()) {
        cfg = plsat::SweepConfig::from_json_file(sweep_config);
      } else {
        cfg = sc;
        cfg.dists = sweep_dists;
        cfg.ns = sweep_ns;
        cfg.validate();
      }
      const plsat::SweepResult result = plsat::run_sweep(cfg);
      {
        auto csv = open_or_die(cfg.out_csv);
        plsat::write_sweep_csv(result, csv);
      }
      const std::string summary = plsat::sweep_summary_json(cfg, result);
      {
        auto js = open_or_die(cfg.out_json);
        js << summary << '\n';
      }
      std::cout << summary << '\n';
      return 0;
    }
    return run_beta0();
  } catch (const std::exception& e) {
    std::cerr << "plsat: " << e.what() << '\n';
    return 1;
  }
}

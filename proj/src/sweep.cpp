#include "plsat/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "plsat/errors.hpp"
#include "plsat/genmodel.hpp"
#include "plsat/probe.hpp"
#include "plsat/solver.hpp"
#include "plsat/tspan.hpp"

namespace plsat {

namespace {

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string format_ratio(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

}  // namespace

std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t trial) {
  const auto mix = [](std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  };
  std::uint64_t h = mix(master + 0x9e3779b97f4a7c15ull);
  h = mix(h ^ (cell + 0x9e3779b97f4a7c15ull));
  h = mix(h ^ (trial + 0x9e3779b97f4a7c15ull));
  return h;
}

std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t total) {
  if (total <= 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;  // 97.5th normal quantile
  const double n = static_cast<double>(total);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

void SweepConfig::validate() const {
  if (dists.empty()) throw std::invalid_argument("sweep config: no distributions");
  if (ns.empty()) throw std::invalid_argument("sweep config: no instance sizes");
  if (trials < 1) throw std::invalid_argument("sweep config: trials must be >= 1");
  if (k < 2) throw std::invalid_argument("sweep config: k must be >= 2");
  for (const auto& d : dists) DistSpec::parse(d);  // throws on bad spec
  for (const auto n : ns)
    if (n < k) throw std::invalid_argument("sweep config: n must be >= k");
}

SweepConfig SweepConfig::from_json_text(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SweepConfig cfg;
  cfg.dists = j.at("dists").get<std::vector<std::string>>();
  cfg.ns = j.at("ns").get<std::vector<std::int64_t>>();
  cfg.trials = j.value("trials", std::int64_t{1});
  cfg.master_seed = j.value("seed", std::uint64_t{0});
  cfg.k = j.value("k", 2);
  cfg.run_tspan = j.value("run_tspan", false);
  cfg.run_probes = j.value("run_probes", false);
  cfg.emit_dimacs = j.value("emit_dimacs", false);
  cfg.out_csv = j.value("out_csv", std::string("sweep.csv"));
  cfg.out_json = j.value("out_json", std::string("sweep.json"));
  cfg.dimacs_dir = j.value("dimacs_dir", std::string("."));
  cfg.threads = j.value("threads", 0);
  cfg.probe_max_len = j.value("probe_max_len", 25);
  cfg.validate();
  return cfg;
}

SweepConfig SweepConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return from_json_text(text.str());
}

TrialRecord run_trial(const SweepConfig& config, std::int64_t cell_index,
                      const std::string& dist_text, std::int64_t n, std::int64_t trial_index) {
  const DistSpec dist = DistSpec::parse(dist_text);
  TrialRecord rec;
  rec.dist = dist.to_string();
  rec.n = n;
  rec.seed = derive_trial_seed(config.master_seed, static_cast<std::uint64_t>(cell_index),
                               static_cast<std::uint64_t>(trial_index));
  RngStream rng(rec.seed);

  const std::int64_t gen_start = now_ms();
  Formula f;
  try {
    f = generate(dist, n, config.k, rng);
  } catch (const DegenerateParity& e) {
    rec.verdict = "ERROR";
    rec.error = e.what();
    rec.gen_ms = now_ms() - gen_start;
    return rec;
  }
  rec.gen_ms = now_ms() - gen_start;
  rec.stats = stats(f);

  if (config.k == 2) {
    const std::int64_t solve_start = now_ms();
    const ImplicationDigest digest = decide(f);
    rec.solve_ms = now_ms() - solve_start;
    rec.verdict = digest.sat ? "SAT" : "UNSAT";
  } else {
    rec.verdict = "-";  // no decision procedure beyond k = 2
  }

  if (config.emit_dimacs) {
    std::ostringstream name;
    name << config.dimacs_dir << '/' << rec.dist << "_n" << n << "_t" << trial_index << ".cnf";
    std::ofstream out(name.str());
    write_dimacs(f, out);
  }

  if (config.run_tspan && config.k == 2) {
    if (!(dist.alpha() > 2.0)) {
      rec.tspan = "alpha_le_2";
    } else if (rec.stats.ratio <= 1.0) {
      rec.tspan = "subcritical";
    } else {
      const SpanParams params = SpanParams::compute(n, dist.alpha(), rec.stats);
      const SearchResult sr = search_contradictory_paths(f, params, rng);
      rec.tspan = sr.found ? "found" : "exhausted";
      rec.tspan_found_var = sr.found_var;
    }
  }
  return rec;
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const std::int64_t cells =
      static_cast<std::int64_t>(config.dists.size()) * static_cast<std::int64_t>(config.ns.size());
  const std::int64_t total = cells * config.trials;
  SweepResult result;
  result.records.assign(static_cast<std::size_t>(total), {});

  std::atomic<std::int64_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const std::int64_t slot = next.fetch_add(1);
      if (slot >= total) return;
      const std::int64_t cell = slot / config.trials;
      const std::int64_t trial = slot % config.trials;
      const auto dist_idx = static_cast<std::size_t>(cell / static_cast<std::int64_t>(config.ns.size()));
      const auto n_idx = static_cast<std::size_t>(cell % static_cast<std::int64_t>(config.ns.size()));
      result.records[static_cast<std::size_t>(slot)] =
          run_trial(config, cell, config.dists[dist_idx], config.ns[n_idx], trial);
    }
  };
  unsigned thread_count = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                             : std::thread::hardware_concurrency();
  if (thread_count == 0) thread_count = 1;
  thread_count = std::min<unsigned>(thread_count, static_cast<unsigned>(total));
  {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::int64_t cell = 0; cell < cells; ++cell) {
    CellSummary cs;
    const auto first = static_cast<std::size_t>(cell * config.trials);
    cs.dist = result.records[first].dist;
    cs.n = result.records[first].n;
    cs.trials = config.trials;
    double ratio_acc = 0.0;
    for (std::int64_t t = 0; t < config.trials; ++t) {
      const TrialRecord& rec = result.records[first + static_cast<std::size_t>(t)];
      if (rec.verdict == "SAT")
        cs.sat++;
      else if (rec.verdict == "UNSAT")
        cs.unsat++;
      else
        cs.errors++;
      ratio_acc += rec.stats.ratio;
      if (rec.tspan == "found")
        cs.tspan_found++;
      else if (rec.tspan == "exhausted")
        cs.tspan_exhausted++;
      else if (rec.tspan != "-")
        cs.tspan_skipped++;
    }
    const std::int64_t decided = cs.sat + cs.unsat;
    cs.sat_fraction = decided > 0 ? static_cast<double>(cs.sat) / static_cast<double>(decided) : 0.0;
    std::tie(cs.wilson_low, cs.wilson_high) = wilson_interval(cs.sat, decided);
    cs.mean_ratio = ratio_acc / static_cast<double>(config.trials);
    if (config.run_probes && config.k == 2) {
      const auto probe = bicycle_count_probe(
          DistSpec::parse(cs.dist), cs.n, std::min<std::int64_t>(config.trials, 10),
          config.probe_max_len, derive_trial_seed(config.master_seed, cell, 0x62696b65));
      cs.mean_bicycles = probe.mean_count;
    }
    result.cells.push_back(cs);
  }
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "# plsat-sweep-csv v1\n";
  out << "dist,n,seed,Sn,Tn,Delta,ratio,verdict,tspan,gen_ms,solve_ms\n";
  for (const TrialRecord& r : result.records) {
    out << r.dist << ',' << r.n << ',' << r.seed << ',' << r.stats.sn << ',' << r.stats.tn << ','
        << r.stats.delta << ',' << format_ratio(r.stats.ratio) << ',' << r.verdict << ','
        << r.tspan << ',' << r.gen_ms << ',' << r.solve_ms << '\n';
  }
}

std::string sweep_summary_json(const SweepConfig& config, const SweepResult& result) {
  nlohmann::json j;
  j["config"] = {{"dists", config.dists}, {"ns", config.ns},       {"trials", config.trials},
                 {"seed", config.master_seed}, {"k", config.k},    {"run_tspan", config.run_tspan},
                 {"run_probes", config.run_probes}};
  j["cells"] = nlohmann::json::array();
  for (const CellSummary& c : result.cells) {
    nlohmann::json cell = {
        {"dist", c.dist},
        {"n", c.n},
        {"trials", c.trials},
        {"sat", c.sat},
        {"unsat", c.unsat},
        {"errors", c.errors},
        {"sat_fraction", c.sat_fraction},
        {"wilson95", {c.wilson_low, c.wilson_high}},
        {"mean_ratio", c.mean_ratio},
    };
    if (c.tspan_found + c.tspan_exhausted + c.tspan_skipped > 0)
      cell["tspan"] = {{"found", c.tspan_found},
                       {"exhausted", c.tspan_exhausted},
                       {"skipped", c.tspan_skipped}};
    if (c.mean_bicycles >= 0.0) cell["mean_bicycles"] = c.mean_bicycles;
    j["cells"].push_back(cell);
  }
  return j.dump(2);
}

}  // namespace plsat

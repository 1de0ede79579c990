#include "plsat/probe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "plsat/genmodel.hpp"
#include "plsat/rng.hpp"
#include "plsat/solver.hpp"
#include "plsat/zeta.hpp"

namespace plsat {

ScalingReport scaling_probe(const DistSpec& dist, ScalingStatistic stat,
                            std::vector<std::int64_t> ns, std::int64_t trials,
                            std::uint64_t seed) {
  if (ns.size() < 3) throw std::invalid_argument("scaling probe needs at least 3 sizes");
  if (trials < 10) throw std::invalid_argument("scaling probe needs at least 10 trials");
  std::sort(ns.begin(), ns.end());
  ScalingReport report;
  report.ns = ns;
  report.trials = trials;
  report.seed = seed;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(trials));
    for (std::int64_t t = 0; t < trials; ++t) {
      RngStream rng(seed, {i, static_cast<std::uint64_t>(t)});
      std::int64_t acc = 0;
      for (std::int64_t j = 0; j < ns[i]; ++j) {
        const std::int64_t d = dist.sample(rng);
        acc = stat == ScalingStatistic::MaxDegree ? std::max(acc, d) : acc + d;
      }
      values.push_back(static_cast<double>(acc));
    }
    report.samples.push_back(values);
    std::sort(values.begin(), values.end());
    const std::size_t half = values.size() / 2;
    report.medians.push_back(values.size() % 2 == 1
                                 ? values[half]
                                 : 0.5 * (values[half - 1] + values[half]));
  }
  // least squares on (log n, log median)
  const auto points = ns.size();
  double sx = 0, sy = 0;
  std::vector<double> xs(points), ys(points);
  for (std::size_t i = 0; i < points; ++i) {
    xs[i] = std::log(static_cast<double>(ns[i]));
    ys[i] = std::log(report.medians[i]);
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / static_cast<double>(points);
  const double my = sy / static_cast<double>(points);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < points; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  report.fitted_exponent = sxy / sxx;
  const double intercept = my - report.fitted_exponent * mx;
  for (std::size_t i = 0; i < points; ++i)
    report.max_abs_residual = std::max(
        report.max_abs_residual, std::abs(ys[i] - (intercept + report.fitted_exponent * xs[i])));
  return report;
}

PairMomentReport pair_moment_probe(const DistSpec& dist, std::int64_t n, std::int64_t trials,
                                   std::uint64_t seed) {
  PairMomentReport report;
  long double sum = 0.0L;
  long double sumsq = 0.0L;
  for (std::int64_t t = 0; t < trials; ++t) {
    RngStream rng(seed, {static_cast<std::uint64_t>(t)});
    const Formula f = generate(dist, n, 2, rng);
    long double trial_sum = 0.0L;
    for (const auto& [pos, neg] : f.lit_degrees) {
      const auto value = static_cast<long double>(pos) * static_cast<long double>(neg);
      sum += value;
      sumsq += value * value;
      trial_sum += value;
      report.samples++;
    }
    report.trial_means.push_back(
        static_cast<double>(trial_sum / static_cast<long double>(f.n_vars)));
  }
  const auto count = static_cast<long double>(report.samples);
  report.mean = static_cast<double>(sum / count);
  const long double variance = sumsq / count - (sum / count) * (sum / count);
  report.std_error = static_cast<double>(std::sqrt(std::max(0.0L, variance) / count));
  const auto m2 = dist.moment(2);
  if (m2) {
    report.reference = (*m2 - *dist.moment(1)) / 4.0;
  } else {
    report.nonconvergent_reference = true;
  }
  return report;
}

AzumaReport azuma_probe(double mu, double alpha, std::int64_t t, double eps, std::int64_t trials,
                        std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("azuma probe needs 0 < eps < 1/2");
  if (!(alpha > 1.0)) throw std::invalid_argument("azuma probe needs alpha > 1");
  if (!(mu > 0.0)) throw std::invalid_argument("azuma probe needs mu > 0");
  if (t < 2 || trials < 1) throw std::invalid_argument("azuma probe needs t >= 2, trials >= 1");
  const double shift = riemann_zeta(alpha) - mu;  // step = Z - shift
  if (shift > 2.0)
    throw std::invalid_argument("mean shift would break the step lower bound of -1");
  const DistSpec law = DistSpec::pareto_tail(alpha);
  std::int64_t hits = 0;
  const double threshold = eps * mu * static_cast<double>(t);
  AzumaReport report;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    RngStream rng(seed, {static_cast<std::uint64_t>(trial)});
    double walk = 0.0;
    for (std::int64_t i = 0; i < t; ++i)
      walk += static_cast<double>(law.sample(rng)) - shift;
    report.finals.push_back(walk);
    if (walk <= threshold) ++hits;
  }
  report.threshold = threshold;
  report.trials = trials;
  report.empirical = static_cast<double>(hits) / static_cast<double>(trials);
  const double logt = std::log(static_cast<double>(t));
  report.bound =
      std::exp(-static_cast<double>(t) * mu * mu * (0.5 - eps) * (0.5 - eps) / (4.0 * logt * logt));
  report.std_error =
      std::sqrt(report.empirical * (1.0 - report.empirical) / static_cast<double>(trials));
  return report;
}

std::int64_t heavy_clause_count(const Formula& f, const std::vector<std::int64_t>& vars) {
  if (static_cast<int>(vars.size()) != f.k)
    throw std::invalid_argument("heavy clause count takes exactly k variables");
  std::vector<std::uint8_t> marked(static_cast<std::size_t>(f.n_vars), 0);
  for (const std::int64_t v : vars) {
    if (v < 1 || v > f.n_vars) throw std::invalid_argument("variable id out of range");
    marked[static_cast<std::size_t>(v) - 1] = 1;
  }
  std::int64_t count = 0;
  const std::int64_t m = f.clause_count();
  for (std::int64_t c = 0; c < m; ++c) {
    bool all = true;
    for (int j = 0; j < f.k && all; ++j)
      all = marked[static_cast<std::size_t>(std::abs(f.lit(c, j))) - 1] != 0;
    count += all;
  }
  return count;
}

BicycleProbeReport bicycle_count_probe(const DistSpec& dist, std::int64_t n, std::int64_t trials,
                                       int max_len, std::uint64_t seed, std::int64_t cap) {
  BicycleProbeReport report;
  report.trials = trials;
  long double count_acc = 0.0L;
  long double bound_acc = 0.0L;
  for (std::int64_t t = 0; t < trials; ++t) {
    RngStream rng(seed, {static_cast<std::uint64_t>(t)});
    const Formula f = generate(dist, n, 2, rng);
    const auto bikes = find_bicycles(f, max_len, cap);
    report.counts.push_back(static_cast<std::int64_t>(bikes.size()));
    count_acc += static_cast<long double>(bikes.size());
    const FormulaStats st = stats(f);
    long double geometric = 0.0L;
    long double term = static_cast<long double>(st.ratio);
    for (int j = 1; j <= max_len; ++j) {
      geometric += term;
      term *= static_cast<long double>(st.ratio);
    }
    bound_acc += 2.0L * static_cast<long double>(st.delta) * static_cast<long double>(st.delta) /
                 static_cast<long double>(st.sn) * geometric;
  }
  report.mean_count = static_cast<double>(count_acc / static_cast<long double>(trials));
  report.mean_bound = static_cast<double>(bound_acc / static_cast<long double>(trials));
  return report;
}

}  // namespace plsat

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "plsat/dist.hpp"
#include "plsat/formula.hpp"

namespace plsat {

enum class ScalingStatistic { MaxDegree, SumDegrees };

// Log-log growth fit of a degree statistic: medians of the statistic over
// seeded trials at each n, with the least-squares slope of log(median) vs
// log(n). Medians, not means: the maximum of heavy-tailed draws has
// infinite variance for alpha <= 2.
struct ScalingReport {
  std::vector<std::int64_t> ns;
  std::vector<double> medians;
  std::vector<std::vector<double>> samples;  // per n, per trial
  double fitted_exponent = 0.0;
  double max_abs_residual = 0.0;  // of the fitted line, in log space
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

ScalingReport scaling_probe(const DistSpec& dist, ScalingStatistic stat,
                            std::vector<std::int64_t> ns, std::int64_t trials,
                            std::uint64_t seed);

// Empirical mean of d+ * d- over all variables of `trials` generated
// 2-CNFs, against the reference (E xi^2 - E xi) / 4 when it exists.
struct PairMomentReport {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::vector<double> trial_means;
  std::optional<double> reference;
  bool nonconvergent_reference = false;
};

PairMomentReport pair_moment_probe(const DistSpec& dist, std::int64_t n, std::int64_t trials,
                                   std::uint64_t seed);

// Simulates the drift walk X = sum of (Z - c) with Z drawn from
// ParetoTail(alpha) and c = zeta(alpha) - mu, so each step has mean exactly
// mu, is bounded below by -1, and has tail Pr[step >= l] <= l^-alpha.
// Returns the empirical Pr[X <= eps*mu*t] next to the analytic bound
// exp(-(t + X0) * mu^2 * (1/2 - eps)^2 / (4 log^2 t)) with X0 = 0.
struct AzumaReport {
  double empirical = 0.0;
  double bound = 0.0;
  double std_error = 0.0;
  double threshold = 0.0;  // eps * mu * t
  std::vector<double> finals;  // per-trial walk endpoints
  std::int64_t trials = 0;
};

AzumaReport azuma_probe(double mu, double alpha, std::int64_t t, double eps, std::int64_t trials,
                        std::uint64_t seed);

// Exact count of clauses built only from literals of the given variables
// (1-based ids; exactly f.k of them).
std::int64_t heavy_clause_count(const Formula& f, const std::vector<std::int64_t>& vars);

// Mean short-bicycle count over generated 2-CNFs, next to the per-trial
// analytic bound (2 Delta^2 / Sn) * sum_{j<=max_len} ratio^j averaged the
// same way.
struct BicycleProbeReport {
  std::vector<std::int64_t> counts;  // per trial
  double mean_count = 0.0;
  double mean_bound = 0.0;
  std::int64_t trials = 0;
};

BicycleProbeReport bicycle_count_probe(const DistSpec& dist, std::int64_t n, std::int64_t trials,
                                       int max_len, std::uint64_t seed,
                                       std::int64_t cap = 10000);

}  // namespace plsat

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plsat/rng.hpp"

namespace plsat {

enum class DistKind { Zeta, ParetoTail, Constant };

// Which side of the satisfiability criterion E[xi^2] ? 3*E[xi] a law falls on.
// UnsatSide covers alpha <= 2 (second moment infinite or critical tail) as
// well as finite E[xi^2] > 3*E[xi].
enum class ThresholdSide { SatSide, UnsatSide, Critical };

// A degree law on the positive integers with a power-law right tail
//   W * l^-alpha <= Pr[xi >= l] <= V * l^-alpha.
//
// Three concrete families:
//   Zeta(beta):       Pr[xi = l] = l^-beta / zeta(beta), beta > 1, alpha = beta - 1
//   ParetoTail(alpha): Pr[xi >= l] = min(1, l^-alpha), alpha > 0 (V = W = 1)
//   Constant(d):      point mass at d, alpha = +infinity
//
// Values are immutable after construction and safe to share across threads.
class DistSpec {
 public:
  static DistSpec zeta(double beta);
  static DistSpec pareto_tail(double alpha);
  static DistSpec constant(std::int64_t d);

  // CLI spelling: "zeta:<beta>", "pareto:<alpha>", "const:<d>".
  static DistSpec parse(const std::string& text);
  std::string to_string() const;

  DistKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double param() const { return param_; }
  std::int64_t constant_value() const { return const_d_; }

  // Pr[xi = l], l >= 1.
  double pmf(std::int64_t l) const;

  // Tail function F(l) = Pr[xi >= l], l >= 1. F(1) = 1, nonincreasing.
  double tail(std::int64_t l) const;

  // E[xi^m] when m < alpha, via the tail-sum identity
  //   E[xi^m] = sum_l (l^m - (l-1)^m) * F(l)
  // with the remainder past the summed block evaluated analytically so the
  // absolute error stays below 1e-9. Divergent moments return nullopt.
  std::optional<double> moment(int m) const;

  // Inverse-CDF draw: the least l with Pr[xi <= l] >= u for u uniform in
  // (0,1). Cumulative table up to l = 2^16, analytic tail inversion beyond.
  std::int64_t sample(RngStream& rng) const;

  ThresholdSide threshold_side() const;

 private:
  DistSpec(DistKind kind, double param, std::int64_t d);

  std::int64_t sample_beyond_table(double u) const;

  DistKind kind_;
  double param_ = 0.0;    // beta for Zeta, alpha for ParetoTail
  double alpha_ = 0.0;    // tail exponent (+inf for Constant)
  std::int64_t const_d_ = 0;
  double zeta_norm_ = 0.0;  // zeta(beta), Zeta only

  // cum_[i] = Pr[xi <= i + 1] for i in [0, table size); shared, immutable.
  std::shared_ptr<const std::vector<double>> cum_;
};

}  // namespace plsat

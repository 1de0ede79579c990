#include "plsat/dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "plsat/zeta.hpp"

namespace plsat {

namespace {

constexpr std::int64_t kTableSize = 1 << 16;

double binomial(int n, int k) {
  double acc = 1.0;
  for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

}  // namespace

DistSpec::DistSpec(DistKind kind, double param, std::int64_t d)
    : kind_(kind), param_(param), const_d_(d) {
  switch (kind_) {
    case DistKind::Zeta:
      if (!(param > 1.0)) throw std::invalid_argument("zeta law requires beta > 1");
      alpha_ = param - 1.0;
      zeta_norm_ = riemann_zeta(param);
      break;
    case DistKind::ParetoTail:
      if (!(param > 0.0)) throw std::invalid_argument("pareto tail requires alpha > 0");
      alpha_ = param;
      break;
    case DistKind::Constant:
      if (d < 1) throw std::invalid_argument("constant degree must be >= 1");
      alpha_ = std::numeric_limits<double>::infinity();
      return;  // no table needed
  }
  auto cum = std::make_shared<std::vector<double>>();
  cum->reserve(kTableSize);
  long double acc = 0.0L;
  for (std::int64_t l = 1; l <= kTableSize; ++l) {
    acc += static_cast<long double>(pmf(l));
    cum->push_back(static_cast<double>(acc));
  }
  cum_ = std::move(cum);
}

DistSpec DistSpec::zeta(double beta) { return DistSpec(DistKind::Zeta, beta, 0); }
DistSpec DistSpec::pareto_tail(double alpha) { return DistSpec(DistKind::ParetoTail, alpha, 0); }
DistSpec DistSpec::constant(std::int64_t d) { return DistSpec(DistKind::Constant, 0.0, d); }

DistSpec DistSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("distribution must look like zeta:<beta>, pareto:<alpha>, or const:<d>");
  const std::string head = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  std::size_t used = 0;
  if (head == "zeta") {
    const double beta = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument("bad zeta parameter: " + arg);
    return zeta(beta);
  }
  if (head == "pareto") {
    const double alpha = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument("bad pareto parameter: " + arg);
    return pareto_tail(alpha);
  }
  if (head == "const") {
    const long long d = std::stoll(arg, &used);
    if (used != arg.size()) throw std::invalid_argument("bad constant degree: " + arg);
    return constant(d);
  }
  throw std::invalid_argument("unknown distribution kind: " + head);
}

std::string DistSpec::to_string() const {
  char buf[64];
  switch (kind_) {
    case DistKind::Zeta:
      std::snprintf(buf, sizeof buf, "zeta:%g", param_);
      return buf;
    case DistKind::ParetoTail:
      std::snprintf(buf, sizeof buf, "pareto:%g", param_);
      return buf;
    case DistKind::Constant:
      std::snprintf(buf, sizeof buf, "const:%lld", static_cast<long long>(const_d_));
      return buf;
  }
  return "?";
}

double DistSpec::pmf(std::int64_t l) const {
  if (l < 1) throw std::invalid_argument("pmf domain is l >= 1");
  switch (kind_) {
    case DistKind::Zeta:
      return std::pow(static_cast<double>(l), -param_) / zeta_norm_;
    case DistKind::ParetoTail:
      return tail(l) - tail(l + 1);
    case DistKind::Constant:
      return l == const_d_ ? 1.0 : 0.0;
  }
  return 0.0;
}

double DistSpec::tail(std::int64_t l) const {
  if (l < 1) throw std::invalid_argument("tail domain is l >= 1");
  switch (kind_) {
    case DistKind::Zeta:
      return zeta_power_tail(param_, l - 1) / zeta_norm_;
    case DistKind::ParetoTail:
      return l == 1 ? 1.0 : std::pow(static_cast<double>(l), -param_);
    case DistKind::Constant:
      return l <= const_d_ ? 1.0 : 0.0;
  }
  return 0.0;
}

std::optional<double> DistSpec::moment(int m) const {
  if (m < 1) throw std::invalid_argument("moment order must be >= 1");
  if (kind_ == DistKind::Constant) return std::pow(static_cast<double>(const_d_), m);
  if (static_cast<double>(m) >= alpha_) return std::nullopt;
  if (kind_ == DistKind::Zeta) {
    // Tail-sum identity telescopes to zeta(beta - m) / zeta(beta).
    return riemann_zeta(param_ - m) / zeta_norm_;
  }
  // ParetoTail: expand l^m - (l-1)^m binomially; each piece telescopes into
  // an integer power sum, summed to kBlock directly with the analytic
  // zeta_power_tail remainder (error well under 1e-9).
  constexpr std::int64_t kBlock = 1 << 12;
  double acc = 0.0;
  double prev = 0.0;  // (l-1)^m
  for (std::int64_t l = 1; l <= kBlock; ++l) {
    const double cur = std::pow(static_cast<double>(l), m);
    acc += (cur - prev) * tail(l);
    prev = cur;
  }
  for (int i = 1; i <= m; ++i) {
    const double sign = (i % 2 == 1) ? 1.0 : -1.0;
    acc += sign * binomial(m, i) * zeta_power_tail(alpha_ - m + i, kBlock);
  }
  return acc;
}

std::int64_t DistSpec::sample(RngStream& rng) const {
  if (kind_ == DistKind::Constant) return const_d_;
  const double u = rng.next_open01();
  const auto& cum = *cum_;
  if (u <= cum.back()) {
    // least l with Pr[xi <= l] >= u
    const auto it = std::lower_bound(cum.begin(), cum.end(), u);
    return static_cast<std::int64_t>(it - cum.begin()) + 1;
  }
  return sample_beyond_table(u);
}

std::int64_t DistSpec::sample_beyond_table(double u) const {
  // Least l with 1 - tail(l+1) >= u, i.e. tail(l+1) <= 1-u, beyond the table.
  const double target = 1.0 - u;
  std::int64_t lo = kTableSize;  // tail(lo+1) > target here
  std::int64_t hi = lo;
  while (tail(hi + 1) > target) {
    lo = hi;
    if (hi > (std::int64_t{1} << 56)) break;  // target below representable tail
    hi *= 2;
  }
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (tail(mid + 1) <= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  return hi;
}

ThresholdSide DistSpec::threshold_side() const {
  if (alpha_ <= 2.0) return ThresholdSide::UnsatSide;
  const auto m2 = moment(2);
  if (!m2) return ThresholdSide::UnsatSide;
  const double m1 = *moment(1);
  const double gap = *m2 - 3.0 * m1;
  if (std::abs(gap) < 1e-12) return ThresholdSide::Critical;
  return gap > 0.0 ? ThresholdSide::UnsatSide : ThresholdSide::SatSide;
}

}  // namespace plsat

#include "plsat/genmodel.hpp"

#include <stdexcept>

#include "plsat/errors.hpp"

namespace plsat {

DegreeSequence sample_degrees(const DistSpec& dist, std::int64_t n, int k, RngStream& rng) {
  if (k < 2) throw std::invalid_argument("clause width must be >= 2");
  if (n < k) throw std::invalid_argument("need at least k variables");
  DegreeSequence seq;
  seq.k = k;
  seq.degrees.resize(static_cast<std::size_t>(n));
  constexpr std::int64_t kMaxRejections = 1'000'000;
  for (std::int64_t attempt = 0; attempt <= kMaxRejections; ++attempt) {
    std::int64_t sum = 0;
    for (auto& d : seq.degrees) {
      d = dist.sample(rng);
      sum += d;
    }
    if (sum % k == 0) return seq;
    // A constant law redraws the same sum forever.
    if (dist.kind() == DistKind::Constant)
      throw DegenerateParity("degree sum " + std::to_string(sum) + " never divisible by " +
                             std::to_string(k));
  }
  throw DegenerateParity("degree sequence rejected 10^6 times");
}

Formula build_formula(const DegreeSequence& degs, RngStream& rng) {
  const std::int64_t n = degs.size();
  const int k = degs.k;
  const std::int64_t sn = degs.sum();
  if (sn % k != 0) throw std::invalid_argument("degree sum not divisible by clause width");

  // Clone pool: variable i contributes d_i entries. Uniform draws without
  // replacement via swap-with-last removal.
  std::vector<std::int32_t> pool;
  pool.reserve(static_cast<std::size_t>(sn));
  for (std::int64_t i = 0; i < n; ++i) {
    if (degs.degrees[static_cast<std::size_t>(i)] < 1)
      throw std::invalid_argument("degrees must be >= 1");
    for (std::int64_t c = 0; c < degs.degrees[static_cast<std::size_t>(i)]; ++c)
      pool.push_back(static_cast<std::int32_t>(i + 1));
  }

  Formula f;
  f.n_vars = n;
  f.k = k;
  f.lits.reserve(pool.size());
  f.lit_degrees.assign(static_cast<std::size_t>(n), {0, 0});
  std::size_t live = pool.size();
  while (live > 0) {
    for (int j = 0; j < k; ++j) {
      const std::size_t pick = static_cast<std::size_t>(rng.below(live));
      const std::int32_t var = pool[pick];
      pool[pick] = pool[--live];
      const bool negate = rng.coin();
      f.lits.push_back(negate ? -var : var);
      auto& [pos, neg] = f.lit_degrees[static_cast<std::size_t>(var) - 1];
      (negate ? neg : pos) += 1;
    }
  }
  return f;
}

Formula generate(const DistSpec& dist, std::int64_t n, int k, RngStream& rng) {
  const DegreeSequence degs = sample_degrees(dist, n, k, rng);
  return build_formula(degs, rng);
}

}  // namespace plsat

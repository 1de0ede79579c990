#include "plsat/tspan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "plsat/errors.hpp"
#include "plsat/solver.hpp"

namespace plsat {

SpanParams SpanParams::compute(std::int64_t n, double alpha, const FormulaStats& stats,
                               bool allow_subcritical) {
  if (n < 2) throw std::invalid_argument("span schedule needs n >= 2");
  if (!(alpha > 2.0)) throw std::invalid_argument("span schedule needs alpha > 2");
  if (stats.ratio <= 1.0 && !allow_subcritical)
    throw SubcriticalRatio("2*Tn/Sn = " + std::to_string(stats.ratio) +
                           " <= 1: contradictory paths are not expected");
  const double nd = static_cast<double>(n);
  SpanParams p;
  p.mu = stats.ratio - 1.0;
  // alpha -> infinity (constant laws) degenerates to exponents 1/6, 11/12, 7/12
  const bool bounded = std::isfinite(alpha);
  const double e1 = bounded ? (alpha + 4.0) / (6.0 * (alpha + 1.0)) : 1.0 / 6.0;
  const double e2 = bounded ? (11.0 * alpha * alpha + 3.0 * alpha - 2.0) /
                                  (12.0 * alpha * (alpha + 1.0))
                            : 11.0 / 12.0;
  const double eK = bounded ? (7.0 * alpha + 10.0) / (12.0 * (alpha + 1.0)) : 7.0 / 12.0;
  p.s1 = static_cast<std::int64_t>(std::ceil(std::pow(nd, e1)));
  p.s2 = static_cast<std::int64_t>(std::ceil(std::pow(nd, e2)));
  p.rounds = static_cast<std::int64_t>(std::ceil(std::pow(nd, eK)));
  p.sigma = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(static_cast<double>(p.s1) * p.mu / 6.0)));
  return p;
}

SpanState::SpanState(const Formula& f)
    : live_{IndexedSet(static_cast<std::int64_t>(f.lits.size())),
            IndexedSet(static_cast<std::int64_t>(f.lits.size()))} {
  if (f.k != 2) throw WidthError("span state requires a 2-CNF");
  const std::int64_t m = f.clause_count();
  clone_lit_.reserve(f.lits.size());
  partner_.resize(f.lits.size());
  lit_clones_.assign(static_cast<std::size_t>(2 * f.n_vars), {});
  // clause c owns clones 2c and 2c+1, so clone/2 recovers the clause
  for (std::int64_t c = 0; c < m; ++c) {
    for (int j = 0; j < 2; ++j) {
      const std::int32_t lit = f.lit(c, j);
      const std::int64_t clone = 2 * c + j;
      clone_lit_.push_back(lit);
      partner_[static_cast<std::size_t>(clone)] = 2 * c + (1 - j);
      lit_clones_[static_cast<std::size_t>(lit_index(lit))].push_back(clone);
    }
  }
  flags_.assign(clone_lit_.size(), 0);
}

CloneState SpanState::state_of(std::int64_t clone) const {
  const std::uint8_t f = flags_[static_cast<std::size_t>(clone)];
  if (f & kFlagConnected) return CloneState::Connected;
  if (f & (kFlagLiveP | kFlagLiveQ)) return CloneState::Live;
  return CloneState::Untouched;
}

bool SpanState::live_in(int span, std::int64_t clone) const {
  const std::uint8_t bit = span == kSpanP ? kFlagLiveP : kFlagLiveQ;
  return (flags_[static_cast<std::size_t>(clone)] & bit) != 0;
}

void SpanState::make_live(int span, std::int64_t clone) {
  if (flags_[static_cast<std::size_t>(clone)] != 0)
    throw std::logic_error("span seed must be an untouched clone");
  flags_[static_cast<std::size_t>(clone)] = span == kSpanP ? kFlagLiveP : kFlagLiveQ;
  live_[span].insert(clone);
  live_union_++;
}

std::int64_t SpanState::live_count(int span) const { return live_[span].size(); }

std::int64_t SpanState::overlap_count() const {
  const IndexedSet& small = live_[0].size() <= live_[1].size() ? live_[0] : live_[1];
  const std::uint8_t both = kFlagLiveP | kFlagLiveQ;
  std::int64_t acc = 0;
  for (const std::int64_t c : small.items)
    if ((flags_[static_cast<std::size_t>(c)] & both) == both) ++acc;
  return acc;
}

void SpanState::connect(std::int64_t clone) {
  std::uint8_t& f = flags_[static_cast<std::size_t>(clone)];
  if (f & kFlagConnected) throw std::logic_error("clone already paired");
  if (f & kFlagLiveP) live_[kSpanP].erase(clone);
  if (f & kFlagLiveQ) live_[kSpanQ].erase(clone);
  if (f & (kFlagLiveP | kFlagLiveQ)) live_union_--;
  f = kFlagConnected;
  connected_++;
}

SpanState::Stop SpanState::run(int span, std::int64_t sigma, std::int64_t tau, RngStream& rng,
                               std::int64_t cap_clones, bool stop_on_comp) {
  std::int64_t done = 0;
  for (;;) {
    const std::int64_t live_now = live_[span].size();
    if (live_now == 0) return kLiveEmpty;
    if (live_now > sigma) return kReachedSigma;
    if (done >= tau) return kReachedTau;
    if (connected_ + 2 > cap_clones) return kCapStop;

    const std::int64_t c1 = live_[span].sample(rng);
    const std::int64_t c2 = partner_[static_cast<std::size_t>(c1)];
    // c1 was never paired, so neither was its partner
    if (flags_[static_cast<std::size_t>(c2)] & kFlagConnected)
      throw std::logic_error("partner of a live clone was already paired");
    if (live_in(span, c2) && !comp_seen_[span]) {
      comp_seen_[span] = true;
      comp_pairing_[span] = static_cast<std::int64_t>(pairs_.size());
    }
    connect(c1);
    connect(c2);
    pairs_.emplace_back(c1, c2);

    const std::int32_t w = clone_lit_[static_cast<std::size_t>(c2)];
    const std::uint8_t bit = span == kSpanP ? kFlagLiveP : kFlagLiveQ;
    for (const std::int64_t c : lit_clones_[static_cast<std::size_t>(lit_index(-w))]) {
      std::uint8_t& f = flags_[static_cast<std::size_t>(c)];
      if (f != 0) continue;
      f = bit;
      live_[span].insert(c);
      live_union_++;
    }
    history_[span].push_back(live_[span].size());
    ++done;
    if (stop_on_comp && comp_seen_[span]) return kFoundStop;
  }
}

TspanOutcome SpanState::tspan(int span, std::int64_t sigma, std::int64_t tau, RngStream& rng) {
  switch (run(span, sigma, tau, rng, std::numeric_limits<std::int64_t>::max(), false)) {
    case kLiveEmpty:
      return TspanOutcome::LiveEmpty;
    case kReachedSigma:
      return TspanOutcome::ReachedSigma;
    default:
      return TspanOutcome::ReachedTau;
  }
}

std::optional<std::int64_t> SpanState::pick_untouched_clone(std::int32_t lit,
                                                            RngStream& rng) const {
  const auto& clones = lit_clones_[static_cast<std::size_t>(lit_index(lit))];
  std::vector<std::int64_t> open;
  open.reserve(clones.size());
  for (const std::int64_t c : clones)
    if (flags_[static_cast<std::size_t>(c)] == 0) open.push_back(c);
  if (open.empty()) return std::nullopt;
  return open[static_cast<std::size_t>(rng.below(open.size()))];
}

void SpanState::reset_spans() {
  for (int span : {kSpanP, kSpanQ}) {
    for (const std::int64_t c : live_[span].items) {
      flags_[static_cast<std::size_t>(c)] = 0;
      live_[span].pos[static_cast<std::size_t>(c)] = -1;
    }
    live_[span].items.clear();
    comp_seen_[span] = false;
    comp_pairing_[span] = -1;
  }
  live_union_ = 0;
}

void SpanState::check_partition() const {
  std::int64_t live_union = 0;
  std::int64_t connected = 0;
  for (std::size_t c = 0; c < flags_.size(); ++c) {
    const std::uint8_t f = flags_[c];
    const bool in_p = live_[kSpanP].contains(static_cast<std::int64_t>(c));
    const bool in_q = live_[kSpanQ].contains(static_cast<std::int64_t>(c));
    if (in_p != ((f & kFlagLiveP) != 0) || in_q != ((f & kFlagLiveQ) != 0))
      throw std::logic_error("live-set membership disagrees with clone flags");
    if ((f & kFlagConnected) && (f & (kFlagLiveP | kFlagLiveQ)))
      throw std::logic_error("clone both live and connected");
    if (f & kFlagConnected) ++connected;
    if (f & (kFlagLiveP | kFlagLiveQ)) ++live_union;
  }
  if (connected != connected_ || live_union != live_union_)
    throw std::logic_error("partition counters out of sync");
  if (connected != 2 * static_cast<std::int64_t>(pairs_.size()))
    throw std::logic_error("|connected| != 2 * pairings");
  if (untouched_count() + live_union + connected != clone_count())
    throw std::logic_error("partition does not cover the clone pool");
  // every pairing is a real matching edge: no clone appears twice
  std::vector<std::uint8_t> seen(flags_.size(), 0);
  for (const auto& [a, b] : pairs_) {
    if (seen[static_cast<std::size_t>(a)] || seen[static_cast<std::size_t>(b)] || a == b)
      throw std::logic_error("pairing transcript is not a partial matching");
    seen[static_cast<std::size_t>(a)] = seen[static_cast<std::size_t>(b)] = 1;
  }
}

namespace {

// Step 1: draws candidate variables (d+ >= 1 and d- >= 1) without
// replacement, uniformly or weighted by d+ * d-.
struct VariablePicker {
  std::vector<std::int64_t> pool;       // unpicked candidates (uniform mode)
  std::vector<double> cum;              // static prefix weights (weighted mode)
  std::vector<std::int64_t> by_weight;  // var ids parallel to cum
  std::vector<std::uint8_t> picked;
  std::int64_t remaining = 0;
  bool weighted = false;

  VariablePicker(const Formula& f, bool weighted_mode) : weighted(weighted_mode) {
    picked.assign(static_cast<std::size_t>(f.n_vars), 0);
    double acc = 0.0;
    for (std::int64_t v = 0; v < f.n_vars; ++v) {
      const auto& [pos, neg] = f.lit_degrees[static_cast<std::size_t>(v)];
      if (pos < 1 || neg < 1) continue;
      ++remaining;
      if (weighted) {
        acc += static_cast<double>(pos) * static_cast<double>(neg);
        cum.push_back(acc);
        by_weight.push_back(v);
      } else {
        pool.push_back(v);
      }
    }
  }

  std::optional<std::int64_t> pick(RngStream& rng) {
    if (remaining == 0) return std::nullopt;
    if (!weighted) {
      const std::size_t idx = static_cast<std::size_t>(rng.below(pool.size()));
      const std::int64_t var = pool[idx];
      pool[idx] = pool.back();
      pool.pop_back();
      --remaining;
      return var;
    }
    // weighted without replacement by rejection against already-picked vars
    for (int attempt = 0; attempt < 1'000'000; ++attempt) {
      const double u = rng.next_double() * cum.back();
      std::size_t idx = static_cast<std::size_t>(
          std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
      if (idx >= by_weight.size()) idx = by_weight.size() - 1;
      const std::int64_t var = by_weight[idx];
      if (picked[static_cast<std::size_t>(var)]) continue;
      picked[static_cast<std::size_t>(var)] = 1;
      --remaining;
      return var;
    }
    for (std::size_t idx = 0; idx < by_weight.size(); ++idx) {  // rejection stalled
      const std::int64_t var = by_weight[idx];
      if (picked[static_cast<std::size_t>(var)]) continue;
      picked[static_cast<std::size_t>(var)] = 1;
      --remaining;
      return var;
    }
    remaining = 0;
    return std::nullopt;
  }
};

}  // namespace

SearchResult search_contradictory_paths(const Formula& f, const SpanParams& params,
                                        RngStream& rng, const SearchOptions& opts) {
  if (f.k != 2) throw WidthError("contradictory-path search requires a 2-CNF");
  SearchResult result;
  result.params = params;
  const std::int64_t cap = opts.connected_cap.value_or(static_cast<std::int64_t>(
      static_cast<double>(f.n_vars) /
      std::log(std::max<double>(3.0, static_cast<double>(f.n_vars)))));
  const std::int64_t max_rounds = opts.max_rounds.value_or(params.rounds);
  const double overlap_limit = opts.overlap_frac * static_cast<double>(params.s1);

  SpanState state(f);
  VariablePicker picker(f, opts.pick_clone_pair);
  const auto finish = [&](bool found, std::int64_t var) {
    result.found = found;
    result.found_var = var;
    result.pairings = static_cast<std::int64_t>(state.pairs().size());
    return result;
  };

  while (result.rounds_used < max_rounds) {
    if (state.connected_count() + 2 > cap) break;
    state.reset_spans();

    // Step 1: a fresh variable with complementary untouched clones p, q.
    std::optional<std::int64_t> var;
    std::optional<std::int64_t> p, q;
    while ((var = picker.pick(rng))) {
      p = state.pick_untouched_clone(static_cast<std::int32_t>(*var + 1), rng);
      q = state.pick_untouched_clone(static_cast<std::int32_t>(-(*var + 1)), rng);
      if (p && q) break;
    }
    if (!var || !p || !q) break;  // no viable seed pair remains

    result.rounds_used++;
    bool failed = false;

    // Step 2: grow span(p) for at most s1 pairings.
    state.make_live(SpanState::kSpanP, *p);
    SpanState::Stop stop = state.run(SpanState::kSpanP, params.sigma, params.s1, rng, cap, false);
    if (stop == SpanState::kCapStop) break;
    if (stop == SpanState::kLiveEmpty || state.state_of(*q) != CloneState::Untouched ||
        state.live_count(SpanState::kSpanP) < params.sigma)
      failed = true;

    // Step 3: grow span(q) against the same connected set.
    if (!failed) {
      state.make_live(SpanState::kSpanQ, *q);
      stop = state.run(SpanState::kSpanQ, params.sigma, params.s1, rng, cap, false);
      if (stop == SpanState::kCapStop) break;
      if (stop == SpanState::kLiveEmpty ||
          static_cast<double>(state.overlap_count()) >= overlap_limit ||
          state.live_count(SpanState::kSpanQ) < params.sigma)
        failed = true;
    }

    // Steps 4-5: extend each span by at most s2 pairings. A span stops as
    // soon as its transcript pairs complementary clones; one that already
    // has them is not extended further.
    for (const int span : {SpanState::kSpanP, SpanState::kSpanQ}) {
      if (failed || state.comp_seen(span)) continue;
      stop = state.run(span, std::numeric_limits<std::int64_t>::max(), params.s2, rng, cap, true);
      if (stop == SpanState::kCapStop) return finish(false, 0);
      if (stop == SpanState::kLiveEmpty && !state.comp_seen(span)) failed = true;
    }

    if (!failed && state.comp_seen(SpanState::kSpanP) && state.comp_seen(SpanState::kSpanQ))
      return finish(true, *var + 1);
  }
  return finish(false, 0);
}

}  // namespace plsat

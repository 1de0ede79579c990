#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "plsat/formula.hpp"
#include "plsat/rng.hpp"

namespace plsat {

// Schedule for the contradictory-path search, all ceilinged to integers:
//   s1    = n^((alpha+4) / (6(alpha+1)))          per-span growth budget
//   s2    = n^((11a^2+3a-2) / (12a(a+1)))         per-span extension budget
//   K     = n^((7alpha+10) / (12(alpha+1)))       restart budget
//   sigma = ceil(s1 * mu / 6)                     live-set growth target
// where mu = 2*Tn/Sn - 1 is measured from the realized formula.
struct SpanParams {
  std::int64_t s1 = 0;
  std::int64_t sigma = 0;
  std::int64_t s2 = 0;
  std::int64_t rounds = 0;  // K
  double mu = 0.0;

  // Throws SubcriticalRatio when stats.ratio <= 1 and allow_subcritical is
  // false; with the override, sigma is floored at 1 so the search can still
  // run (and, as expected there, exhaust).
  static SpanParams compute(std::int64_t n, double alpha, const FormulaStats& stats,
                            bool allow_subcritical = false);
};

enum class CloneState { Untouched, Live, Connected };
enum class TspanOutcome { LiveEmpty, ReachedSigma, ReachedTau };

struct SearchOptions;
struct SearchResult;

// The truncated-span state over the clone pool of one 2-CNF: a partition of
// clones into untouched / live / connected, with up to two concurrently
// grown live sets (the p-span and the q-span). Pairing a live clone reveals
// its partner from the formula's own matching, which by exchangeability of
// the configuration model is uniform among unpaired clones.
class SpanState {
 public:
  static constexpr int kSpanP = 0;
  static constexpr int kSpanQ = 1;

  explicit SpanState(const Formula& f);

  std::int64_t clone_count() const { return static_cast<std::int64_t>(clone_lit_.size()); }
  std::int32_t clone_literal(std::int64_t clone) const {
    return clone_lit_[static_cast<std::size_t>(clone)];
  }
  std::int64_t partner(std::int64_t clone) const {
    return partner_[static_cast<std::size_t>(clone)];
  }
  CloneState state_of(std::int64_t clone) const;
  bool live_in(int span, std::int64_t clone) const;

  // Seeds a span with an untouched clone.
  void make_live(int span, std::int64_t clone);

  // One TSPAN run: while 0 < |live| <= sigma and fewer than tau pairings,
  // pair a uniformly random live clone with its partner, connect both, and
  // make live the untouched clones of the partner literal's complement.
  TspanOutcome tspan(int span, std::int64_t sigma, std::int64_t tau, RngStream& rng);

  std::int64_t live_count(int span) const;
  std::int64_t connected_count() const { return connected_; }
  std::int64_t untouched_count() const { return clone_count() - connected_ - live_union_; }
  std::int64_t overlap_count() const;  // |live(p) n live(q)|

  // True once this span's transcript has paired two complementary clones
  // (a pairing whose partner was already live for the span).
  bool comp_seen(int span) const { return comp_seen_[span]; }
  std::int64_t comp_pairing_index(int span) const { return comp_pairing_[span]; }

  const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs() const { return pairs_; }
  const std::vector<std::int64_t>& live_history(int span) const { return history_[span]; }

  // Returns an untouched clone of the literal chosen uniformly, or nullopt.
  std::optional<std::int64_t> pick_untouched_clone(std::int32_t lit, RngStream& rng) const;

  // Reverts live clones to untouched and clears per-round span bookkeeping;
  // connected clones stay connected.
  void reset_spans();

  // Validates the partition and counters; throws std::logic_error on any
  // violation. Test hook.
  void check_partition() const;

 private:
  friend SearchResult search_contradictory_paths(const Formula& f, const SpanParams& params,
                                                 RngStream& rng, const SearchOptions& opts);

  enum Stop { kLiveEmpty, kReachedSigma, kReachedTau, kCapStop, kFoundStop };
  Stop run(int span, std::int64_t sigma, std::int64_t tau, RngStream& rng,
           std::int64_t cap_clones, bool stop_when_both_comp);

  void connect(std::int64_t clone);

  struct IndexedSet {
    std::vector<std::int64_t> items;
    std::vector<std::int64_t> pos;  // -1 when absent

    explicit IndexedSet(std::int64_t universe)
        : pos(static_cast<std::size_t>(universe), -1) {}
    std::int64_t size() const { return static_cast<std::int64_t>(items.size()); }
    bool contains(std::int64_t x) const { return pos[static_cast<std::size_t>(x)] >= 0; }
    void insert(std::int64_t x) {
      pos[static_cast<std::size_t>(x)] = size();
      items.push_back(x);
    }
    void erase(std::int64_t x) {
      const std::int64_t p = pos[static_cast<std::size_t>(x)];
      const std::int64_t last = items.back();
      items[static_cast<std::size_t>(p)] = last;
      pos[static_cast<std::size_t>(last)] = p;
      items.pop_back();
      pos[static_cast<std::size_t>(x)] = -1;
    }
    std::int64_t sample(RngStream& rng) const {
      return items[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(size())))];
    }
  };

  static constexpr std::uint8_t kFlagLiveP = 1;
  static constexpr std::uint8_t kFlagLiveQ = 2;
  static constexpr std::uint8_t kFlagConnected = 4;

  std::vector<std::int32_t> clone_lit_;
  std::vector<std::int64_t> partner_;
  std::vector<std::vector<std::int64_t>> lit_clones_;
  std::vector<std::uint8_t> flags_;
  IndexedSet live_[2];
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs_;
  std::vector<std::int64_t> history_[2];
  std::int64_t connected_ = 0;
  std::int64_t live_union_ = 0;
  bool comp_seen_[2] = {false, false};
  std::int64_t comp_pairing_[2] = {-1, -1};
};

struct SearchOptions {
  double overlap_frac = 0.1;     // Step 3 failure threshold as a fraction of s1
  bool pick_clone_pair = false;  // Step 1 variable choice weighted by d+ * d-
  std::optional<std::int64_t> max_rounds;
  std::optional<std::int64_t> connected_cap;  // override of the n/log n clone cap
};

struct SearchResult {
  bool found = false;
  std::int64_t rounds_used = 0;
  std::int64_t pairings = 0;
  std::int64_t found_var = 0;  // 1-based, meaningful when found
  SpanParams params;
};

// The five-step contradictory-path search: up to K rounds, each seeding the
// p- and q-spans from complementary clones of a fresh variable, growing both
// by at most s1 pairings to live size sigma, then extending each by at most
// s2 more. The connected set persists across rounds; the whole search stops
// once it would exceed the cap (n / log n clones by default). Reports found
// as soon as both spans have paired complementary clones.
SearchResult search_contradictory_paths(const Formula& f, const SpanParams& params,
                                        RngStream& rng, const SearchOptions& opts);

inline SearchResult search_contradictory_paths(const Formula& f, const SpanParams& params,
                                               RngStream& rng) {
  return search_contradictory_paths(f, params, rng, SearchOptions{});
}

}  // namespace plsat

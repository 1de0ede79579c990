#include "plsat/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <stdexcept>

#include "plsat/errors.hpp"

namespace plsat {

namespace {

// CSR implication graph. 32-bit vertex and edge ids keep the working set
// half the size of a 64-bit layout; decide() is memory-bound at n = 10^6.
struct ImplicationGraph {
  std::int32_t n_vertices = 0;
  std::vector<std::int32_t> offsets;
  std::vector<std::int32_t> targets;
  std::vector<std::int32_t> clause_of;  // filled only when with_labels

  static ImplicationGraph build(const Formula& f, bool with_labels) {
    if (f.k != 2) throw WidthError("implication graph requires a 2-CNF");
    const std::int64_t m = f.clause_count();
    if (2 * f.n_vars >= std::numeric_limits<std::int32_t>::max() ||
        2 * m >= std::numeric_limits<std::int32_t>::max())
      throw std::invalid_argument("formula too large for the 32-bit graph layout");
    ImplicationGraph g;
    g.n_vertices = static_cast<std::int32_t>(2 * f.n_vars);
    std::vector<std::int32_t> degree(static_cast<std::size_t>(g.n_vertices), 0);
    for (std::int64_t c = 0; c < m; ++c) {
      degree[static_cast<std::size_t>(lit_index(-f.lit(c, 0)))]++;
      degree[static_cast<std::size_t>(lit_index(-f.lit(c, 1)))]++;
    }
    g.offsets.assign(static_cast<std::size_t>(g.n_vertices) + 1, 0);
    for (std::int32_t v = 0; v < g.n_vertices; ++v)
      g.offsets[static_cast<std::size_t>(v) + 1] =
          g.offsets[static_cast<std::size_t>(v)] + degree[static_cast<std::size_t>(v)];
    g.targets.resize(static_cast<std::size_t>(2 * m));
    if (with_labels) g.clause_of.resize(static_cast<std::size_t>(2 * m));
    std::vector<std::int32_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
    const auto add_edge = [&](std::int32_t from, std::int32_t to, std::int64_t c) {
      const auto slot =
          static_cast<std::size_t>(cursor[static_cast<std::size_t>(lit_index(from))]++);
      g.targets[slot] = static_cast<std::int32_t>(lit_index(to));
      if (with_labels) g.clause_of[slot] = static_cast<std::int32_t>(c);
    };
    for (std::int64_t c = 0; c < m; ++c) {
      const std::int32_t a = f.lit(c, 0);
      const std::int32_t b = f.lit(c, 1);
      add_edge(-a, b, c);
      add_edge(-b, a, c);
    }
    return g;
  }
};

// Tarjan with an explicit work stack; emission order is reverse topological.
struct SccResult {
  std::vector<std::int32_t> scc_id;
  std::int32_t scc_count = 0;
};

SccResult tarjan_scc(const ImplicationGraph& g) {
  const std::int32_t n = g.n_vertices;
  SccResult res;
  res.scc_id.assign(static_cast<std::size_t>(n), -1);
  // index and low share a cache line per vertex; on-stack rides the sign
  // bit of low (dfs indices start at 1, so low > 0 means on stack).
  struct Mark {
    std::int32_t index;
    std::int32_t low;
  };
  std::vector<Mark> mark(static_cast<std::size_t>(n), {-1, 0});
  std::vector<std::int32_t> scc_stack;
  struct Frame {
    std::int32_t v;
    std::int32_t edge;
  };
  std::vector<Frame> work;
  std::int32_t next_index = 1;
  for (std::int32_t root = 0; root < n; ++root) {
    if (mark[static_cast<std::size_t>(root)].index != -1) continue;
    work.push_back({root, g.offsets[static_cast<std::size_t>(root)]});
    mark[static_cast<std::size_t>(root)] = {next_index, next_index};
    next_index++;
    scc_stack.push_back(root);
    while (!work.empty()) {
      Frame& top = work.back();
      const auto v = static_cast<std::size_t>(top.v);
      if (top.edge < g.offsets[v + 1]) {
        const std::int32_t w = g.targets[static_cast<std::size_t>(top.edge++)];
        const auto wi = static_cast<std::size_t>(w);
        if (mark[wi].index == -1) {
          mark[wi] = {next_index, next_index};
          next_index++;
          scc_stack.push_back(w);
          work.push_back({w, g.offsets[wi]});
        } else if (mark[wi].low > 0) {  // on stack
          mark[v].low = std::min(mark[v].low, mark[wi].index);
        }
        continue;
      }
      if (mark[v].low == mark[v].index) {
        for (;;) {
          const std::int32_t w = scc_stack.back();
          scc_stack.pop_back();
          mark[static_cast<std::size_t>(w)].low = -1;  // off stack
          res.scc_id[static_cast<std::size_t>(w)] = res.scc_count;
          if (w == top.v) break;
        }
        res.scc_count++;
      }
      const std::int32_t done_low = mark[v].low;
      work.pop_back();
      if (!work.empty() && done_low > 0) {
        auto& parent = mark[static_cast<std::size_t>(work.back().v)];
        parent.low = std::min(parent.low, done_low);
      }
    }
  }
  return res;
}

std::int64_t longest_condensation_path(const ImplicationGraph& g, const SccResult& scc) {
  if (scc.scc_count == 0) return 0;
  // Vertices bucketed by SCC id; cross edges always point at a smaller id,
  // so a single ascending pass finalizes each dp value.
  std::vector<std::int32_t> bucket_off(static_cast<std::size_t>(scc.scc_count) + 1, 0);
  for (std::int32_t v = 0; v < g.n_vertices; ++v)
    bucket_off[static_cast<std::size_t>(scc.scc_id[static_cast<std::size_t>(v)]) + 1]++;
  for (std::size_t s = 1; s < bucket_off.size(); ++s) bucket_off[s] += bucket_off[s - 1];
  std::vector<std::int32_t> order(static_cast<std::size_t>(g.n_vertices));
  {
    std::vector<std::int32_t> cursor(bucket_off.begin(), bucket_off.end() - 1);
    for (std::int32_t v = 0; v < g.n_vertices; ++v)
      order[static_cast<std::size_t>(
          cursor[static_cast<std::size_t>(scc.scc_id[static_cast<std::size_t>(v)])]++)] = v;
  }
  std::vector<std::int32_t> dp(static_cast<std::size_t>(scc.scc_count), 0);
  std::int32_t best = 0;
  for (const std::int32_t v : order) {
    const std::int32_t sv = scc.scc_id[static_cast<std::size_t>(v)];
    for (std::int32_t e = g.offsets[static_cast<std::size_t>(v)];
         e < g.offsets[static_cast<std::size_t>(v) + 1]; ++e) {
      const std::int32_t sw =
          scc.scc_id[static_cast<std::size_t>(g.targets[static_cast<std::size_t>(e)])];
      if (sw == sv) continue;
      dp[static_cast<std::size_t>(sv)] =
          std::max(dp[static_cast<std::size_t>(sv)], dp[static_cast<std::size_t>(sw)] + 1);
    }
    best = std::max(best, dp[static_cast<std::size_t>(sv)]);
  }
  return best;
}

}  // namespace

ImplicationDigest decide(const Formula& f) {
  const ImplicationGraph g = ImplicationGraph::build(f, /*with_labels=*/false);
  const SccResult scc = tarjan_scc(g);

  ImplicationDigest digest;
  digest.n_vars = f.n_vars;
  digest.scc_id.assign(scc.scc_id.begin(), scc.scc_id.end());
  digest.scc_count = scc.scc_count;
  digest.condensation_longest_path = longest_condensation_path(g, scc);

  for (std::int64_t v = 0; v < f.n_vars; ++v) {
    if (digest.scc_id[static_cast<std::size_t>(2 * v)] ==
        digest.scc_id[static_cast<std::size_t>(2 * v + 1)]) {
      digest.sat = false;
      digest.witness_var = v + 1;
      return digest;
    }
  }

  // Emitted earlier = later in topological order, so a variable is true
  // when its positive literal's component is emitted first.
  digest.assignment.resize(static_cast<std::size_t>(f.n_vars));
  for (std::int64_t v = 0; v < f.n_vars; ++v)
    digest.assignment[static_cast<std::size_t>(v)] =
        digest.scc_id[static_cast<std::size_t>(2 * v)] <
        digest.scc_id[static_cast<std::size_t>(2 * v + 1)];
  const std::int64_t m = f.clause_count();
  for (std::int64_t c = 0; c < m; ++c) {
    bool ok = false;
    for (int j = 0; j < 2 && !ok; ++j) {
      const std::int32_t lit = f.lit(c, j);
      const bool val = digest.assignment[static_cast<std::size_t>(std::abs(lit)) - 1];
      ok = (lit > 0) == val;
    }
    if (!ok) throw std::logic_error("2-SAT model failed clause check");
  }
  return digest;
}

std::int64_t condensation_longest_path(const ImplicationDigest& digest) {
  return digest.condensation_longest_path;
}

PathCertificate extract_contradictory_paths(const Formula& f, const ImplicationDigest& digest) {
  if (digest.sat) throw NotUnsat("certificate requested for a satisfiable digest");
  const ImplicationGraph g = ImplicationGraph::build(f, /*with_labels=*/true);
  const std::int64_t component =
      digest.scc_id[static_cast<std::size_t>(2 * (digest.witness_var - 1))];

  // BFS inside the witness component; strong connectivity guarantees a path.
  const auto bfs_path = [&](std::int32_t src, std::int32_t dst) {
    std::vector<std::int32_t> parent_edge(static_cast<std::size_t>(g.n_vertices), -1);
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.n_vertices), 0);
    std::deque<std::int32_t> queue{src};
    seen[static_cast<std::size_t>(src)] = 1;
    bool reached = false;
    while (!queue.empty() && !reached) {
      const std::int32_t at = queue.front();
      queue.pop_front();
      for (std::int32_t e = g.offsets[static_cast<std::size_t>(at)];
           e < g.offsets[static_cast<std::size_t>(at) + 1]; ++e) {
        const std::int32_t to = g.targets[static_cast<std::size_t>(e)];
        if (digest.scc_id[static_cast<std::size_t>(to)] != component) continue;
        if (seen[static_cast<std::size_t>(to)]) continue;
        seen[static_cast<std::size_t>(to)] = 1;
        parent_edge[static_cast<std::size_t>(to)] = e;
        if (to == dst) {
          reached = true;
          break;
        }
        queue.push_back(to);
      }
    }
    std::vector<PathStep> steps;
    std::int32_t at = dst;
    while (at != src || steps.empty()) {
      const std::int32_t e = parent_edge[static_cast<std::size_t>(at)];
      if (e < 0) throw std::logic_error("witness component is not strongly connected");
      // recover the edge source by scanning the CSR row bounds
      const auto row = static_cast<std::size_t>(
          std::upper_bound(g.offsets.begin(), g.offsets.end(), e) - g.offsets.begin() - 1);
      steps.push_back({index_lit(static_cast<std::int64_t>(row)),
                       index_lit(g.targets[static_cast<std::size_t>(e)]),
                       g.clause_of[static_cast<std::size_t>(e)]});
      at = static_cast<std::int32_t>(row);
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
  };

  PathCertificate cert;
  cert.witness_var = digest.witness_var;
  const auto pos = static_cast<std::int32_t>(2 * (digest.witness_var - 1));
  cert.forward = bfs_path(pos, pos + 1);
  cert.backward = bfs_path(pos + 1, pos);
  return cert;
}

std::vector<Bicycle> find_bicycles(const Formula& f, int max_len, std::int64_t cap) {
  if (f.k != 2) throw WidthError("bicycle search requires a 2-CNF");
  if (max_len < 2) throw std::invalid_argument("max_len must be >= 2");
  const std::int64_t m = f.clause_count();
  const std::int64_t n_lits = 2 * f.n_vars;

  // occ[l] = clauses containing literal l, with the companion literal.
  std::vector<std::vector<std::pair<std::int64_t, std::int32_t>>> occ(
      static_cast<std::size_t>(n_lits));
  for (std::int64_t c = 0; c < m; ++c) {
    const std::int32_t a = f.lit(c, 0);
    const std::int32_t b = f.lit(c, 1);
    occ[static_cast<std::size_t>(lit_index(a))].push_back({c, b});
    occ[static_cast<std::size_t>(lit_index(b))].push_back({c, a});
  }

  std::vector<Bicycle> found;
  std::vector<std::int64_t> var_mark(static_cast<std::size_t>(f.n_vars), -1);
  std::int64_t epoch = 0;
  std::vector<std::int32_t> path;
  std::vector<std::int64_t> chain_clauses;
  const auto on_path = [&](std::int32_t lit) {
    return var_mark[static_cast<std::size_t>(std::abs(lit)) - 1] == epoch;
  };

  const auto emit_ends = [&](auto&& self) -> bool {
    const std::int32_t head = path.front();
    const std::int32_t tail = path.back();
    for (const auto& [front_clause, u] : occ[static_cast<std::size_t>(lit_index(head))]) {
      if (!on_path(u)) continue;
      for (const auto& [back_clause, v] : occ[static_cast<std::size_t>(lit_index(-tail))]) {
        if (!on_path(v)) continue;
        Bicycle bike;
        bike.path = path;
        bike.u = u;
        bike.v = v;
        bike.clauses.reserve(chain_clauses.size() + 2);
        bike.clauses.push_back(front_clause);
        bike.clauses.insert(bike.clauses.end(), chain_clauses.begin(), chain_clauses.end());
        bike.clauses.push_back(back_clause);
        found.push_back(std::move(bike));
        if (static_cast<std::int64_t>(found.size()) >= cap) return true;
      }
    }
    if (static_cast<int>(path.size()) < max_len) {
      // chain clause (~tail v y) extends the path to literal y
      for (const auto& [c, y] : occ[static_cast<std::size_t>(lit_index(-tail))]) {
        if (on_path(y)) continue;
        path.push_back(y);
        chain_clauses.push_back(c);
        var_mark[static_cast<std::size_t>(std::abs(y)) - 1] = epoch;
        const bool full = self(self);
        var_mark[static_cast<std::size_t>(std::abs(y)) - 1] = -1;
        chain_clauses.pop_back();
        path.pop_back();
        if (full) return true;
      }
    }
    return false;
  };

  for (std::int64_t start = 0; start < n_lits; ++start) {
    const std::int32_t l1 = index_lit(start);
    // every bicycle headed by l1 needs a front clause containing l1
    if (occ[static_cast<std::size_t>(start)].empty()) continue;
    ++epoch;
    path.assign(1, l1);
    chain_clauses.clear();
    var_mark[static_cast<std::size_t>(std::abs(l1)) - 1] = epoch;
    const bool full = emit_ends(emit_ends);
    var_mark[static_cast<std::size_t>(std::abs(l1)) - 1] = -1;
    if (full) break;
  }
  return found;
}

}  // namespace plsat

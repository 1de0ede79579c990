#pragma once

#include <cstdint>
#include <vector>

#include "plsat/formula.hpp"

namespace plsat {

// Literal <-> vertex encoding for the implication graph on 2n literals.
inline std::int64_t lit_index(std::int32_t lit) {
  return 2 * (static_cast<std::int64_t>(lit < 0 ? -lit : lit) - 1) + (lit < 0 ? 1 : 0);
}
inline std::int32_t index_lit(std::int64_t idx) {
  const std::int32_t var = static_cast<std::int32_t>(idx / 2) + 1;
  return (idx & 1) ? -var : var;
}

// Outcome of the implication-graph SCC decomposition of a 2-CNF.
// scc_id is indexed by lit_index and numbered in reverse topological order
// (every condensation edge goes from a higher id to a lower one).
struct ImplicationDigest {
  bool sat = true;
  std::vector<std::uint8_t> assignment;  // per variable, set when sat
  std::int64_t witness_var = 0;          // 1-based, set when unsat
  std::vector<std::int64_t> scc_id;
  std::int64_t scc_count = 0;
  std::int64_t condensation_longest_path = 0;  // edges, on the SCC DAG
  std::int64_t n_vars = 0;
};

// Exact 2-SAT decision. Clause (a v b) contributes edges ~a->b and ~b->a;
// a tautological clause (v v ~v) contributes only self-loops. Linear in
// n + m with an explicit-stack SCC pass, so degree-10^6 instances are fine.
// On SAT the returned assignment is checked against every clause.
ImplicationDigest decide(const Formula& f);

// Longest path (edge count) in the SCC condensation DAG.
std::int64_t condensation_longest_path(const ImplicationDigest& digest);

struct PathStep {
  std::int32_t from_lit = 0;
  std::int32_t to_lit = 0;
  std::int64_t clause = 0;  // index of the clause realizing this edge
};

// Contradictory-path certificate for an UNSAT verdict: explicit implication
// chains v => ... => ~v and ~v => ... => v, one clause per step.
struct PathCertificate {
  std::int64_t witness_var = 0;
  std::vector<PathStep> forward;   // v to ~v
  std::vector<PathStep> backward;  // ~v to v
};

// Throws NotUnsat when digest.sat.
PathCertificate extract_contradictory_paths(const Formula& f, const ImplicationDigest& digest);

// A bicycle: a clause path over literals with pairwise distinct variables,
// whose end clauses reattach to literals of those same variables.
struct Bicycle {
  std::vector<std::int32_t> path;  // l_1..l_s
  std::int32_t u = 0;              // end clause (u v l_1)
  std::int32_t v = 0;              // end clause (~l_s v v)
  std::vector<std::int64_t> clauses;  // s+1 clause indices: front, chain..., back
};

// Depth-first enumeration of bicycles with path length up to max_len,
// stopping after cap emissions. Sound (every result replays against the
// clause list) and complete whenever the cap is not reached; worst-case
// exponential, so callers bound max_len and cap.
std::vector<Bicycle> find_bicycles(const Formula& f, int max_len, std::int64_t cap);

}  // namespace plsat

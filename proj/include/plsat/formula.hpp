#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace plsat {

// Accepted degree draw: n per-variable degrees whose sum is a multiple of k.
struct DegreeSequence {
  std::vector<std::int64_t> degrees;  // d_1..d_n, each >= 1
  int k = 2;

  std::int64_t sum() const;
  std::int64_t size() const { return static_cast<std::int64_t>(degrees.size()); }
};

// k-CNF over variables 1..n_vars. Literals are DIMACS-style signed indices;
// clause c occupies lits[c*k .. c*k+k). Duplicate and tautological clauses
// are legitimate and preserved. Immutable by convention once built.
struct Formula {
  std::int64_t n_vars = 0;
  int k = 2;
  std::vector<std::int32_t> lits;
  std::vector<std::pair<std::int64_t, std::int64_t>> lit_degrees;  // (d+, d-) per variable

  std::int64_t clause_count() const { return static_cast<std::int64_t>(lits.size()) / k; }
  std::int32_t lit(std::int64_t clause, int slot) const { return lits[clause * k + slot]; }
};

struct FormulaStats {
  std::int64_t sn = 0;     // total clone count, k * clause count
  std::int64_t tn = 0;     // sum over variables of d+ * d-
  std::int64_t delta = 0;  // maximum degree
  double ratio = 0.0;      // 2*Tn / Sn
  double mu = 0.0;         // ratio - 1
};

FormulaStats stats(const Formula& f);

// Standard DIMACS CNF; byte-stable for a fixed formula.
std::string to_dimacs(const Formula& f);
void write_dimacs(const Formula& f, std::ostream& out);

// Parses uniform-width DIMACS (width k inferred from the first clause;
// clauses of any other width are rejected). Rebuilds lit_degrees.
Formula parse_dimacs(std::istream& in);
Formula parse_dimacs_string(const std::string& text);

}  // namespace plsat

#include "plsat/formula.hpp"

#include <cmath>
#include <cstdlib>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace plsat {

std::int64_t DegreeSequence::sum() const {
  return std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0});
}

FormulaStats stats(const Formula& f) {
  FormulaStats s;
  s.sn = static_cast<std::int64_t>(f.lits.size());
  for (const auto& [pos, neg] : f.lit_degrees) {
    s.tn += pos * neg;
    s.delta = std::max(s.delta, pos + neg);
  }
  s.ratio = s.sn > 0 ? 2.0 * static_cast<double>(s.tn) / static_cast<double>(s.sn) : 0.0;
  s.mu = s.ratio - 1.0;
  return s;
}

void write_dimacs(const Formula& f, std::ostream& out) {
  out << "p cnf " << f.n_vars << ' ' << f.clause_count() << '\n';
  const std::int64_t m = f.clause_count();
  for (std::int64_t c = 0; c < m; ++c) {
    for (int j = 0; j < f.k; ++j) out << f.lit(c, j) << ' ';
    out << "0\n";
  }
}

std::string to_dimacs(const Formula& f) {
  std::ostringstream out;
  write_dimacs(f, out);
  return out.str();
}

Formula parse_dimacs(std::istream& in) {
  Formula f;
  std::int64_t declared_clauses = -1;
  bool saw_header = false;
  std::vector<std::int32_t> clause;
  int width = 0;
  std::string tok;
  while (in >> tok) {
    if (tok == "c") {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
      continue;
    }
    if (tok == "p") {
      std::string fmt;
      if (!(in >> fmt >> f.n_vars >> declared_clauses) || fmt != "cnf")
        throw std::runtime_error("dimacs: malformed problem line");
      saw_header = true;
      continue;
    }
    if (!saw_header) throw std::runtime_error("dimacs: literal before problem line");
    const long long v = std::strtoll(tok.c_str(), nullptr, 10);
    if (v == 0) {
      if (clause.empty()) throw std::runtime_error("dimacs: empty clause");
      if (width == 0) width = static_cast<int>(clause.size());
      if (static_cast<int>(clause.size()) != width)
        throw std::runtime_error("dimacs: mixed clause widths are not supported");
      f.lits.insert(f.lits.end(), clause.begin(), clause.end());
      clause.clear();
      continue;
    }
    if (std::llabs(v) > f.n_vars) throw std::runtime_error("dimacs: variable index out of range");
    clause.push_back(static_cast<std::int32_t>(v));
  }
  if (!saw_header) throw std::runtime_error("dimacs: missing problem line");
  if (!clause.empty()) throw std::runtime_error("dimacs: unterminated clause");
  f.k = width == 0 ? 2 : width;
  if (declared_clauses >= 0 && declared_clauses != f.clause_count())
    throw std::runtime_error("dimacs: clause count does not match header");
  f.lit_degrees.assign(static_cast<std::size_t>(f.n_vars), {0, 0});
  for (std::int32_t lit : f.lits) {
    auto& [pos, neg] = f.lit_degrees[static_cast<std::size_t>(std::abs(lit)) - 1];
    (lit > 0 ? pos : neg) += 1;
  }
  return f;
}

Formula parse_dimacs_string(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

}  // namespace plsat

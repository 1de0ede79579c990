#pragma once

#include <stdexcept>
#include <string>

namespace plsat {

// Degree sequence can never satisfy the divisibility constraint
// (e.g. constant degree 1 with an odd number of variables at k = 2).
struct DegenerateParity : std::runtime_error {
  explicit DegenerateParity(const std::string& what) : std::runtime_error(what) {}
};

// Operation requires 2-CNF input.
struct WidthError : std::invalid_argument {
  explicit WidthError(const std::string& what) : std::invalid_argument(what) {}
};

// Certificate extraction called on a satisfiable digest.
struct NotUnsat : std::logic_error {
  explicit NotUnsat(const std::string& what) : std::logic_error(what) {}
};

// Span search parameters requested for a formula with 2*Tn/Sn <= 1.
struct SubcriticalRatio : std::runtime_error {
  explicit SubcriticalRatio(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace plsat

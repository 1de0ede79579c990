#pragma once

#include "plsat/dist.hpp"
#include "plsat/formula.hpp"
#include "plsat/rng.hpp"

namespace plsat {

// Draws n i.i.d. degrees from dist, rejecting the whole sequence until the
// sum is a multiple of k. Throws DegenerateParity when the constraint can
// never be met (detected immediately for constant laws, otherwise after 10^6
// rejected sequences).
DegreeSequence sample_degrees(const DistSpec& dist, std::int64_t n, int k, RngStream& rng);

// Partitions the clone pool of degs into clauses: k clones drawn uniformly
// without replacement per clause, each literal's polarity a fair coin drawn
// at clause emission. Runs in O(sum of degrees).
Formula build_formula(const DegreeSequence& degs, RngStream& rng);

// sample_degrees + build_formula on one stream.
Formula generate(const DistSpec& dist, std::int64_t n, int k, RngStream& rng);

}  // namespace plsat

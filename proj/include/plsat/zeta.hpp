#pragma once

#include <cstdint>

namespace plsat {

// Riemann zeta for real s > 1. Direct series over a leading block plus an
// integral-tail (Euler-Maclaurin) remainder; absolute error below 1e-12
// for every s >= 1 + 1e-4.
double riemann_zeta(double s);

// Tail sum over integer powers: sum_{l > from} l^{-s}, s > 1, from >= 0.
double zeta_power_tail(double s, std::int64_t from);

// Positive root of zeta(b-2) = 3*zeta(b-1), bracketed in (3, 6], located by
// bisection to an interval shorter than 1e-6.
double solve_beta0();

}  // namespace plsat

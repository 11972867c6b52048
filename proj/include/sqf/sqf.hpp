#pragma once

// Desk-scale experiments with block-ordered squarefree signed Dirichlet sums:
// prime orderings, the induced ordering of the squarefree odd numbers, series
// engines, constructive rearrangement, identity verifiers and the Ψ/Ω probe.

#include "sqf/equidist.hpp"
#include "sqf/errors.hpp"
#include "sqf/identities.hpp"
#include "sqf/io.hpp"
#include "sqf/parallel.hpp"
#include "sqf/primes.hpp"
#include "sqf/probe.hpp"
#include "sqf/rearrange.hpp"
#include "sqf/series.hpp"
#include "sqf/squarefree.hpp"
#include "sqf/summation.hpp"

namespace sqf {
inline constexpr const char* kVersion = "0.1.0";
}

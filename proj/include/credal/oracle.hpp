#ifndef CREDAL_ORACLE_HPP
#define CREDAL_ORACLE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "credal/constraint.hpp"
#include "credal/prob.hpp"

// Brute-force references, kept independent of the simplex and MCE solvers:
// they enumerate instead of pivoting or iterating.

namespace credal::oracle {

struct GridSpec {
  unsigned resolution = 1;                  // masses are multiples of 1/resolution
  std::uint64_t budget = 30'000'000;        // cap on C(resolution+N-1, N-1)
};

// All grid distributions satisfying s exactly, in lexicographic mass order.
std::vector<ProbFunction> grid_points(const ConstraintSet& s, const GridSpec& g);

// Exact vertex set of the polytope of s via basic-solution enumeration,
// deduplicated and sorted. Empty when s is infeasible.
std::vector<ProbFunction> vertices(const ConstraintSet& s, std::size_t letter_cap = 4);

// Grid point minimizing I(. , p) over the feasible grid, with lexicographic
// tie-breaking; second component is the objective in nats.
std::pair<ProbFunction, double> kl_grid_min(const ProbFunction& p, const ConstraintSet& s,
                                            const GridSpec& g);

}  // namespace credal::oracle

#endif

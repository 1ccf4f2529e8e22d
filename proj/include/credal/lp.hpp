#ifndef CREDAL_LP_HPP
#define CREDAL_LP_HPP

#include <vector>

#include "credal/rational.hpp"

namespace credal {

enum class Relation { Eq, Le, Ge };

enum class LpSense { Min, Max };

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpRow {
  std::vector<Rational> coeffs;
  Relation rel;
  Rational rhs;
};

struct LpSolution {
  LpStatus status;
  Rational value;                // meaningful only when Optimal
  std::vector<Rational> point;   // an optimal vertex, length = variable count
};

// Exact two-phase primal simplex over the rationals for
//   min/max objective . x  subject to  rows, x >= 0.
// Bland's rule throughout, so it terminates on degenerate problems.
LpSolution solve_lp(const std::vector<LpRow>& rows, const std::vector<Rational>& objective,
                    LpSense sense);

}  // namespace credal

#endif

#ifndef CREDAL_MCE_HPP
#define CREDAL_MCE_HPP

#include <optional>
#include <vector>

#include "credal/constraint.hpp"
#include "credal/credal.hpp"
#include "credal/prob.hpp"

namespace credal {

struct MceOptions {
  double residual_tol = 1e-10;
  double objective_tol = 1e-12;
  long max_iters = 1'000'000;
};

// Float-backed result of an I-projection; exact rationals stop at this
// module's boundary because of the logarithms.
struct MceSolution {
  std::vector<double> masses;
  double objective_nats = 0.0;  // I(result, prior)
  long iterations = 0;
  double residual = 0.0;        // max constraint violation at the result
};

// The unique minimizer of I(P', p) = sum P'(a) log(P'(a)/p(a)) over the
// polytope of s intersected with {support(P') inside support(p)}.
// Throws InfeasibleError when s is infeasible and NoFiniteObjectiveError when
// every feasible point carries mass outside the prior's support.
MceSolution mce_update(const ProbFunction& p, const ConstraintSet& s,
                       const MceOptions& opts = {});

// Same, chained on a previous solution's masses.
MceSolution mce_update(const std::vector<double>& prior_masses, const ConstraintSet& s,
                       const MceOptions& opts = {});

// MCE from the uniform prior: the maximum-entropy member of the polytope.
MceSolution maxent(const ConstraintSet& s, const MceOptions& opts = {});

// Searches the vertices of pi plus its maxent point for a member P whose
// chained updates (P <- phi <- psi) violate phi by more than 1e-6; returns
// the first such witness.
std::optional<ProbFunction> mce_preservation_witness(const PartialModel& pi,
                                                     const ConstraintSet& phi,
                                                     const ConstraintSet& psi,
                                                     const MceOptions& opts = {});

// Best-effort exact representative of the maxent point: each coordinate is
// snapped to a small-denominator rational and the result is verified to be a
// distribution satisfying s exactly; nullopt when snapping fails.
std::optional<ProbFunction> maxent_rationalized(const ConstraintSet& s,
                                                const MceOptions& opts = {});

double entropy_bits(const std::vector<double>& masses);

}  // namespace credal

#endif

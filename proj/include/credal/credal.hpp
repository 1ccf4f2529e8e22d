#ifndef CREDAL_CREDAL_HPP
#define CREDAL_CREDAL_HPP

#include <string>

#include "credal/belief_set.hpp"
#include "credal/constraint.hpp"
#include "credal/prob.hpp"

namespace credal {

// Partial probabilistic model: the feasible polytope of a constraint set.
// Construction verifies non-emptiness.
class PartialModel {
 public:
  static PartialModel from_constraints(ConstraintSet base);
  static PartialModel ignorant(const Language& lang);  // all of PROB(SL)

  const ConstraintSet& base() const { return base_; }
  const Language& language() const { return base_.lang; }

 private:
  explicit PartialModel(ConstraintSet base) : base_(std::move(base)) {}
  ConstraintSet base_;
};

// The conditioned model Pi_phi, kept lazy as (base polytope, evidence event).
// Envelope queries run a Charnes-Cooper transformed exact LP; see lower().
class ConditionedModel {
 public:
  ConditionedModel(ConstraintSet base, Event evidence, std::string evidence_text);

  const ConstraintSet& base() const { return base_; }
  const Event& evidence() const { return evidence_; }
  const std::string& evidence_text() const { return evidence_text_; }
  const Language& language() const { return base_.lang; }

 private:
  ConstraintSet base_;
  Event evidence_;
  std::string evidence_text_;
};

// i(K): every distribution giving K's accepted sentences probability one.
PartialModel embed_belief_set(const Language& lang, const BeliefSet& k);

// i(P) = {P}: one equality per atom.
PartialModel embed_prob(const ProbFunction& p);

// Pi_{&phi}: adds P(phi) = 1 (sentence form) or the given constraint
// (generalised form). Throws InfeasibleError when nothing in Pi satisfies it.
PartialModel constrain(const PartialModel& m, const Sentence& phi);
PartialModel constrain(const PartialModel& m, const LinearConstraint& c);

// Pi_phi; iterated conditioning folds evidence by conjunction. Throws
// NullEvidenceError when evidence has upper probability zero.
ConditionedModel condition_extended(const PartialModel& m, const Sentence& phi);
ConditionedModel condition_extended(const ConditionedModel& m, const Sentence& phi);

// Envelope of a linear functional of the (conditioned) masses.
Rational envelope(const PartialModel& m, const std::vector<Rational>& coeffs, LpSense sense);
Rational envelope(const ConditionedModel& m, const std::vector<Rational>& coeffs, LpSense sense);

Rational lower(const PartialModel& m, const Sentence& psi);
Rational upper(const PartialModel& m, const Sentence& psi);
Rational lower(const ConditionedModel& m, const Sentence& psi);
Rational upper(const ConditionedModel& m, const Sentence& psi);

// c holds at every member of the conditioned set.
bool entails(const ConditionedModel& m, const LinearConstraint& c);

bool accepted(const PartialModel& m, const Sentence& phi);
bool accepted(const ConditionedModel& m, const Sentence& phi);

BeliefSet top(const PartialModel& m);
BeliefSet top(const ConditionedModel& m);

// Materializes Pi_phi as constraints: the polytope spanned by the
// conditioned vertices of the base polytope (affine-hull equalities plus
// facet inequalities). Vertex enumeration is capped by letter count.
ConstraintSet as_constraints(const ConditionedModel& m, std::size_t letter_cap = 4);

}  // namespace credal

#endif

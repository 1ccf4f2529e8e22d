#ifndef CREDAL_CONSTRAINT_HPP
#define CREDAL_CONSTRAINT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "credal/language.hpp"
#include "credal/lp.hpp"
#include "credal/prob.hpp"
#include "credal/rational.hpp"

namespace credal {

// One linear constraint over atom masses: coeffs . P rel rhs.
struct LinearConstraint {
  std::vector<Rational> coeffs;  // one per atom
  Relation rel = Relation::Eq;
  Rational rhs;
  std::string source_text;

  bool holds_at(const std::vector<Rational>& masses) const;
};

// Builds `sum_{atoms of event} P = rhs`-style constraints directly.
LinearConstraint event_constraint(const Language& lang, const Event& event, Relation rel,
                                  Rational rhs, std::string source_text = {});

// A finite set of linear probabilistic constraints. Together with the
// implicit simplex conditions (masses >= 0 and summing to 1) its feasible
// polytope is the partial probabilistic model the set determines.
struct ConstraintSet {
  Language lang;
  std::vector<LinearConstraint> constraints;

  explicit ConstraintSet(Language language) : lang(std::move(language)) {}
  ConstraintSet(Language language, std::vector<LinearConstraint> cs)
      : lang(std::move(language)), constraints(std::move(cs)) {}

  ConstraintSet with(LinearConstraint c) const;
};

// Parses `lincomb rel lincomb` where lincomb is a sum of `[coef *] P(sentence)`
// terms and rational literals, rel in {=, <=, >=}. The conditional form
// `P(phi | psi) = c` desugars to P(phi & psi) - c*P(psi) = 0 and is only
// legal as the sole term of an equality against a rational literal. The
// conditional bar is a top-level `|` surrounded by whitespace; a tight or
// parenthesized bar is an ordinary disjunction ("P(p|q)", "P((p | q))").
LinearConstraint parse_constraint(std::string_view text, const Language& lang);

bool satisfies(const ProbFunction& p, const ConstraintSet& s);

struct LpOptimum {
  Rational value;
  ProbFunction point;
};

// Exact optimum of objective . mass over {mass >= 0, sum = 1, s}. Empty
// result means the polytope is empty. The objective has one coefficient per
// atom.
std::optional<LpOptimum> optimize(const ConstraintSet& s, const std::vector<Rational>& objective,
                                  LpSense sense);

bool feasible(const ConstraintSet& s);

// True iff c holds at every point of the polytope of s. Throws
// InfeasibleError when s itself is infeasible.
bool entails(const ConstraintSet& s, const LinearConstraint& c);

}  // namespace credal

#endif

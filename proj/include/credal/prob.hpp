#ifndef CREDAL_PROB_HPP
#define CREDAL_PROB_HPP

#include <utility>
#include <vector>

#include "credal/belief_set.hpp"
#include "credal/language.hpp"
#include "credal/rational.hpp"
#include "credal/sentence.hpp"

namespace credal {

// Exact-rational probability function, stored as one mass per atom.
class ProbFunction {
 public:
  // Validates: size = atom count, masses >= 0, sum = 1.
  static ProbFunction from_masses(Language lang, std::vector<Rational> masses);

  const Language& language() const { return lang_; }
  const std::vector<Rational>& masses() const { return masses_; }
  const Rational& mass(std::size_t atom) const { return masses_[atom]; }

  // Atoms of positive mass.
  Event support() const;

  bool operator==(const ProbFunction& other) const { return masses_ == other.masses_; }

 private:
  ProbFunction(Language lang, std::vector<Rational> masses)
      : lang_(std::move(lang)), masses_(std::move(masses)) {}
  Language lang_;
  std::vector<Rational> masses_;
};

struct JeffreyStep {
  Sentence event;
  Rational weight;
};

Rational eval(const ProbFunction& p, const Sentence& phi);
Rational eval_event(const ProbFunction& p, const Event& event);

ProbFunction uniform(const Language& lang);

// Bayesian conditioning. Throws NullEvidenceError when P(phi) = 0.
ProbFunction condition(const ProbFunction& p, const Sentence& phi);

// P_{phi,x} = x P_phi + (1-x) P_!phi. Preconditions: 0 <= x <= 1 and
// 0 < P(phi) < 1, relaxed to P(phi) > 0 for x = 1 and P(!phi) > 0 for x = 0.
ProbFunction jeffrey_binary(const ProbFunction& p, const Sentence& phi, const Rational& x);

// Jeffrey conditioning on pairwise-disjoint events with weights summing to 1;
// every event needs positive prior mass.
ProbFunction jeffrey_general(const ProbFunction& p,
                             const std::vector<std::pair<Sentence, Rational>>& pairs);

// A sequence of at most |support(to)| binary Jeffrey steps carrying `from`
// exactly onto `to`. Requires support(to) a subset of support(from).
std::vector<JeffreyStep> jeffrey_path(const ProbFunction& from, const ProbFunction& to);

// t(P): the belief set of sentences with probability one, i.e. the support.
BeliefSet top(const ProbFunction& p);

// Parses the "index:rational" distribution literal (comma or space
// separated); omitted atoms get mass zero.
ProbFunction parse_distribution(std::string_view text, const Language& lang);
std::string format_distribution(const ProbFunction& p);

}  // namespace credal

#endif

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "credal/credal.hpp"
#include "credal/errors.hpp"
#include "credal/oracle.hpp"
#include "test_util.hpp"

using namespace credal;
using testutil::lang_n;

namespace {

bool same_polytope(const ConstraintSet& a, const ConstraintSet& b) {
  for (const auto& c : b.constraints)
    if (!entails(a, c)) return false;
  for (const auto& c : a.constraints)
    if (!entails(b, c)) return false;
  return true;
}

// Envelope of psi over the conditioned set, by conditioning each vertex.
std::pair<Rational, Rational> vertex_conditioned_envelopes(const ConstraintSet& base,
                                                           const Event& evidence,
                                                           const Event& query) {
  bool first = true;
  Rational lo = 0, hi = 0;
  for (const auto& v : oracle::vertices(base)) {
    Rational pe = eval_event(v, evidence);
    if (pe == 0) continue;
    Rational val = eval_event(v, query & evidence) / pe;
    if (first || val < lo) lo = val;
    if (first || val > hi) hi = val;
    first = false;
  }
  REQUIRE(!first);
  return {lo, hi};
}

}  // namespace

TEST_CASE("embed_belief_set") {
  Language l1 = lang_n(1);
  PartialModel all = embed_belief_set(l1, BeliefSet::ignorant(l1));
  CHECK(all.base().constraints.empty());

  BeliefSet kp = BeliefSet::from_atoms(models(l1, parse_sentence("p", l1)));
  PartialModel mp = embed_belief_set(l1, kp);
  REQUIRE(mp.base().constraints.size() == 1);
  CHECK(upper(mp, parse_sentence("!p", l1)) == 0);
  CHECK(top(mp).atoms() == kp.atoms());  // t(i(K)) = K

  testutil::Rng rng(41);
  for (int i = 0; i < 30; ++i) {
    Language lang = lang_n(1 + rng.below(3));
    Event atoms(lang.atom_count());
    for (std::size_t a = 0; a < lang.atom_count(); ++a)
      if (rng.flip()) atoms.set(a);
    if (atoms.none()) continue;
    BeliefSet k = BeliefSet::from_atoms(atoms);
    CHECK(top(embed_belief_set(lang, k)).atoms() == k.atoms());
  }
}

TEST_CASE("embed_prob") {
  Language l2 = lang_n(2);
  ProbFunction p = parse_distribution("0:1/8 1:3/8 2:1/4 3:1/4", l2);
  PartialModel m = embed_prob(p);
  testutil::Rng rng(42);
  for (int i = 0; i < 20; ++i) {
    Sentence s = testutil::random_sentence(rng, l2);
    CHECK(lower(m, s) == eval(p, s));
    CHECK(upper(m, s) == eval(p, s));
  }
  CHECK(top(m).atoms() == top(p).atoms());  // t(i(P)) = t(P)
  CHECK(feasible(m.base()));
}

TEST_CASE("constrain: three assassins turns singular") {
  testutil::Assassins fx;
  PartialModel pi = fx.model();
  PartialModel constrained = constrain(pi, parse_sentence("!p", fx.lang));
  CHECK(lower(constrained, fx.beta) == Rational(1, 2));
  CHECK(upper(constrained, fx.beta) == Rational(1, 2));
  CHECK(lower(constrained, fx.gamma) == Rational(1, 2));
  CHECK(upper(constrained, fx.gamma) == Rational(1, 2));
  CHECK(accepted(constrained, parse_sentence("!p", fx.lang)));
}

TEST_CASE("constrain: entailed constraints change nothing") {
  testutil::Assassins fx;
  PartialModel pi = fx.model();
  PartialModel again = constrain(pi, parse_constraint("P(!p&!q&r) = 1/2", fx.lang));
  for (std::size_t a = 0; a < fx.lang.atom_count(); ++a) {
    Sentence atom = sentence_from_event(fx.lang, [&] {
      Event e(fx.lang.atom_count());
      e.set(a);
      return e;
    }());
    CHECK(lower(pi, atom) == lower(again, atom));
    CHECK(upper(pi, atom) == upper(again, atom));
  }
}

TEST_CASE("constrain: inconsistency raises") {
  testutil::Assassins fx;
  PartialModel constrained = constrain(fx.model(), parse_sentence("!p", fx.lang));
  CHECK_THROWS_AS(constrain(constrained, parse_constraint("P(p) = P(q)", fx.lang)),
                  InfeasibleError);
  CHECK_THROWS_AS(constrain(constrained, parse_sentence("p", fx.lang)), InfeasibleError);
}

TEST_CASE("condition_extended: three assassins keeps its ignorance") {
  testutil::Assassins fx;
  ConditionedModel cond = condition_extended(fx.model(), parse_sentence("!p", fx.lang));
  CHECK(lower(cond, fx.beta) == 0);
  CHECK(upper(cond, fx.beta) == Rational(1, 2));
  CHECK(lower(cond, fx.gamma) == Rational(1, 2));
  CHECK(upper(cond, fx.gamma) == 1);
  CHECK(lower(cond, parse_sentence("T", fx.lang)) == 1);
  CHECK(upper(cond, parse_sentence("T", fx.lang)) == 1);
}

TEST_CASE("condition_extended: singleton image and null evidence") {
  Language l2 = lang_n(2);
  ProbFunction p = parse_distribution("0:1/8 1:3/8 2:1/4 3:1/4", l2);
  ConditionedModel cond = condition_extended(embed_prob(p), parse_sentence("p | q", l2));
  ProbFunction expected = condition(p, parse_sentence("p | q", l2));
  testutil::Rng rng(43);
  for (int i = 0; i < 20; ++i) {
    Sentence s = testutil::random_sentence(rng, l2);
    CHECK(lower(cond, s) == eval(expected, s));
    CHECK(upper(cond, s) == eval(expected, s));
  }
  CHECK_THROWS_AS(condition_extended(embed_prob(p), parse_sentence("F", l2)),
                  NullEvidenceError);
  ProbFunction onp = parse_distribution("1:1/2 3:1/2", l2);
  CHECK_THROWS_AS(condition_extended(embed_prob(onp), parse_sentence("!p", l2)),
                  NullEvidenceError);
}

TEST_CASE("condition_extended on T preserves envelopes") {
  testutil::Rng rng(44);
  for (int i = 0; i < 20; ++i) {
    Language lang = lang_n(1 + rng.below(3));
    ConstraintSet s = testutil::random_feasible_set(rng, lang, 1 + rng.below(2));
    PartialModel pi = PartialModel::from_constraints(s);
    ConditionedModel cond = condition_extended(pi, parse_sentence("T", lang));
    Sentence q = testutil::random_sentence(rng, lang);
    CHECK(lower(pi, q) == lower(cond, q));
    CHECK(upper(pi, q) == upper(cond, q));
  }
}

TEST_CASE("conditioned envelopes match the vertex oracle exactly") {
  testutil::Rng rng(45);
  int done = 0;
  for (int i = 0; i < 300 && done < 60; ++i) {
    Language lang = lang_n(2);
    ConstraintSet s = testutil::random_feasible_set(rng, lang, 1 + rng.below(2));
    PartialModel pi = PartialModel::from_constraints(s);
    Sentence phi = testutil::random_satisfiable(rng, lang);
    if (upper(pi, phi) == 0) continue;
    ++done;
    ConditionedModel cond = condition_extended(pi, phi);
    Sentence query = testutil::random_sentence(rng, lang);
    auto [olo, ohi] = vertex_conditioned_envelopes(s, cond.evidence(), models(lang, query));
    CHECK(lower(cond, query) == olo);
    CHECK(upper(cond, query) == ohi);
  }
  CHECK(done == 60);
}

TEST_CASE("Prop 1: constrain, condition and expand agree on belief-set embeddings") {
  testutil::Rng rng(46);
  int done = 0;
  for (int i = 0; i < 600 && done < 200; ++i) {
    Language lang = lang_n(1 + rng.below(3));
    Event atoms(lang.atom_count());
    for (std::size_t a = 0; a < lang.atom_count(); ++a)
      if (rng.flip()) atoms.set(a);
    if (atoms.none()) continue;
    BeliefSet k = BeliefSet::from_atoms(atoms);
    Sentence phi = testutil::random_sentence(rng, lang);
    if ((atoms & models(lang, phi)).none()) continue;  // needs consistency with K
    ++done;
    PartialModel pi = embed_belief_set(lang, k);
    Event expanded = expand(lang, k, phi).atoms();
    CHECK(top(constrain(pi, phi)).atoms() == expanded);
    CHECK(top(condition_extended(pi, phi)).atoms() == expanded);
  }
  CHECK(done == 200);
}

TEST_CASE("as_constraints: three assassins hull and Example 6") {
  testutil::Assassins fx;
  ConditionedModel cond = condition_extended(fx.model(), parse_sentence("!p", fx.lang));
  ConstraintSet hull = as_constraints(cond);

  // Same envelopes as the lazy model on all atoms.
  PartialModel mat = PartialModel::from_constraints(hull);
  for (std::size_t a = 0; a < fx.lang.atom_count(); ++a) {
    Event e(fx.lang.atom_count());
    e.set(a);
    Sentence atom = sentence_from_event(fx.lang, e);
    CHECK(lower(mat, atom) == lower(cond, atom));
    CHECK(upper(mat, atom) == upper(cond, atom));
  }

  // Example 6: adding the undercover report to Pi_{!p} collapses to P(gamma)=1 ...
  PartialModel updated = constrain(mat, parse_constraint("P(p) = P(q)", fx.lang));
  ConstraintSet gamma_one(fx.lang);
  gamma_one.constraints.push_back(parse_constraint("P(!p&!q&r) = 1", fx.lang));
  CHECK(same_polytope(updated.base(), gamma_one));

  // ... but adding it to the prior gives the strict Bayesian's singleton,
  PartialModel prior_plus = constrain(fx.model(), parse_constraint("P(p) = P(q)", fx.lang));
  CHECK(lower(prior_plus, fx.alpha) == Rational(1, 4));
  CHECK(upper(prior_plus, fx.alpha) == Rational(1, 4));
  CHECK(lower(prior_plus, fx.beta) == Rational(1, 4));
  CHECK(upper(prior_plus, fx.gamma) == Rational(1, 2));

  // whose conditioning is the strict Bayesian posterior (1/3, 2/3).
  ConditionedModel bayes = condition_extended(prior_plus, parse_sentence("!p", fx.lang));
  CHECK(lower(bayes, fx.beta) == Rational(1, 3));
  CHECK(upper(bayes, fx.beta) == Rational(1, 3));
  CHECK(lower(bayes, fx.gamma) == Rational(2, 3));
  CHECK(upper(bayes, fx.gamma) == Rational(2, 3));
}

TEST_CASE("as_constraints: singleton model pins the conditioned point") {
  Language l2 = lang_n(2);
  ProbFunction p = parse_distribution("0:1/8 1:3/8 2:1/4 3:1/4", l2);
  ConditionedModel cond = condition_extended(embed_prob(p), parse_sentence("p", l2));
  ConstraintSet hull = as_constraints(cond);
  ProbFunction expected = condition(p, parse_sentence("p", l2));
  PartialModel mat = PartialModel::from_constraints(hull);
  testutil::Rng rng(47);
  for (int i = 0; i < 10; ++i) {
    Sentence s = testutil::random_sentence(rng, l2);
    CHECK(lower(mat, s) == eval(expected, s));
    CHECK(upper(mat, s) == eval(expected, s));
  }
}

TEST_CASE("as_constraints: random cross-check against the fractional LP") {
  testutil::Rng rng(48);
  int done = 0;
  for (int i = 0; i < 300 && done < 40; ++i) {
    Language lang = lang_n(2);
    ConstraintSet s = testutil::random_feasible_set(rng, lang, 1 + rng.below(2));
    PartialModel pi = PartialModel::from_constraints(s);
    Sentence phi = testutil::random_satisfiable(rng, lang);
    if (upper(pi, phi) == 0) continue;
    ++done;
    ConditionedModel cond = condition_extended(pi, phi);
    PartialModel mat = PartialModel::from_constraints(as_constraints(cond));
    Sentence query = testutil::random_sentence(rng, lang);
    CHECK(lower(mat, query) == lower(cond, query));
    CHECK(upper(mat, query) == upper(cond, query));
  }
  CHECK(done == 40);
}

TEST_CASE("commutativity of conditioning across lazy, materialized and oracle routes") {
  testutil::Rng rng(49);
  int done = 0;
  for (int i = 0; i < 400 && done < 40; ++i) {
    Language lang = lang_n(2);
    ConstraintSet s = testutil::random_feasible_set(rng, lang, 1 + rng.below(2));
    PartialModel pi = PartialModel::from_constraints(s);
    Sentence phi = testutil::random_satisfiable(rng, lang);
    Sentence psi = testutil::random_satisfiable(rng, lang);
    Sentence both = Sentence::conjunction(phi, psi);
    if (upper(pi, both) == 0) continue;
    ++done;

    ConditionedModel lazy = condition_extended(condition_extended(pi, phi), psi);
    ConditionedModel folded = condition_extended(pi, both);
    ConditionedModel swapped = condition_extended(condition_extended(pi, psi), phi);
    PartialModel mat_phi = PartialModel::from_constraints(
        as_constraints(condition_extended(pi, phi)));
    ConditionedModel staged = condition_extended(mat_phi, psi);

    for (int q = 0; q < 6; ++q) {
      Sentence query = testutil::random_sentence(rng, lang);
      Rational lo = lower(folded, query), hi = upper(folded, query);
      CHECK(lower(lazy, query) == lo);
      CHECK(upper(lazy, query) == hi);
      CHECK(lower(swapped, query) == lo);
      CHECK(upper(swapped, query) == hi);
      CHECK(lower(staged, query) == lo);
      CHECK(upper(staged, query) == hi);
      auto [olo, ohi] =
          vertex_conditioned_envelopes(s, folded.evidence(), models(lang, query));
      CHECK(lo == olo);
      CHECK(hi == ohi);
    }
  }
  CHECK(done == 40);
}

TEST_CASE("commutativity of constraining") {
  testutil::Rng rng(50);
  int done = 0;
  for (int i = 0; i < 300 && done < 60; ++i) {
    Language lang = lang_n(1 + rng.below(3));
    Sentence phi = testutil::random_sentence(rng, lang);
    Sentence psi = testutil::random_sentence(rng, lang);
    if ((models(lang, phi) & models(lang, psi)).none()) continue;  // joint satisfiability
    ++done;
    PartialModel pi = PartialModel::ignorant(lang);
    ConstraintSet ab = constrain(constrain(pi, phi), psi).base();
    ConstraintSet ba = constrain(constrain(pi, psi), phi).base();
    ConstraintSet once = constrain(pi, Sentence::conjunction(phi, psi)).base();
    CHECK(same_polytope(ab, once));
    CHECK(same_polytope(ba, once));
  }
  CHECK(done == 60);
}

TEST_CASE("mixing the orders is not commutative: the assassins witness") {
  testutil::Assassins fx;
  LinearConstraint report = parse_constraint("P(p) = P(q)", fx.lang);

  // condition then constrain
  ConditionedModel cond = condition_extended(fx.model(), parse_sentence("!p", fx.lang));
  PartialModel cond_then_constrain =
      constrain(PartialModel::from_constraints(as_constraints(cond)), report);
  // constrain then condition
  ConditionedModel constrain_then_cond =
      condition_extended(constrain(fx.model(), report), parse_sentence("!p", fx.lang));

  CHECK(lower(cond_then_constrain, fx.gamma) == 1);
  CHECK(lower(constrain_then_cond, fx.gamma) == Rational(2, 3));
  CHECK(lower(cond_then_constrain, fx.gamma) != lower(constrain_then_cond, fx.gamma));
}

TEST_CASE("Prop 5: constraining preserves earlier constraints") {
  testutil::Rng rng(51);
  int done = 0;
  for (int i = 0; i < 400 && done < 200; ++i) {
    Language lang = lang_n(1 + rng.below(3));
    ProbFunction anchor = testutil::random_dist(rng, lang, 20);
    ConstraintSet s(lang);
    s.constraints.push_back(testutil::random_constraint_through(rng, lang, anchor));
    LinearConstraint phi = testutil::random_constraint_through(rng, lang, anchor);
    LinearConstraint psi = testutil::random_constraint_through(rng, lang, anchor);
    ++done;
    PartialModel pi = PartialModel::from_constraints(s);  // anchor keeps it feasible
    PartialModel both = constrain(constrain(pi, phi), psi);
    CHECK(entails(both.base(), phi));
    for (const auto& v : oracle::vertices(both.base())) CHECK(phi.holds_at(v.masses()));
  }
  CHECK(done == 200);
}

TEST_CASE("Example 1: entailment does not survive conditioning") {
  testutil::Rng rng(52);
  Language l2 = lang_n(2);
  for (int i = 0; i < 20; ++i) {
    Rational x(static_cast<unsigned long>(1 + rng.below(19)), 20ul);
    ConstraintSet s(l2);
    s.constraints.push_back(
        parse_constraint("P(p & q) = " + format_rational(x), l2));
    s.constraints.push_back(parse_constraint("P(p & !q) = 0", l2));
    LinearConstraint claim = parse_constraint("P(p) = " + format_rational(x), l2);
    CHECK(entails(s, claim));

    ConditionedModel cond = condition_extended(PartialModel::from_constraints(s),
                                               parse_sentence("q", l2));
    CHECK_FALSE(entails(as_constraints(cond), claim));
    CHECK_FALSE(entails(cond, claim));
  }
}

TEST_CASE("monotone envelopes under constraining") {
  testutil::Rng rng(53);
  int done = 0;
  for (int i = 0; i < 200 && done < 50; ++i) {
    Language lang = lang_n(1 + rng.below(3));
    ProbFunction anchor = testutil::random_dist(rng, lang, 20);
    ConstraintSet s(lang);
    s.constraints.push_back(testutil::random_constraint_through(rng, lang, anchor));
    PartialModel pi = PartialModel::from_constraints(s);
    PartialModel tightened =
        constrain(pi, testutil::random_constraint_through(rng, lang, anchor));
    ++done;
    for (int q = 0; q < 5; ++q) {
      Sentence query = testutil::random_sentence(rng, lang);
      CHECK(lower(tightened, query) >= lower(pi, query));
      CHECK(upper(tightened, query) <= upper(pi, query));
    }
  }
  CHECK(done == 50);
}

TEST_CASE("reachability: iterated constraining rebuilds any constraint set") {
  testutil::Rng rng(54);
  for (int i = 0; i < 30; ++i) {
    Language lang = lang_n(1 + rng.below(3));
    ConstraintSet s = testutil::random_feasible_set(rng, lang, 1 + rng.below(3));
    PartialModel step = PartialModel::ignorant(lang);
    for (const auto& c : s.constraints) step = constrain(step, c);
    CHECK(same_polytope(step.base(), s));
  }
}

TEST_CASE("accepted and top basics") {
  testutil::Assassins fx;
  PartialModel pi = fx.model();
  CHECK(accepted(pi, parse_sentence("T", fx.lang)));
  CHECK(accepted(pi, parse_sentence("(p&!q&!r)|(!p&q&!r)|(!p&!q&r)", fx.lang)));
  CHECK_FALSE(accepted(pi, parse_sentence("!p", fx.lang)));

  ConditionedModel cond = condition_extended(pi, parse_sentence("!p", fx.lang));
  Event expected(fx.lang.atom_count());
  expected.set(2);  // beta
  expected.set(4);  // gamma
  CHECK(top(cond).atoms() == expected);
  CHECK(accepted(cond, parse_sentence("!p", fx.lang)));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "credal/belief_set.hpp"
#include "credal/errors.hpp"
#include "credal/sentence.hpp"
#include "test_util.hpp"

using namespace credal;
using testutil::lang_n;

namespace {

Event event_of(const Language& lang, std::initializer_list<std::size_t> atoms) {
  Event e(lang.atom_count());
  for (auto a : atoms) e.set(a);
  return e;
}

}  // namespace

TEST_CASE("parser: precedence and associativity") {
  Language lang = lang_n(3);
  // !p & q | r parses as ((!p & q) | r)
  CHECK(models(lang, parse_sentence("!p & q | r", lang)) ==
        models(lang, parse_sentence("((!p) & q) | r", lang)));
  // p -> q -> r parses as p -> (q -> r)
  CHECK(models(lang, parse_sentence("p -> q -> r", lang)) ==
        models(lang, parse_sentence("p -> (q -> r)", lang)));
  CHECK(models(lang, parse_sentence("p <-> q <-> r", lang)) ==
        models(lang, parse_sentence("p <-> (q <-> r)", lang)));
  CHECK(models(lang, parse_sentence("p", lang)) == event_of(lang, {1, 3, 5, 7}));
}

TEST_CASE("parser: errors carry positions") {
  Language lang = lang_n(2);
  CHECK_THROWS_AS(parse_sentence("p &", lang), ParseError);
  CHECK_THROWS_AS(parse_sentence("p & & q", lang), ParseError);
  CHECK_THROWS_AS(parse_sentence("(p | q", lang), ParseError);
  CHECK_THROWS_AS(parse_sentence("p @ q", lang), ParseError);
  CHECK_THROWS_AS(parse_sentence("p & unknown_letter", lang), ParseError);
  try {
    parse_sentence("p & $", lang);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
  }
}

TEST_CASE("models: truth tables") {
  Language lang = lang_n(2);  // atoms: 0 = !p&!q, 1 = p&!q, 2 = !p&q, 3 = p&q
  CHECK(models(lang, parse_sentence("p", lang)) == event_of(lang, {1, 3}));
  CHECK(models(lang, parse_sentence("F", lang)).none());
  CHECK(models(lang, parse_sentence("T", lang)).all());
  CHECK(models(lang, parse_sentence("p <-> q", lang)) == event_of(lang, {0, 3}));
  CHECK(models(lang, parse_sentence("p & q", lang)) == event_of(lang, {3}));
}

TEST_CASE("models: respects connectives") {
  Language lang = lang_n(3);
  testutil::Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    Sentence a = testutil::random_sentence(rng, lang);
    Sentence b = testutil::random_sentence(rng, lang);
    CHECK(models(lang, Sentence::negation(a)) == ~models(lang, a));
    CHECK(models(lang, Sentence::conjunction(a, b)) == (models(lang, a) & models(lang, b)));
    CHECK(models(lang, Sentence::disjunction(a, b)) == (models(lang, a) | models(lang, b)));
  }
}

TEST_CASE("expand: from ignorance and by intersection") {
  Language lang = lang_n(2);
  BeliefSet ignorant = BeliefSet::ignorant(lang);
  Sentence p = parse_sentence("p", lang);

  BeliefSet k1 = expand(lang, ignorant, p);
  CHECK(k1.atoms() == models(lang, p));

  BeliefSet k2 = BeliefSet::from_atoms(models(lang, parse_sentence("p | q", lang)));
  BeliefSet k3 = expand(lang, k2, parse_sentence("!p", lang));
  CHECK(k3.atoms() == event_of(lang, {2}));  // !p & q

  BeliefSet kp = BeliefSet::from_atoms(models(lang, p));
  CHECK_THROWS_AS(expand(lang, kp, parse_sentence("!p", lang)), InfeasibleError);
}

TEST_CASE("accepted") {
  Language lang = lang_n(2);
  BeliefSet all = BeliefSet::ignorant(lang);
  CHECK(accepted(lang, all, parse_sentence("T", lang)));
  CHECK_FALSE(accepted(lang, all, parse_sentence("p", lang)));
  BeliefSet kpq = BeliefSet::from_atoms(models(lang, parse_sentence("p & q", lang)));
  CHECK(accepted(lang, kpq, parse_sentence("p", lang)));
}

TEST_CASE("expansion properties on random triples") {
  testutil::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Language lang = lang_n(1 + rng.below(3));
    Sentence phi = testutil::random_sentence(rng, lang);
    Sentence psi = testutil::random_sentence(rng, lang);
    Event k_atoms(lang.atom_count());
    for (std::size_t a = 0; a < lang.atom_count(); ++a)
      if (rng.flip()) k_atoms.set(a);
    Event joint = k_atoms & models(lang, phi) & models(lang, psi);
    if (joint.none()) continue;  // need joint consistency
    BeliefSet k = BeliefSet::from_atoms(k_atoms);

    // preservation: phi stays accepted in (K + phi) + psi
    BeliefSet expanded = expand(lang, expand(lang, k, phi), psi);
    CHECK(accepted(lang, expanded, phi));
    // atom characterization, idempotence, commutativity
    CHECK(expand(lang, k, phi).atoms() == (k.atoms() & models(lang, phi)));
    CHECK(expand(lang, expand(lang, k, phi), phi).atoms() == expand(lang, k, phi).atoms());
    CHECK(expand(lang, expand(lang, k, phi), psi).atoms() ==
          expand(lang, expand(lang, k, psi), phi).atoms());
  }
}

TEST_CASE("language: caps and reserved names") {
  CHECK_THROWS_AS(Language::make({}), PreconditionError);
  CHECK_THROWS_AS(Language::make({"p", "p"}), ParseError);
  CHECK_THROWS_AS(Language::make({"T"}), ParseError);
  CHECK_THROWS_AS(Language::make({"2x"}), ParseError);
  std::vector<std::string> many;
  for (int i = 0; i < 17; ++i) many.push_back("x" + std::to_string(i));
  CHECK_THROWS_AS(Language::make(many), CapError);
  CHECK(lang_n(3).atom_count() == 8);
}

TEST_CASE("sentence round trip through rendering") {
  testutil::Rng rng(99);
  Language lang = lang_n(3);
  for (int i = 0; i < 200; ++i) {
    Sentence s = testutil::random_sentence(rng, lang, 4);
    CHECK(models(lang, parse_sentence(to_text(s, lang), lang)) == models(lang, s));
  }
}

TEST_CASE("sentence_from_event inverts models") {
  Language lang = lang_n(2);
  for (std::size_t mask = 0; mask < 16; ++mask) {
    Event e(lang.atom_count());
    for (std::size_t i = 0; i < 4; ++i)
      if ((mask >> i) & 1) e.set(i);
    CHECK(models(lang, sentence_from_event(lang, e)) == e);
  }
}

#include "credal/belief_set.hpp"

#include "credal/errors.hpp"

namespace credal {

BeliefSet BeliefSet::from_atoms(Event atoms) {
  if (atoms.none())
    throw InfeasibleError("belief set would be inconsistent (no atom satisfies it)");
  return BeliefSet(std::move(atoms));
}

BeliefSet BeliefSet::ignorant(const Language& lang) {
  return BeliefSet(lang.full_event());
}

BeliefSet expand(const Language& lang, const BeliefSet& k, const Sentence& phi) {
  Event atoms = k.atoms() & models(lang, phi);
  if (atoms.none())
    throw InfeasibleError("expansion with a sentence whose negation is accepted");
  return BeliefSet::from_atoms(std::move(atoms));
}

bool accepted(const Language& lang, const BeliefSet& k, const Sentence& phi) {
  return k.atoms().is_subset_of(models(lang, phi));
}

}  // namespace credal

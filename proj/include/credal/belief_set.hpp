#ifndef CREDAL_BELIEF_SET_HPP
#define CREDAL_BELIEF_SET_HPP

#include "credal/language.hpp"
#include "credal/sentence.hpp"

namespace credal {

// A consistent, logically closed theory in possible-worlds form: the
// (nonempty) set of atoms consistent with it.
class BeliefSet {
 public:
  // Throws InfeasibleError on an empty atom set (the inconsistent theory).
  static BeliefSet from_atoms(Event atoms);

  // Cn(emptyset): every atom possible.
  static BeliefSet ignorant(const Language& lang);

  const Event& atoms() const { return atoms_; }

  bool operator==(const BeliefSet& other) const { return atoms_ == other.atoms_; }

 private:
  explicit BeliefSet(Event atoms) : atoms_(std::move(atoms)) {}
  Event atoms_;
};

// K + phi = Cn(K u {phi}). Throws InfeasibleError when !phi is accepted in K
// (revision territory).
BeliefSet expand(const Language& lang, const BeliefSet& k, const Sentence& phi);

// phi is accepted in K iff every atom of K is a model of phi.
bool accepted(const Language& lang, const BeliefSet& k, const Sentence& phi);

}  // namespace credal

#endif

#ifndef CREDAL_SENTENCE_HPP
#define CREDAL_SENTENCE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "credal/language.hpp"

namespace credal {

// Immutable propositional formula with shared subtrees. Leaves hold letter
// indices resolved against the language they were parsed/built over.
class Sentence {
 public:
  enum class Kind : std::uint8_t { False, True, Letter, Not, And, Or, Implies, Iff };

  static Sentence falsum() { return Sentence(Kind::False, -1, nullptr, nullptr); }
  static Sentence verum() { return Sentence(Kind::True, -1, nullptr, nullptr); }
  static Sentence letter(int index);
  static Sentence negation(Sentence s);
  static Sentence conjunction(Sentence l, Sentence r);
  static Sentence disjunction(Sentence l, Sentence r);
  static Sentence implication(Sentence l, Sentence r);
  static Sentence equivalence(Sentence l, Sentence r);

  Kind kind() const { return node_->kind; }
  int letter_index() const { return node_->letter; }
  Sentence lhs() const { return Sentence(node_->l); }
  Sentence rhs() const { return Sentence(node_->r); }

  // Truth value in atom `atom` (bit j of atom = value of letter j).
  bool holds_in_atom(std::size_t atom) const;

  // Largest letter index occurring in the formula, -1 if none.
  int max_letter() const;

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  struct Node {
    Kind kind;
    int letter;
    NodePtr l, r;  // engaged only for connective kinds
    Node(Kind k, int idx, NodePtr lhs, NodePtr rhs)
        : kind(k), letter(idx), l(std::move(lhs)), r(std::move(rhs)) {}
  };

  explicit Sentence(NodePtr node) : node_(std::move(node)) {}
  Sentence(Kind k, int idx, const Sentence* l, const Sentence* r);

  NodePtr node_;
};

// Parses the sentence DSL: letters, `!`, `&`, `|`, `->`, `<->`, `T`, `F`,
// parentheses. Precedence ! > & > | > -> > <->, with -> and <-> binding to
// the right. Throws ParseError (with offset) on syntax errors and unknown
// letters.
Sentence parse_sentence(std::string_view text, const Language& lang);

// Model set of the sentence by truth-table evaluation over all atoms.
Event models(const Language& lang, const Sentence& s);

// Renders with minimal parentheses; parses back to an equivalent sentence.
std::string to_text(const Sentence& s, const Language& lang);

// DNF sentence whose models are exactly `event` (F for the empty event).
Sentence sentence_from_event(const Language& lang, const Event& event);

}  // namespace credal

#endif

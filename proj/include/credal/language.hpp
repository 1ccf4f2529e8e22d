#ifndef CREDAL_LANGUAGE_HPP
#define CREDAL_LANGUAGE_HPP

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace credal {

// An event is a set of atoms: bit i is set iff atom i belongs to the event.
// Atom i assigns letter j the truth value of bit j of i.
using Event = boost::dynamic_bitset<>;

// A finite propositional language given by its ordered proposition letters.
// Immutable and cheap to copy.
class Language {
 public:
  static constexpr std::size_t kDefaultLetterCap = 16;

  // Validates: 1 <= n <= cap, names unique, matching [a-zA-Z][a-zA-Z0-9_]*,
  // and not the reserved constants "T"/"F".
  static Language make(std::vector<std::string> letters,
                       std::size_t letter_cap = kDefaultLetterCap);

  std::size_t letter_count() const { return letters_->size(); }
  std::size_t atom_count() const { return std::size_t{1} << letters_->size(); }
  const std::vector<std::string>& letters() const { return *letters_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool letter_true_in_atom(std::size_t atom, std::size_t letter) const {
    return (atom >> letter) & 1u;
  }

  // Canonical rendering of atom i as a conjunction of literals, e.g. "p&!q".
  std::string atom_name(std::size_t atom) const;

  Event empty_event() const { return Event(atom_count()); }
  Event full_event() const { return Event(atom_count()).set(); }

  bool operator==(const Language& other) const;
  bool operator!=(const Language& other) const { return !(*this == other); }

 private:
  explicit Language(std::vector<std::string> letters);
  std::shared_ptr<const std::vector<std::string>> letters_;
};

}  // namespace credal

#endif

#include "credal/language.hpp"

#include <cctype>
#include <unordered_set>

#include "credal/errors.hpp"

namespace credal {

namespace {

bool valid_letter_name(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace

Language::Language(std::vector<std::string> letters)
    : letters_(std::make_shared<const std::vector<std::string>>(std::move(letters))) {}

Language Language::make(std::vector<std::string> letters, std::size_t letter_cap) {
  if (letters.empty()) throw PreconditionError("language needs at least one proposition letter");
  if (letters.size() > letter_cap)
    throw CapError("language has " + std::to_string(letters.size()) +
                   " letters, cap is " + std::to_string(letter_cap));
  std::unordered_set<std::string> seen;
  for (const auto& name : letters) {
    if (!valid_letter_name(name))
      throw ParseError("invalid proposition letter '" + name + "'", 0);
    if (name == "T" || name == "F")
      throw ParseError("'" + name + "' is a reserved constant, not a letter", 0);
    if (!seen.insert(name).second)
      throw ParseError("duplicate proposition letter '" + name + "'", 0);
  }
  return Language(std::move(letters));
}

std::optional<std::size_t> Language::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < letters_->size(); ++i)
    if ((*letters_)[i] == name) return i;
  return std::nullopt;
}

std::string Language::atom_name(std::size_t atom) const {
  std::string out;
  for (std::size_t j = 0; j < letter_count(); ++j) {
    if (j) out += '&';
    if (!letter_true_in_atom(atom, j)) out += '!';
    out += (*letters_)[j];
  }
  return out;
}

bool Language::operator==(const Language& other) const {
  return letters_ == other.letters_ || *letters_ == *other.letters_;
}

}  // namespace credal

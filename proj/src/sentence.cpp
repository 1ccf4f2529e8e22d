#include "credal/sentence.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "credal/errors.hpp"

namespace credal {

Sentence::Sentence(Kind k, int idx, const Sentence* l, const Sentence* r)
    : node_(std::make_shared<const Node>(k, idx, l ? l->node_ : nullptr,
                                         r ? r->node_ : nullptr)) {}

Sentence Sentence::letter(int index) {
  if (index < 0) throw PreconditionError("negative letter index");
  return Sentence(Kind::Letter, index, nullptr, nullptr);
}
Sentence Sentence::negation(Sentence s) { return Sentence(Kind::Not, -1, &s, nullptr); }
Sentence Sentence::conjunction(Sentence l, Sentence r) { return Sentence(Kind::And, -1, &l, &r); }
Sentence Sentence::disjunction(Sentence l, Sentence r) { return Sentence(Kind::Or, -1, &l, &r); }
Sentence Sentence::implication(Sentence l, Sentence r) { return Sentence(Kind::Implies, -1, &l, &r); }
Sentence Sentence::equivalence(Sentence l, Sentence r) { return Sentence(Kind::Iff, -1, &l, &r); }

bool Sentence::holds_in_atom(std::size_t atom) const {
  switch (kind()) {
    case Kind::False: return false;
    case Kind::True: return true;
    case Kind::Letter: return (atom >> node_->letter) & 1u;
    case Kind::Not: return !lhs().holds_in_atom(atom);
    case Kind::And: return lhs().holds_in_atom(atom) && rhs().holds_in_atom(atom);
    case Kind::Or: return lhs().holds_in_atom(atom) || rhs().holds_in_atom(atom);
    case Kind::Implies: return !lhs().holds_in_atom(atom) || rhs().holds_in_atom(atom);
    case Kind::Iff: return lhs().holds_in_atom(atom) == rhs().holds_in_atom(atom);
  }
  return false;
}

int Sentence::max_letter() const {
  switch (kind()) {
    case Kind::Letter: return node_->letter;
    case Kind::Not: return lhs().max_letter();
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: return std::max(lhs().max_letter(), rhs().max_letter());
    default: return -1;
  }
}

Event models(const Language& lang, const Sentence& s) {
  if (s.max_letter() >= static_cast<int>(lang.letter_count()))
    throw PreconditionError("sentence mentions a letter outside the language");
  Event out(lang.atom_count());
  for (std::size_t atom = 0; atom < lang.atom_count(); ++atom)
    if (s.holds_in_atom(atom)) out.set(atom);
  return out;
}

namespace {

struct Token {
  enum class Kind { Letter, True, False, Not, And, Or, Implies, Iff, LParen, RParen, End };
  Kind kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string word(text.substr(i, j - i));
      Token::Kind k = word == "T"   ? Token::Kind::True
                      : word == "F" ? Token::Kind::False
                                    : Token::Kind::Letter;
      out.push_back({k, std::move(word), start});
      i = j;
      continue;
    }
    switch (c) {
      case '!': out.push_back({Token::Kind::Not, "!", start}); ++i; break;
      case '&': out.push_back({Token::Kind::And, "&", start}); ++i; break;
      case '|': out.push_back({Token::Kind::Or, "|", start}); ++i; break;
      case '(': out.push_back({Token::Kind::LParen, "(", start}); ++i; break;
      case ')': out.push_back({Token::Kind::RParen, ")", start}); ++i; break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Token::Kind::Implies, "->", start});
          i += 2;
          break;
        }
        throw ParseError("expected '->'", start);
      case '<':
        if (i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
          out.push_back({Token::Kind::Iff, "<->", start});
          i += 3;
          break;
        }
        throw ParseError("expected '<->'", start);
      default: throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({Token::Kind::End, "", text.size()});
  return out;
}

class SentenceParser {
 public:
  SentenceParser(std::vector<Token> tokens, const Language& lang)
      : tokens_(std::move(tokens)), lang_(lang) {}

  Sentence parse() {
    Sentence s = iff();
    expect(Token::Kind::End, "trailing input after sentence");
    return s;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_++]; }
  void expect(Token::Kind k, const char* msg) {
    if (peek().kind != k) throw ParseError(msg, peek().pos);
    ++pos_;
  }

  Sentence iff() {  // right-associative
    Sentence l = implies();
    if (peek().kind == Token::Kind::Iff) {
      next();
      return Sentence::equivalence(std::move(l), iff());
    }
    return l;
  }
  Sentence implies() {  // right-associative
    Sentence l = disjunct();
    if (peek().kind == Token::Kind::Implies) {
      next();
      return Sentence::implication(std::move(l), implies());
    }
    return l;
  }
  Sentence disjunct() {
    Sentence l = conjunct();
    while (peek().kind == Token::Kind::Or) {
      next();
      l = Sentence::disjunction(std::move(l), conjunct());
    }
    return l;
  }
  Sentence conjunct() {
    Sentence l = negation();
    while (peek().kind == Token::Kind::And) {
      next();
      l = Sentence::conjunction(std::move(l), negation());
    }
    return l;
  }
  Sentence negation() {
    if (peek().kind == Token::Kind::Not) {
      next();
      return Sentence::negation(negation());
    }
    return primary();
  }
  Sentence primary() {
    Token t = next();
    switch (t.kind) {
      case Token::Kind::True: return Sentence::verum();
      case Token::Kind::False: return Sentence::falsum();
      case Token::Kind::Letter: {
        auto idx = lang_.index_of(t.text);
        if (!idx) throw ParseError("unknown letter '" + t.text + "'", t.pos);
        return Sentence::letter(static_cast<int>(*idx));
      }
      case Token::Kind::LParen: {
        Sentence inner = iff();
        expect(Token::Kind::RParen, "expected ')'");
        return inner;
      }
      default: throw ParseError("expected a sentence", t.pos);
    }
  }

  std::vector<Token> tokens_;
  const Language& lang_;
  std::size_t pos_ = 0;
};

int precedence_level(Sentence::Kind k) {
  switch (k) {
    case Sentence::Kind::Iff: return 0;
    case Sentence::Kind::Implies: return 1;
    case Sentence::Kind::Or: return 2;
    case Sentence::Kind::And: return 3;
    case Sentence::Kind::Not: return 4;
    default: return 5;
  }
}

void render(const Sentence& s, const Language& lang, int parent_level, std::string& out) {
  int level = precedence_level(s.kind());
  bool parens = level < parent_level;
  if (parens) out += '(';
  switch (s.kind()) {
    case Sentence::Kind::False: out += 'F'; break;
    case Sentence::Kind::True: out += 'T'; break;
    case Sentence::Kind::Letter: out += lang.letters()[s.letter_index()]; break;
    case Sentence::Kind::Not:
      out += '!';
      render(s.lhs(), lang, level, out);
      break;
    case Sentence::Kind::And:
      render(s.lhs(), lang, level, out);
      out += " & ";
      render(s.rhs(), lang, level + 1, out);
      break;
    case Sentence::Kind::Or:
      render(s.lhs(), lang, level, out);
      out += " | ";
      render(s.rhs(), lang, level + 1, out);
      break;
    case Sentence::Kind::Implies:
      render(s.lhs(), lang, level + 1, out);  // right-associative
      out += " -> ";
      render(s.rhs(), lang, level, out);
      break;
    case Sentence::Kind::Iff:
      render(s.lhs(), lang, level + 1, out);
      out += " <-> ";
      render(s.rhs(), lang, level, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

Sentence parse_sentence(std::string_view text, const Language& lang) {
  return SentenceParser(tokenize(text), lang).parse();
}

std::string to_text(const Sentence& s, const Language& lang) {
  std::string out;
  render(s, lang, 0, out);
  return out;
}

Sentence sentence_from_event(const Language& lang, const Event& event) {
  if (event.size() != lang.atom_count())
    throw PreconditionError("event length does not match language");
  if (event.none()) return Sentence::falsum();
  if (event.all()) return Sentence::verum();
  Sentence out = Sentence::falsum();
  bool first = true;
  for (std::size_t atom = event.find_first(); atom != Event::npos;
       atom = event.find_next(atom)) {
    Sentence conj = Sentence::letter(0);
    if (!lang.letter_true_in_atom(atom, 0)) conj = Sentence::negation(std::move(conj));
    for (std::size_t j = 1; j < lang.letter_count(); ++j) {
      Sentence lit = Sentence::letter(static_cast<int>(j));
      if (!lang.letter_true_in_atom(atom, j)) lit = Sentence::negation(std::move(lit));
      conj = Sentence::conjunction(std::move(conj), std::move(lit));
    }
    out = first ? std::move(conj) : Sentence::disjunction(std::move(out), std::move(conj));
    first = false;
  }
  return out;
}

}  // namespace credal

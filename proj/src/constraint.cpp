#include "credal/constraint.hpp"

#include <cctype>
#include <tuple>

#include "credal/errors.hpp"
#include "credal/sentence.hpp"

namespace credal {

bool LinearConstraint::holds_at(const std::vector<Rational>& masses) const {
  Rational lhs = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) lhs += coeffs[i] * masses[i];
  switch (rel) {
    case Relation::Eq: return lhs == rhs;
    case Relation::Le: return lhs <= rhs;
    case Relation::Ge: return lhs >= rhs;
  }
  return false;
}

LinearConstraint event_constraint(const Language& lang, const Event& event, Relation rel,
                                  Rational rhs, std::string source_text) {
  LinearConstraint c;
  c.coeffs.assign(lang.atom_count(), Rational(0));
  for (std::size_t i = event.find_first(); i != Event::npos; i = event.find_next(i))
    c.coeffs[i] = 1;
  c.rel = rel;
  c.rhs = std::move(rhs);
  c.source_text = std::move(source_text);
  return c;
}

ConstraintSet ConstraintSet::with(LinearConstraint c) const {
  ConstraintSet out = *this;
  out.constraints.push_back(std::move(c));
  return out;
}

namespace {

struct Lincomb {
  std::vector<Rational> coeffs;
  Rational constant;
};

class ConstraintParser {
 public:
  ConstraintParser(std::string_view text, const Language& lang) : text_(text), lang_(lang) {}

  LinearConstraint parse() {
    auto [rel_pos, rel, rel_len] = find_relation();
    std::string_view lhs_text = text_.substr(0, rel_pos);
    std::string_view rhs_text = text_.substr(rel_pos + rel_len);

    LinearConstraint out;
    out.rel = rel;
    out.source_text = trimmed(text_);

    if (auto cond = try_conditional(lhs_text)) {
      // P(phi | psi) = c  ~>  P(phi & psi) - c P(psi) = 0
      if (rel != Relation::Eq)
        throw ParseError("conditional probability term requires '='", rel_pos);
      Rational c = constant_only(rhs_text, rel_pos + rel_len);
      Event joint = models(lang_, Sentence::conjunction(cond->first, cond->second));
      Event given = models(lang_, cond->second);
      out.coeffs.assign(lang_.atom_count(), Rational(0));
      for (std::size_t i = joint.find_first(); i != Event::npos; i = joint.find_next(i))
        out.coeffs[i] += 1;
      for (std::size_t i = given.find_first(); i != Event::npos; i = given.find_next(i))
        out.coeffs[i] -= c;
      out.rhs = 0;
      return out;
    }

    Lincomb lhs = parse_lincomb(lhs_text, 0);
    Lincomb rhs = parse_lincomb(rhs_text, rel_pos + rel_len);
    out.coeffs.assign(lang_.atom_count(), Rational(0));
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
      out.coeffs[i] = lhs.coeffs[i] - rhs.coeffs[i];
    out.rhs = rhs.constant - lhs.constant;
    return out;
  }

 private:
  static std::string trimmed(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
  }

  // Top-level (outside parentheses) =, <= or >=.
  std::tuple<std::size_t, Relation, std::size_t> find_relation() const {
    int depth = 0;
    for (std::size_t i = 0; i < text_.size(); ++i) {
      char c = text_[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth != 0) continue;
      if (c == '<' && i + 1 < text_.size() && text_[i + 1] == '=') return {i, Relation::Le, 2};
      if (c == '>' && i + 1 < text_.size() && text_[i + 1] == '=') return {i, Relation::Ge, 2};
      if (c == '=') return {i, Relation::Eq, 1};
    }
    throw ParseError("constraint needs a relation (=, <= or >=)", text_.size());
  }

  // A '|' at the top level of a P-argument is a conditional separator only
  // when surrounded by whitespace ("P(p | p|q)"); tight or parenthesized
  // bars are disjunctions ("P(p|q)", "P((p | q))").
  static bool is_separator_bar(std::string_view side, std::size_t j) {
    return side[j] == '|' && j > 0 && j + 1 < side.size() &&
           std::isspace(static_cast<unsigned char>(side[j - 1])) &&
           std::isspace(static_cast<unsigned char>(side[j + 1]));
  }

  // Matches when the side is exactly one P(...) whose argument carries a
  // separator bar; the first one splits condition from given.
  std::optional<std::pair<Sentence, Sentence>> try_conditional(std::string_view side) const {
    std::size_t i = 0;
    while (i < side.size() && std::isspace(static_cast<unsigned char>(side[i]))) ++i;
    if (i >= side.size() || side[i] != 'P') return std::nullopt;
    ++i;
    while (i < side.size() && std::isspace(static_cast<unsigned char>(side[i]))) ++i;
    if (i >= side.size() || side[i] != '(') return std::nullopt;
    std::size_t open = i;
    int depth = 0;
    std::size_t close = std::string_view::npos, bar = std::string_view::npos;
    for (std::size_t j = open; j < side.size(); ++j) {
      if (side[j] == '(') ++depth;
      else if (side[j] == ')') {
        if (--depth == 0) {
          close = j;
          break;
        }
      } else if (depth == 1 && bar == std::string_view::npos && is_separator_bar(side, j)) {
        bar = j;
      }
    }
    if (close == std::string_view::npos || bar == std::string_view::npos) return std::nullopt;
    std::size_t k = close + 1;
    while (k < side.size() && std::isspace(static_cast<unsigned char>(side[k]))) ++k;
    if (k != side.size()) return std::nullopt;  // more terms follow: not a lone conditional
    Sentence cond = parse_sentence(side.substr(open + 1, bar - open - 1), lang_);
    Sentence given = parse_sentence(side.substr(bar + 1, close - bar - 1), lang_);
    return std::make_pair(std::move(cond), std::move(given));
  }

  Rational constant_only(std::string_view side, std::size_t offset) const {
    Lincomb lc = parse_lincomb(side, offset);
    for (const auto& c : lc.coeffs)
      if (c != 0)
        throw ParseError("right-hand side of a conditional constraint must be a rational",
                         offset);
    return lc.constant;
  }

  Lincomb parse_lincomb(std::string_view side, std::size_t offset) const {
    Lincomb out;
    out.coeffs.assign(lang_.atom_count(), Rational(0));
    out.constant = 0;
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < side.size() && std::isspace(static_cast<unsigned char>(side[i]))) ++i;
    };
    bool first = true;
    for (;;) {
      skip_ws();
      if (i >= side.size()) {
        if (first) throw ParseError("empty side of constraint", offset + i);
        break;
      }
      int sign = 1;
      if (side[i] == '+' || side[i] == '-') {
        if (side[i] == '-') sign = -1;
        ++i;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-' between terms", offset + i);
      }
      if (i >= side.size()) throw ParseError("dangling sign", offset + i);

      if (side[i] == 'P' && upcoming_paren(side, i + 1)) {
        add_prob_term(out, Rational(sign), side, i, offset);
        first = false;
        continue;
      }

      std::size_t start = i;
      while (i < side.size() &&
             (std::isdigit(static_cast<unsigned char>(side[i])) || side[i] == '.' ||
              side[i] == '/'))
        ++i;
      if (i == start) throw ParseError("expected a term", offset + i);
      Rational value = parse_rational(side.substr(start, i - start)) * sign;
      skip_ws();
      if (i < side.size() && side[i] == '*') {
        ++i;
        skip_ws();
        if (i >= side.size() || side[i] != 'P' || !upcoming_paren(side, i + 1))
          throw ParseError("expected P(...) after '*'", offset + i);
        add_prob_term(out, value, side, i, offset);
      } else {
        out.constant += value;
      }
      first = false;
    }
    return out;
  }

  static bool upcoming_paren(std::string_view side, std::size_t i) {
    while (i < side.size() && std::isspace(static_cast<unsigned char>(side[i]))) ++i;
    return i < side.size() && side[i] == '(';
  }

  // Consumes `P ( sentence )` starting at side[i] == 'P' and accumulates
  // coef * indicator(models(sentence)).
  void add_prob_term(Lincomb& out, const Rational& coef, std::string_view side, std::size_t& i,
                     std::size_t offset) const {
    ++i;  // 'P'
    while (i < side.size() && std::isspace(static_cast<unsigned char>(side[i]))) ++i;
    std::size_t open = i;
    int depth = 0;
    std::size_t close = std::string_view::npos;
    for (std::size_t j = open; j < side.size(); ++j) {
      if (side[j] == '(') ++depth;
      else if (side[j] == ')' && --depth == 0) {
        close = j;
        break;
      } else if (depth == 1 && is_separator_bar(side, j)) {
        throw ParseError(
            "conditional probability term is only allowed alone on the left of '='; "
            "write the disjunction as '|' without surrounding spaces or parenthesize it",
            offset + j);
      }
    }
    if (close == std::string_view::npos)
      throw ParseError("unbalanced parentheses in P(...)", offset + open);
    Sentence s = parse_sentence(side.substr(open + 1, close - open - 1), lang_);
    Event ev = models(lang_, s);
    for (std::size_t a = ev.find_first(); a != Event::npos; a = ev.find_next(a))
      out.coeffs[a] += coef;
    i = close + 1;
  }

  std::string_view text_;
  const Language& lang_;
};

}  // namespace

LinearConstraint parse_constraint(std::string_view text, const Language& lang) {
  return ConstraintParser(text, lang).parse();
}

bool satisfies(const ProbFunction& p, const ConstraintSet& s) {
  if (!(p.language() == s.lang))
    throw PreconditionError("probability function and constraint set over different languages");
  for (const auto& c : s.constraints)
    if (!c.holds_at(p.masses())) return false;
  return true;
}

std::optional<LpOptimum> optimize(const ConstraintSet& s, const std::vector<Rational>& objective,
                                  LpSense sense) {
  const std::size_t n = s.lang.atom_count();
  if (objective.size() != n) throw PreconditionError("objective length does not match atom count");
  std::vector<LpRow> rows;
  rows.reserve(s.constraints.size() + 1);
  rows.push_back({std::vector<Rational>(n, Rational(1)), Relation::Eq, Rational(1)});
  for (const auto& c : s.constraints) rows.push_back({c.coeffs, c.rel, c.rhs});
  LpSolution sol = solve_lp(rows, objective, sense);
  if (sol.status == LpStatus::Infeasible) return std::nullopt;
  if (sol.status != LpStatus::Optimal)
    throw Error("optimize over the probability simplex cannot be unbounded");
  return LpOptimum{std::move(sol.value),
                   ProbFunction::from_masses(s.lang, std::move(sol.point))};
}

bool feasible(const ConstraintSet& s) {
  return optimize(s, std::vector<Rational>(s.lang.atom_count(), Rational(0)), LpSense::Min)
      .has_value();
}

bool entails(const ConstraintSet& s, const LinearConstraint& c) {
  auto lo = optimize(s, c.coeffs, LpSense::Min);
  if (!lo) throw InfeasibleError("entailment from an infeasible constraint set");
  switch (c.rel) {
    case Relation::Ge: return lo->value >= c.rhs;
    case Relation::Le: return optimize(s, c.coeffs, LpSense::Max)->value <= c.rhs;
    case Relation::Eq:
      return lo->value == c.rhs && optimize(s, c.coeffs, LpSense::Max)->value == c.rhs;
  }
  return false;
}

}  // namespace credal

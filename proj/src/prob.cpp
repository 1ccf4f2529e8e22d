#include "credal/prob.hpp"

#include <cctype>
#include <string>

#include "credal/errors.hpp"

namespace credal {

ProbFunction ProbFunction::from_masses(Language lang, std::vector<Rational> masses) {
  if (masses.size() != lang.atom_count())
    throw PreconditionError("mass vector length does not match atom count");
  Rational sum = 0;
  for (const auto& m : masses) {
    if (m < 0) throw PreconditionError("negative atom mass");
    sum += m;
  }
  if (sum != 1) throw PreconditionError("atom masses sum to " + format_rational(sum) + ", not 1");
  return ProbFunction(std::move(lang), std::move(masses));
}

Event ProbFunction::support() const {
  Event out(masses_.size());
  for (std::size_t i = 0; i < masses_.size(); ++i)
    if (masses_[i] > 0) out.set(i);
  return out;
}

Rational eval_event(const ProbFunction& p, const Event& event) {
  Rational sum = 0;
  for (std::size_t i = event.find_first(); i != Event::npos; i = event.find_next(i))
    sum += p.mass(i);
  return sum;
}

Rational eval(const ProbFunction& p, const Sentence& phi) {
  return eval_event(p, models(p.language(), phi));
}

ProbFunction uniform(const Language& lang) {
  std::vector<Rational> masses(lang.atom_count(),
                               Rational(1, static_cast<unsigned long>(lang.atom_count())));
  return ProbFunction::from_masses(lang, std::move(masses));
}

namespace {

ProbFunction condition_event(const ProbFunction& p, const Event& ev) {
  Rational total = eval_event(p, ev);
  if (total == 0) throw NullEvidenceError("conditioning on an event of probability zero");
  std::vector<Rational> masses(p.masses().size(), Rational(0));
  for (std::size_t i = ev.find_first(); i != Event::npos; i = ev.find_next(i))
    masses[i] = p.mass(i) / total;
  return ProbFunction::from_masses(p.language(), std::move(masses));
}

ProbFunction jeffrey_binary_event(const ProbFunction& p, const Event& ev, const Rational& x) {
  if (x < 0 || x > 1) throw PreconditionError("Jeffrey weight outside [0,1]");
  Rational inside = eval_event(p, ev);
  if (x == 1) {
    if (inside == 0) throw NullEvidenceError("Jeffrey weight 1 on an event of probability zero");
    return condition_event(p, ev);
  }
  Event complement = ~ev;
  if (x == 0) {
    if (inside == 1)
      throw NullEvidenceError("Jeffrey weight 0 on an event of probability one");
    return condition_event(p, complement);
  }
  if (inside == 0 || inside == 1)
    throw PreconditionError("binary Jeffrey conditioning needs 0 < P(event) < 1");
  Rational outside = 1 - inside;
  std::vector<Rational> masses(p.masses().size());
  for (std::size_t i = 0; i < masses.size(); ++i)
    masses[i] = ev.test(i) ? Rational(p.mass(i) * x / inside)
                           : Rational(p.mass(i) * (1 - x) / outside);
  return ProbFunction::from_masses(p.language(), std::move(masses));
}

}  // namespace

ProbFunction condition(const ProbFunction& p, const Sentence& phi) {
  return condition_event(p, models(p.language(), phi));
}

ProbFunction jeffrey_binary(const ProbFunction& p, const Sentence& phi, const Rational& x) {
  return jeffrey_binary_event(p, models(p.language(), phi), x);
}

ProbFunction jeffrey_general(const ProbFunction& p,
                             const std::vector<std::pair<Sentence, Rational>>& pairs) {
  const Language& lang = p.language();
  Event covered(lang.atom_count());
  Rational weight_sum = 0;
  std::vector<Event> cells;
  cells.reserve(pairs.size());
  for (const auto& [phi, x] : pairs) {
    if (x < 0 || x > 1) throw PreconditionError("Jeffrey weight outside [0,1]");
    Event cell = models(lang, phi);
    if ((cell & covered).any())
      throw PreconditionError("Jeffrey partition events are not pairwise disjoint");
    if (eval_event(p, cell) == 0)
      throw NullEvidenceError("Jeffrey partition cell has probability zero");
    covered |= cell;
    weight_sum += x;
    cells.push_back(std::move(cell));
  }
  if (weight_sum != 1)
    throw PreconditionError("Jeffrey weights sum to " + format_rational(weight_sum) + ", not 1");
  std::vector<Rational> masses(lang.atom_count(), Rational(0));
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const Rational& x = pairs[k].second;
    if (x == 0) continue;
    Rational cell_mass = eval_event(p, cells[k]);
    for (std::size_t i = cells[k].find_first(); i != Event::npos; i = cells[k].find_next(i))
      masses[i] += x * p.mass(i) / cell_mass;
  }
  return ProbFunction::from_masses(lang, std::move(masses));
}

std::vector<JeffreyStep> jeffrey_path(const ProbFunction& from, const ProbFunction& to) {
  if (!(from.language() == to.language()))
    throw PreconditionError("jeffrey_path across different languages");
  const Language& lang = from.language();
  Event target_support = to.support();
  if (!target_support.is_subset_of(from.support()))
    throw PreconditionError("target support is not contained in the source support");

  std::vector<JeffreyStep> steps;
  ProbFunction current = from;
  if (from.support() != target_support) {
    Sentence support_event = sentence_from_event(lang, target_support);
    current = jeffrey_binary(current, support_event, Rational(1));
    steps.push_back({std::move(support_event), Rational(1)});
  }
  if (current == to) return steps;

  // Atoms of the shared support in index order; the first one is never
  // stepped and anchors the mass ratios. Stepping atom a with weight w sets
  // its mass to w and rescales everything else uniformly, so fixing the
  // ratio a : anchor at each step pins the whole distribution at the end.
  std::vector<std::size_t> atoms;
  for (std::size_t i = target_support.find_first(); i != Event::npos;
       i = target_support.find_next(i))
    atoms.push_back(i);
  std::size_t anchor = atoms.front();
  for (std::size_t k = 1; k < atoms.size(); ++k) {
    std::size_t a = atoms[k];
    Rational ratio = (to.mass(a) / to.mass(anchor)) *
                     (current.mass(anchor) / (1 - current.mass(a)));
    Rational w = ratio / (1 + ratio);
    Event cell(lang.atom_count());
    cell.set(a);
    current = jeffrey_binary_event(current, cell, w);
    steps.push_back({sentence_from_event(lang, cell), std::move(w)});
  }
  return steps;
}

BeliefSet top(const ProbFunction& p) { return BeliefSet::from_atoms(p.support()); }

ProbFunction parse_distribution(std::string_view text, const Language& lang) {
  std::vector<Rational> masses(lang.atom_count(), Rational(0));
  std::size_t i = 0;
  auto skip_sep = [&] {
    while (i < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  skip_sep();
  while (i < text.size()) {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start || i >= text.size() || text[i] != ':')
      throw ParseError("expected 'atom-index:rational'", start);
    std::size_t atom = std::stoul(std::string(text.substr(start, i - start)));
    if (atom >= lang.atom_count())
      throw ParseError("atom index " + std::to_string(atom) + " out of range", start);
    ++i;  // ':'
    std::size_t vstart = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != ',')
      ++i;
    masses[atom] = parse_rational(text.substr(vstart, i - vstart));
    skip_sep();
  }
  return ProbFunction::from_masses(lang, std::move(masses));
}

std::string format_distribution(const ProbFunction& p) {
  std::string out;
  for (std::size_t i = 0; i < p.masses().size(); ++i) {
    if (p.mass(i) == 0) continue;
    if (!out.empty()) out += ' ';
    out += std::to_string(i) + ':' + format_rational(p.mass(i));
  }
  return out.empty() ? "0:0" : out;  // unreachable for a proper distribution
}

}  // namespace credal

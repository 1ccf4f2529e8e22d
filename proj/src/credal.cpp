#include "credal/credal.hpp"

#include <algorithm>
#include <map>

#include "credal/errors.hpp"
#include "credal/linalg.hpp"
#include "credal/oracle.hpp"

namespace credal {

namespace {

std::vector<Rational> indicator(const Language& lang, const Event& event) {
  std::vector<Rational> out(lang.atom_count(), Rational(0));
  for (std::size_t i = event.find_first(); i != Event::npos; i = event.find_next(i)) out[i] = 1;
  return out;
}

Rational max_event_probability(const ConstraintSet& base, const Event& event) {
  auto opt = optimize(base, indicator(base.lang, event), LpSense::Max);
  if (!opt) throw Error("conditioning a model with an infeasible base");
  return opt->value;
}

}  // namespace

PartialModel PartialModel::from_constraints(ConstraintSet base) {
  if (!feasible(base)) throw InfeasibleError("constraint set admits no probability function");
  return PartialModel(std::move(base));
}

PartialModel PartialModel::ignorant(const Language& lang) {
  return PartialModel(ConstraintSet(lang));
}

ConditionedModel::ConditionedModel(ConstraintSet base, Event evidence,
                                   std::string evidence_text)
    : base_(std::move(base)), evidence_(std::move(evidence)),
      evidence_text_(std::move(evidence_text)) {
  if (evidence_.size() != base_.lang.atom_count())
    throw PreconditionError("evidence event does not match the language");
  if (max_event_probability(base_, evidence_) == 0)
    throw NullEvidenceError("evidence has probability zero in every member of the model");
}

PartialModel embed_belief_set(const Language& lang, const BeliefSet& k) {
  ConstraintSet base(lang);
  Event outside = ~k.atoms();
  if (outside.any())
    base.constraints.push_back(event_constraint(
        lang, outside, Relation::Eq, Rational(0),
        "P(" + to_text(sentence_from_event(lang, outside), lang) + ") = 0"));
  return PartialModel::from_constraints(std::move(base));
}

PartialModel embed_prob(const ProbFunction& p) {
  const Language& lang = p.language();
  ConstraintSet base(lang);
  Event cell(lang.atom_count());
  for (std::size_t i = 0; i < lang.atom_count(); ++i) {
    cell.set(i);
    base.constraints.push_back(event_constraint(
        lang, cell, Relation::Eq, p.mass(i),
        "P(" + lang.atom_name(i) + ") = " + format_rational(p.mass(i))));
    cell.reset(i);
  }
  return PartialModel::from_constraints(std::move(base));
}

PartialModel constrain(const PartialModel& m, const Sentence& phi) {
  return constrain(m, event_constraint(m.language(), models(m.language(), phi), Relation::Eq,
                                       Rational(1),
                                       "P(" + to_text(phi, m.language()) + ") = 1"));
}

PartialModel constrain(const PartialModel& m, const LinearConstraint& c) {
  ConstraintSet next = m.base().with(c);
  if (!feasible(next))
    throw InfeasibleError("constraining with '" + c.source_text +
                          "' empties the model");
  return PartialModel::from_constraints(std::move(next));
}

ConditionedModel condition_extended(const PartialModel& m, const Sentence& phi) {
  Event ev = models(m.language(), phi);
  if (max_event_probability(m.base(), ev) == 0)
    throw NullEvidenceError("conditioning on evidence of upper probability zero");
  return ConditionedModel(m.base(), std::move(ev), to_text(phi, m.language()));
}

ConditionedModel condition_extended(const ConditionedModel& m, const Sentence& phi) {
  Event folded = m.evidence() & models(m.language(), phi);
  if (folded.none() || max_event_probability(m.base(), folded) == 0)
    throw NullEvidenceError("conditioning on evidence of upper probability zero");
  return ConditionedModel(m.base(), std::move(folded),
                          "(" + m.evidence_text() + ") & (" + to_text(phi, m.language()) + ")");
}

Rational envelope(const PartialModel& m, const std::vector<Rational>& coeffs, LpSense sense) {
  auto opt = optimize(m.base(), coeffs, sense);
  if (!opt) throw Error("partial model base became infeasible");
  return opt->value;
}

// Charnes-Cooper: with y = P / P(evidence) and t = 1 / P(evidence), the
// conditional envelope inf/sup of coeffs . P_evidence over the model becomes
// the exact LP
//   opt  sum_{i in evidence} coeffs_i y_i
//   s.t. a.y - b t rel 0 for each base row (a rel b),
//        sum_i y_i = t,  sum_{i in evidence} y_i = 1,  y, t >= 0.
// Every feasible point has t > 0, and optima are attained at conditioned
// members of the model, so values are exact envelopes of the conditioned set.
Rational envelope(const ConditionedModel& m, const std::vector<Rational>& coeffs,
                  LpSense sense) {
  const std::size_t n = m.language().atom_count();
  if (coeffs.size() != n) throw PreconditionError("objective length does not match atom count");
  std::vector<LpRow> rows;
  rows.reserve(m.base().constraints.size() + 2);
  for (const auto& c : m.base().constraints) {
    LpRow row;
    row.coeffs = c.coeffs;
    row.coeffs.push_back(-c.rhs);
    row.rel = c.rel;
    row.rhs = 0;
    rows.push_back(std::move(row));
  }
  {
    LpRow total{std::vector<Rational>(n + 1, Rational(1)), Relation::Eq, Rational(0)};
    total.coeffs[n] = -1;
    rows.push_back(std::move(total));
  }
  {
    LpRow norm{std::vector<Rational>(n + 1, Rational(0)), Relation::Eq, Rational(1)};
    for (std::size_t i = m.evidence().find_first(); i != Event::npos;
         i = m.evidence().find_next(i))
      norm.coeffs[i] = 1;
    rows.push_back(std::move(norm));
  }
  std::vector<Rational> objective(n + 1, Rational(0));
  for (std::size_t i = m.evidence().find_first(); i != Event::npos;
       i = m.evidence().find_next(i))
    objective[i] = coeffs[i];

  LpSolution sol = solve_lp(rows, objective, sense);
  if (sol.status != LpStatus::Optimal)
    throw Error("conditioned envelope LP must be feasible and bounded");
  return sol.value;
}

Rational lower(const PartialModel& m, const Sentence& psi) {
  return envelope(m, indicator(m.language(), models(m.language(), psi)), LpSense::Min);
}
Rational upper(const PartialModel& m, const Sentence& psi) {
  return envelope(m, indicator(m.language(), models(m.language(), psi)), LpSense::Max);
}
Rational lower(const ConditionedModel& m, const Sentence& psi) {
  return envelope(m, indicator(m.language(), models(m.language(), psi)), LpSense::Min);
}
Rational upper(const ConditionedModel& m, const Sentence& psi) {
  return envelope(m, indicator(m.language(), models(m.language(), psi)), LpSense::Max);
}

bool entails(const ConditionedModel& m, const LinearConstraint& c) {
  switch (c.rel) {
    case Relation::Ge: return envelope(m, c.coeffs, LpSense::Min) >= c.rhs;
    case Relation::Le: return envelope(m, c.coeffs, LpSense::Max) <= c.rhs;
    case Relation::Eq:
      return envelope(m, c.coeffs, LpSense::Min) == c.rhs &&
             envelope(m, c.coeffs, LpSense::Max) == c.rhs;
  }
  return false;
}

bool accepted(const PartialModel& m, const Sentence& phi) { return lower(m, phi) == 1; }
bool accepted(const ConditionedModel& m, const Sentence& phi) { return lower(m, phi) == 1; }

namespace {

template <typename Model>
BeliefSet top_by_atom_upper(const Model& m, const Event& candidates) {
  const Language& lang = m.language();
  Event atoms(lang.atom_count());
  std::vector<Rational> obj(lang.atom_count(), Rational(0));
  for (std::size_t i = candidates.find_first(); i != Event::npos; i = candidates.find_next(i)) {
    obj[i] = 1;
    if (envelope(m, obj, LpSense::Max) > 0) atoms.set(i);
    obj[i] = 0;
  }
  return BeliefSet::from_atoms(std::move(atoms));
}

}  // namespace

BeliefSet top(const PartialModel& m) {
  return top_by_atom_upper(m, m.language().full_event());
}

BeliefSet top(const ConditionedModel& m) {
  // Conditioned mass vanishes outside the evidence.
  return top_by_atom_upper(m, m.evidence());
}

namespace {

// Canonical integer form of a hyperplane (g, h): primitive, first nonzero
// positive.
std::pair<std::vector<Integer>, Integer> canonical_plane(const RatVec& g, const Rational& h) {
  Integer lcm = denominator(h);
  for (const auto& v : g) {
    Integer d = denominator(v);
    lcm = lcm / gcd(lcm, d) * d;
  }
  std::vector<Integer> gi(g.size());
  Integer gcd_all = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    gi[i] = numerator(g[i]) * (lcm / denominator(g[i]));
    gcd_all = gcd(gcd_all, gi[i]);
  }
  Integer hi = numerator(h) * (lcm / denominator(h));
  gcd_all = gcd(gcd_all, hi);
  if (gcd_all == 0) gcd_all = 1;
  int sign = 0;
  for (const auto& v : gi)
    if (v != 0) {
      sign = v > 0 ? 1 : -1;
      break;
    }
  if (sign == 0 && hi != 0) sign = hi > 0 ? 1 : -1;
  if (sign == 0) sign = 1;
  for (auto& v : gi) v = v * sign / gcd_all;
  hi = hi * sign / gcd_all;
  return {std::move(gi), std::move(hi)};
}

std::string render_linear(const Language& lang, const std::vector<Rational>& coeffs,
                          Relation rel, const Rational& rhs) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (coeffs[i] != 1) out += format_rational(coeffs[i]) + "*";
    out += "P(" + lang.atom_name(i) + ")";
  }
  if (out.empty()) out = "0";
  out += rel == Relation::Eq ? " = " : rel == Relation::Le ? " <= " : " >= ";
  out += format_rational(rhs);
  return out;
}

}  // namespace

ConstraintSet as_constraints(const ConditionedModel& m, std::size_t letter_cap) {
  const Language& lang = m.language();
  const std::size_t n = lang.atom_count();

  // Conditioned images of the base polytope's vertices; their convex hull is
  // exactly the conditioned set (conditioning is fractional-linear with a
  // common positive denominator on the kept vertices).
  std::vector<RatVec> points;
  for (const ProbFunction& v : oracle::vertices(m.base(), letter_cap)) {
    Rational pe = eval_event(v, m.evidence());
    if (pe == 0) continue;
    RatVec q(n, Rational(0));
    for (std::size_t i = m.evidence().find_first(); i != Event::npos;
         i = m.evidence().find_next(i))
      q[i] = v.mass(i) / pe;
    points.push_back(std::move(q));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.empty()) throw Error("conditioned model with no conditioned vertices");

  ConstraintSet out(lang);
  const RatVec& origin = points.front();

  // Independent direction basis of the affine hull.
  RatMat dirs;
  for (std::size_t j = 1; j < points.size(); ++j) {
    RatVec d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = points[j][i] - origin[i];
    dirs.push_back(std::move(d));
  }
  RatMat basis;
  {
    RatMat probe;
    for (auto& d : dirs) {
      probe.push_back(d);
      RatMat copy = probe;
      if (rref(copy).size() == probe.size())
        basis.push_back(d);
      else
        probe.pop_back();
    }
  }
  const std::size_t dim = basis.size();

  if (dim == 0) {
    Event cell(n);
    for (std::size_t i = 0; i < n; ++i) {
      cell.set(i);
      out.constraints.push_back(event_constraint(lang, cell, Relation::Eq, origin[i],
                                                 "P(" + lang.atom_name(i) + ") = " +
                                                     format_rational(origin[i])));
      cell.reset(i);
    }
    return out;
  }

  // Affine-hull equalities: one per nullspace direction of the spanning set.
  for (const RatVec& a : nullspace(basis)) {
    Rational rhs = 0;
    for (std::size_t i = 0; i < n; ++i) rhs += a[i] * origin[i];
    LinearConstraint c;
    c.coeffs = a;
    c.rel = Relation::Eq;
    c.rhs = rhs;
    c.source_text = render_linear(lang, c.coeffs, c.rel, c.rhs);
    out.constraints.push_back(std::move(c));
  }

  // Low-dimensional coordinates z with x = origin + B z.
  RatMat basis_cols(n, RatVec(dim));  // n x dim
  for (std::size_t l = 0; l < dim; ++l)
    for (std::size_t i = 0; i < n; ++i) basis_cols[i][l] = basis[l][i];
  RatMat zs;
  for (const auto& pt : points) {
    RatVec delta(n);
    for (std::size_t i = 0; i < n; ++i) delta[i] = pt[i] - origin[i];
    auto z = solve_full_column_rank(basis_cols, delta);
    if (!z) throw Error("hull point outside its own affine hull");
    zs.push_back(std::move(*z));
  }

  // Gram matrix for mapping z-space facet normals back to mass space.
  RatMat gram(dim, RatVec(dim));
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      Rational dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += basis[a][i] * basis[b][i];
      gram[a][b] = dot;
    }

  // Enumerate candidate facet hyperplanes through dim-subsets of the points.
  std::map<std::pair<std::vector<Integer>, Integer>, bool> seen;
  std::vector<std::size_t> combo(dim);
  for (std::size_t i = 0; i < dim; ++i) combo[i] = i;
  auto next_combo = [&]() -> bool {
    std::size_t i = dim;
    while (i-- > 0) {
      if (combo[i] + (dim - i) < zs.size()) {
        ++combo[i];
        for (std::size_t j = i + 1; j < dim; ++j) combo[j] = combo[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    RatMat span;
    for (std::size_t j = 1; j < dim; ++j) {
      RatVec row(dim);
      for (std::size_t l = 0; l < dim; ++l) row[l] = zs[combo[j]][l] - zs[combo[0]][l];
      span.push_back(std::move(row));
    }
    RatMat normals = span.empty() ? RatMat{RatVec(1, Rational(1))} : nullspace(span);
    if (normals.size() != 1) continue;  // subset does not span a hyperplane
    RatVec g = normals.front();
    Rational h = 0;
    for (std::size_t l = 0; l < dim; ++l) h += g[l] * zs[combo[0]][l];

    bool all_le = true, all_ge = true;
    for (const auto& z : zs) {
      Rational val = 0;
      for (std::size_t l = 0; l < dim; ++l) val += g[l] * z[l];
      if (val > h) all_le = false;
      if (val < h) all_ge = false;
      if (!all_le && !all_ge) break;
    }
    if (!all_le && !all_ge) continue;
    if (all_ge) {
      for (auto& v : g) v = -v;
      h = -h;
    }

    auto key = canonical_plane(g, h);
    if (!seen.emplace(std::move(key), true).second) continue;

    auto u = solve_square(gram, g);
    if (!u) throw Error("Gram matrix of an independent basis must be invertible");
    RatVec w(n, Rational(0));
    for (std::size_t l = 0; l < dim; ++l)
      for (std::size_t i = 0; i < n; ++i) w[i] += (*u)[l] * basis[l][i];
    Rational rhs = h;
    for (std::size_t i = 0; i < n; ++i) rhs += w[i] * origin[i];

    LinearConstraint c;
    c.coeffs = std::move(w);
    c.rel = Relation::Le;
    c.rhs = std::move(rhs);
    c.source_text = render_linear(lang, c.coeffs, c.rel, c.rhs);
    out.constraints.push_back(std::move(c));
  } while (next_combo());

  return out;
}

}  // namespace credal

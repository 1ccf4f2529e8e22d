#include "credal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "credal/errors.hpp"
#include "credal/linalg.hpp"

namespace credal::oracle {

namespace {

Integer choose(std::uint64_t n, std::uint64_t k) {
  Integer out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

void check_budget(const Language& lang, const GridSpec& g) {
  if (g.resolution < 1) throw PreconditionError("grid resolution must be >= 1");
  Integer size = choose(g.resolution + lang.atom_count() - 1, lang.atom_count() - 1);
  if (size > g.budget)
    throw CapError("grid enumeration size " + size.str() + " exceeds budget " +
                   std::to_string(g.budget));
}

// Constraints with integer coefficients against integer grid counts:
// sum_i A[i]*k[i] rel R  encodes  c.coeffs . (k/d) rel c.rhs.
struct IntConstraint {
  std::vector<Integer> coeffs;
  Relation rel;
  Integer rhs;
  std::vector<Integer> suffix_min, suffix_max;  // of coeffs, for pruning
};

IntConstraint integerize(const LinearConstraint& c, unsigned resolution) {
  Integer lcm = denominator(c.rhs);
  for (const auto& a : c.coeffs) {
    Integer d = denominator(a);
    lcm = lcm / gcd(lcm, d) * d;
  }
  IntConstraint out;
  out.rel = c.rel;
  out.rhs = numerator(c.rhs) * (lcm / denominator(c.rhs)) * resolution;
  out.coeffs.reserve(c.coeffs.size());
  for (const auto& a : c.coeffs)
    out.coeffs.push_back(numerator(a) * (lcm / denominator(a)));
  const std::size_t n = out.coeffs.size();
  out.suffix_min.assign(n + 1, Integer(0));
  out.suffix_max.assign(n + 1, Integer(0));
  for (std::size_t i = n; i-- > 0;) {
    out.suffix_min[i] = std::min(out.suffix_min[i + 1], out.coeffs[i]);
    out.suffix_max[i] = std::max(out.suffix_max[i + 1], out.coeffs[i]);
  }
  return out;
}

// Can any completion of the prefix still satisfy the constraint? `acc` is the
// coefficient sum over the chosen prefix, `left` the remaining grid mass.
bool prefix_viable(const IntConstraint& c, std::size_t level, const Integer& acc,
                   unsigned left) {
  Integer lo = acc + c.suffix_min[level] * left;
  Integer hi = acc + c.suffix_max[level] * left;
  switch (c.rel) {
    case Relation::Eq: return lo <= c.rhs && c.rhs <= hi;
    case Relation::Le: return lo <= c.rhs;
    case Relation::Ge: return hi >= c.rhs;
  }
  return false;
}

// Enumerates compositions of `resolution` into one count per atom, pruning
// on the integerized constraints; calls sink(counts) for satisfying leaves.
void enumerate_grid(const ConstraintSet& s, const GridSpec& g,
                    const std::function<void(const std::vector<unsigned>&)>& sink) {
  check_budget(s.lang, g);
  const std::size_t n = s.lang.atom_count();
  std::vector<IntConstraint> ics;
  ics.reserve(s.constraints.size());
  for (const auto& c : s.constraints) ics.push_back(integerize(c, g.resolution));

  std::vector<unsigned> counts(n, 0);
  std::vector<Integer> acc(ics.size(), Integer(0));

  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t level, unsigned left) {
    if (level + 1 == n) {
      counts[level] = left;
      for (std::size_t k = 0; k < ics.size(); ++k) {
        Integer total = acc[k] + ics[k].coeffs[level] * left;
        bool ok = ics[k].rel == Relation::Eq   ? total == ics[k].rhs
                  : ics[k].rel == Relation::Le ? total <= ics[k].rhs
                                               : total >= ics[k].rhs;
        if (!ok) return;
      }
      sink(counts);
      return;
    }
    for (unsigned take = 0; take <= left; ++take) {
      counts[level] = take;
      bool viable = true;
      for (std::size_t k = 0; k < ics.size() && viable; ++k)
        viable = prefix_viable(ics[k], level + 1, acc[k] + ics[k].coeffs[level] * take,
                               left - take);
      if (!viable) continue;
      for (std::size_t k = 0; k < ics.size(); ++k) acc[k] += ics[k].coeffs[level] * take;
      rec(level + 1, left - take);
      for (std::size_t k = 0; k < ics.size(); ++k) acc[k] -= ics[k].coeffs[level] * take;
    }
  };
  rec(0, g.resolution);
}

ProbFunction from_counts(const Language& lang, const std::vector<unsigned>& counts,
                         unsigned resolution) {
  std::vector<Rational> masses(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    masses[i] = Rational(counts[i], resolution);
  return ProbFunction::from_masses(lang, std::move(masses));
}

}  // namespace

std::vector<ProbFunction> grid_points(const ConstraintSet& s, const GridSpec& g) {
  std::vector<ProbFunction> out;
  enumerate_grid(s, g, [&](const std::vector<unsigned>& counts) {
    out.push_back(from_counts(s.lang, counts, g.resolution));
  });
  return out;
}

std::vector<ProbFunction> vertices(const ConstraintSet& s, std::size_t letter_cap) {
  if (s.lang.letter_count() > letter_cap)
    throw CapError("vertex enumeration capped at " + std::to_string(letter_cap) + " letters");
  const std::size_t n = s.lang.atom_count();

  // Standard slack form G y = h, y >= 0 with y = (masses, slacks).
  std::size_t num_ineq = 0;
  for (const auto& c : s.constraints)
    if (c.rel != Relation::Eq) ++num_ineq;
  const std::size_t width = n + num_ineq;

  RatMat g;
  g.push_back(RatVec(width + 1, Rational(0)));
  for (std::size_t j = 0; j < n; ++j) g[0][j] = 1;
  g[0][width] = 1;  // masses sum to one
  std::size_t slack = n;
  for (const auto& c : s.constraints) {
    RatVec row(width + 1, Rational(0));
    int sign = c.rel == Relation::Ge ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) row[j] = sign * c.coeffs[j];
    row[width] = sign * c.rhs;
    if (c.rel != Relation::Eq) row[slack++] = 1;
    g.push_back(std::move(row));
  }

  std::vector<std::size_t> pivots = rref(g);
  if (!pivots.empty() && pivots.back() == width) return {};  // 0 = nonzero: empty polytope
  const std::size_t rank = pivots.size();
  g.resize(rank);  // drop zero rows

  // All size-`rank` column subsets that form a nonsingular basic system.
  std::vector<ProbFunction> out;
  std::vector<std::size_t> combo(rank);
  for (std::size_t i = 0; i < rank; ++i) combo[i] = i;
  auto next_combo = [&]() -> bool {
    std::size_t i = rank;
    while (i-- > 0) {
      if (combo[i] + (rank - i) < width) {
        ++combo[i];
        for (std::size_t j = i + 1; j < rank; ++j) combo[j] = combo[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  if (rank == 0) {
    // No binding rows can happen only for an empty constraint system over a
    // zero-atom language, which Language::make rules out.
    return out;
  }
  do {
    RatMat basis(rank, RatVec(rank));
    RatVec rhs(rank);
    for (std::size_t i = 0; i < rank; ++i) {
      for (std::size_t j = 0; j < rank; ++j) basis[i][j] = g[i][combo[j]];
      rhs[i] = g[i][width];
    }
    auto sol = solve_square(std::move(basis), std::move(rhs));
    if (!sol) continue;
    bool nonneg = true;
    for (const auto& v : *sol)
      if (v < 0) {
        nonneg = false;
        break;
      }
    if (!nonneg) continue;
    std::vector<Rational> masses(n, Rational(0));
    for (std::size_t j = 0; j < rank; ++j)
      if (combo[j] < n) masses[combo[j]] = (*sol)[j];
    out.push_back(ProbFunction::from_masses(s.lang, std::move(masses)));
  } while (next_combo());

  std::sort(out.begin(), out.end(), [](const ProbFunction& a, const ProbFunction& b) {
    return a.masses() < b.masses();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::pair<ProbFunction, double> kl_grid_min(const ProbFunction& p, const ConstraintSet& s,
                                            const GridSpec& g) {
  if (!(p.language() == s.lang))
    throw PreconditionError("prior and constraint set over different languages");
  const std::size_t n = s.lang.atom_count();
  std::vector<double> log_prior(n);
  for (std::size_t i = 0; i < n; ++i) {
    double m = rational_to_double(p.mass(i));
    log_prior[i] = m > 0 ? std::log(m) : 0.0;
  }
  std::vector<double> log_k(g.resolution + 1, 0.0);
  for (unsigned k = 1; k <= g.resolution; ++k) log_k[k] = std::log(double(k));
  const double log_d = std::log(double(g.resolution));

  bool found = false;
  double best_obj = 0.0;
  std::vector<unsigned> best_counts;
  enumerate_grid(s, g, [&](const std::vector<unsigned>& counts) {
    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (counts[i] == 0) continue;
      if (p.mass(i) == 0) return;  // I(., p) infinite off the prior's support
      double q = double(counts[i]) / double(g.resolution);
      obj += q * (log_k[counts[i]] - log_d - log_prior[i]);
    }
    if (!found || obj < best_obj ||
        (obj == best_obj && counts < best_counts)) {
      found = true;
      best_obj = obj;
      best_counts = counts;
    }
  });
  if (!found) throw InfeasibleError("no grid point satisfies the constraint set");
  return {from_counts(s.lang, best_counts, g.resolution), best_obj};
}

}  // namespace credal::oracle

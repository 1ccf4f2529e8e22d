#include "credal/mce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "credal/errors.hpp"
#include "credal/oracle.hpp"

namespace credal {

namespace {

// Dense Gaussian elimination with partial pivoting; false when singular.
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double>& x) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[best][col])) best = r;
    if (std::fabs(a[best][col]) < 1e-300) return false;
    std::swap(a[best], a[col]);
    std::swap(b[best], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

struct DualProblem {
  std::vector<std::size_t> support;             // atoms allowed positive mass
  std::vector<std::vector<double>> rows;        // coefficients over `support`
  std::vector<double> rhs;
  std::vector<bool> is_inequality;              // true: a.q <= b, lambda >= 0
  std::vector<double> log_prior;                // over `support`
};

// q(lambda) over the support, plus log Z for the dual value.
void posterior(const DualProblem& d, const std::vector<double>& lambda,
               std::vector<double>& q, double& log_z) {
  const std::size_t k = d.support.size();
  q.assign(k, 0.0);
  double max_exp = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    double e = d.log_prior[i];
    for (std::size_t r = 0; r < d.rows.size(); ++r) e -= lambda[r] * d.rows[r][i];
    q[i] = e;
    max_exp = std::max(max_exp, e);
  }
  double z = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    q[i] = std::exp(q[i] - max_exp);
    z += q[i];
  }
  for (auto& v : q) v /= z;
  log_z = max_exp + std::log(z);
}

double dual_value(const DualProblem& d, const std::vector<double>& lambda) {
  std::vector<double> q;
  double log_z;
  posterior(d, lambda, q, log_z);
  double v = -log_z;
  for (std::size_t r = 0; r < d.rhs.size(); ++r) v -= lambda[r] * d.rhs[r];
  return v;
}

double residual_of(const DualProblem& d, const std::vector<double>& q) {
  double res = 0.0;
  for (std::size_t r = 0; r < d.rows.size(); ++r) {
    double v = -d.rhs[r];
    for (std::size_t i = 0; i < q.size(); ++i) v += d.rows[r][i] * q[i];
    res = std::max(res, d.is_inequality[r] ? std::max(0.0, v) : std::fabs(v));
  }
  return res;
}

double objective_of(const DualProblem& d, const std::vector<double>& q) {
  double obj = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q[i] > 0) obj += q[i] * (std::log(q[i]) - d.log_prior[i]);
  return obj;
}

// Projected Newton ascent on the concave dual g(lambda) = -log Z - lambda.b,
// with a gradient fallback when the Newton system is singular or stalls.
MceSolution solve_dual(const DualProblem& d, std::size_t atom_count, const MceOptions& opts) {
  const std::size_t m = d.rows.size(), k = d.support.size();
  std::vector<double> lambda(m, 0.0), q;
  double log_z;
  posterior(d, lambda, q, log_z);

  MceSolution out;
  long iter = 0;
  int stalls = 0;
  double prev_obj = objective_of(d, q);
  double res = residual_of(d, q);
  double obj_change = std::numeric_limits<double>::infinity();

  while (m > 0 && iter < opts.max_iters &&
         (res > opts.residual_tol || obj_change > opts.objective_tol)) {
    ++iter;
    std::vector<double> grad(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      double v = -d.rhs[r];
      for (std::size_t i = 0; i < k; ++i) v += d.rows[r][i] * q[i];
      grad[r] = v;
    }
    // Active inequalities pinned at zero that want to go negative stay put.
    std::vector<bool> frozen(m, false);
    for (std::size_t r = 0; r < m; ++r)
      if (d.is_inequality[r] && lambda[r] <= 0.0 && grad[r] <= 0.0) frozen[r] = true;

    std::vector<std::size_t> free;
    for (std::size_t r = 0; r < m; ++r)
      if (!frozen[r]) free.push_back(r);

    std::vector<double> step(m, 0.0);
    bool have_newton = false;
    if (!free.empty()) {
      std::vector<double> mean(m, 0.0);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i < k; ++i) mean[r] += d.rows[r][i] * q[i];
      std::vector<std::vector<double>> cov(free.size(), std::vector<double>(free.size(), 0.0));
      for (std::size_t a = 0; a < free.size(); ++a)
        for (std::size_t b = a; b < free.size(); ++b) {
          double v = 0.0;
          for (std::size_t i = 0; i < k; ++i)
            v += q[i] * d.rows[free[a]][i] * d.rows[free[b]][i];
          v -= mean[free[a]] * mean[free[b]];
          cov[a][b] = cov[b][a] = v;
        }
      for (std::size_t a = 0; a < free.size(); ++a) cov[a][a] += 1e-12;
      std::vector<double> gfree(free.size()), delta;
      for (std::size_t a = 0; a < free.size(); ++a) gfree[a] = grad[free[a]];
      if (solve_dense(cov, gfree, delta)) {
        have_newton = true;
        for (std::size_t a = 0; a < free.size(); ++a) step[free[a]] = delta[a];
      }
    }
    if (!have_newton)
      for (std::size_t r = 0; r < m; ++r) step[r] = frozen[r] ? 0.0 : grad[r];

    double g0 = -log_z;
    for (std::size_t r = 0; r < m; ++r) g0 -= lambda[r] * d.rhs[r];
    double slope = 0.0;
    for (std::size_t r = 0; r < m; ++r) slope += grad[r] * step[r];

    std::vector<double> trial(m);
    bool moved = false;
    if (slope <= 1e-14 * (1.0 + std::fabs(g0))) {
      // Predicted gain is below double resolution, so the line search cannot
      // certify progress; the full Newton step still contracts the gradient.
      for (std::size_t r = 0; r < m; ++r) {
        trial[r] = lambda[r] + step[r];
        if (d.is_inequality[r] && trial[r] < 0.0) trial[r] = 0.0;
      }
      moved = true;
    } else {
      double t = 1.0;
      for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
        for (std::size_t r = 0; r < m; ++r) {
          trial[r] = lambda[r] + t * step[r];
          if (d.is_inequality[r] && trial[r] < 0.0) trial[r] = 0.0;
        }
        if (dual_value(d, trial) >= g0 + 1e-4 * t * slope) {
          moved = true;
          break;
        }
      }
    }
    if (!moved) break;  // dual ascent stalled; tolerances checked below
    lambda = trial;
    posterior(d, lambda, q, log_z);
    double obj = objective_of(d, q);
    obj_change = std::fabs(obj - prev_obj);
    prev_obj = obj;
    double next_res = residual_of(d, q);
    stalls = next_res > 0.9 * res ? stalls + 1 : 0;
    res = next_res;
    if (stalls >= 8) break;  // no residual progress in the noise regime
  }

  if (res > opts.residual_tol)
    throw Error("minimum cross entropy solver did not reach the residual tolerance");

  out.masses.assign(atom_count, 0.0);
  for (std::size_t i = 0; i < k; ++i) out.masses[d.support[i]] = q[i];
  out.objective_nats = objective_of(d, q);
  out.iterations = iter;
  out.residual = res;
  return out;
}

MceSolution mce_core(const std::vector<Rational>& prior_exact,
                     const std::vector<double>& prior_float, const ConstraintSet& s,
                     const MceOptions& opts) {
  const std::size_t n = s.lang.atom_count();
  if (!feasible(s)) throw InfeasibleError("cross-entropy update under infeasible constraints");

  // Restrict to the prior's support, then drop atoms the polytope forces to
  // zero; afterwards the feasible region meets the relative interior, so the
  // dual optimum is attained.
  std::vector<bool> in_support(n, false);
  for (std::size_t i = 0; i < n; ++i)
    in_support[i] = prior_exact.empty() ? prior_float[i] > 0.0 : prior_exact[i] > 0;

  ConstraintSet restricted = s;
  {
    Event outside(n);
    for (std::size_t i = 0; i < n; ++i)
      if (!in_support[i]) outside.set(i);
    if (outside.any())
      restricted.constraints.push_back(
          event_constraint(s.lang, outside, Relation::Eq, Rational(0)));
  }
  if (!feasible(restricted))
    throw NoFiniteObjectiveError(
        "every feasible point carries mass outside the prior's support");

  DualProblem d;
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_support[i]) continue;
    std::vector<Rational> obj(n, Rational(0));
    obj[i] = 1;
    if (optimize(restricted, obj, LpSense::Max)->value == 0) continue;  // forced zero
    d.support.push_back(i);
  }

  for (std::size_t i : d.support) {
    double p = prior_exact.empty() ? prior_float[i] : rational_to_double(prior_exact[i]);
    d.log_prior.push_back(std::log(p));
  }
  for (const auto& c : s.constraints) {
    std::vector<double> row(d.support.size());
    double sign = c.rel == Relation::Ge ? -1.0 : 1.0;
    for (std::size_t j = 0; j < d.support.size(); ++j)
      row[j] = sign * rational_to_double(c.coeffs[d.support[j]]);
    d.rows.push_back(std::move(row));
    d.rhs.push_back(sign * rational_to_double(c.rhs));
    d.is_inequality.push_back(c.rel != Relation::Eq);
  }
  return solve_dual(d, n, opts);
}

}  // namespace

MceSolution mce_update(const ProbFunction& p, const ConstraintSet& s, const MceOptions& opts) {
  if (!(p.language() == s.lang))
    throw PreconditionError("prior and constraints over different languages");
  return mce_core(p.masses(), {}, s, opts);
}

MceSolution mce_update(const std::vector<double>& prior_masses, const ConstraintSet& s,
                       const MceOptions& opts) {
  if (prior_masses.size() != s.lang.atom_count())
    throw PreconditionError("prior mass vector length does not match atom count");
  return mce_core({}, prior_masses, s, opts);
}

MceSolution maxent(const ConstraintSet& s, const MceOptions& opts) {
  return mce_update(uniform(s.lang), s, opts);
}

std::optional<ProbFunction> maxent_rationalized(const ConstraintSet& s, const MceOptions& opts) {
  MceSolution sol = maxent(s, opts);
  std::vector<Rational> masses(sol.masses.size());
  Rational sum = 0;
  std::size_t largest = 0;
  for (std::size_t i = 0; i < sol.masses.size(); ++i) {
    auto snapped = snap_to_rational(sol.masses[i], 1'000'000);
    if (!snapped) return std::nullopt;
    if (std::fabs(rational_to_double(*snapped) - sol.masses[i]) > 1e-7) return std::nullopt;
    masses[i] = *snapped;
    sum += masses[i];
    if (sol.masses[i] > sol.masses[largest]) largest = i;
  }
  masses[largest] += 1 - sum;  // absorb snapping drift
  if (masses[largest] < 0) return std::nullopt;
  ProbFunction p = ProbFunction::from_masses(s.lang, std::move(masses));
  if (!satisfies(p, s)) return std::nullopt;
  return p;
}

std::optional<ProbFunction> mce_preservation_witness(const PartialModel& pi,
                                                     const ConstraintSet& phi,
                                                     const ConstraintSet& psi,
                                                     const MceOptions& opts) {
  ConstraintSet joint = pi.base();
  for (const auto& c : phi.constraints) joint.constraints.push_back(c);
  for (const auto& c : psi.constraints) joint.constraints.push_back(c);
  if (!feasible(joint))
    throw InfeasibleError("model and update constraints are not jointly consistent");

  std::vector<ProbFunction> candidates;
  if (auto me = maxent_rationalized(pi.base(), opts)) candidates.push_back(std::move(*me));
  for (auto& v : oracle::vertices(pi.base())) candidates.push_back(std::move(v));

  for (const ProbFunction& p : candidates) {
    if (!satisfies(p, pi.base())) continue;
    MceSolution first, second;
    try {
      first = mce_update(p, phi, opts);
      second = mce_update(first.masses, psi, opts);
    } catch (const NoFiniteObjectiveError&) {
      continue;  // this member cannot take the updates; keep searching
    }
    for (const auto& c : phi.constraints) {
      double v = 0.0;
      for (std::size_t i = 0; i < second.masses.size(); ++i)
        v += rational_to_double(c.coeffs[i]) * second.masses[i];
      double b = rational_to_double(c.rhs);
      double violation = c.rel == Relation::Eq   ? std::fabs(v - b)
                         : c.rel == Relation::Le ? v - b
                                                 : b - v;
      if (violation > 1e-6) return p;
    }
  }
  return std::nullopt;
}

double entropy_bits(const std::vector<double>& masses) {
  double h = 0.0;
  for (double m : masses)
    if (m > 0) h -= m * std::log2(m);
  return h;
}

}  // namespace credal

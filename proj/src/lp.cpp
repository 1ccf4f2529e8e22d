#include "credal/lp.hpp"

#include <cstddef>

#include "credal/errors.hpp"

namespace credal {

namespace {

// Dense tableau: rows 0..m-1 hold the constraints in basic form, row m the
// reduced costs of the objective being minimized; column n_total the rhs.
class Tableau {
 public:
  Tableau(std::size_t m, std::size_t n_total)
      : m_(m), n_(n_total), cells_((m + 1) * (n_total + 1), Rational(0)), basis_(m, -1) {}

  Rational& at(std::size_t row, std::size_t col) { return cells_[row * (n_ + 1) + col]; }
  const Rational& at(std::size_t row, std::size_t col) const {
    return cells_[row * (n_ + 1) + col];
  }
  Rational& rhs(std::size_t row) { return at(row, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<int>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / at(r, c);
    for (std::size_t j = 0; j <= n_; ++j) at(r, j) *= inv;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      Rational factor = at(i, c);
      if (factor == 0) continue;
      for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= factor * at(r, j);
    }
    basis_[r] = static_cast<int>(c);
  }

  // Bland's rule: entering = lowest-index column with negative reduced cost,
  // leaving = ratio-test row with the lowest basic variable index on ties.
  // Returns Optimal or Unbounded. `eligible[c]` gates the entering columns.
  LpStatus run(const std::vector<bool>& eligible) {
    for (;;) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (eligible[j] && at(m_, j) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == n_) return LpStatus::Optimal;
      std::size_t leave = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (at(i, enter) <= 0) continue;
        if (leave == m_) {
          leave = i;
          continue;
        }
        Rational cur = rhs(i) / at(i, enter);
        Rational best = rhs(leave) / at(leave, enter);
        if (cur < best || (cur == best && basis_[i] < basis_[leave])) leave = i;
      }
      if (leave == m_) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }

 private:
  std::size_t m_, n_;
  std::vector<Rational> cells_;
  std::vector<int> basis_;
};

}  // namespace

LpSolution solve_lp(const std::vector<LpRow>& rows, const std::vector<Rational>& objective,
                    LpSense sense) {
  const std::size_t n = objective.size();
  const std::size_t m = rows.size();
  for (const auto& row : rows)
    if (row.coeffs.size() != n) throw PreconditionError("LP row width mismatch");

  // Column layout: structural vars, then one slack/surplus per inequality,
  // then one artificial per row that needs one.
  std::size_t num_slack = 0;
  for (const auto& row : rows)
    if (row.rel != Relation::Eq) ++num_slack;

  std::vector<LpRow> normalized = rows;
  for (auto& row : normalized) {
    if (row.rhs < 0) {
      for (auto& c : row.coeffs) c = -c;
      row.rhs = -row.rhs;
      if (row.rel == Relation::Le)
        row.rel = Relation::Ge;
      else if (row.rel == Relation::Ge)
        row.rel = Relation::Le;
    }
  }

  // Artificials: = rows and >= rows (their surplus starts at a negative
  // value); <= rows start feasible on their slack.
  std::size_t num_art = 0;
  for (const auto& row : normalized)
    if (row.rel != Relation::Le) ++num_art;

  const std::size_t n_total = n + num_slack + num_art;
  Tableau t(m, n_total);

  std::size_t slack_at = n, art_at = n + num_slack;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = normalized[i];
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = row.coeffs[j];
    t.rhs(i) = row.rhs;
    if (row.rel == Relation::Le) {
      t.at(i, slack_at) = 1;
      t.basis()[i] = static_cast<int>(slack_at);
      ++slack_at;
    } else {
      if (row.rel == Relation::Ge) {
        t.at(i, slack_at) = -1;
        ++slack_at;
      }
      t.at(i, art_at) = 1;
      t.basis()[i] = static_cast<int>(art_at);
      ++art_at;
    }
  }

  std::vector<bool> eligible(n_total, true);

  if (num_art > 0) {
    // Phase 1: minimize the sum of artificials. Cost 1 on each artificial,
    // then price out the rows they start basic in.
    for (std::size_t j = n + num_slack; j < n_total; ++j) t.at(m, j) = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis()[i] < static_cast<int>(n + num_slack)) continue;
      for (std::size_t j = 0; j <= n_total; ++j) t.at(m, j) -= t.at(i, j);
    }
    if (t.run(eligible) != LpStatus::Optimal)
      throw Error("phase-1 LP cannot be unbounded");  // objective bounded below by 0
    if (t.rhs(m) != 0) return {LpStatus::Infeasible, Rational(0), {}};

    // Drive remaining zero-valued artificials out of the basis; a row with
    // no real pivot column is redundant and can stay (its rhs is 0).
    for (std::size_t i = 0; i < m; ++i) {
      if (t.basis()[i] < static_cast<int>(n + num_slack)) continue;
      for (std::size_t j = 0; j < n + num_slack; ++j) {
        if (t.at(i, j) != 0) {
          t.pivot(i, j);
          break;
        }
      }
    }
    for (std::size_t j = n + num_slack; j < n_total; ++j) eligible[j] = false;
  }

  // Phase 2: install the real objective and re-price the basic columns.
  for (std::size_t j = 0; j <= n_total; ++j) t.at(m, j) = 0;
  for (std::size_t j = 0; j < n; ++j)
    t.at(m, j) = sense == LpSense::Min ? objective[j] : -objective[j];
  for (std::size_t i = 0; i < m; ++i) {
    int b = t.basis()[i];
    if (b < 0) continue;
    Rational cost = t.at(m, static_cast<std::size_t>(b));
    if (cost == 0) continue;
    for (std::size_t j = 0; j <= n_total; ++j)
      t.at(m, j) -= cost * t.at(i, j);
  }

  if (t.run(eligible) != LpStatus::Optimal) return {LpStatus::Unbounded, Rational(0), {}};

  std::vector<Rational> point(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    int b = t.basis()[i];
    if (b >= 0 && b < static_cast<int>(n)) point[static_cast<std::size_t>(b)] = t.rhs(i);
  }
  Rational value = -t.rhs(m);  // row m accumulates -z for the minimized objective
  if (sense == LpSense::Max) value = -value;
  return {LpStatus::Optimal, std::move(value), std::move(point)};
}

}  // namespace credal

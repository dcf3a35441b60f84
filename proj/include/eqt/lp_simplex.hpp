#pragma once

// Dense two-phase simplex over exact rationals.
//
// Minimizes c.x subject to rows a.x (<=, >=, =) b and x >= 0. Pivoting uses
// Bland's rule (smallest eligible entering index, smallest basic index on
// ratio ties), so it terminates without cycling; a pivot ceiling turns
// runaway inputs into an error instead of a hang.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eqt/errors.hpp"
#include "eqt/rational.hpp"

namespace eqt {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct LinearConstraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

struct LinearProgram {
  std::vector<Rational> objective;  // minimized
  std::vector<LinearConstraint> constraints;

  std::size_t variables() const { return objective.size(); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<Rational> x;
  Rational objective_value;
  std::size_t pivots = 0;
};

inline constexpr std::size_t kDefaultPivotLimit = 1'000'000;

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows + 1, std::vector<Rational>(cols + 1)), basis_(rows) {}

  Rational& at(std::size_t r, std::size_t c) { return a_[r][c]; }
  Rational& rhs(std::size_t r) { return a_[r][cols_]; }
  // Reduced-cost row lives below the constraint rows; its rhs cell holds -z.
  Rational& reduced(std::size_t c) { return a_[rows_][c]; }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    Rational inv = Rational(1) / a_[pr][pc];
    for (auto& v : a_[pr]) {
      if (!v.is_zero()) v *= inv;
    }
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr || a_[r][pc].is_zero()) continue;
      Rational f = a_[r][pc];
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (!a_[pr][c].is_zero()) a_[r][c] -= f * a_[pr][c];
      }
    }
    basis_[pr] = pc;
  }

  void set_costs(const std::vector<Rational>& costs) {
    for (std::size_t c = 0; c <= cols_; ++c) reduced(c) = c < cols_ ? costs[c] : Rational(0);
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& cb = costs[basis_[r]];
      if (cb.is_zero()) continue;
      for (std::size_t c = 0; c <= cols_; ++c) {
        if (!a_[r][c].is_zero()) a_[rows_][c] -= cb * a_[r][c];
      }
    }
  }

  // Returns false when unbounded.
  bool optimize(const std::vector<bool>& may_enter, std::size_t& pivots, std::size_t limit) {
    while (true) {
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (may_enter[c] && reduced(c).sign() < 0) {
          enter = c;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = rows_;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (a_[r][enter].sign() <= 0) continue;
        Rational ratio = rhs(r) / a_[r][enter];
        if (leave == rows_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == rows_) return false;
      if (++pivots > limit) {
        throw InternalError("solve_lp: pivot limit " + std::to_string(limit) + " exceeded");
      }
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<Rational>> a_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline void validate_lp(const LinearProgram& lp) {
  if (lp.variables() == 0) throw InvalidInput("lp: objective has no variables");
  if (lp.constraints.empty()) throw InvalidInput("lp: at least one constraint is required");
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    if (lp.constraints[i].coefficients.size() != lp.variables()) {
      throw InvalidInput("lp: constraints[" + std::to_string(i) + "] has " +
                         std::to_string(lp.constraints[i].coefficients.size()) + " coefficients, expected " +
                         std::to_string(lp.variables()));
    }
  }
}

inline LpSolution solve_lp(const LinearProgram& lp, std::size_t pivot_limit = kDefaultPivotLimit) {
  validate_lp(lp);
  const std::size_t n = lp.variables();
  const std::size_t rows = lp.constraints.size();

  // Normalize to nonnegative right-hand sides.
  std::vector<LinearConstraint> cons = lp.constraints;
  for (auto& c : cons) {
    if (c.rhs.sign() < 0) {
      for (auto& a : c.coefficients) a = -a;
      c.rhs = -c.rhs;
      if (c.relation == Relation::kLessEqual) {
        c.relation = Relation::kGreaterEqual;
      } else if (c.relation == Relation::kGreaterEqual) {
        c.relation = Relation::kLessEqual;
      }
    }
  }

  std::size_t slacks = 0;
  std::size_t artificials = 0;
  for (const auto& c : cons) {
    if (c.relation != Relation::kEqual) ++slacks;
    if (c.relation != Relation::kLessEqual) ++artificials;
  }
  const std::size_t first_art = n + slacks;
  const std::size_t cols = first_art + artificials;

  detail::Tableau t(rows, cols);
  std::size_t next_slack = n;
  std::size_t next_art = first_art;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& c = cons[r];
    for (std::size_t j = 0; j < n; ++j) t.at(r, j) = c.coefficients[j];
    t.rhs(r) = c.rhs;
    switch (c.relation) {
      case Relation::kLessEqual:
        t.at(r, next_slack) = 1;
        t.basic(r) = next_slack++;
        break;
      case Relation::kGreaterEqual:
        t.at(r, next_slack++) = -1;
        t.at(r, next_art) = 1;
        t.basic(r) = next_art++;
        break;
      case Relation::kEqual:
        t.at(r, next_art) = 1;
        t.basic(r) = next_art++;
        break;
    }
  }

  LpSolution sol;
  std::vector<bool> may_enter(cols, true);

  if (artificials > 0) {
    std::vector<Rational> phase1(cols, Rational(0));
    for (std::size_t j = first_art; j < cols; ++j) phase1[j] = 1;
    t.set_costs(phase1);
    t.optimize(may_enter, sol.pivots, pivot_limit);  // bounded below by 0
    if (t.reduced(cols).sign() != 0) {               // -z != 0: artificials cannot vanish
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    // Drive zero-valued artificials out of the basis; drop redundant rows.
    for (std::size_t r = 0; r < t.rows();) {
      if (t.basic(r) < first_art) {
        ++r;
        continue;
      }
      std::size_t pc = first_art;
      for (std::size_t j = 0; j < first_art; ++j) {
        if (!t.at(r, j).is_zero()) {
          pc = j;
          break;
        }
      }
      if (pc == first_art) {
        t.drop_row(r);
      } else {
        t.pivot(r, pc);
        ++r;
      }
    }
    for (std::size_t j = first_art; j < cols; ++j) may_enter[j] = false;
  }

  std::vector<Rational> phase2(cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.objective[j];
  t.set_costs(phase2);
  if (!t.optimize(may_enter, sol.pivots, pivot_limit)) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  sol.status = LpStatus::kOptimal;
  sol.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (t.basic(r) < n) sol.x[t.basic(r)] = t.rhs(r);
  }
  for (std::size_t j = 0; j < n; ++j) sol.objective_value += lp.objective[j] * sol.x[j];
  return sol;
}

// Exact residual check of x against every constraint and x >= 0.
inline bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.variables()) return false;
  for (const auto& xi : x) {
    if (xi.sign() < 0) return false;
  }
  for (const auto& c : lp.constraints) {
    Rational lhs;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += c.coefficients[j] * x[j];
    switch (c.relation) {
      case Relation::kLessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::kGreaterEqual:
        if (lhs < c.rhs) return false;
        break;
      case Relation::kEqual:
        if (lhs != c.rhs) return false;
        break;
    }
  }
  return true;
}

}  // namespace eqt

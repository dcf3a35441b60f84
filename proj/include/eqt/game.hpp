#pragma once

// Game model for the equilibrium-transition problem: one row player with m
// strategies against k identical column players with n strategies each.
// Column play is represented by count profiles (how many column players use
// each strategy); since all column players share one payoff matrix this
// loses nothing.
//
// Indices are 0-based throughout the library. File formats use 1-based rows.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqt/errors.hpp"
#include "eqt/rational.hpp"
#include "eqt/value.hpp"

namespace eqt {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

struct PayoffMatrices {
  Matrix<Payoff> row;  // R: row player's payoff
  Matrix<Payoff> col;  // C: each column player's payoff

  std::size_t m() const { return row.rows(); }
  std::size_t n() const { return row.cols(); }

  bool all_finite() const {
    for (std::size_t i = 0; i < m(); ++i) {
      for (std::size_t q = 0; q < n(); ++q) {
        if (row(i, q).is_neg_inf() || col(i, q).is_neg_inf()) return false;
      }
    }
    return true;
  }

  friend bool operator==(const PayoffMatrices&, const PayoffMatrices&) = default;
};

// Throws InvalidInput naming the offending field.
//
// Every row of C needs a finite entry, otherwise k * max_q C(i,q) is
// undefined. Every column of R needs a finite entry so that a pure column
// profile always leaves the row player some finite best response.
inline void validate_matrices(const PayoffMatrices& g) {
  if (g.m() == 0 || g.n() == 0) throw InvalidInput("R: payoff matrices must be at least 1x1");
  if (g.col.rows() != g.m() || g.col.cols() != g.n()) {
    throw InvalidInput("C: dimensions differ from R");
  }
  for (std::size_t i = 0; i < g.m(); ++i) {
    bool finite = false;
    for (std::size_t q = 0; q < g.n(); ++q) finite = finite || g.col(i, q).is_finite();
    if (!finite) throw InvalidInput("C[" + std::to_string(i) + "]: row has no finite entry");
  }
  for (std::size_t q = 0; q < g.n(); ++q) {
    bool finite = false;
    for (std::size_t i = 0; i < g.m(); ++i) finite = finite || g.row(i, q).is_finite();
    if (!finite) throw InvalidInput("R: column " + std::to_string(q) + " has no finite entry");
  }
}

// Number of column players on each column strategy.
class CountProfile {
 public:
  CountProfile() = default;
  explicit CountProfile(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {}
  CountProfile(std::initializer_list<std::int64_t> counts) : counts_(counts) {}

  std::size_t size() const { return counts_.size(); }
  std::int64_t operator[](std::size_t q) const { return counts_[q]; }
  std::int64_t& operator[](std::size_t q) { return counts_[q]; }
  const std::vector<std::int64_t>& counts() const { return counts_; }

  std::int64_t total() const { return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0}); }

  // All counts nonnegative, n entries, summing to k.
  bool valid_for(std::size_t n, std::int64_t k) const {
    if (counts_.size() != n) return false;
    for (auto c : counts_) {
      if (c < 0) return false;
    }
    return total() == k;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t q = 0; q < counts_.size(); ++q) {
      if (q) s += ",";
      s += std::to_string(counts_[q]);
    }
    return s + ")";
  }

  friend auto operator<=>(const CountProfile&, const CountProfile&) = default;

 private:
  std::vector<std::int64_t> counts_;
};

// One strategy profile: the row strategy and the column count profile.
struct State {
  std::size_t row = 0;
  CountProfile cols;

  std::string str() const { return "(r" + std::to_string(row + 1) + "," + cols.str() + ")"; }

  friend auto operator<=>(const State&, const State&) = default;
};

struct Instance {
  PayoffMatrices game;
  std::int64_t k = 1;
  State initial;
  State target;
};

struct TransformationPath {
  std::vector<State> states;
  std::vector<Cost> step_costs;
  Cost total;

  std::size_t edges() const { return states.empty() ? 0 : states.size() - 1; }
};

namespace detail {

inline void check_profile(const PayoffMatrices& g, const CountProfile& x, const char* what) {
  if (x.size() != g.n()) {
    throw InvalidInput(std::string(what) + ": profile has " + std::to_string(x.size()) +
                       " entries, expected " + std::to_string(g.n()));
  }
  for (std::size_t q = 0; q < x.size(); ++q) {
    if (x[q] < 0) throw InvalidInput(std::string(what) + ": negative count");
  }
}

inline void check_row(const PayoffMatrices& g, std::size_t r, const char* what) {
  if (r >= g.m()) {
    throw InvalidInput(std::string(what) + ": row " + std::to_string(r) + " out of range");
  }
}

}  // namespace detail

// Row player's total payoff against x when playing row i: sum_q x_q R(i,q).
inline Payoff row_payoff(const PayoffMatrices& g, const CountProfile& x, std::size_t i) {
  Payoff sum(0);
  for (std::size_t q = 0; q < g.n(); ++q) sum += scale(x[q], g.row(i, q));
  return sum;
}

// Total column payoff: sum_q x_q C(r,q).
inline Payoff column_payoff(const PayoffMatrices& g, std::size_t r, const CountProfile& x) {
  Payoff sum(0);
  for (std::size_t q = 0; q < g.n(); ++q) sum += scale(x[q], g.col(r, q));
  return sum;
}

inline Payoff best_row_payoff(const PayoffMatrices& g, const CountProfile& x) {
  Payoff best = Payoff::neg_inf();
  for (std::size_t i = 0; i < g.m(); ++i) best = std::max(best, row_payoff(g, x, i));
  return best;
}

inline Rational best_column_entry(const PayoffMatrices& g, std::size_t r) {
  Payoff best = Payoff::neg_inf();
  for (std::size_t q = 0; q < g.n(); ++q) best = std::max(best, g.col(r, q));
  if (best.is_neg_inf()) throw InvalidInput("C row without a finite entry");
  return best.value();
}

// Reward that makes r_next a best response of the row player to x.
inline Cost row_incentive_cost(const PayoffMatrices& g, const CountProfile& x, std::size_t r_next) {
  detail::check_profile(g, x, "row_incentive_cost");
  detail::check_row(g, r_next, "row_incentive_cost");
  return incentive_gap(best_row_payoff(g, x), row_payoff(g, x, r_next));
}

// Total reward that makes every column player of x_next best-responding to r_cur.
inline Cost column_incentive_cost(const PayoffMatrices& g, std::size_t r_cur,
                                  const CountProfile& x_next) {
  detail::check_profile(g, x_next, "column_incentive_cost");
  detail::check_row(g, r_cur, "column_incentive_cost");
  Payoff best(best_column_entry(g, r_cur) * Rational(x_next.total()));
  return incentive_gap(best, column_payoff(g, r_cur, x_next));
}

inline void check_state(const PayoffMatrices& g, std::int64_t k, const State& s, const char* what) {
  detail::check_row(g, s.row, what);
  if (!s.cols.valid_for(g.n(), k)) {
    throw InvalidInput(std::string(what) + ": counts " + s.cols.str() + " do not sum to k=" +
                       std::to_string(k) + " over " + std::to_string(g.n()) + " strategies");
  }
}

inline Cost edge_cost(const PayoffMatrices& g, std::int64_t k, const State& from, const State& to) {
  check_state(g, k, from, "edge_cost(from)");
  check_state(g, k, to, "edge_cost(to)");
  return row_incentive_cost(g, from.cols, to.row) + column_incentive_cost(g, from.row, to.cols);
}

inline bool is_equilibrium(const PayoffMatrices& g, std::int64_t k, const State& s) {
  check_state(g, k, s, "is_equilibrium");
  return row_incentive_cost(g, s.cols, s.row).is_zero() &&
         column_incentive_cost(g, s.row, s.cols).is_zero();
}

// Throws InvalidInput when the instance is malformed or an endpoint is not a
// pure Nash equilibrium.
inline void validate_instance(const Instance& inst) {
  validate_matrices(inst.game);
  if (inst.k < 1) throw InvalidInput("k: must be at least 1");
  check_state(inst.game, inst.k, inst.initial, "initial");
  check_state(inst.game, inst.k, inst.target, "target");
  if (!is_equilibrium(inst.game, inst.k, inst.initial)) {
    throw InvalidInput("initial: " + inst.initial.str() + " is not a pure Nash equilibrium");
  }
  if (!is_equilibrium(inst.game, inst.k, inst.target)) {
    throw InvalidInput("target: " + inst.target.str() + " is not a pure Nash equilibrium");
  }
}

inline Cost path_cost(const Instance& inst, std::span<const State> path) {
  if (path.empty()) throw InvalidInput("path_cost: empty path");
  Cost total;
  for (std::size_t t = 0; t + 1 < path.size(); ++t) {
    total += edge_cost(inst.game, inst.k, path[t], path[t + 1]);
  }
  return total;
}

inline TransformationPath make_transformation_path(const Instance& inst, std::vector<State> states) {
  if (states.empty()) throw InvalidInput("transformation path: no states");
  TransformationPath p;
  p.states = std::move(states);
  for (std::size_t t = 0; t + 1 < p.states.size(); ++t) {
    p.step_costs.push_back(edge_cost(inst.game, inst.k, p.states[t], p.states[t + 1]));
    p.total += p.step_costs.back();
  }
  return p;
}

struct PathReport {
  bool valid = false;
  std::vector<std::string> problems;
  std::vector<Cost> step_costs;
  Cost total;
};

// Checks a candidate transformation path without throwing; problems name the
// 1-based step at fault. Costs are only reported for well-formed paths.
inline PathReport validate_path(const Instance& inst, std::span<const State> path) {
  PathReport report;
  if (path.empty()) {
    report.problems.push_back("path is empty");
    return report;
  }
  for (std::size_t t = 0; t < path.size(); ++t) {
    const State& s = path[t];
    std::string step = "step " + std::to_string(t + 1);
    if (s.row >= inst.game.m()) {
      report.problems.push_back(step + ": row " + std::to_string(s.row + 1) + " out of range [1," +
                                std::to_string(inst.game.m()) + "]");
    }
    if (s.cols.size() != inst.game.n()) {
      report.problems.push_back(step + ": counts have " + std::to_string(s.cols.size()) +
                                " entries, expected " + std::to_string(inst.game.n()));
    } else if (!s.cols.valid_for(inst.game.n(), inst.k)) {
      report.problems.push_back(step + ": counts " + s.cols.str() + " must be nonnegative and sum to k=" +
                                std::to_string(inst.k));
    }
  }
  if (path.front() != inst.initial) {
    report.problems.push_back("endpoint: first state " + path.front().str() +
                              " differs from initial " + inst.initial.str());
  }
  if (path.back() != inst.target) {
    report.problems.push_back("endpoint: last state " + path.back().str() + " differs from target " +
                              inst.target.str());
  }
  bool well_formed = std::none_of(report.problems.begin(), report.problems.end(),
                                  [](const std::string& p) { return p.starts_with("step"); });
  if (well_formed) {
    for (std::size_t t = 0; t + 1 < path.size(); ++t) {
      report.step_costs.push_back(edge_cost(inst.game, inst.k, path[t], path[t + 1]));
      report.total += report.step_costs.back();
    }
  }
  report.valid = report.problems.empty();
  return report;
}

// Histogram of per-player strategy choices (0-based strategy indices).
inline CountProfile counts_from_assignment(std::span<const std::size_t> assignment, std::size_t n) {
  if (assignment.empty()) throw InvalidInput("counts_from_assignment: empty assignment");
  std::vector<std::int64_t> counts(n, 0);
  for (std::size_t s : assignment) {
    if (s >= n) throw InvalidInput("counts_from_assignment: strategy " + std::to_string(s) + " out of range");
    ++counts[s];
  }
  return CountProfile(std::move(counts));
}

// Players assigned to strategies in ascending strategy order.
inline std::vector<std::size_t> assignment_from_counts(const CountProfile& x) {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < x.size(); ++q) {
    if (x[q] < 0) throw InvalidInput("assignment_from_counts: negative count");
    out.insert(out.end(), static_cast<std::size_t>(x[q]), q);
  }
  return out;
}

}  // namespace eqt

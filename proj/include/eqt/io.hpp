#pragma once

// JSON formats. Rows in files are 1-based; rationals are written as "p/q"
// strings and read from integers or strings; "-inf" marks a blocked payoff.
// Parse failures raise InvalidInput naming the offending field.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eqt/approx_solver.hpp"
#include "eqt/errors.hpp"
#include "eqt/exact_solver.hpp"
#include "eqt/gadgets.hpp"
#include "eqt/game.hpp"
#include "eqt/lp_simplex.hpp"
#include "eqt/single_peaked.hpp"
#include "json.hpp"

namespace eqt {

using Json = nlohmann::ordered_json;

// Failure to read or write a file (as opposed to malformed content).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace io_detail {

inline const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw InvalidInput(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InvalidInput(where + (where.empty() ? "" : ".") + key + ": missing");
  return *it;
}

inline std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

inline std::int64_t integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InvalidInput(where + ": expected an integer");
  return j.get<std::int64_t>();
}

inline Rational rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw InvalidInput(where + ": " + e.what());
    }
  }
  throw InvalidInput(where + ": expected an integer or a \"p/q\" string");
}

inline Payoff payoff(const Json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "-inf") return Payoff::neg_inf();
  return Payoff(rational(j, where));
}

inline const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InvalidInput(where + ": expected an array");
  return j;
}

inline Matrix<Payoff> payoff_matrix(const Json& j, std::size_t m, std::size_t n, const std::string& name) {
  array(j, name);
  if (j.size() != m) {
    throw InvalidInput(name + ": has " + std::to_string(j.size()) + " rows, expected m=" + std::to_string(m));
  }
  Matrix<Payoff> out(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    std::string row = name + "[" + std::to_string(i) + "]";
    array(j[i], row);
    if (j[i].size() != n) {
      throw InvalidInput(row + ": has " + std::to_string(j[i].size()) + " entries, expected n=" +
                         std::to_string(n));
    }
    for (std::size_t q = 0; q < n; ++q) out(i, q) = payoff(j[i][q], row + "[" + std::to_string(q) + "]");
  }
  return out;
}

}  // namespace io_detail

inline Json to_json(const Rational& r) { return r.str(); }
inline Json to_json(const Cost& c) { return c.str(); }
inline Json to_json(const Payoff& p) { return p.str(); }

inline Json to_json(const State& s) {
  return Json{{"row", s.row + 1}, {"counts", s.cols.counts()}};
}

inline State state_from_json(const Json& j, const std::string& where) {
  using namespace io_detail;
  std::int64_t row = integer(field(j, "row", where), join(where, "row"));
  if (row < 1) throw InvalidInput(join(where, "row") + ": rows are 1-based");
  const Json& counts = array(field(j, "counts", where), join(where, "counts"));
  std::vector<std::int64_t> c;
  for (std::size_t q = 0; q < counts.size(); ++q) {
    c.push_back(integer(counts[q], join(where, "counts") + "[" + std::to_string(q) + "]"));
  }
  return State{static_cast<std::size_t>(row - 1), CountProfile(std::move(c))};
}

inline Json matrix_to_json(const Matrix<Payoff>& mat) {
  Json out = Json::array();
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    Json row = Json::array();
    for (const auto& v : mat.row(i)) {
      if (v.is_finite() && v.value().is_integer() && v.value().is_small()) {
        row.push_back(v.value().to_int64());
      } else {
        row.push_back(v.str());
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

template <class T>
Json string_matrix(const Matrix<T>& mat) {
  Json out = Json::array();
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < mat.cols(); ++j) row.push_back(mat(i, j).str());
    out.push_back(std::move(row));
  }
  return out;
}

inline Json to_json(const Instance& inst) {
  return Json{{"m", inst.game.m()},
              {"n", inst.game.n()},
              {"k", inst.k},
              {"R", matrix_to_json(inst.game.row)},
              {"C", matrix_to_json(inst.game.col)},
              {"initial", to_json(inst.initial)},
              {"target", to_json(inst.target)}};
}

// Parses and validates; endpoints must be pure equilibria.
inline Instance instance_from_json(const Json& j) {
  using namespace io_detail;
  if (!j.is_object()) throw InvalidInput("instance: expected a JSON object");
  std::int64_t m = integer(field(j, "m", ""), "m");
  std::int64_t n = integer(field(j, "n", ""), "n");
  if (m < 1) throw InvalidInput("m: must be at least 1");
  if (n < 1) throw InvalidInput("n: must be at least 1");
  Instance inst;
  inst.k = integer(field(j, "k", ""), "k");
  inst.game.row = payoff_matrix(field(j, "R", ""), static_cast<std::size_t>(m), static_cast<std::size_t>(n), "R");
  inst.game.col = payoff_matrix(field(j, "C", ""), static_cast<std::size_t>(m), static_cast<std::size_t>(n), "C");
  inst.initial = state_from_json(field(j, "initial", ""), "initial");
  inst.target = state_from_json(field(j, "target", ""), "target");
  validate_instance(inst);
  return inst;
}

inline bool is_line_instance_json(const Json& j) { return j.is_object() && j.contains("locations"); }

inline Json to_json(const LineInstance& li) {
  Json locs = Json::array();
  for (const auto& l : li.locations) locs.push_back(l.str());
  return Json{{"locations", std::move(locs)},
              {"k", li.k},
              {"g", Json{{"type", "linear"}, {"slope", li.slope.str()}}},
              {"initial", to_json(li.initial)},
              {"target", to_json(li.target)}};
}

inline LineInstance line_instance_from_json(const Json& j) {
  using namespace io_detail;
  LineInstance li;
  const Json& locs = array(field(j, "locations", ""), "locations");
  for (std::size_t t = 0; t < locs.size(); ++t) {
    li.locations.push_back(rational(locs[t], "locations[" + std::to_string(t) + "]"));
  }
  li.k = integer(field(j, "k", ""), "k");
  const Json& g = field(j, "g", "");
  const Json& type = field(g, "type", "g");
  if (!type.is_string() || type.get<std::string>() != "linear") {
    throw InvalidInput("g.type: only \"linear\" is supported");
  }
  li.slope = rational(field(g, "slope", "g"), "g.slope");
  li.initial = state_from_json(field(j, "initial", ""), "initial");
  li.target = state_from_json(field(j, "target", ""), "target");
  validate_line_instance(li);
  return li;
}

inline Json path_to_json(std::span<const State> states) {
  Json out = Json::array();
  for (const auto& s : states) out.push_back(to_json(s));
  return out;
}

// Accepts a bare array of states or any object with a "path" array.
inline std::vector<State> path_from_json(const Json& j) {
  using namespace io_detail;
  const Json& arr = j.is_object() ? field(j, "path", "") : j;
  array(arr, "path");
  std::vector<State> out;
  for (std::size_t t = 0; t < arr.size(); ++t) out.push_back(state_from_json(arr[t], "path[" + std::to_string(t) + "]"));
  return out;
}

inline Json to_json(const AlternatingPath& p) {
  Json v = Json::array();
  for (const auto& x : p.vertices) {
    if (is_row(x)) {
      v.push_back(Json{{"row", std::get<RowVertex>(x).row + 1}});
    } else {
      v.push_back(Json{{"counts", std::get<CountProfile>(x).counts()}});
    }
  }
  Json costs = Json::array();
  for (const auto& c : p.edge_costs) costs.push_back(c.str());
  return Json{{"vertices", std::move(v)}, {"edge_costs", std::move(costs)}, {"cost", p.total.str()}};
}

inline Json to_json(const ExactSolution& s) {
  return Json{{"method", "exact"},
              {"cost", s.opt_cost.str()},
              {"path", path_to_json(s.path.states)},
              {"states_explored", s.states_explored}};
}

inline Json to_json(const ApproxSolution& s) {
  Json j{{"method", "approx"},
         {"cost", s.cost.str()},
         {"path", path_to_json(s.path.states)},
         {"states_explored", s.path.states.size()},
         {"bound", s.bound.str()},
         {"w_star_matrix", string_matrix(s.w_star)},
         {"w_rounded_matrix", string_matrix(s.w_rounded)},
         {"alternating_path", to_json(s.alternating)}};
  if (s.lower_bound) j["lower_bound"] = s.lower_bound->str();
  return j;
}

inline Json to_json(const SinglePeakedSolution& s) {
  return Json{{"method", "single-peaked"},
              {"cost", s.cost.str()},
              {"path", path_to_json(s.path.states)},
              {"states_explored", s.path.states.size()},
              {"weight_matrix", string_matrix(s.weights)},
              {"alternating_path", to_json(s.alternating)}};
}

inline LinearProgram lp_from_json(const Json& j) {
  using namespace io_detail;
  LinearProgram lp;
  const Json& obj = array(field(j, "objective", ""), "objective");
  for (std::size_t q = 0; q < obj.size(); ++q) lp.objective.push_back(rational(obj[q], "objective[" + std::to_string(q) + "]"));
  const Json& cons = array(field(j, "constraints", ""), "constraints");
  for (std::size_t i = 0; i < cons.size(); ++i) {
    std::string where = "constraints[" + std::to_string(i) + "]";
    LinearConstraint c;
    const Json& coef = array(field(cons[i], "coefficients", where), join(where, "coefficients"));
    for (std::size_t q = 0; q < coef.size(); ++q) {
      c.coefficients.push_back(rational(coef[q], join(where, "coefficients") + "[" + std::to_string(q) + "]"));
    }
    const Json& rel = field(cons[i], "relation", where);
    std::string r = rel.is_string() ? rel.get<std::string>() : "";
    if (r == "<=") {
      c.relation = Relation::kLessEqual;
    } else if (r == ">=") {
      c.relation = Relation::kGreaterEqual;
    } else if (r == "=" || r == "==") {
      c.relation = Relation::kEqual;
    } else {
      throw InvalidInput(join(where, "relation") + ": expected \"<=\", \">=\" or \"=\"");
    }
    c.rhs = rational(field(cons[i], "rhs", where), join(where, "rhs"));
    lp.constraints.push_back(std::move(c));
  }
  validate_lp(lp);
  return lp;
}

inline Json to_json(const LpSolution& s) {
  Json j{{"status", to_string(s.status)}, {"pivots", s.pivots}};
  if (s.status == LpStatus::kOptimal) {
    Json x = Json::array();
    for (const auto& v : s.x) x.push_back(v.str());
    j["x"] = std::move(x);
    j["objective"] = s.objective_value.str();
  }
  return j;
}

inline ExactCoverInput exact_cover_from_json(const Json& j) {
  using namespace io_detail;
  ExactCoverInput in;
  in.s = integer(field(j, "s", ""), "s");
  const Json& subs = array(field(j, "subsets", ""), "subsets");
  for (std::size_t q = 0; q < subs.size(); ++q) {
    std::string where = "subsets[" + std::to_string(q) + "]";
    array(subs[q], where);
    std::vector<std::int64_t> x;
    for (std::size_t t = 0; t < subs[q].size(); ++t) x.push_back(integer(subs[q][t], where + "[" + std::to_string(t) + "]"));
    in.subsets.push_back(std::move(x));
  }
  validate_exact_cover(in);
  return in;
}

inline KnapsackInput knapsack_from_json(const Json& j) {
  using namespace io_detail;
  KnapsackInput in;
  const Json& w = array(field(j, "weights", ""), "weights");
  for (std::size_t i = 0; i < w.size(); ++i) in.weights.push_back(integer(w[i], "weights[" + std::to_string(i) + "]"));
  const Json& v = array(field(j, "values", ""), "values");
  for (std::size_t i = 0; i < v.size(); ++i) in.values.push_back(integer(v[i], "values[" + std::to_string(i) + "]"));
  in.W = integer(field(j, "W", ""), "W");
  in.V = integer(field(j, "V", ""), "V");
  in.k = integer(field(j, "k", ""), "k");
  if (j.contains("epsilon")) in.epsilon = rational(j["epsilon"], "epsilon");
  validate_knapsack(in);
  return in;
}

}  // namespace eqt

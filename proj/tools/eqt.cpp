// eqt: command-line front end for the equilibrium-transition solvers.
//
// Exit codes: 0 success, 1 invalid input, 2 infeasible / over budget /
// threshold not met, 3 I/O failure.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "eqt/eqt.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitIo = 3;

std::uint64_t default_budget() {
  if (const char* env = std::getenv("EQT_STATE_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw eqt::InvalidInput("EQT_STATE_BUDGET: not an unsigned integer");
    }
  }
  return eqt::kDefaultStateBudget;
}

using Problem = std::variant<eqt::Instance, eqt::LineInstance>;

Problem load_problem(const std::string& path) {
  eqt::Json j = eqt::read_json_file(path);
  if (eqt::is_line_instance_json(j)) return eqt::line_instance_from_json(j);
  return eqt::instance_from_json(j);
}

eqt::Instance general_form(const Problem& p) {
  if (const auto* li = std::get_if<eqt::LineInstance>(&p)) {
    eqt::Instance inst = eqt::materialize_matrices(*li);
    eqt::validate_instance(inst);
    return inst;
  }
  return std::get<eqt::Instance>(p);
}

void emit(const std::string& output, const eqt::Json& j) {
  if (output.empty() || output == "-") {
    std::cout << eqt::dump(j);
  } else {
    eqt::write_text_file(output, eqt::dump(j));
  }
}

struct SolveResult {
  eqt::Json json;
  eqt::Cost cost;
  std::size_t edges = 0;
};

SolveResult solve(const Problem& problem, const std::string& method, std::uint64_t budget, bool diagnostics) {
  std::string chosen = method;
  if (chosen == "auto") {
    eqt::Instance inst = general_form(problem);
    bool fits = eqt::count_states(inst.game.m(), inst.game.n(), inst.k) <= budget;
    chosen = fits || !inst.game.all_finite() ? "exact" : "approx";
  }
  if (chosen == "single-peaked") {
    const auto* li = std::get_if<eqt::LineInstance>(&problem);
    if (!li) throw eqt::InvalidInput("--method single-peaked requires a line instance (\"locations\")");
    eqt::SinglePeakedSolution s = eqt::solve_single_peaked(*li);
    return {eqt::to_json(s), s.cost, s.path.edges()};
  }
  eqt::Instance inst = general_form(problem);
  if (chosen == "approx") {
    eqt::ApproxSolution s = eqt::solve_approx(inst, {diagnostics});
    return {eqt::to_json(s), s.cost, s.path.edges()};
  }
  eqt::ExactSolution s = eqt::solve_exact({inst, budget});
  return {eqt::to_json(s), s.opt_cost, s.path.edges()};
}

int run_solve(const std::string& input, const std::string& output, const std::string& method,
              std::uint64_t budget, bool diagnostics) {
  SolveResult r = solve(load_problem(input), method, budget, diagnostics);
  emit(output, r.json);
  std::ostream& log = output.empty() || output == "-" ? std::cerr : std::cout;
  log << "cost " << r.cost.str() << "\n";
  if (r.cost.is_inf()) {
    log << "target unreachable at finite cost\n";
    return kExitInfeasible;
  }
  log << "path_length " << r.edges << "\n";
  return kExitOk;
}

int run_verify(const std::string& input, const std::string& path_file, const std::optional<std::string>& threshold) {
  eqt::Instance inst = general_form(load_problem(input));
  std::vector<eqt::State> path = eqt::path_from_json(eqt::read_json_file(path_file));
  eqt::PathReport report = eqt::validate_path(inst, path);
  if (!report.valid) {
    for (const auto& p : report.problems) std::cout << "invalid: " << p << "\n";
    return kExitInvalid;
  }
  std::cout << "valid path with " << path.size() - 1 << " steps\n";
  for (std::size_t t = 0; t < report.step_costs.size(); ++t) {
    std::cout << "step " << t + 1 << " cost " << report.step_costs[t].str() << "\n";
  }
  std::cout << "total " << report.total.str() << "\n";
  if (report.total.is_inf()) return kExitInfeasible;
  if (threshold) {
    eqt::Rational t;
    try {
      t = eqt::Rational::parse(*threshold);
    } catch (const std::exception& e) {
      throw eqt::InvalidInput(std::string("--threshold: ") + e.what());
    }
    bool yes = report.total.value() <= t;
    std::cout << (yes ? "YES" : "NO") << ": total " << (yes ? "<= " : "> ") << t.str() << "\n";
    return yes ? kExitOk : kExitInfeasible;
  }
  return kExitOk;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct BenchRow {
  std::vector<std::string> cells;
  bool ok = true;
};

BenchRow bench_one(const fs::path& file, std::uint64_t budget) {
  auto start = std::chrono::steady_clock::now();
  std::string name = file.filename().string();
  std::string method, cost, approx_cost, gap, bound, sp_cost, states, status = "ok";
  bool ok = true;
  try {
    Problem problem = load_problem(file.string());
    eqt::Instance inst = general_form(problem);
    std::optional<eqt::Cost> exact;
    if (eqt::count_states(inst.game.m(), inst.game.n(), inst.k) <= budget) {
      eqt::ExactSolution s = eqt::solve_exact({inst, budget});
      exact = s.opt_cost;
      method = "exact";
      cost = s.opt_cost.str();
      states = std::to_string(s.states_explored);
    }
    if (inst.game.all_finite()) {
      eqt::ApproxSolution a = eqt::solve_approx(inst);
      approx_cost = a.cost.str();
      bound = a.bound.str();
      if (!exact) {
        method = "approx";
        cost = approx_cost;
        states = std::to_string(a.path.states.size());
      } else {
        eqt::Rational g = a.cost.value() - exact->value();
        gap = g.str();
        if (g > a.bound) {
          status = "gap-exceeds-bound";
          ok = false;
        }
      }
    }
    if (const auto* li = std::get_if<eqt::LineInstance>(&problem)) {
      eqt::SinglePeakedSolution sp = eqt::solve_single_peaked(*li);
      sp_cost = sp.cost.str();
      if (exact && sp.cost != *exact) {
        status = "single-peaked-mismatch";
        ok = false;
      }
    }
    if (method.empty()) {
      status = "skipped: over budget with -inf payoffs";
    }
  } catch (const std::exception& e) {
    status = std::string("error: ") + e.what();
    ok = false;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return {{name, method, cost, approx_cost, gap, bound, sp_cost, states, std::to_string(ms), status}, ok};
}

int run_bench(const std::string& corpus, const std::string& output, std::uint64_t budget, unsigned jobs) {
  if (!fs::is_directory(corpus)) throw eqt::IoError("not a directory: " + corpus);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(corpus)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

  std::vector<BenchRow> rows(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < files.size();) rows[i] = bench_one(files[i], budget);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(files.size(), 1))));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::ostringstream csv;
  csv << "instance,method,cost,approx_cost,gap,bound,single_peaked_cost,states_explored,wall_ms,status\n";
  bool all_ok = true;
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.cells.size(); ++c) csv << (c ? "," : "") << csv_field(r.cells[c]);
    csv << "\n";
    all_ok = all_ok && r.ok;
  }
  if (output.empty() || output == "-") {
    std::cout << csv.str();
  } else {
    eqt::write_text_file(output, csv.str());
  }
  return all_ok ? kExitOk : kExitInfeasible;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const eqt::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const eqt::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const eqt::GenerationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const eqt::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const eqt::UnsupportedInstance& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-reward transitions between pure Nash equilibria"};
  app.require_subcommand(1);

  std::string input, output, method = "auto", path_file, corpus;
  std::optional<std::string> threshold;
  std::optional<std::uint64_t> budget_flag;
  bool diagnostics = false;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::size_t m = 3, n = 3;
  std::int64_t k = 2, range = 5;
  std::vector<std::string> methods{"exact", "approx", "single-peaked", "auto"};

  auto add_io = [&](CLI::App* cmd, bool input_required) {
    auto* opt = cmd->add_option("-i,--input", input, "Input JSON file");
    if (input_required) opt->required();
    cmd->add_option("-o,--output", output, "Output file (default: stdout)");
  };

  auto* solve_cmd = app.add_subcommand("solve", "Compute a transformation path");
  add_io(solve_cmd, true);
  solve_cmd->add_option("--method", method, "exact | approx | single-peaked | auto")
      ->check(CLI::IsMember(methods));
  solve_cmd->add_option("--state-budget", budget_flag, "Largest state space the exact solver may build");
  solve_cmd->add_flag("--diagnostics", diagnostics, "Approx: also report the LP-weight lower bound");

  auto* verify_cmd = app.add_subcommand("verify", "Check a candidate path and its cost");
  add_io(verify_cmd, true);
  verify_cmd->add_option("--path", path_file, "Path JSON (array of states or a solution file)")->required();
  verify_cmd->add_option("--threshold", threshold, "Decision threshold T");

  auto* bench_cmd = app.add_subcommand("bench", "Solve every *.json in a directory and report CSV");
  bench_cmd->add_option("-d,--corpus,corpus", corpus, "Corpus directory")->required();
  bench_cmd->add_option("-o,--output", output, "CSV output (default: stdout)");
  bench_cmd->add_option("--method", method, "Accepted for symmetry; bench always runs every applicable solver")
      ->check(CLI::IsMember(methods));
  bench_cmd->add_option("--state-budget", budget_flag, "Largest state space the exact solver may build");
  bench_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* lp_cmd = app.add_subcommand("lp-solve", "Solve a linear program given as JSON");
  add_io(lp_cmd, true);

  auto* mat_cmd = app.add_subcommand("materialize", "Convert a line instance to a general instance");
  add_io(mat_cmd, true);

  auto* gen_cmd = app.add_subcommand("gen", "Generate instances");
  gen_cmd->require_subcommand(1);
  auto* gen_ec = gen_cmd->add_subcommand("exact-cover", "Gadget from an EXACT COVER input");
  add_io(gen_ec, true);
  auto* gen_kn = gen_cmd->add_subcommand("knapsack", "Gadget from an exact-k knapsack input");
  add_io(gen_kn, true);
  auto* gen_rand = gen_cmd->add_subcommand("random", "Random instance with equilibrium endpoints");
  gen_rand->add_option("-o,--output", output, "Output file (default: stdout)");
  gen_rand->add_option("--m", m, "Row strategies")->check(CLI::PositiveNumber);
  gen_rand->add_option("--n", n, "Column strategies")->check(CLI::PositiveNumber);
  gen_rand->add_option("--k", k, "Column players")->check(CLI::PositiveNumber);
  gen_rand->add_option("--seed", seed, "Random seed");
  gen_rand->add_option("--range", range, "Payoffs are integers in [-range, range]")->check(CLI::NonNegativeNumber);
  auto* gen_line = gen_cmd->add_subcommand("random-line", "Random line-location instance");
  gen_line->add_option("-o,--output", output, "Output file (default: stdout)");
  gen_line->add_option("--n", n, "Locations")->check(CLI::Range(2, 1 << 20));
  gen_line->add_option("--k", k, "Column players")->check(CLI::PositiveNumber);
  gen_line->add_option("--seed", seed, "Random seed");
  gen_line->add_option("--range", range, "Locations are integers in [-range, range]")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  return guarded([&]() -> int {
    std::uint64_t budget = budget_flag ? *budget_flag : default_budget();
    if (solve_cmd->parsed()) return run_solve(input, output, method, budget, diagnostics);
    if (verify_cmd->parsed()) return run_verify(input, path_file, threshold);
    if (bench_cmd->parsed()) return run_bench(corpus, output, budget, jobs);
    if (lp_cmd->parsed()) {
      eqt::LpSolution s = eqt::solve_lp(eqt::lp_from_json(eqt::read_json_file(input)));
      emit(output, eqt::to_json(s));
      return s.status == eqt::LpStatus::kOptimal ? kExitOk : kExitInfeasible;
    }
    if (mat_cmd->parsed()) {
      eqt::Json j = eqt::read_json_file(input);
      if (!eqt::is_line_instance_json(j)) throw eqt::InvalidInput("input is not a line instance (\"locations\")");
      emit(output, eqt::to_json(general_form(eqt::line_instance_from_json(j))));
      return kExitOk;
    }
    if (gen_ec->parsed()) {
      emit(output, eqt::to_json(eqt::gen_exact_cover(eqt::exact_cover_from_json(eqt::read_json_file(input)))));
      return kExitOk;
    }
    if (gen_kn->parsed()) {
      eqt::KnapsackGadget g = eqt::gen_knapsack(eqt::knapsack_from_json(eqt::read_json_file(input)));
      eqt::Json j = eqt::to_json(g.instance);
      j["threshold"] = g.threshold.str();
      j["epsilon"] = g.epsilon.str();
      emit(output, j);
      return kExitOk;
    }
    if (gen_rand->parsed()) {
      emit(output, eqt::to_json(eqt::gen_random(m, n, k, seed, range)));
      return kExitOk;
    }
    if (gen_line->parsed()) {
      emit(output, eqt::to_json(eqt::gen_random_single_peaked(n, k, seed, range)));
      return kExitOk;
    }
    return kExitInvalid;
  });
}

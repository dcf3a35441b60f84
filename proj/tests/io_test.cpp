#include <gtest/gtest.h>

#include "eqt/eqt.hpp"
#include "eqt/io.hpp"
#include "support/fixtures.hpp"

namespace {

using namespace eqt;
using fixtures::two_by_two;

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return "";
}

TEST(InstanceJson, RoundTrip) {
  Instance inst = two_by_two();
  inst.game.row(0, 1) = Payoff(Rational(-3, 7));
  Json j = to_json(inst);
  EXPECT_EQ(j["initial"]["row"], 1);
  EXPECT_EQ(j["R"][0][1], "-3/7");
  EXPECT_EQ(j["R"][1][1], 2);
  Instance back = instance_from_json(Json::parse(dump(j)));
  EXPECT_EQ(back.game.row, inst.game.row);
  EXPECT_EQ(back.game.col, inst.game.col);
  EXPECT_EQ(back.initial, inst.initial);
  EXPECT_EQ(back.target, inst.target);
  EXPECT_EQ(back.k, inst.k);
}

TEST(InstanceJson, NegativeInfinity) {
  KnapsackGadget g = gen_knapsack({{1}, {1}, 1, 1, 1, std::nullopt});
  Json j = to_json(g.instance);
  EXPECT_EQ(j["C"][0][3], "-inf");
  Instance back = instance_from_json(j);
  EXPECT_TRUE(back.game.col(0, 3).is_neg_inf());
}

TEST(InstanceJson, FieldPreciseErrors) {
  Json j = to_json(two_by_two());
  Json bad_entry = j;
  bad_entry["R"][1][0] = "x/y";
  EXPECT_EQ(error_of([&] { instance_from_json(bad_entry); }).rfind("R[1][0]:", 0), 0u);

  Json short_row = j;
  short_row["C"][0] = Json::array({1});
  EXPECT_EQ(error_of([&] { instance_from_json(short_row); }).rfind("C[0]:", 0), 0u);

  Json missing = j;
  missing.erase("k");
  EXPECT_EQ(error_of([&] { instance_from_json(missing); }), "k: missing");

  Json zero_row = j;
  zero_row["target"]["row"] = 0;
  EXPECT_EQ(error_of([&] { instance_from_json(zero_row); }).rfind("target.row:", 0), 0u);

  Json non_equilibrium = j;
  non_equilibrium["target"]["counts"] = Json::array({1, 1});
  EXPECT_EQ(error_of([&] { instance_from_json(non_equilibrium); }).rfind("target:", 0), 0u);
}

TEST(LineInstanceJson, RoundTrip) {
  LineInstance li = gen_random_single_peaked(3, 2, 4, 6);
  Json j = to_json(li);
  EXPECT_TRUE(is_line_instance_json(j));
  EXPECT_FALSE(is_line_instance_json(to_json(two_by_two())));
  LineInstance back = line_instance_from_json(j);
  EXPECT_EQ(back.locations, li.locations);
  EXPECT_EQ(back.slope, li.slope);
  EXPECT_EQ(back.initial, li.initial);
  EXPECT_EQ(back.target, li.target);

  Json other = j;
  other["g"]["type"] = "table";
  EXPECT_EQ(error_of([&] { line_instance_from_json(other); }).rfind("g.type:", 0), 0u);
}

TEST(PathJson, RoundTripAndWrapping) {
  std::vector<State> states{{0, {2, 0}}, {0, {1, 1}}, {1, {1, 1}}, {1, {0, 2}}};
  Json arr = path_to_json(states);
  EXPECT_EQ(path_from_json(arr), states);
  Json sol = to_json(solve_exact({two_by_two()}));
  EXPECT_EQ(path_from_json(sol), states);
  EXPECT_EQ(sol["cost"], "2");
  EXPECT_EQ(error_of([&] { path_from_json(Json::parse(R"([{"row":1}])")); }), "path[0].counts: missing");
}

TEST(SolutionJson, ApproxFields) {
  Json j = to_json(solve_approx(two_by_two(), {true}));
  EXPECT_EQ(j["method"], "approx");
  EXPECT_EQ(j["cost"], "4");
  EXPECT_EQ(j["bound"], "32");
  EXPECT_EQ(j["lower_bound"], "4/3");
  EXPECT_EQ(j["w_star_matrix"][0][1], "2/3");
  EXPECT_EQ(j["w_rounded_matrix"][0][1], "2");
  EXPECT_EQ(j["alternating_path"]["cost"], "2");
  EXPECT_FALSE(to_json(solve_approx(two_by_two())).contains("lower_bound"));
}

TEST(LpJson, ParseAndSolve) {
  Json j = Json::parse(R"({"objective":[-1,0],
    "constraints":[{"coefficients":[1,1],"relation":"=","rhs":2},
                   {"coefficients":[-1,2],"relation":">=","rhs":"0"}]})");
  LpSolution s = solve_lp(lp_from_json(j));
  Json out = to_json(s);
  EXPECT_EQ(out["status"], "optimal");
  EXPECT_EQ(out["objective"], "-4/3");
  EXPECT_EQ(out["x"], Json::array({"4/3", "2/3"}));

  Json bad = j;
  bad["constraints"][1]["relation"] = "<";
  EXPECT_EQ(error_of([&] { lp_from_json(bad); }).rfind("constraints[1].relation:", 0), 0u);
}

TEST(GadgetJson, Inputs) {
  ExactCoverInput ec = exact_cover_from_json(Json::parse(R"({"s":1,"subsets":[[1,2,3]]})"));
  EXPECT_EQ(ec.subsets.size(), 1u);
  KnapsackInput kn = knapsack_from_json(Json::parse(R"({"weights":[1],"values":[1],"W":1,"V":1,"k":1,"epsilon":"1/4"})"));
  EXPECT_EQ(*kn.epsilon, Rational(1, 4));
  EXPECT_THROW(knapsack_from_json(Json::parse(R"({"weights":[1],"values":[1],"W":1,"V":1,"k":1,"epsilon":"2"})")),
               InvalidInput);
}

TEST(Files, ReadErrors) {
  EXPECT_THROW(read_json_file("/nonexistent/eqt/file.json"), IoError);
}

}  // namespace

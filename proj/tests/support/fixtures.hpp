#pragma once

#include <initializer_list>
#include <vector>

#include "eqt/game.hpp"

namespace fixtures {

inline eqt::Matrix<eqt::Payoff> matrix(std::initializer_list<std::initializer_list<eqt::Payoff>> rows) {
  std::size_t m = rows.size();
  std::size_t n = rows.begin()->size();
  eqt::Matrix<eqt::Payoff> out(m, n);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t q = 0;
    for (const auto& v : r) out(i, q++) = v;
    ++i;
  }
  return out;
}

// R = [[1,0],[0,2]], C = [[1,0],[0,1]], k = 2, (r1,(2,0)) -> (r2,(0,2)).
inline eqt::Instance two_by_two(std::int64_t k = 2) {
  eqt::Instance inst;
  inst.game.row = matrix({{1, 0}, {0, 2}});
  inst.game.col = matrix({{1, 0}, {0, 1}});
  inst.k = k;
  inst.initial = {0, {k, 0}};
  inst.target = {1, {0, k}};
  return inst;
}

}  // namespace fixtures

#pragma once

// Umbrella header for the equilibrium-transition solver library.

#include "eqt/approx_solver.hpp"
#include "eqt/errors.hpp"
#include "eqt/exact_solver.hpp"
#include "eqt/gadgets.hpp"
#include "eqt/game.hpp"
#include "eqt/io.hpp"
#include "eqt/lp_simplex.hpp"
#include "eqt/rational.hpp"
#include "eqt/single_peaked.hpp"
#include "eqt/value.hpp"

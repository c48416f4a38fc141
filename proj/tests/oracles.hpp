// Test-only oracles, independent of the implementation paths they check.
#ifndef IRG_TEST_ORACLES_HPP
#define IRG_TEST_ORACLES_HPP

#include <functional>
#include <random>
#include <vector>

#include "irg/game.hpp"
#include "irg/polynomial.hpp"
#include "irg/rational.hpp"
#include "irg/reductions.hpp"

namespace irg::test {

// Central finite differences of p at a flat point (double arithmetic).
std::vector<double> fd_gradient(const UtilityPolynomial& p, const std::vector<double>& x,
                                double h = 1e-6);

// Root of a continuous function by bisection; f(lo) and f(hi) must differ in
// sign.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   int iters = 200);

// Exhaustive satisfiability check (up to ~24 variables).
bool brute_force_sat(const Cnf3& cnf);
// Max number of simultaneously satisfiable clauses over all assignments.
int max_satisfiable_clauses(const Cnf3& cnf);

// All pure strategies of a game (odometer order).
std::vector<Strategy> enumerate_pure(const GameTree& tree);
// Max expected utility over pure strategies.
Rational max_pure_value(const GameTree& tree);

// Independent eps-Nash test for polytensor games: recomputes player values by
// direct enumeration of pure opponent profiles per subset.
bool brute_force_eps_nash(const PolytensorGame& pt,
                          const std::vector<std::vector<Rational>>& profile,
                          const Rational& eps);

struct RandomGameOptions {
  int max_decision_nodes = 6;
  int max_actions = 3;
  int max_depth = 4;
  bool allow_absentmindedness = true;
  bool allow_chance = true;
};

GameTree random_game(std::mt19937_64& rng, const RandomGameOptions& opts);

// Random exact strategy; `interior` forces every entry positive.
Strategy random_strategy(std::mt19937_64& rng, const GameTree& tree, bool interior = false);

// Random sparse polynomial over the given shape; every block occurs in the
// support (as required by the game constructions).
UtilityPolynomial random_polynomial(std::mt19937_64& rng, const std::vector<int>& sizes,
                                    int max_degree, int terms);

// Deterministic uniform integer in [0, n).
int rng_below(std::mt19937_64& rng, int n);

}  // namespace irg::test

#endif  // IRG_TEST_ORACLES_HPP

#ifndef IRG_REDUCTIONS_HPP
#define IRG_REDUCTIONS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irg/game.hpp"
#include "irg/polynomial.hpp"
#include "irg/rational.hpp"

namespace irg {

// 3CNF formula, DIMACS-style signed 1-based literals.
struct Cnf3 {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  bool satisfied_by(const std::vector<bool>& assignment) const;
};

// Family (G_s) of two-player simultaneous identical-payoff games with info
// partitions of the state set per player.
struct CommonPayoffFamily {
  struct PlayerClass {
    std::string label;
    std::vector<int> states;
    std::vector<std::string> actions;
  };
  std::vector<Rational> dist;  // over states
  std::vector<PlayerClass> p1_classes;
  std::vector<PlayerClass> p2_classes;
  // payoffs[s][a][b], dimensions follow the classes covering s
  std::vector<std::vector<std::vector<Rational>>> payoffs;

  int num_states() const { return static_cast<int>(dist.size()); }
  int class_of(int player, int state) const;  // player 0 or 1
  void validate() const;
};

// c-polytensor identical-interest game: one payoff table per c-subset of
// players, every participant receives the table value.
struct PolytensorGame {
  int n = 0;
  int m = 0;
  int c = 5;
  std::vector<std::vector<int>> subsets;    // lex-sorted c-subsets of [0, n)
  std::vector<std::vector<Rational>> tables;  // m^c entries, row-major by subset order

  void validate(bool payoffs_in_unit_interval) const;
  int subset_index(const std::vector<int>& subset) const;
  const Rational& entry(int subset_idx, const std::vector<int>& actions) const;
  // Expected identical-interest utility of player `i` under `profile`.
  Rational player_value(const std::vector<std::vector<Rational>>& profile, int i) const;
  Rational player_value_deviated(const std::vector<std::vector<Rational>>& profile, int i,
                                 int action) const;
};

struct NashCheck {
  bool pass = false;
  Rational worst_violation;  // max over (i, a) of V_i(deviate to a) - V_i(profile)
};
NashCheck check_eps_nash(const PolytensorGame& pt,
                         const std::vector<std::vector<Rational>>& profile,
                         const Rational& eps);

// Generated instance plus everything needed to invert a solution.
struct ReductionOutput {
  std::string reduction;  // sat3 | common-payoff | kkt-cube | polytensor | polytensor-1is
  GameTree game;
  Rational precision_out;  // delta for the generated instance (0 for target-style)
  std::vector<std::pair<std::string, Rational>> params;
  std::vector<std::string> notes;  // clause padding records and similar
  std::vector<int> var_map;        // kkt-cube: original variable per game block

  // Exactly one source is set, matching `reduction`.
  std::optional<Cnf3> source_cnf;
  std::optional<CommonPayoffFamily> source_family;
  std::optional<PolytensorGame> source_polytensor;
  std::optional<UtilityPolynomial> source_poly;

  std::optional<Rational> param(const std::string& name) const;
};

// Prop. 1(2): uniform chance over clause subtrees, binary depth-3 each, one
// info set per variable; satisfiable iff ex-ante utility 1 is attainable.
// Clauses with repeated variables are rewritten with fresh variables into an
// equisatisfiable 3-distinct form (recorded in notes).
ReductionOutput sat3_to_game(const Cnf3& cnf);

// Prop. 1(3): chance root over states, player-1 classes at depth 1, player-2
// classes at depth 2, common payoffs at the leaves.
ReductionOutput common_payoff_to_game(const CommonPayoffFamily& family);

// First CLS hardness: p over [0,1]^l lifted to l blocks of size 2, variant-2
// game, delta = min(1/3, eps^2 / (3 L |N|^2)^2). p must be shaped as l blocks
// of size 1.
ReductionOutput kkt_cube_to_game(const UtilityPolynomial& p, const Rational& eps,
                                 long node_cap = 1000000);

// Second CLS hardness: uniform chance over 5-subsets, depth-6 game without
// absentmindedness, delta = eps / C(n-1, 4).
ReductionOutput polytensor_to_game(const PolytensorGame& pt, const Rational& eps,
                                   long node_cap = 1000000);

// Third CLS hardness: a single info set with action set {(i,j)}, depth 5, no
// chance nodes, payoffs M2 * eta(i_[5]) (+ table value when eta = 5).
ReductionOutput polytensor_to_single_infoset_game(const PolytensorGame& pt,
                                                  const Rational& eps,
                                                  long node_cap = 1000000);

struct RecoveredSolution {
  std::string kind;
  std::vector<std::string> lines;  // recovered object, one "key: value" per line
  bool validated = false;
  std::string validation_detail;
  // Typed views for tests.
  std::vector<bool> assignment;                     // sat3
  std::vector<Rational> cube_point;                 // kkt-cube
  std::vector<std::vector<Rational>> profile;       // family / polytensor forms
};

// Applies the stored recovery descriptor and validates the recovered object
// against the embedded source instance.
RecoveredSolution recover(const ReductionOutput& out, const Strategy& solution);

}  // namespace irg

#endif  // IRG_REDUCTIONS_HPP

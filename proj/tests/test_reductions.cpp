#include <doctest.h>

#include <random>

#include "irg/equilibrium.hpp"
#include "irg/errors.hpp"
#include "irg/reductions.hpp"
#include "irg/solvers.hpp"
#include "oracles.hpp"

using namespace irg;

namespace {

PolytensorGame make_polytensor(int n, int m) {
  PolytensorGame pt;
  pt.n = n;
  pt.m = m;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == pt.c) {
      pt.subsets.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  long entries = 1;
  for (int k = 0; k < pt.c; ++k) entries *= m;
  pt.tables.assign(pt.subsets.size(), std::vector<Rational>(entries, Rational(0)));
  return pt;
}

Cnf3 random_cnf(std::mt19937_64& rng, int vars, int clauses) {
  Cnf3 cnf;
  cnf.num_vars = vars;
  for (int c = 0; c < clauses; ++c) {
    std::vector<int> clause;
    for (int k = 0; k < 3; ++k) {
      int v = 1 + test::rng_below(rng, vars);
      clause.push_back(test::rng_below(rng, 2) ? v : -v);
    }
    cnf.clauses.push_back(clause);
  }
  return cnf;
}

}  // namespace

TEST_CASE("single clause: assignment (T,T,T) attains utility 1") {
  Cnf3 cnf;
  cnf.num_vars = 3;
  cnf.clauses = {{1, 2, 3}};
  ReductionOutput out = sat3_to_game(cnf);
  CHECK(out.param("target") == Rational(1));
  CHECK_FALSE(has_absentmindedness(out.game));
  Strategy all_true = pure_strategy(out.game, std::vector<int>(out.game.num_info_sets(), 0));
  CHECK(expected_utility(out.game, all_true) == Rational(1));
  for (int z : out.game.terminals()) CHECK(history(out.game, z).depth() == 4);
}

TEST_CASE("two opposing clauses still admit value 1") {
  Cnf3 cnf;
  cnf.num_vars = 3;
  cnf.clauses = {{1, 2, 3}, {-1, -2, -3}};
  ReductionOutput out = sat3_to_game(cnf);
  CHECK(test::max_pure_value(out.game) == Rational(1));  // e.g. (T, T, F)
}

TEST_CASE("pure-strategy value equals the satisfied-clause fraction") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 15; ++trial) {
    // Clauses drawn with three distinct variables, so no padding changes counts.
    Cnf3 cnf;
    cnf.num_vars = 4;
    int clauses = 1 + test::rng_below(rng, 4);
    for (int c = 0; c < clauses; ++c) {
      int a = test::rng_below(rng, 4), b, d;
      do b = test::rng_below(rng, 4); while (b == a);
      do d = test::rng_below(rng, 4); while (d == a || d == b);
      std::vector<int> clause;
      for (int v : {a, b, d})
        clause.push_back(test::rng_below(rng, 2) ? (v + 1) : -(v + 1));
      cnf.clauses.push_back(clause);
    }
    ReductionOutput out = sat3_to_game(cnf);
    Rational expected(test::max_satisfiable_clauses(cnf), clauses);
    CHECK(test::max_pure_value(out.game) == expected);
  }
}

TEST_CASE("satisfiability iff game value 1, over random formulas with padding") {
  std::mt19937_64 rng(1337);
  for (int trial = 0; trial < 50; ++trial) {
    Cnf3 cnf = random_cnf(rng, 1 + test::rng_below(rng, 4), 1 + test::rng_below(rng, 3));
    ReductionOutput out = sat3_to_game(cnf);
    bool sat = test::brute_force_sat(cnf);
    bool value_one = test::max_pure_value(out.game) == Rational(1);
    CHECK(sat == value_one);
    CHECK_FALSE(has_absentmindedness(out.game));
  }
}

TEST_CASE("clause padding records and edge cases") {
  Cnf3 cnf;
  cnf.num_vars = 2;
  cnf.clauses = {{1, 1, 2}, {1, -1, 2}, {1, 1, 1}};
  ReductionOutput out = sat3_to_game(cnf);
  CHECK(out.notes.size() == 3);  // width-2 pad, tautology drop, width-1 pad
  CHECK(test::brute_force_sat(cnf) ==
        (test::max_pure_value(out.game) == Rational(1)));

  Cnf3 empty;
  empty.num_vars = 2;
  CHECK_THROWS_AS(sat3_to_game(empty), InputError);

  Cnf3 wide;
  wide.num_vars = 4;
  wide.clauses = {{1, 2, 3, 4}};
  CHECK_THROWS_AS(sat3_to_game(wide), InputError);

  Cnf3 tautologies;
  tautologies.num_vars = 1;
  tautologies.clauses = {{1, -1, 1}};
  ReductionOutput trivial = sat3_to_game(tautologies);
  Strategy none;
  CHECK(expected_utility(trivial.game, none) == Rational(1));
}

TEST_CASE("sat recovery maps utility-1 support to a satisfying assignment") {
  Cnf3 cnf;
  cnf.num_vars = 3;
  cnf.clauses = {{1, -2, 3}, {-1, 2, 3}, {-1, -2, -3}};
  REQUIRE(test::brute_force_sat(cnf));
  ReductionOutput out = sat3_to_game(cnf);
  // A mixed strategy of value 1 must randomize only over satisfying choices.
  // Use any pure optimum found by the lattice oracle at k = 1.
  GridResult grid = brute_force_grid(out.game, 1);
  REQUIRE(grid.value == Rational(1));
  RecoveredSolution rec = recover(out, grid.strategy);
  CHECK(rec.validated);
  CHECK(cnf.satisfied_by(rec.assignment));
}

TEST_CASE("common payoff: 2x2 single state with max 1") {
  CommonPayoffFamily fam;
  fam.dist = {Rational(1)};
  fam.p1_classes = {{"A", {0}, {"a", "b"}}};
  fam.p2_classes = {{"X", {0}, {"c", "d"}}};
  fam.payoffs = {{{Rational(1), Rational(0)}, {Rational(0), Rational(0)}}};
  ReductionOutput out = common_payoff_to_game(fam);
  CHECK(test::max_pure_value(out.game) == Rational(1));
  CHECK(brute_force_grid(out.game, 1).value == Rational(1));
}

TEST_CASE("common payoff: all-zero tensor gives value 0") {
  CommonPayoffFamily fam;
  fam.dist = {Rational(1, 2), Rational(1, 2)};
  fam.p1_classes = {{"A", {0, 1}, {"a", "b"}}};
  fam.p2_classes = {{"X", {0}, {"c", "d"}}, {"Y", {1}, {"c", "d"}}};
  fam.payoffs.assign(2, {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}});
  ReductionOutput out = common_payoff_to_game(fam);
  CHECK(brute_force_grid(out.game, 2).value == Rational(0));
}

TEST_CASE("common payoff: profiles map to strategies with equal payoff") {
  std::mt19937_64 rng(112233);
  for (int trial = 0; trial < 10; ++trial) {
    CommonPayoffFamily fam;
    fam.dist = {Rational(1, 3), Rational(2, 3)};
    fam.p1_classes = {{"A", {0, 1}, {"a", "b"}}};
    fam.p2_classes = {{"X", {0}, {"c", "d"}}, {"Y", {1}, {"c", "d"}}};
    for (int s = 0; s < 2; ++s) {
      std::vector<std::vector<Rational>> matrix;
      for (int a = 0; a < 2; ++a) {
        std::vector<Rational> row;
        for (int b = 0; b < 2; ++b) row.emplace_back(test::rng_below(rng, 5), 4);
        matrix.push_back(row);
      }
      fam.payoffs.push_back(matrix);
    }
    ReductionOutput out = common_payoff_to_game(fam);
    // Equality on sampled profiles, then at the lattice maximum.
    for (int draw = 0; draw < 20; ++draw) {
      Strategy mu = test::random_strategy(rng, out.game);
      RecoveredSolution rec = recover(out, mu);
      CHECK(rec.validated);  // family payoff equals the game value, exactly
    }
    GridResult grid = brute_force_grid(out.game, 4);
    Rational family_best(0);
    bool first = true;
    auto lattice = [&](auto&& self, std::vector<std::vector<Rational>>& profile,
                       int block) -> void {
      if (block == out.game.num_info_sets()) {
        Rational value(0);
        for (int s = 0; s < fam.num_states(); ++s)
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
              value += fam.dist[s] * profile[fam.class_of(0, s)][a] *
                       profile[1 + fam.class_of(1, s)][b] * fam.payoffs[s][a][b];
        if (first || value > family_best) family_best = value;
        first = false;
        return;
      }
      for (int num = 0; num <= 4; ++num) {
        profile[block] = {Rational(num, 4), Rational(4 - num, 4)};
        self(self, profile, block + 1);
      }
    };
    std::vector<std::vector<Rational>> profile(3);
    lattice(lattice, profile, 0);
    CHECK(grid.value == family_best);
  }
}

TEST_CASE("kkt-cube reduction on p(x) = x - x^2") {
  UtilityPolynomial p({1});
  p.add_term(Monomial::var(0), Rational(1));
  p.add_term(Monomial::var(0, 2), Rational(-1));
  Rational eps(1, 1000);
  ReductionOutput out = kkt_cube_to_game(p, eps);
  CHECK(out.reduction == "kkt-cube");
  CHECK(out.precision_out > Rational(0));
  CHECK(out.precision_out <= Rational(1, 3));

  // The emitted game realizes the lifted polynomial term for term.
  UtilityPolynomial lifted({2});
  lifted.add_term(Monomial::var(0), Rational(1));
  lifted.add_term(Monomial::var(0, 2), Rational(-1));
  CHECK(utility_polynomial(out.game) == lifted);

  // Solve the instance and recover an eps-KKT point of the cube problem.
  SolverConfig cfg;
  cfg.tol = 1e-12;
  cfg.max_iters = 20000;
  SolveResult sr = projected_gradient_kkt(out.game, cfg);
  REQUIRE(verify_cdt_approx(out.game, sr.strategy, out.precision_out).pass);
  RecoveredSolution rec = recover(out, sr.strategy);
  CHECK(rec.validated);
  REQUIRE(rec.cube_point.size() == 1);
  CHECK((rec.cube_point[0] - Rational(1, 2)).abs() <= Rational(1, 20));
}

TEST_CASE("kkt-cube reduction on a linear increasing polynomial hits the corner") {
  UtilityPolynomial p({1});
  p.add_term(Monomial::var(0), Rational(2));
  ReductionOutput out = kkt_cube_to_game(p, Rational(1, 1000));
  SolverConfig cfg;
  cfg.tol = 1e-12;
  SolveResult sr = projected_gradient_kkt(out.game, cfg);
  REQUIRE(verify_cdt_approx(out.game, sr.strategy, out.precision_out).pass);
  RecoveredSolution rec = recover(out, sr.strategy);
  CHECK(rec.validated);
  CHECK(rec.cube_point[0] == Rational(1));
}

TEST_CASE("kkt-cube reduction on a constant polynomial accepts anything") {
  UtilityPolynomial p({1, 1});  // two cube variables, none used
  p.add_term(Monomial::one(), Rational(3));
  ReductionOutput out = kkt_cube_to_game(p, Rational(1, 100));
  CHECK(out.game.num_info_sets() == 0);
  Strategy empty;
  RecoveredSolution rec = recover(out, empty);
  CHECK(rec.validated);
  CHECK(rec.cube_point.size() == 2);
}

TEST_CASE("polytensor reduction: n=5 gives delta = eps and constant reach 1") {
  PolytensorGame pt = make_polytensor(5, 2);
  pt.tables[0].assign(32, Rational(1, 2));
  Rational eps(1, 1000);
  ReductionOutput out = polytensor_to_game(pt, eps);
  CHECK(out.precision_out == eps);  // C(4,4) = 1
  CHECK(out.param("reach") == Rational(1));
  CHECK_FALSE(has_absentmindedness(out.game));
  auto cf = constant_frequencies(out.game);
  REQUIRE(cf.has_value());
  for (const auto& row : *cf) {
    CHECK(row.visit_freq == Rational(1));
    CHECK(row.reach_prob == Rational(1));
  }
}

TEST_CASE("polytensor reduction: n=6 reach probability is 5/6") {
  PolytensorGame pt = make_polytensor(6, 2);
  ReductionOutput out = polytensor_to_game(pt, Rational(1, 10));
  CHECK(out.precision_out == Rational(1, 10) / Rational(5));  // C(5,4) = 5
  auto cf = constant_frequencies(out.game);
  REQUIRE(cf.has_value());
  for (const auto& row : *cf) CHECK(row.reach_prob == Rational(5, 6));
}

TEST_CASE("polytensor recovery passes the brute-force eps-Nash oracle") {
  PolytensorGame pt = make_polytensor(5, 2);
  // Identical-interest table strictly increasing in the count of action 1.
  for (long e = 0; e < 32; ++e) {
    int ones = 0;
    for (int k = 0; k < 5; ++k) ones += (e >> k) & 1;
    pt.tables[0][31 - e] = Rational(0);  // placeholder, overwritten below
  }
  for (int j1 = 0; j1 < 2; ++j1)
    for (int j2 = 0; j2 < 2; ++j2)
      for (int j3 = 0; j3 < 2; ++j3)
        for (int j4 = 0; j4 < 2; ++j4)
          for (int j5 = 0; j5 < 2; ++j5) {
            int ones = j1 + j2 + j3 + j4 + j5;
            long idx = ((((j1 * 2 + j2) * 2 + j3) * 2 + j4) * 2) + j5;
            pt.tables[0][idx] = Rational(ones, 5);
          }
  Rational eps(1, 1000);
  ReductionOutput out = polytensor_to_game(pt, eps);
  SolverConfig cfg;
  cfg.tol = 1e-11;
  SolveResult sr = projected_gradient_kkt(out.game, cfg);
  REQUIRE(verify_cdt_approx(out.game, sr.strategy, out.precision_out).pass);
  RecoveredSolution rec = recover(out, sr.strategy);
  CHECK(rec.validated);
  CHECK(test::brute_force_eps_nash(pt, rec.profile, eps));
  // The strict optimum plays action 1 everywhere.
  for (int i = 0; i < 5; ++i) CHECK(rec.profile[i][1] == Rational(1));
}

TEST_CASE("single-infoset reduction parameters match the printed formulas") {
  PolytensorGame pt = make_polytensor(5, 1);
  pt.tables.assign(pt.subsets.size(), std::vector<Rational>{Rational(1, 2)});
  ReductionOutput out = polytensor_to_single_infoset_game(pt, Rational(1, 2));
  // Frozen exact values for n = 5, m = 1, eps = 1/2.
  CHECK(out.param("M1") == Rational::parse("781250000"));
  CHECK(out.param("delta1") ==
        Rational::parse("596046432495117333984374375000001/"
                        "7450580596923828125000000000000000000"));
  CHECK(out.param("M2") ==
        Rational::parse("4656613469123825073242333984374375000001/20"));
  CHECK(out.param("nodes") == Rational(3906));
  CHECK(out.game.num_nodes() == 3906);
  // delta2 re-applies the printed formula to the game's Lipschitz constant.
  Rational lips = *out.param("L");
  CHECK(lips == eu_lipschitz_bound(out.game, Rational(5)));
  Rational expected_delta2 =
      pow(*out.param("delta1") / (Rational(3) * lips * Rational(3906)), 2);
  CHECK(out.precision_out == expected_delta2);
  CHECK(out.param("delta2") == expected_delta2);
}

TEST_CASE("single-infoset game has constant visit frequency 5") {
  PolytensorGame pt = make_polytensor(5, 1);
  pt.tables.assign(pt.subsets.size(), std::vector<Rational>{Rational(1)});
  ReductionOutput out = polytensor_to_single_infoset_game(pt, Rational(1, 2));
  CHECK(out.game.num_info_sets() == 1);
  auto cf = constant_frequencies(out.game);
  REQUIRE(cf.has_value());
  CHECK((*cf)[0].visit_freq == Rational(5));
  std::mt19937_64 rng(8);
  for (int draw = 0; draw < 5; ++draw) {
    Strategy mu = test::random_strategy(rng, out.game);
    CHECK(info_set_stats(out.game, mu, 0).visit_freq == Rational(5));
  }
}

TEST_CASE("single-infoset recovery normalizes blocks per player") {
  PolytensorGame pt = make_polytensor(5, 2);
  pt.tables[0].assign(32, Rational(1, 4));
  ReductionOutput out = polytensor_to_single_infoset_game(pt, Rational(1, 2));
  Strategy mu;
  std::vector<Rational> block(10, Rational(0));
  // Weights 1..10 normalized.
  Rational total(55);
  for (int k = 0; k < 10; ++k) block[k] = Rational(k + 1) / total;
  mu.blocks = {block};
  RecoveredSolution rec = recover(out, mu);
  REQUIRE(rec.profile.size() == 5);
  for (int i = 0; i < 5; ++i) {
    Rational sum = rec.profile[i][0] + rec.profile[i][1];
    CHECK(sum == Rational(1));
  }
  // pi_ij = mu_ij / p_i
  CHECK(rec.profile[0][0] == Rational(1, 3));
  CHECK(rec.profile[0][1] == Rational(2, 3));
  // Constant table: every profile is a 0-Nash equilibrium.
  CHECK(rec.validated);
}

TEST_CASE("polytensor input validation") {
  PolytensorGame pt = make_polytensor(5, 2);
  pt.tables[0][0] = Rational(2);  // outside [0,1]
  CHECK_THROWS_AS(polytensor_to_game(pt, Rational(1, 10)), InputError);
  PolytensorGame small = make_polytensor(5, 2);
  CHECK_THROWS_AS(polytensor_to_single_infoset_game(small, Rational(2)), InputError);
  CHECK_THROWS_AS(polytensor_to_game(small, Rational(0)), InputError);
}

TEST_CASE("eta counts distinct players through the single-infoset payoffs") {
  // With M2 known, terminal payoffs reveal eta: pick paths with known repeats.
  PolytensorGame pt = make_polytensor(5, 1);
  pt.tables.assign(pt.subsets.size(), std::vector<Rational>{Rational(0)});
  ReductionOutput out = polytensor_to_single_infoset_game(pt, Rational(1, 2));
  Rational m2 = *out.param("M2");
  // Path (p1, p1, p2, p3, p4): eta = 4. Walk the explicit tree: action k picks
  // player k (m = 1).
  int node = out.game.root();
  for (int step : {0, 0, 1, 2, 3}) node = out.game.node(node).children[step];
  CHECK(out.game.node(node).kind == NodeKind::kTerminal);
  CHECK(out.game.node(node).payoff == m2 * Rational(4));
  // Path with all five distinct players: eta = 5, table value 0 added.
  node = out.game.root();
  for (int step : {0, 1, 2, 3, 4}) node = out.game.node(node).children[step];
  CHECK(out.game.node(node).payoff == m2 * Rational(5));
}

#include <doctest.h>

#include <map>
#include <random>

#include "irg/beliefs.hpp"
#include "irg/errors.hpp"
#include "irg/polynomial.hpp"
#include "oracles.hpp"

using namespace irg;

namespace {

Strategy fig1(const Rational& l, const Rational& c, const Rational& r, const Rational& x,
              const Rational& y) {
  Strategy s;
  s.blocks = {{l, c, r}, {x, y}};
  return s;
}

const Strategy kHalfLR = fig1(Rational(1, 2), Rational(0), Rational(1, 2), Rational(1),
                              Rational(0));
const Strategy kCX = fig1(Rational(0), Rational(1), Rational(0), Rational(1), Rational(0));

Rational joint_probability(const BeliefTable& t, int node, int terminal) {
  for (const auto& [h, z, p] : t.joint_beliefs)
    if (h == node && z == terminal) return p;
  return Rational(0);
}

void check_table_consistency(const BeliefTable& t) {
  Rational node_sum(0), hist_sum(0);
  for (const auto& [h, p] : t.node_beliefs) node_sum += p;
  for (const auto& [z, p] : t.history_beliefs) hist_sum += p;
  CHECK(node_sum == Rational(1));
  CHECK(hist_sum == Rational(1));
  // Joint beliefs marginalize to both tables.
  std::map<int, Rational> by_node, by_hist;
  for (const auto& [h, z, p] : t.joint_beliefs) {
    by_node.emplace(h, Rational(0)).first->second += p;
    by_hist.emplace(z, Rational(0)).first->second += p;
  }
  for (const auto& [h, p] : t.node_beliefs) {
    auto it = by_node.find(h);
    CHECK((it == by_node.end() ? Rational(0) : it->second) == p);
  }
  for (const auto& [z, p] : t.history_beliefs) {
    auto it = by_hist.find(z);
    CHECK((it == by_hist.end() ? Rational(0) : it->second) == p);
  }
}

}  // namespace

TEST_CASE("sleeping beauty: GT says 1/3, GDH says 1/2") {
  GameTree g = builtin_game("sleeping_beauty");
  Strategy s = uniform_strategy(g);
  BeliefTable gt = gt_beliefs(g, s, 0);
  bool found = false;
  for (const auto& [h, p] : gt.node_beliefs)
    if (h == 1) {  // the heads-awakening node
      CHECK(p == Rational(1, 3));
      found = true;
    }
  CHECK(found);
  BeliefTable gdh = gdh_beliefs(g, s, 0);
  found = false;
  for (const auto& [z, p] : gdh.history_beliefs)
    if (z == 2) {  // terminal of the heads path
      CHECK(p == Rational(1, 2));
      found = true;
    }
  CHECK(found);
}

TEST_CASE("figure1 joint beliefs at h0 on the (R,X) history") {
  GameTree g = builtin_game("figure1");
  const int terminal_rx = 11;  // h0 -R-> h4 -X-> payoff 0
  BeliefTable gt = gt_beliefs(g, kHalfLR, 0);
  CHECK(joint_probability(gt, 0, terminal_rx) == Rational(1, 3));
  BeliefTable gdh = gdh_beliefs(g, kHalfLR, 0);
  CHECK(joint_probability(gdh, 0, terminal_rx) == Rational(1, 2));
}

TEST_CASE("a deterministically reached singleton info set believes itself") {
  GameBuilder b("single");
  int i = b.info_set("I", {"a", "b"});
  int h = b.decision(-1, i);
  b.terminal(h, Rational(3));
  b.terminal(h, Rational(1));
  GameTree g = b.build();
  Strategy s = uniform_strategy(g);
  BeliefTable gt = gt_beliefs(g, s, 0);
  REQUIRE(gt.node_beliefs.size() == 1);
  CHECK(gt.node_beliefs[0].second == Rational(1));
  // Pure actions at a terminal-adjacent info set yield the leaf payoffs.
  CHECK(eu_cdt_gt_pure(g, s, 0, 0) == Rational(3));
  CHECK(eu_cdt_gt_pure(g, s, 0, 1) == Rational(1));
}

TEST_CASE("unreached info sets raise typed errors") {
  GameTree g = builtin_game("figure1");
  Strategy pure_l = fig1(Rational(1), Rational(0), Rational(0), Rational(1), Rational(0));
  CHECK_THROWS_AS(gt_beliefs(g, pure_l, 1), UnreachedInfoSetError);
  CHECK_THROWS_AS(gdh_beliefs(g, pure_l, 1), UnreachedInfoSetError);
  CHECK_THROWS_AS(eu_cdt_gt_pure(g, pure_l, 1, 0), UnreachedInfoSetError);
  CHECK_THROWS_AS(eu_edt_gdh(g, pure_l, 1, {Rational(1), Rational(0)}),
                  UnreachedInfoSetError);
}

TEST_CASE("(CDT,GT) expected utility of pure L in figure1") {
  GameTree g = builtin_game("figure1");
  CHECK(eu_cdt_gt_pure(g, kHalfLR, 0, 0) == Rational(5, 3));
}

TEST_CASE("malformed mixed actions are rejected") {
  GameTree g = builtin_game("figure1");
  CHECK_THROWS_AS(eu_cdt_gt(g, kHalfLR, 0, {Rational(1), Rational(0)}), DimensionError);
  CHECK_THROWS_AS(
      eu_cdt_gt(g, kHalfLR, 0, {Rational(1, 2), Rational(1, 2), Rational(1, 2)}),
      InputError);
  CHECK_THROWS_AS(
      eu_edt_gdh(g, kHalfLR, 0, {Rational(-1, 2), Rational(1), Rational(1, 2)}),
      InputError);
  CHECK_THROWS_AS(eu_cdt_gt_pure(g, kHalfLR, 0, 9), InputError);
}

TEST_CASE("(CDT,GT) utilities are affine in the mixed action") {
  GameTree g = builtin_game("figure1");
  auto eu = [&](const Rational& w) {
    std::vector<Rational> alpha = {w, Rational(0), Rational(1) - w};
    return eu_cdt_gt(g, kHalfLR, 0, alpha);
  };
  Rational at0 = eu(Rational(0));
  Rational at1 = eu(Rational(1));
  CHECK(eu(Rational(1, 2)) * Rational(2) == at0 + at1);
  CHECK(eu(Rational(1, 3)) == at0 * Rational(2, 3) + at1 * Rational(1, 3));
}

TEST_CASE("frequency-weighted block utility equals the gradient pairing") {
  std::mt19937_64 rng(314);
  test::RandomGameOptions opts;
  for (int trial = 0; trial < 25; ++trial) {
    GameTree g = test::random_game(rng, opts);
    Strategy mu = test::random_strategy(rng, g, /*interior=*/true);
    UtilityPolynomial u = utility_polynomial(g);
    for (int i = 0; i < g.num_info_sets(); ++i) {
      InfoSetStats stats = info_set_stats(g, mu, i);
      if (stats.visit_freq.is_zero()) continue;
      Rational lhs = stats.visit_freq * eu_cdt_gt(g, mu, i, mu.blocks[i]);
      Rational rhs(0);
      for (std::size_t j = 0; j < mu.blocks[i].size(); ++j)
        rhs += mu.blocks[i][j] * u.partial_at(i, static_cast<int>(j), mu);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("(EDT,GDH) expected utilities in figure1 from (C,X)") {
  GameTree g = builtin_game("figure1");
  CHECK(eu_edt_gdh(g, kCX, 0, {Rational(1, 2), Rational(0), Rational(1, 2)}) ==
        Rational(5, 4));
  CHECK(eu_edt_gdh(g, kCX, 0, {Rational(0), Rational(1), Rational(0)}) == Rational(0));
}

TEST_CASE("without absentmindedness the two theories agree everywhere") {
  std::mt19937_64 rng(2718);
  test::RandomGameOptions opts;
  opts.allow_absentmindedness = false;
  int games = 0;
  while (games < 50) {
    GameTree g = test::random_game(rng, opts);
    if (g.num_info_sets() == 0) continue;
    ++games;
    Strategy mu = test::random_strategy(rng, g, /*interior=*/true);
    for (int i = 0; i < g.num_info_sets(); ++i) {
      BeliefTable gt = gt_beliefs(g, mu, i);
      BeliefTable gdh = gdh_beliefs(g, mu, i);
      CHECK(gt.node_beliefs == gdh.node_beliefs);
      CHECK(gt.history_beliefs == gdh.history_beliefs);
      CHECK(gt.joint_beliefs == gdh.joint_beliefs);
      Strategy alt = test::random_strategy(rng, g);
      CHECK(eu_cdt_gt(g, mu, i, alt.blocks[i]) == eu_edt_gdh(g, mu, i, alt.blocks[i]));
    }
  }
}

TEST_CASE("belief tables normalize and marginalize exactly") {
  std::mt19937_64 rng(161803);
  test::RandomGameOptions opts;
  for (int trial = 0; trial < 25; ++trial) {
    GameTree g = test::random_game(rng, opts);
    Strategy mu = test::random_strategy(rng, g, /*interior=*/true);
    for (int i = 0; i < g.num_info_sets(); ++i) {
      check_table_consistency(gt_beliefs(g, mu, i));
      check_table_consistency(gdh_beliefs(g, mu, i));
    }
  }
}

TEST_CASE("GT history beliefs weight histories by visit multiplicity") {
  GameTree g = builtin_game("sleeping_beauty");
  Strategy s = uniform_strategy(g);
  BeliefTable gt = gt_beliefs(g, s, 0);
  // Tails history visits I twice: belief 2*(1/2)/(3/2) = 2/3; heads: 1/3.
  for (const auto& [z, p] : gt.history_beliefs)
    CHECK(p == (z == 2 ? Rational(1, 3) : Rational(2, 3)));
}

TEST_CASE("derivative identity: pinned figure1 value and unreached case") {
  GameTree g = builtin_game("figure1");
  auto [lhs, rhs] = derivative_identity(g, kHalfLR, 0, 0);
  CHECK(lhs == Rational(5, 2));
  CHECK(rhs == Rational(5, 2));

  Strategy pure_l = fig1(Rational(1), Rational(0), Rational(0), Rational(1), Rational(0));
  auto [l0, r0] = derivative_identity(g, pure_l, 1, 0);
  CHECK(l0 == Rational(0));
  CHECK(r0 == Rational(0));
}

TEST_CASE("derivative identity holds exactly on random instances") {
  std::mt19937_64 rng(55);
  test::RandomGameOptions opts;
  int pairs = 0;
  while (pairs < 100) {
    GameTree g = test::random_game(rng, opts);
    if (g.num_info_sets() == 0) continue;
    Strategy mu = test::random_strategy(rng, g);
    ++pairs;
    for (int i = 0; i < g.num_info_sets(); ++i)
      for (int j = 0; j < static_cast<int>(g.info_set(i).actions.size()); ++j) {
        auto [lhs, rhs] = derivative_identity(g, mu, i, j);
        CHECK(lhs == rhs);
      }
  }
}

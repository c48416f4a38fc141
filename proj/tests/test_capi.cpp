// Exercises the public shared-library surface through irgames.h only.
#include <doctest.h>

#include <memory>
#include <string>

#include "irgames.h"

namespace {

struct Guard {
  char* p = nullptr;
  ~Guard() { irg_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct GameGuard {
  irg_game* g = nullptr;
  ~GameGuard() { irg_game_release(g); }
};

struct StrategyGuard {
  irg_strategy* s = nullptr;
  ~StrategyGuard() { irg_strategy_release(s); }
};

}  // namespace

TEST_CASE("version string is present") {
  CHECK(std::string(irg_version()).find("irgames") == 0);
}

TEST_CASE("builtin listing and retrieval") {
  Guard names;
  REQUIRE(irg_builtin_names(&names.p) == IRG_OK);
  CHECK(names.str().find("figure1\n") != std::string::npos);
  CHECK(names.str().find("irrational\n") != std::string::npos);

  GameGuard game;
  Guard err;
  CHECK(irg_game_builtin("figure1", &game.g, &err.p) == IRG_OK);
  Guard report;
  CHECK(irg_game_validate(game.g, &report.p) == IRG_OK);
  CHECK(report.str().find("verdict: pass") != std::string::npos);

  GameGuard missing;
  Guard err2;
  CHECK(irg_game_builtin("nope", &missing.g, &err2.p) == IRG_INPUT_ERROR);
  CHECK_FALSE(err2.str().empty());
}

TEST_CASE("game and strategy text round trips") {
  GameGuard game;
  Guard err;
  REQUIRE(irg_game_builtin("figure1", &game.g, &err.p) == IRG_OK);
  Guard text;
  REQUIRE(irg_game_to_text(game.g, &text.p) == IRG_OK);

  GameGuard again;
  Guard err2;
  REQUIRE(irg_game_from_text(text.p, &again.g, &err2.p) == IRG_OK);
  Guard text2;
  REQUIRE(irg_game_to_text(again.g, &text2.p) == IRG_OK);
  CHECK(text.str() == text2.str());

  StrategyGuard strat;
  Guard warn, err3;
  REQUIRE(irg_strategy_from_text(game.g, "(1/2, 0, 1/2); (1, 0)", &strat.s, &warn.p,
                                 &err3.p) == IRG_OK);
  CHECK(warn.p == nullptr);
  Guard stext;
  REQUIRE(irg_strategy_to_text(game.g, strat.s, &stext.p) == IRG_OK);
  CHECK(stext.str().find("blocks (1/2, 0, 1/2); (1, 0)") != std::string::npos);
}

TEST_CASE("evaluation and polynomial reports") {
  GameGuard game;
  Guard err;
  REQUIRE(irg_game_builtin("figure1", &game.g, &err.p) == IRG_OK);
  StrategyGuard strat;
  Guard warn, err2;
  REQUIRE(irg_strategy_from_text(game.g, "(1/2, 0, 1/2); (1, 0)", &strat.s, &warn.p,
                                 &err2.p) == IRG_OK);
  Guard eval, err3;
  CHECK(irg_eval(game.g, strat.s, &eval.p, &err3.p) == IRG_OK);
  CHECK(eval.str().find("value: 5/4") != std::string::npos);

  Guard poly, err4;
  CHECK(irg_poly(game.g, &poly.p, &err4.p) == IRG_OK);
  CHECK(poly.str().find("5·m11·m13·m21 + m13·m22") != std::string::npos);
}

TEST_CASE("belief tables via the C surface") {
  GameGuard game;
  Guard err;
  REQUIRE(irg_game_builtin("sleeping_beauty", &game.g, &err.p) == IRG_OK);
  StrategyGuard strat;
  Guard warn, err2;
  REQUIRE(irg_strategy_from_text(game.g, "(1)", &strat.s, &warn.p, &err2.p) == IRG_OK);
  Guard gt, err3;
  REQUIRE(irg_beliefs(game.g, strat.s, "I", "gt", &gt.p, &err3.p) == IRG_OK);
  CHECK(gt.str().find("node 1: 1/3") != std::string::npos);
  Guard gdh, err4;
  REQUIRE(irg_beliefs(game.g, strat.s, "I", "gdh", &gdh.p, &err4.p) == IRG_OK);
  CHECK(gdh.str().find("history 2: 1/2") != std::string::npos);
  CHECK(irg_beliefs(game.g, strat.s, "I", "huh", nullptr, nullptr) == IRG_USAGE);
  Guard err5;
  CHECK(irg_beliefs(game.g, strat.s, "missing", "gt", nullptr, &err5.p) == IRG_INPUT_ERROR);
}

TEST_CASE("verification status codes distinguish pass and fail") {
  GameGuard game;
  Guard err;
  REQUIRE(irg_game_builtin("figure1", &game.g, &err.p) == IRG_OK);
  StrategyGuard cx;
  Guard warn, err2;
  REQUIRE(irg_strategy_from_text(game.g, "(0,1,0);(1,0)", &cx.s, &warn.p, &err2.p) == IRG_OK);

  Guard rep1, err3;
  CHECK(irg_verify(game.g, cx.s, "cdt", "0", "", &rep1.p, &err3.p) == IRG_OK);
  Guard rep2, err4;
  CHECK(irg_verify(game.g, cx.s, "edt", "1e-3", "grid=16", &rep2.p, &err4.p) ==
        IRG_VERIFY_FAIL);
  CHECK(rep2.str().find("verdict: fail") != std::string::npos);

  Guard cert, err5;
  CHECK(irg_certify(game.g, cx.s, "1e-9", &cert.p, &err5.p) == IRG_OK);
  CHECK(cert.str().find("residual: 0") != std::string::npos);
}

TEST_CASE("solving through the C surface") {
  GameGuard game;
  Guard err;
  REQUIRE(irg_game_builtin("absentminded_driver", &game.g, &err.p) == IRG_OK);
  Guard rep, err2;
  REQUIRE(irg_solve(game.g, "kkt", "seed=1 max-iters=5000 tol=1e-9", &rep.p, &err2.p) ==
          IRG_OK);
  CHECK(rep.str().find("status: converged") != std::string::npos);
  CHECK(irg_solve(game.g, "quantum", "", nullptr, nullptr) == IRG_USAGE);
  Guard err3;
  CHECK(irg_solve(game.g, "kkt", "bogus=1", nullptr, &err3.p) == IRG_INPUT_ERROR);
}

TEST_CASE("reduce and recover round trip") {
  const char* dimacs = "p cnf 3 1\n1 2 3 0\n";
  Guard envelope, err;
  REQUIRE(irg_reduce("sat", dimacs, nullptr, &envelope.p, &err.p) == IRG_OK);
  CHECK(envelope.str().find("reduction: sat3") != std::string::npos);

  // A pure all-T strategy over the three variable info sets.
  Guard rec, err2;
  CHECK(irg_recover(envelope.p, "(1,0);(1,0);(1,0)", &rec.p, &err2.p) == IRG_OK);
  CHECK(rec.str().find("validated: yes") != std::string::npos);
  Guard rec2, err3;
  // All-F falsifies the single positive clause.
  CHECK(irg_recover(envelope.p, "(0,1);(0,1);(0,1)", &rec2.p, &err3.p) == IRG_VERIFY_FAIL);
}

TEST_CASE("decide status codes") {
  GameGuard game;
  Guard err;
  REQUIRE(irg_game_builtin("figure1", &game.g, &err.p) == IRG_OK);
  Guard yes, err2;
  CHECK(irg_decide(game.g, "exante", nullptr, "5/4", "1e-9", "grid=8", &yes.p, &err2.p) ==
        IRG_OK);
  CHECK(yes.str().find("verdict: yes") != std::string::npos);
  Guard no, err3;
  CHECK(irg_decide(game.g, "exante", nullptr, "2", "1e-3", "grid=8", &no.p, &err3.p) ==
        IRG_VERIFY_FAIL);
  Guard bad, err4;
  CHECK(irg_decide(game.g, "what", nullptr, "1", "0", "", &bad.p, &err4.p) ==
        IRG_INPUT_ERROR);
}

TEST_CASE("malformed inputs surface as input errors with messages") {
  GameGuard game;
  Guard err;
  CHECK(irg_game_from_text("irgame 1\nnode 0 chance - -\n", &game.g, &err.p) ==
        IRG_INPUT_ERROR);
  CHECK_FALSE(err.str().empty());
  CHECK(irg_game_from_text(nullptr, nullptr, nullptr) == IRG_USAGE);
}

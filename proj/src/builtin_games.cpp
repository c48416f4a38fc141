#include "irg/errors.hpp"
#include "irg/game.hpp"

namespace irg {

namespace {

// Running example with two info sets I1 = {h0, h1} and I2 = {h2, h3, h4};
// entering I1 twice on the L branch gives it absentmindedness.
GameTree make_figure1() {
  GameBuilder b("figure1");
  int i1 = b.info_set("I1", {"L", "C", "R"});
  int i2 = b.info_set("I2", {"X", "Y"});
  int h0 = b.decision(-1, i1);
  int h1 = b.decision(h0, i1);
  b.terminal(h1, Rational(0));  // L
  b.terminal(h1, Rational(0));  // C
  int h2 = b.decision(h1, i2);  // R
  b.terminal(h2, Rational(5));  // X
  b.terminal(h2, Rational(0));  // Y
  int h3 = b.decision(h0, i2);  // C
  b.terminal(h3, Rational(0));
  b.terminal(h3, Rational(0));
  int h4 = b.decision(h0, i2);  // R
  b.terminal(h4, Rational(0));
  b.terminal(h4, Rational(1));
  return b.build();
}

// figure1 with the I2 nodes replaced by fair chance moves between X and Y.
GameTree make_figure2_restricted() {
  GameBuilder b("figure2_restricted");
  int i1 = b.info_set("I1", {"L", "C", "R"});
  auto coin = [&](int parent, Rational x_payoff, Rational y_payoff) {
    int c = b.chance(parent, {"X", "Y"}, {Rational(1, 2), Rational(1, 2)});
    b.terminal(c, std::move(x_payoff));
    b.terminal(c, std::move(y_payoff));
    return c;
  };
  int h0 = b.decision(-1, i1);
  int h1 = b.decision(h0, i1);
  b.terminal(h1, Rational(0));       // L
  b.terminal(h1, Rational(0));       // C
  coin(h1, Rational(5), Rational(0));  // R
  coin(h0, Rational(0), Rational(0));  // C
  coin(h0, Rational(0), Rational(1));  // R
  return b.build();
}

GameTree make_absentminded_driver() {
  GameBuilder b("absentminded_driver");
  int i = b.info_set("I", {"Exit", "Continue"});
  int h0 = b.decision(-1, i);
  b.terminal(h0, Rational(0));  // Exit at the first crossing
  int h1 = b.decision(h0, i);
  b.terminal(h1, Rational(1));  // Exit at the second crossing
  b.terminal(h1, Rational(0));  // Continue past both
  return b.build();
}

// Probability puzzle: a single dummy action per waking, payoffs all zero.
GameTree make_sleeping_beauty() {
  GameBuilder b("sleeping_beauty");
  int i = b.info_set("I", {"wake"});
  int h0 = b.chance(-1, {"Heads", "Tails"}, {Rational(1, 2), Rational(1, 2)});
  int h1 = b.decision(h0, i);
  b.terminal(h1, Rational(0));
  int h2 = b.decision(h0, i);
  int h3 = b.decision(h2, i);
  b.terminal(h3, Rational(0));
  return b.build();
}

// Uniform chance over three subtrees whose utility adds up to
// p(x) = -16/3 x^6 + x^2 + x in the probability x of a1; the unique
// stationary point of p on [0,1] is not expressible in radicals.
GameTree make_irrational() {
  GameBuilder b("irrational");
  int i = b.info_set("I", {"a1", "a2"});
  Rational third(1, 3);
  int root = b.chance(-1, {"left", "middle", "right"}, {third, third, third});

  // Chain of `length` nodes in I; a1 continues, a2 drops out with payoff 0,
  // and only the all-a1 history pays `prize`.
  auto chain = [&](auto&& self, int parent, int length, const Rational& prize) -> void {
    int node = b.decision(parent, i);
    if (length == 1) {
      b.terminal(node, prize);
      b.terminal(node, Rational(0));
      return;
    }
    self(self, node, length - 1, prize);
    b.terminal(node, Rational(0));
  };
  chain(chain, root, 6, Rational(-16));
  chain(chain, root, 2, Rational(3));
  chain(chain, root, 1, Rational(3));
  return b.build();
}

}  // namespace

const std::vector<std::string>& builtin_game_names() {
  static const std::vector<std::string> names = {
      "figure1", "figure2_restricted", "absentminded_driver", "sleeping_beauty", "irrational"};
  return names;
}

GameTree builtin_game(const std::string& name) {
  if (name == "figure1") return make_figure1();
  if (name == "figure2_restricted") return make_figure2_restricted();
  if (name == "absentminded_driver") return make_absentminded_driver();
  if (name == "sleeping_beauty") return make_sleeping_beauty();
  if (name == "irrational") return make_irrational();
  throw InputError("unknown built-in game '" + name + "'");
}

std::vector<std::pair<std::string, GameTree>> builtin_games() {
  std::vector<std::pair<std::string, GameTree>> out;
  for (const std::string& name : builtin_game_names())
    out.emplace_back(name, builtin_game(name));
  return out;
}

}  // namespace irg

// Command-line front end; talks to the core exclusively through the C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irgames.h"

namespace {

struct Freed {
  void operator()(char* p) const { irg_free(p); }
};
using CStr = std::unique_ptr<char, Freed>;

struct GameFreed {
  void operator()(irg_game* g) const { irg_game_release(g); }
};
using GamePtr = std::unique_ptr<irg_game, GameFreed>;

struct StrategyFreed {
  void operator()(irg_strategy* s) const { irg_strategy_release(s); }
};
using StrategyPtr = std::unique_ptr<irg_strategy, StrategyFreed>;

int fail(int code, const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return code;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

std::string read_stdin() {
  std::ostringstream buf;
  buf << std::cin.rdbuf();
  return buf.str();
}

// GAME arguments resolve as: builtin name, "-" for stdin, else a file path.
int load_game(const std::string& arg, GamePtr& game) {
  irg_game* raw = nullptr;
  CStr err;
  {
    char* e = nullptr;
    if (irg_game_builtin(arg.c_str(), &raw, &e) == IRG_OK) {
      game.reset(raw);
      irg_free(e);
      return IRG_OK;
    }
    irg_free(e);
  }
  std::string text;
  if (arg == "-") {
    text = read_stdin();
  } else if (!read_file(arg, text)) {
    return fail(IRG_INPUT_ERROR, "cannot open game '" + arg + "'");
  }
  char* e = nullptr;
  int rc = irg_game_from_text(text.c_str(), &raw, &e);
  if (rc != IRG_OK) {
    std::string msg = e ? e : "unreadable game";
    irg_free(e);
    return fail(rc, msg);
  }
  irg_free(e);
  game.reset(raw);
  return IRG_OK;
}

// STRAT arguments: inline block text, "-" for stdin, else a file path.
int load_strategy(const irg_game* game, const std::string& arg, StrategyPtr& strategy) {
  std::string text;
  if (arg.find('(') != std::string::npos || arg.find(';') != std::string::npos ||
      arg.find(',') != std::string::npos) {
    text = arg;
  } else if (arg == "-") {
    text = read_stdin();
  } else if (!read_file(arg, text)) {
    return fail(IRG_INPUT_ERROR, "cannot open strategy '" + arg + "'");
  }
  irg_strategy* raw = nullptr;
  char* warn = nullptr;
  char* e = nullptr;
  int rc = irg_strategy_from_text(game, text.c_str(), &raw, &warn, &e);
  if (warn) {
    std::cerr << "warning: " << warn;
    irg_free(warn);
  }
  if (rc != IRG_OK) {
    std::string msg = e ? e : "unreadable strategy";
    irg_free(e);
    return fail(rc, msg);
  }
  irg_free(e);
  strategy.reset(raw);
  return IRG_OK;
}

int load_text_arg(const std::string& arg, std::string& out) {
  if (arg == "-") {
    out = read_stdin();
    return IRG_OK;
  }
  if (!read_file(arg, out)) return fail(IRG_INPUT_ERROR, "cannot open '" + arg + "'");
  return IRG_OK;
}

int emit(int rc, char* report, char* error, const std::string& summary) {
  CStr rep(report), err(error);
  if (rep) std::cout << rep.get();
  if (err) return fail(rc, err.get());
  if (!summary.empty()) std::cerr << summary << "\n";
  return rc;
}

std::string summary_line(const char* report, const std::string& key) {
  if (!report) return "";
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key + ":", 0) == 0) return line;
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-player imperfect-recall games: evaluation, beliefs, equilibria, "
               "reductions"};
  app.require_subcommand(1);

  std::string game_arg, strat_arg, infoset, system_arg = "gt", method = "kkt";
  std::string kind, eps = "0", target, query, src_arg, out_arg, solution_arg, name_arg;
  std::string options;
  long seed = -1;
  int max_iters = -1, restarts = -1, grid = -1;
  double tol = -1;
  long budget = -1;

  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "rng seed");
    cmd->add_option("--max-iters", max_iters, "iteration budget");
    cmd->add_option("--tol", tol, "stationarity tolerance");
    cmd->add_option("--restarts", restarts, "random restarts");
    cmd->add_option("--grid", grid, "lattice resolution");
    cmd->add_option("--budget", budget, "node budget");
  };
  auto solver_options = [&]() {
    std::string kv;
    if (seed >= 0) kv += "seed=" + std::to_string(seed) + " ";
    if (max_iters >= 0) kv += "max-iters=" + std::to_string(max_iters) + " ";
    if (tol >= 0) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "tol=%.17g ", tol);
      kv += buf;
    }
    if (restarts >= 0) kv += "restarts=" + std::to_string(restarts) + " ";
    if (grid >= 0) kv += "grid=" + std::to_string(grid) + " ";
    if (budget >= 0) {
      kv += "budget=" + std::to_string(budget) + " ";
    } else if (const char* env = std::getenv("IRGAMES_NODE_BUDGET")) {
      kv += "budget=" + std::string(env) + " ";
    }
    return kv;
  };

  auto* c_examples = app.add_subcommand("examples", "emit a built-in game");
  c_examples->add_option("name", name_arg, "built-in name (omit to list)");

  auto* c_eval = app.add_subcommand("eval", "exact expected utility of a strategy");
  c_eval->add_option("game", game_arg)->required();
  c_eval->add_option("strategy", strat_arg)->required();

  int gradient_grid = 0;
  auto* c_poly = app.add_subcommand("poly", "utility polynomial of a game");
  c_poly->add_option("game", game_arg)->required();
  c_poly->add_option("--gradient-grid", gradient_grid,
                     "also sample the exact gradient field at this resolution");
  c_poly->add_option("--budget", budget, "node budget");

  auto* c_beliefs = app.add_subcommand("beliefs", "GT/GDH belief tables at an info set");
  c_beliefs->add_option("game", game_arg)->required();
  c_beliefs->add_option("strategy", strat_arg)->required();
  c_beliefs->add_option("--infoset", infoset, "info set label")->required();
  c_beliefs->add_option("--system", system_arg, "gt|gdh")->required();

  auto* c_solve = app.add_subcommand("solve", "run a solver");
  c_solve->add_option("game", game_arg)->required();
  c_solve->add_option("--method", method, "kkt|exante|edt-dynamics");
  add_solver_flags(c_solve);

  auto* c_verify = app.add_subcommand("verify", "verify an equilibrium property");
  c_verify->add_option("game", game_arg)->required();
  c_verify->add_option("strategy", strat_arg)->required();
  c_verify->add_option("--kind", kind, "cdt|cdt-ws|edt")->required();
  c_verify->add_option("--eps", eps, "tolerance (rational or decimal)")->required();
  add_solver_flags(c_verify);

  auto* c_certify = app.add_subcommand("certify", "KKT certificate for a strategy");
  c_certify->add_option("game", game_arg)->required();
  c_certify->add_option("strategy", strat_arg)->required();
  c_certify->add_option("--eps", eps, "certificate tolerance");

  auto* c_reduce = app.add_subcommand("reduce", "generate a reduction instance");
  c_reduce->add_option("kind", kind, "sat|common-payoff|kkt-cube|polytensor|polytensor-1is")
      ->required();
  c_reduce->add_option("source", src_arg, "source instance file or -")->required();
  c_reduce->add_option("--eps", eps, "source precision parameter");

  auto* c_recover = app.add_subcommand("recover", "invert a reduction solution");
  c_recover->add_option("reduction", out_arg, "irreduction file or -")->required();
  c_recover->add_option("solution", solution_arg, "strategy for the reduced game")
      ->required();

  auto* c_decide = app.add_subcommand("decide", "desk-scale decision oracle");
  c_decide->add_option("game", game_arg)->required();
  c_decide->add_option("--query", query,
                       "exante|cdt_eq_value|edt_eq_value|infoset_eu_cdt|infoset_eu_edt")
      ->required();
  c_decide->add_option("--target", target, "target value t")->required();
  c_decide->add_option("--eps", eps, "slack for the approximate relaxation")->required();
  c_decide->add_option("--infoset", infoset, "info set label (infoset_* queries)");
  add_solver_flags(c_decide);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return IRG_USAGE;
  }

  if (c_examples->parsed()) {
    if (name_arg.empty()) {
      char* names = nullptr;
      irg_builtin_names(&names);
      CStr guard(names);
      std::cout << names;
      return IRG_OK;
    }
    GamePtr game;
    irg_game* raw = nullptr;
    char* e = nullptr;
    int rc = irg_game_builtin(name_arg.c_str(), &raw, &e);
    if (rc != IRG_OK) {
      std::string msg = e ? e : "unknown built-in";
      irg_free(e);
      return fail(rc, msg);
    }
    game.reset(raw);
    char* text = nullptr;
    irg_game_to_text(game.get(), &text);
    CStr guard(text);
    std::cout << text;
    return IRG_OK;
  }

  GamePtr game;
  StrategyPtr strategy;
  auto need_game = [&]() { return load_game(game_arg, game); };
  auto need_strategy = [&]() { return load_strategy(game.get(), strat_arg, strategy); };

  if (c_eval->parsed()) {
    if (int rc = need_game()) return rc;
    if (int rc = need_strategy()) return rc;
    char *rep = nullptr, *err = nullptr;
    int rc = irg_eval(game.get(), strategy.get(), &rep, &err);
    std::string summary = summary_line(rep, "value");
    return emit(rc, rep, err, summary);
  }
  if (c_poly->parsed()) {
    if (int rc = need_game()) return rc;
    char *rep = nullptr, *err = nullptr;
    int rc = irg_poly(game.get(), &rep, &err);
    if (rc == IRG_OK && gradient_grid > 0) {
      std::string summary = summary_line(rep, "polynomial");
      int first = emit(rc, rep, err, summary);
      if (first != IRG_OK) return first;
      char *grep = nullptr, *gerr = nullptr;
      rc = irg_gradient_grid(game.get(), gradient_grid, solver_options().c_str(), &grep,
                             &gerr);
      return emit(rc, grep, gerr, "");
    }
    return emit(rc, rep, err, summary_line(rep, "polynomial"));
  }
  if (c_beliefs->parsed()) {
    if (int rc = need_game()) return rc;
    if (int rc = need_strategy()) return rc;
    char *rep = nullptr, *err = nullptr;
    int rc = irg_beliefs(game.get(), strategy.get(), infoset.c_str(), system_arg.c_str(),
                         &rep, &err);
    return emit(rc, rep, err, "beliefs: " + system_arg + " at " + infoset);
  }
  if (c_solve->parsed()) {
    if (int rc = need_game()) return rc;
    char *rep = nullptr, *err = nullptr;
    int rc = irg_solve(game.get(), method.c_str(), solver_options().c_str(), &rep, &err);
    return emit(rc, rep, err, summary_line(rep, "value"));
  }
  if (c_verify->parsed()) {
    if (int rc = need_game()) return rc;
    if (int rc = need_strategy()) return rc;
    char *rep = nullptr, *err = nullptr;
    int rc = irg_verify(game.get(), strategy.get(), kind.c_str(), eps.c_str(),
                        solver_options().c_str(), &rep, &err);
    return emit(rc, rep, err, "verify " + kind + ": " + summary_line(rep, "verdict"));
  }
  if (c_certify->parsed()) {
    if (int rc = need_game()) return rc;
    if (int rc = need_strategy()) return rc;
    char *rep = nullptr, *err = nullptr;
    int rc = irg_certify(game.get(), strategy.get(), eps.c_str(), &rep, &err);
    return emit(rc, rep, err, summary_line(rep, "residual"));
  }
  if (c_reduce->parsed()) {
    std::string src;
    if (int rc = load_text_arg(src_arg, src)) return rc;
    char *rep = nullptr, *err = nullptr;
    int rc = irg_reduce(kind.c_str(), src.c_str(), eps.c_str(), &rep, &err);
    return emit(rc, rep, err, "reduce " + kind + ": done");
  }
  if (c_recover->parsed()) {
    std::string red, sol;
    if (int rc = load_text_arg(out_arg, red)) return rc;
    if (solution_arg.find('(') != std::string::npos ||
        solution_arg.find(';') != std::string::npos) {
      sol = solution_arg;
    } else if (int rc = load_text_arg(solution_arg, sol)) {
      return rc;
    }
    char *rep = nullptr, *err = nullptr;
    int rc = irg_recover(red.c_str(), sol.c_str(), &rep, &err);
    return emit(rc, rep, err, summary_line(rep, "validated"));
  }
  if (c_decide->parsed()) {
    if (int rc = need_game()) return rc;
    char *rep = nullptr, *err = nullptr;
    int rc = irg_decide(game.get(), query.c_str(),
                        infoset.empty() ? nullptr : infoset.c_str(), target.c_str(),
                        eps.c_str(), solver_options().c_str(), &rep, &err);
    return emit(rc, rep, err, summary_line(rep, "verdict"));
  }
  return IRG_USAGE;
}

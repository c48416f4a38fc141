#include "irgames.h"

#include <cstring>
#include <string>

#include "irg/beliefs.hpp"
#include "irg/equilibrium.hpp"
#include "irg/errors.hpp"
#include "irg/game.hpp"
#include "irg/io.hpp"
#include "irg/polynomial.hpp"
#include "irg/reductions.hpp"
#include "irg/solvers.hpp"

struct irg_game {
  irg::GameTree tree;
};

struct irg_strategy {
  irg::Strategy strategy;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_out(char** slot, const std::string& s) {
  if (slot) *slot = dup_string(s);
}

// Runs `body`, translating exceptions into status codes and *out_error.
template <typename Fn>
int guarded(char** out_error, Fn&& body) {
  if (out_error) *out_error = nullptr;
  try {
    return body();
  } catch (const irg::BudgetError& e) {
    set_out(out_error, e.what());
    return IRG_BUDGET;
  } catch (const irg::InputError& e) {
    set_out(out_error, e.what());
    return IRG_INPUT_ERROR;
  } catch (const irg::Error& e) {
    set_out(out_error, e.what());
    return IRG_INPUT_ERROR;
  } catch (const std::exception& e) {
    set_out(out_error, std::string("internal error: ") + e.what());
    return IRG_INPUT_ERROR;
  }
}

}  // namespace

extern "C" {

const char* irg_version(void) { return "irgames 1.0.0"; }

void irg_free(char* text) { delete[] text; }

int irg_game_from_text(const char* text, irg_game** out_game, char** out_error) {
  if (!text || !out_game) return IRG_USAGE;
  return guarded(out_error, [&] {
    *out_game = new irg_game{irg::parse_game(text)};
    return IRG_OK;
  });
}

int irg_game_builtin(const char* name, irg_game** out_game, char** out_error) {
  if (!name || !out_game) return IRG_USAGE;
  return guarded(out_error, [&] {
    *out_game = new irg_game{irg::builtin_game(name)};
    return IRG_OK;
  });
}

int irg_game_to_text(const irg_game* game, char** out_text) {
  if (!game || !out_text) return IRG_USAGE;
  return guarded(nullptr, [&] {
    set_out(out_text, irg::serialize_game(game->tree));
    return IRG_OK;
  });
}

int irg_game_validate(const irg_game* game, char** out_report) {
  if (!game) return IRG_USAGE;
  return guarded(nullptr, [&] {
    irg::ValidationReport rep = irg::validate_game(game->tree);
    set_out(out_report, irg::report_validate(game->tree, rep));
    return rep.pass() ? IRG_OK : IRG_VERIFY_FAIL;
  });
}

void irg_game_release(irg_game* game) { delete game; }

int irg_builtin_names(char** out_names) {
  if (!out_names) return IRG_USAGE;
  std::string all;
  for (const std::string& name : irg::builtin_game_names()) all += name + "\n";
  set_out(out_names, all);
  return IRG_OK;
}

int irg_strategy_from_text(const irg_game* game, const char* text,
                           irg_strategy** out_strategy, char** out_warnings,
                           char** out_error) {
  if (!game || !text || !out_strategy) return IRG_USAGE;
  return guarded(out_error, [&] {
    std::vector<std::string> warnings;
    irg::Strategy s = irg::parse_strategy(game->tree, text, &warnings);
    *out_strategy = new irg_strategy{std::move(s)};
    if (out_warnings) {
      std::string all;
      for (const std::string& w : warnings) all += w + "\n";
      *out_warnings = all.empty() ? nullptr : dup_string(all);
    }
    return IRG_OK;
  });
}

int irg_strategy_to_text(const irg_game* game, const irg_strategy* strategy,
                         char** out_text) {
  if (!game || !strategy || !out_text) return IRG_USAGE;
  return guarded(nullptr, [&] {
    set_out(out_text, irg::serialize_strategy(game->tree, strategy->strategy));
    return IRG_OK;
  });
}

void irg_strategy_release(irg_strategy* strategy) { delete strategy; }

int irg_eval(const irg_game* game, const irg_strategy* strategy, char** out_report,
             char** out_error) {
  if (!game || !strategy) return IRG_USAGE;
  return guarded(out_error, [&] {
    set_out(out_report, irg::report_eval(game->tree, strategy->strategy));
    return IRG_OK;
  });
}

int irg_poly(const irg_game* game, char** out_report, char** out_error) {
  if (!game) return IRG_USAGE;
  return guarded(out_error, [&] {
    set_out(out_report, irg::report_poly(game->tree));
    return IRG_OK;
  });
}

int irg_gradient_grid(const irg_game* game, int resolution, const char* options,
                      char** out_report, char** out_error) {
  if (!game) return IRG_USAGE;
  return guarded(out_error, [&] {
    irg::SolverConfig cfg = irg::parse_solver_config(options ? options : "");
    set_out(out_report,
            irg::report_gradient_grid(game->tree, resolution, cfg.node_budget));
    return IRG_OK;
  });
}

int irg_beliefs(const irg_game* game, const irg_strategy* strategy,
                const char* infoset_label, const char* system, char** out_report,
                char** out_error) {
  if (!game || !strategy || !infoset_label || !system) return IRG_USAGE;
  std::string sys = system;
  if (sys != "gt" && sys != "gdh") return IRG_USAGE;
  return guarded(out_error, [&] {
    auto iset = game->tree.find_info_set(infoset_label);
    if (!iset) throw irg::InputError("unknown info set '" + std::string(infoset_label) + "'");
    irg::BeliefTable table = sys == "gt"
                                 ? irg::gt_beliefs(game->tree, strategy->strategy, *iset)
                                 : irg::gdh_beliefs(game->tree, strategy->strategy, *iset);
    set_out(out_report, irg::report_beliefs(game->tree, table));
    return IRG_OK;
  });
}

int irg_solve(const irg_game* game, const char* method, const char* options,
              char** out_report, char** out_error) {
  if (!game || !method) return IRG_USAGE;
  std::string m = method;
  if (m != "kkt" && m != "exante" && m != "edt-dynamics") return IRG_USAGE;
  return guarded(out_error, [&] {
    irg::SolverConfig cfg = irg::parse_solver_config(options ? options : "");
    irg::SolveResult result = m == "kkt" ? irg::projected_gradient_kkt(game->tree, cfg)
                              : m == "exante"
                                  ? irg::solve_exante(game->tree, cfg)
                                  : irg::edt_best_response_dynamics(game->tree, cfg);
    set_out(out_report, irg::report_solve(game->tree, result, m));
    return IRG_OK;
  });
}

int irg_verify(const irg_game* game, const irg_strategy* strategy, const char* kind,
               const char* epsilon, const char* options, char** out_report,
               char** out_error) {
  if (!game || !strategy || !kind || !epsilon) return IRG_USAGE;
  std::string k = kind;
  if (k != "cdt" && k != "cdt-ws" && k != "edt") return IRG_USAGE;
  return guarded(out_error, [&] {
    irg::Rational eps = irg::Rational::parse(epsilon);
    irg::EquilibriumReport report;
    if (k == "cdt") {
      report = irg::verify_cdt_approx(game->tree, strategy->strategy, eps);
    } else if (k == "cdt-ws") {
      report = irg::verify_cdt_well_supported(game->tree, strategy->strategy, eps);
    } else {
      irg::SolverConfig cfg = irg::parse_solver_config(options ? options : "");
      report = irg::verify_edt(game->tree, strategy->strategy, eps, cfg);
    }
    set_out(out_report, irg::report_verify(game->tree, report));
    return report.pass ? IRG_OK : IRG_VERIFY_FAIL;
  });
}

int irg_certify(const irg_game* game, const irg_strategy* strategy, const char* epsilon,
                char** out_report, char** out_error) {
  if (!game || !strategy) return IRG_USAGE;
  return guarded(out_error, [&] {
    irg::Rational eps = epsilon ? irg::Rational::parse(epsilon) : irg::Rational(0);
    irg::KktCertificate cert = irg::kkt_certificate(game->tree, strategy->strategy, eps);
    set_out(out_report, irg::report_certify(game->tree, cert));
    return cert.valid ? IRG_OK : IRG_VERIFY_FAIL;
  });
}

int irg_reduce(const char* kind, const char* source_text, const char* epsilon,
               char** out_text, char** out_error) {
  if (!kind || !source_text) return IRG_USAGE;
  std::string k = kind;
  return guarded(out_error, [&] {
    irg::ReductionOutput out;
    if (k == "sat") {
      out = irg::sat3_to_game(irg::parse_dimacs(source_text));
    } else if (k == "common-payoff") {
      out = irg::common_payoff_to_game(irg::parse_family(source_text));
    } else if (k == "kkt-cube") {
      if (!epsilon) throw irg::InputError("kkt-cube reduction requires --eps");
      out = irg::kkt_cube_to_game(irg::parse_polynomial(source_text),
                                  irg::Rational::parse(epsilon));
    } else if (k == "polytensor") {
      if (!epsilon) throw irg::InputError("polytensor reduction requires --eps");
      out = irg::polytensor_to_game(irg::parse_polytensor(source_text),
                                    irg::Rational::parse(epsilon));
    } else if (k == "polytensor-1is") {
      if (!epsilon) throw irg::InputError("polytensor-1is reduction requires --eps");
      out = irg::polytensor_to_single_infoset_game(irg::parse_polytensor(source_text),
                                                   irg::Rational::parse(epsilon));
    } else {
      throw irg::InputError("unknown reduction kind '" + k + "'");
    }
    set_out(out_text, irg::serialize_reduction(out));
    return IRG_OK;
  });
}

int irg_recover(const char* reduction_text, const char* solution_text,
                char** out_report, char** out_error) {
  if (!reduction_text || !solution_text) return IRG_USAGE;
  return guarded(out_error, [&] {
    irg::ReductionOutput out = irg::parse_reduction(reduction_text);
    irg::Strategy solution = irg::parse_strategy(out.game, solution_text);
    irg::RecoveredSolution rec = irg::recover(out, solution);
    set_out(out_report, irg::report_recover(rec));
    return rec.validated ? IRG_OK : IRG_VERIFY_FAIL;
  });
}

int irg_decide(const irg_game* game, const char* query, const char* infoset_label,
               const char* target, const char* epsilon, const char* options,
               char** out_report, char** out_error) {
  if (!game || !query || !target || !epsilon) return IRG_USAGE;
  return guarded(out_error, [&] {
    irg::DecideQuery q = irg::parse_decide_query(query);
    std::optional<int> iset;
    if (infoset_label) {
      auto found = game->tree.find_info_set(infoset_label);
      if (!found)
        throw irg::InputError("unknown info set '" + std::string(infoset_label) + "'");
      iset = *found;
    }
    irg::SolverConfig cfg = irg::parse_solver_config(options ? options : "");
    irg::Rational t = irg::Rational::parse(target);
    irg::Rational eps = irg::Rational::parse(epsilon);
    irg::DecideResult result = irg::decide_targets(game->tree, q, iset, t, eps, cfg);
    set_out(out_report, irg::report_decide(result, query, t, eps));
    switch (result.verdict) {
      case irg::DecideVerdict::kYes:
        return IRG_OK;
      case irg::DecideVerdict::kNoEvidence:
        return IRG_VERIFY_FAIL;
      case irg::DecideVerdict::kInconclusive:
        return IRG_BUDGET;
    }
    return IRG_OK;
  });
}

}  // extern "C"

#ifndef IRG_IO_HPP
#define IRG_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "irg/beliefs.hpp"
#include "irg/equilibrium.hpp"
#include "irg/game.hpp"
#include "irg/polynomial.hpp"
#include "irg/reductions.hpp"
#include "irg/solvers.hpp"

namespace irg {

// --- game files -------------------------------------------------------------

GameTree parse_game(const std::string& text);
std::string serialize_game(const GameTree& tree);
std::uint64_t game_hash(const GameTree& tree);

// --- strategies -------------------------------------------------------------

// Accepts the bare block form "(1/2, 0, 1/2); (1, 0)" or the irstrategy file
// form. A stored game hash that does not match is a warning, not an error.
Strategy parse_strategy(const GameTree& tree, const std::string& text,
                        std::vector<std::string>* warnings = nullptr);
std::string serialize_strategy(const GameTree& tree, const Strategy& strategy);
std::string strategy_blocks_text(const Strategy& strategy);

// --- polynomials ------------------------------------------------------------

UtilityPolynomial parse_polynomial(const std::string& text);
std::string serialize_polynomial(const UtilityPolynomial& p);
// One-line human form, canonical term order, e.g. "5·m11·m13·m21 + m13·m22".
std::string polynomial_pretty(const UtilityPolynomial& p);

// --- reduction source formats ------------------------------------------------

Cnf3 parse_dimacs(const std::string& text);
std::string serialize_dimacs(const Cnf3& cnf);

CommonPayoffFamily parse_family(const std::string& text);
std::string serialize_family(const CommonPayoffFamily& family);

PolytensorGame parse_polytensor(const std::string& text);
std::string serialize_polytensor(const PolytensorGame& pt);

// --- reduction envelopes ------------------------------------------------------

std::string serialize_reduction(const ReductionOutput& out);
ReductionOutput parse_reduction(const std::string& text);

// --- reports ------------------------------------------------------------------

std::string format_double(double v);

std::string report_validate(const GameTree& tree, const ValidationReport& report);
std::string report_eval(const GameTree& tree, const Strategy& strategy);
std::string report_poly(const GameTree& tree);
// Exact gradient field sampled on the strategy lattice (plot-ready numbers,
// no plotting).
std::string report_gradient_grid(const GameTree& tree, int resolution, long node_budget);
std::string report_beliefs(const GameTree& tree, const BeliefTable& table);
std::string report_solve(const GameTree& tree, const SolveResult& result,
                         const std::string& method);
std::string report_verify(const GameTree& tree, const EquilibriumReport& report);
std::string report_certify(const GameTree& tree, const KktCertificate& cert);
std::string report_recover(const RecoveredSolution& rec);
std::string report_decide(const DecideResult& result, const std::string& query,
                          const Rational& target, const Rational& eps);

// --- solver configuration ------------------------------------------------------

// "key=value" pairs separated by whitespace; keys: seed, max-iters, tol,
// restarts, grid, grid-seed, budget, eta, pure-cap.
SolverConfig parse_solver_config(const std::string& kv);

}  // namespace irg

#endif  // IRG_IO_HPP

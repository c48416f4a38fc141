#ifndef IRG_SOLVERS_HPP
#define IRG_SOLVERS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irg/game.hpp"
#include "irg/polynomial.hpp"
#include "irg/rational.hpp"

namespace irg {

struct SolverConfig {
  int max_iters = 5000;
  double eta0 = 0.0;  // initial step size; 0 picks 1/(L_grad + 1)
  double backtrack = 0.5;
  double armijo = 1e-4;
  double tol = 1e-9;  // stationarity tolerance on the KKT residual
  int restarts = 8;   // seeded random restarts on top of the deterministic starts
  std::uint64_t seed = 12345;
  int grid_k = 16;        // lattice resolution for oracles and certificates
  int grid_seed_k = 4;    // coarse-grid best is used as an extra start; 0 disables
  long node_budget = 1000000;
  int pure_start_cap = 64;
};

enum class SolveStatus { kConverged, kBudgetExhausted };

struct RestartSummary {
  std::string start;  // "uniform", "grid", "pure 3", "random 1", "sweep 2", ...
  double value = 0.0;
  double residual = 0.0;
  int iters = 0;
};

struct SolveResult {
  Strategy strategy;  // kFloat64 mode
  double value = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::kConverged;
  std::vector<RestartSummary> trace;
};

// Projected gradient ascent on U with Euclidean simplex projection and
// Armijo backtracking; returns the best-residual iterate over all starts.
SolveResult projected_gradient_kkt(const GameTree& tree, const SolverConfig& cfg);

// Multi-start ascent keeping the best ex-ante value; no global optimality
// claim is attached to the result.
SolveResult solve_exante(const GameTree& tree, const SolverConfig& cfg);

struct BlockBestResponse {
  std::vector<Rational> alpha;
  Rational value;            // exact U at (mu with block replaced by alpha)
  Rational certificate_gap;  // optimum exceeds `value` by at most this
};

// Maximizes the restriction of U to one block: dense simplex grid plus
// projected-gradient refinement, exact re-evaluation of all candidates.
BlockBestResponse block_best_response(const GameTree& tree, const Strategy& strategy,
                                      int info_set, const SolverConfig& cfg);

// Round-robin block best responses; U never decreases between accepted
// updates. Stops once a full sweep makes no progress beyond cfg.tol.
SolveResult edt_best_response_dynamics(const GameTree& tree, const SolverConfig& cfg);
SolveResult edt_best_response_dynamics(const GameTree& tree, const SolverConfig& cfg,
                                       const Strategy& start);

struct GridResult {
  Strategy strategy;  // exact lattice point
  Rational value;
  long points = 0;
};

// Exhaustive exact evaluation on the simplex-product lattice with
// denominator k. Throws BudgetError if the lattice exceeds the node budget.
GridResult brute_force_grid(const GameTree& tree, int k, long node_budget = 1000000);

enum class DecideQuery {
  kExAnte,          // exists mu with U(mu) >= t
  kCdtEqValue,      // exists (CDT,GT)-equilibrium with U(mu) >= t
  kEdtEqValue,      // exists (EDT,GDH)-equilibrium with U(mu) >= t
  kInfoSetEuCdt,    // exists mu, Fr(I|mu) > 0, EU_cdt_gt(mu(.|I) | mu, I) >= t
  kInfoSetEuEdt,    // exists mu, Prob(I|mu) > 0, EU_edt_gdh(mu(.|I) | mu, I) >= t
};

DecideQuery parse_decide_query(const std::string& name);

enum class DecideVerdict { kYes, kNoEvidence, kInconclusive };

struct DecideResult {
  DecideVerdict verdict = DecideVerdict::kNoEvidence;
  std::optional<Strategy> witness;
  Rational value;  // best value found for the queried quantity
  std::string detail;
};

// Desk-scale decision oracle implementing the NP-time approximate
// relaxation: answers yes when a candidate reaches t - eps under the query's
// constraints; never claims a certified "no".
DecideResult decide_targets(const GameTree& tree, DecideQuery query,
                            std::optional<int> info_set, const Rational& t,
                            const Rational& eps, const SolverConfig& cfg);

// Euclidean projection onto the probability simplex (sorted-threshold method,
// ties resolved by index order). Exposed for tests.
void project_simplex(std::vector<double>& x);

}  // namespace irg

#endif  // IRG_SOLVERS_HPP

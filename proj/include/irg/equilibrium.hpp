#ifndef IRG_EQUILIBRIUM_HPP
#define IRG_EQUILIBRIUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "irg/game.hpp"
#include "irg/polynomial.hpp"
#include "irg/rational.hpp"
#include "irg/solvers.hpp"

namespace irg {

// KKT multipliers for the ex-ante maximization over the simplex product,
// built constructively: kappa_i = max_j grad_ij U(mu), tau_ij = 0 on the
// support and kappa_i - grad_ij off it. The residual is the stationarity gap
// on the support; tau >= 0 and complementary slackness hold exactly.
struct KktCertificate {
  Strategy strategy;
  std::vector<std::vector<Rational>> tau;
  std::vector<Rational> kappa;
  Rational residual;      // max over supported (i,j) of kappa_i - grad_ij
  Rational cs_violation;  // max over (i,j) of (kappa_i - grad_ij) * mu_ij
  Rational epsilon;       // tolerance the certificate was requested at
  bool valid = false;     // residual <= epsilon

  bool valid_at(const Rational& eps) const { return residual <= eps; }
};

KktCertificate kkt_certificate(const GameTree& tree, const Strategy& strategy,
                               const Rational& epsilon = Rational(0));
KktCertificate kkt_certificate(const UtilityPolynomial& poly, const Strategy& strategy,
                               const Rational& epsilon = Rational(0));

enum class VerifyKind { kCdtApprox, kCdtWellSupported, kEdt };

struct InfoSetGap {
  int info_set = 0;
  bool skipped = false;  // unreached info sets are not quantified over
  Rational gap;
};

struct EquilibriumReport {
  VerifyKind kind = VerifyKind::kCdtApprox;
  std::vector<InfoSetGap> gaps;
  Rational max_gap;
  Rational epsilon;
  bool pass = false;
  // EDT only: worst block-solver certificate gap; the verdict is certified up
  // to this slack.
  Rational certificate_slack;
};

// gap per reached info set: best pure action minus the played mixed action.
EquilibriumReport verify_cdt_approx(const GameTree& tree, const Strategy& strategy,
                                    const Rational& epsilon);

// gap per reached info set over supported actions only.
EquilibriumReport verify_cdt_well_supported(const GameTree& tree, const Strategy& strategy,
                                            const Rational& epsilon);

// gap per reached info set: U(mu with the block replaced by the block best
// response) - U(mu); mixed deviations are searched, not just pure ones.
EquilibriumReport verify_edt(const GameTree& tree, const Strategy& strategy,
                             const Rational& epsilon, const SolverConfig& block_cfg);

// Certified lambda > 0 such that every info set has Fr(I|mu) identically 0 or
// Fr(I|mu) >= lambda for all mu.
struct FrequencyBound {
  Rational lambda;
  bool strategy_independent = false;
  struct PerInfoSet {
    bool identically_zero = false;
    std::optional<Rational> certified_min;  // set when not identically zero
  };
  std::vector<PerInfoSet> per_info_set;
};

std::optional<FrequencyBound> frequency_lower_bound(const GameTree& tree);

// Constructive approximate-to-well-supported conversion: zeroes actions with
// probability <= sqrt(eps) at reached info sets and redistributes uniformly
// over the remaining support. The output is a (3 L |N| sqrt(eps))-well-
// supported (CDT,GT)-equilibrium when the input is an eps-approximate one.
Strategy well_supported_from_approx(const GameTree& tree, const Strategy& strategy,
                                    const Rational& eps, const FrequencyBound& bound,
                                    const Rational& lipschitz);

struct HierarchyRow {
  std::string label;
  Rational value;
  Rational exante_gap;  // grid-oracle optimum minus value (may be negative)
  bool exante_pass = false;
  bool edt_pass = false;
  bool cdt_pass = false;
};

struct HierarchyReport {
  Rational grid_value;  // brute-force lattice optimum used as the oracle
  Rational tolerance;
  std::vector<HierarchyRow> rows;
  std::vector<std::string> violations;  // broken hierarchy implications
  bool ok() const { return violations.empty(); }
};

// Checks the implication chain ex-ante optimal => EDT => CDT on the three
// supplied strategies at the given tolerance.
HierarchyReport hierarchy_check(const GameTree& tree, const Strategy& mu_exante,
                                const Strategy& mu_edt, const Strategy& mu_cdt,
                                const SolverConfig& cfg, const Rational& tolerance);

}  // namespace irg

#endif  // IRG_EQUILIBRIUM_HPP

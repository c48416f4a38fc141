#ifndef IRG_BELIEFS_HPP
#define IRG_BELIEFS_HPP

#include <tuple>
#include <utility>
#include <vector>

#include "irg/game.hpp"
#include "irg/rational.hpp"

namespace irg {

enum class BeliefSystem { kGT, kGDH };

// Self-locating beliefs at an info set: over member nodes, over terminal
// histories meeting the info set, and over the joint "at h in hist(z)"
// events. Node and history beliefs are the marginals of the joint table.
struct BeliefTable {
  int info_set = 0;
  BeliefSystem system = BeliefSystem::kGT;
  std::vector<std::pair<int, Rational>> node_beliefs;          // node -> prob
  std::vector<std::pair<int, Rational>> history_beliefs;       // terminal -> prob
  std::vector<std::tuple<int, int, Rational>> joint_beliefs;   // (node, terminal) -> prob
};

// Generalized Thirding: nodes weighted by reach probability over the visit
// frequency. Requires Fr(I | mu) > 0, else UnreachedInfoSetError.
BeliefTable gt_beliefs(const GameTree& tree, const Strategy& strategy, int info_set);

// Generalized Double Halving: terminal histories weighted by reach
// probability over the info-set reach probability; joint events split the
// history mass uniformly over I intersected with hist(z). Requires
// Prob(I | mu) > 0.
BeliefTable gdh_beliefs(const GameTree& tree, const Strategy& strategy, int info_set);

// (CDT,GT)-expected utility of playing alpha now, mu otherwise; linear in
// alpha. Requires Fr(I | mu) > 0.
Rational eu_cdt_gt(const GameTree& tree, const Strategy& strategy, int info_set,
                   const std::vector<Rational>& alpha);
Rational eu_cdt_gt_pure(const GameTree& tree, const Strategy& strategy, int info_set,
                        int action);

// (EDT,GDH)-expected utility of deviating the whole info set to alpha,
// computed through the reach-probability reformulation. Requires
// Prob(I | mu) > 0.
Rational eu_edt_gdh(const GameTree& tree, const Strategy& strategy, int info_set,
                    const std::vector<Rational>& alpha);

// (grad_ij U(mu), Fr(I_i | mu) * EU_cdt_gt(a_j | mu, I_i)); the second
// component is 0 when the info set is unreached. The two sides are computed
// along independent routes (symbolic polynomial vs tree-walk beliefs).
std::pair<Rational, Rational> derivative_identity(const GameTree& tree,
                                                  const Strategy& strategy, int i, int j);

}  // namespace irg

#endif  // IRG_BELIEFS_HPP

#include "irg/beliefs.hpp"

#include <algorithm>

#include "irg/errors.hpp"
#include "irg/polynomial.hpp"

namespace irg {

namespace {

void check_info_set(const GameTree& tree, int info_set) {
  if (info_set < 0 || info_set >= tree.num_info_sets())
    throw InputError("unknown info set index " + std::to_string(info_set));
}

void check_alpha(const GameTree& tree, const Strategy& strategy, int info_set,
                 const std::vector<Rational>& alpha) {
  const InfoSet& is = tree.info_set(info_set);
  if (alpha.size() != is.actions.size())
    throw DimensionError("mixed action for info set '" + is.label + "' has " +
                         std::to_string(alpha.size()) + " entries, expected " +
                         std::to_string(is.actions.size()));
  Rational sum(0);
  for (const Rational& p : alpha) {
    if (p.sign() < 0) throw InputError("mixed action with a negative entry");
    sum += p;
  }
  static const Rational kFloatTol(1, 1000000000000L);
  bool ok = strategy.mode == NumericMode::kExact ? sum == Rational(1)
                                                 : (sum - Rational(1)).abs() <= kFloatTol;
  if (!ok) throw InputError("mixed action sums to " + sum.str());
}

// Members of I on the history of z, in root-to-z order.
std::vector<int> infoset_nodes_on_history(const GameTree& tree, int info_set, int terminal) {
  std::vector<int> out;
  int cur = terminal;
  while (cur >= 0) {
    const Node& nd = tree.node(cur);
    if (nd.kind == NodeKind::kDecision && nd.info_set == info_set) out.push_back(cur);
    cur = nd.parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// Conditional reach Prob(z | mu, h) given that reach[h] may be zero.
Rational conditional_reach(const GameTree& tree, const Strategy& strategy, int h, int z) {
  Rational p(1);
  int cur = z;
  while (cur != h) {
    const Node& nd = tree.node(cur);
    if (nd.parent < 0) return Rational(0);
    const Node& par = tree.node(nd.parent);
    p *= par.kind == NodeKind::kChance ? par.chance[nd.incoming]
                                       : strategy.blocks[par.info_set][nd.incoming];
    cur = nd.parent;
  }
  return p;
}

}  // namespace

BeliefTable gt_beliefs(const GameTree& tree, const Strategy& strategy, int info_set) {
  check_info_set(tree, info_set);
  InfoSetStats stats = info_set_stats(tree, strategy, info_set);
  if (stats.visit_freq.is_zero())
    throw UnreachedInfoSetError("unreached info set '" + tree.info_set(info_set).label +
                                "' (zero visit frequency)");
  auto reach = node_reach_probs(tree, strategy);
  BeliefTable table;
  table.info_set = info_set;
  table.system = BeliefSystem::kGT;
  for (int h : tree.info_set(info_set).nodes)
    table.node_beliefs.emplace_back(h, reach[h] / stats.visit_freq);
  for (int z : tree.terminals()) {
    auto on_path = infoset_nodes_on_history(tree, info_set, z);
    if (on_path.empty()) continue;
    table.history_beliefs.emplace_back(
        z, Rational(static_cast<long>(on_path.size())) * reach[z] / stats.visit_freq);
    for (int h : on_path)
      table.joint_beliefs.emplace_back(
          h, z, (reach[h] / stats.visit_freq) * conditional_reach(tree, strategy, h, z));
  }
  return table;
}

BeliefTable gdh_beliefs(const GameTree& tree, const Strategy& strategy, int info_set) {
  check_info_set(tree, info_set);
  InfoSetStats stats = info_set_stats(tree, strategy, info_set);
  if (stats.reach_prob.is_zero())
    throw UnreachedInfoSetError("unreached info set '" + tree.info_set(info_set).label +
                                "' (zero reach probability)");
  auto reach = node_reach_probs(tree, strategy);
  BeliefTable table;
  table.info_set = info_set;
  table.system = BeliefSystem::kGDH;
  std::vector<Rational> node_mass(tree.num_nodes(), Rational(0));
  for (int z : tree.terminals()) {
    auto on_path = infoset_nodes_on_history(tree, info_set, z);
    if (on_path.empty()) continue;
    Rational hist_belief = reach[z] / stats.reach_prob;
    table.history_beliefs.emplace_back(z, hist_belief);
    Rational split = hist_belief / Rational(static_cast<long>(on_path.size()));
    for (int h : on_path) {
      table.joint_beliefs.emplace_back(h, z, split);
      node_mass[h] += split;
    }
  }
  for (int h : tree.info_set(info_set).nodes) table.node_beliefs.emplace_back(h, node_mass[h]);
  return table;
}

Rational eu_cdt_gt(const GameTree& tree, const Strategy& strategy, int info_set,
                   const std::vector<Rational>& alpha) {
  check_info_set(tree, info_set);
  check_alpha(tree, strategy, info_set, alpha);
  InfoSetStats stats = info_set_stats(tree, strategy, info_set);
  if (stats.visit_freq.is_zero())
    throw UnreachedInfoSetError("unreached info set '" + tree.info_set(info_set).label +
                                "' (zero visit frequency)");
  auto reach = node_reach_probs(tree, strategy);
  Rational total(0);
  for (int h : tree.info_set(info_set).nodes) {
    if (reach[h].is_zero()) continue;
    Rational inner(0);
    const Node& nd = tree.node(h);
    for (std::size_t a = 0; a < alpha.size(); ++a)
      if (!alpha[a].is_zero())
        inner += alpha[a] * expected_utility(tree, strategy, nd.children[a]);
    total += (reach[h] / stats.visit_freq) * inner;
  }
  return total;
}

Rational eu_cdt_gt_pure(const GameTree& tree, const Strategy& strategy, int info_set,
                        int action) {
  check_info_set(tree, info_set);
  const InfoSet& is = tree.info_set(info_set);
  if (action < 0 || action >= static_cast<int>(is.actions.size()))
    throw InputError("action index out of range for info set '" + is.label + "'");
  std::vector<Rational> alpha(is.actions.size(), Rational(0));
  alpha[action] = Rational(1);
  return eu_cdt_gt(tree, strategy, info_set, alpha);
}

Rational eu_edt_gdh(const GameTree& tree, const Strategy& strategy, int info_set,
                    const std::vector<Rational>& alpha) {
  check_info_set(tree, info_set);
  check_alpha(tree, strategy, info_set, alpha);
  InfoSetStats stats = info_set_stats(tree, strategy, info_set);
  if (stats.reach_prob.is_zero())
    throw UnreachedInfoSetError("unreached info set '" + tree.info_set(info_set).label +
                                "' (zero reach probability)");
  Strategy deviated = apply_edt_deviation(strategy, info_set, alpha);
  auto reach = node_reach_probs(tree, deviated);
  Rational sum(0);
  for (int z : tree.terminals()) {
    if (tree.node(z).payoff.is_zero()) continue;
    if (infoset_nodes_on_history(tree, info_set, z).empty()) continue;
    sum += reach[z] * tree.node(z).payoff;
  }
  return sum / stats.reach_prob;
}

std::pair<Rational, Rational> derivative_identity(const GameTree& tree,
                                                  const Strategy& strategy, int i, int j) {
  check_info_set(tree, i);
  UtilityPolynomial u = utility_polynomial(tree);
  Rational lhs = u.partial_at(i, j, strategy);
  InfoSetStats stats = info_set_stats(tree, strategy, i);
  Rational rhs = stats.visit_freq.is_zero()
                     ? Rational(0)
                     : stats.visit_freq * eu_cdt_gt_pure(tree, strategy, i, j);
  return {lhs, rhs};
}

}  // namespace irg

#include "irg/game.hpp"

#include <algorithm>
#include <set>

#include "irg/errors.hpp"

namespace irg {

const std::vector<std::string>& GameTree::action_labels(int node_index) const {
  const Node& n = nodes_[node_index];
  if (n.kind == NodeKind::kDecision) return info_sets_[n.info_set].actions;
  return n.actions;
}

std::optional<int> GameTree::find_info_set(const std::string& label) const {
  for (int i = 0; i < num_info_sets(); ++i)
    if (info_sets_[i].label == label) return i;
  return std::nullopt;
}

std::optional<int> GameTree::find_node_by_id(std::uint32_t id) const {
  for (int i = 0; i < num_nodes(); ++i)
    if (nodes_[i].id == id) return i;
  return std::nullopt;
}

std::vector<int> GameTree::terminals() const {
  std::vector<int> out;
  for (int i = 0; i < num_nodes(); ++i)
    if (nodes_[i].kind == NodeKind::kTerminal) out.push_back(i);
  return out;
}

int GameTree::max_decision_depth() const {
  std::vector<int> count(nodes_.size(), 0);
  int best = 0;
  for (int i = 0; i < num_nodes(); ++i) {
    const Node& n = nodes_[i];
    int inherited = n.parent >= 0 ? count[n.parent] : 0;
    count[i] = inherited + (n.kind == NodeKind::kDecision ? 1 : 0);
    if (n.kind == NodeKind::kTerminal) best = std::max(best, count[i]);
  }
  return best;
}

std::vector<Rational> Strategy::flatten() const {
  std::vector<Rational> out;
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<double> Strategy::to_doubles() const {
  std::vector<double> out;
  for (const auto& b : blocks)
    for (const auto& r : b) out.push_back(r.to_double());
  return out;
}

Strategy Strategy::from_flat(const std::vector<Rational>& flat,
                             const std::vector<int>& sizes, NumericMode mode) {
  Strategy s;
  s.mode = mode;
  std::size_t pos = 0;
  for (int m : sizes) {
    if (pos + m > flat.size()) throw DimensionError("flat strategy vector too short");
    s.blocks.emplace_back(flat.begin() + pos, flat.begin() + pos + m);
    pos += m;
  }
  if (pos != flat.size()) throw DimensionError("flat strategy vector too long");
  return s;
}

Strategy Strategy::from_doubles(const std::vector<double>& flat,
                                const std::vector<int>& sizes) {
  std::vector<Rational> r;
  r.reserve(flat.size());
  for (double d : flat) r.push_back(Rational::from_double(d));
  return from_flat(r, sizes, NumericMode::kFloat64);
}

namespace {

void note(ValidationReport& rep, std::string msg, std::optional<std::uint32_t> id = {}) {
  rep.issues.push_back({std::move(msg), id});
}

}  // namespace

ValidationReport validate_game(const GameTree& tree) {
  ValidationReport rep;
  int n = tree.num_nodes();
  if (n == 0) {
    note(rep, "game has no nodes");
    return rep;
  }
  if (tree.node(0).parent != -1) note(rep, "node 0 must be the root", tree.node(0).id);
  for (int i = 1; i < n; ++i)
    if (tree.node(i).parent < 0)
      note(rep, "multiple roots: node has no parent", tree.node(i).id);

  std::set<std::uint32_t> ids;
  for (int i = 0; i < n; ++i) {
    const Node& nd = tree.node(i);
    if (!ids.insert(nd.id).second) note(rep, "duplicate node id", nd.id);
    if (nd.parent >= 0) {
      if (nd.parent >= n) {
        note(rep, "parent index out of range", nd.id);
        continue;
      }
      const Node& p = tree.node(nd.parent);
      if (nd.incoming < 0 || nd.incoming >= static_cast<int>(p.children.size()) ||
          p.children[nd.incoming] != i)
        note(rep, "child/parent links inconsistent", nd.id);
    }
    switch (nd.kind) {
      case NodeKind::kTerminal:
        if (!nd.children.empty()) note(rep, "terminal node with children", nd.id);
        break;
      case NodeKind::kChance: {
        if (nd.info_set >= 0) note(rep, "chance node assigned to an info set", nd.id);
        if (nd.children.empty()) note(rep, "chance node without children", nd.id);
        if (nd.chance.size() != nd.children.size() || nd.actions.size() != nd.children.size()) {
          note(rep, "chance node distribution/labels do not match children", nd.id);
          break;
        }
        Rational sum(0);
        for (const Rational& p : nd.chance) {
          if (p.sign() < 0) note(rep, "negative chance probability", nd.id);
          sum += p;
        }
        if (sum != Rational(1))
          note(rep, "distribution sums to " + sum.str(), nd.id);
        std::set<std::string> labels(nd.actions.begin(), nd.actions.end());
        if (labels.size() != nd.actions.size())
          note(rep, "duplicate outgoing edge labels", nd.id);
        break;
      }
      case NodeKind::kDecision: {
        if (nd.info_set < 0 || nd.info_set >= tree.num_info_sets()) {
          note(rep, "decision node without info set", nd.id);
          break;
        }
        const InfoSet& is = tree.info_set(nd.info_set);
        if (nd.children.size() != is.actions.size())
          note(rep, "decision node children do not match info set '" + is.label + "' actions",
               nd.id);
        break;
      }
    }
  }
  for (int s = 0; s < tree.num_info_sets(); ++s) {
    const InfoSet& is = tree.info_set(s);
    if (is.nodes.empty()) note(rep, "info set '" + is.label + "' has no member nodes");
    if (is.actions.empty()) note(rep, "info set '" + is.label + "' has no actions");
    std::set<std::string> labels(is.actions.begin(), is.actions.end());
    if (labels.size() != is.actions.size())
      note(rep, "info set '" + is.label + "' has duplicate action labels");
    for (int i : is.nodes) {
      if (i < 0 || i >= n || tree.node(i).kind != NodeKind::kDecision ||
          tree.node(i).info_set != s)
        note(rep, "info set '" + is.label + "' membership inconsistent");
    }
  }
  // Cycle/forest check: every node must reach the root by parent links.
  for (int i = 0; i < n; ++i) {
    int cur = i, steps = 0;
    while (cur >= 0 && steps <= n) {
      cur = tree.node(cur).parent;
      ++steps;
    }
    if (steps > n) {
      note(rep, "parent links contain a cycle", tree.node(i).id);
      break;
    }
  }
  return rep;
}

void validate_strategy(const GameTree& tree, const Strategy& strategy) {
  if (static_cast<int>(strategy.blocks.size()) != tree.num_info_sets())
    throw DimensionError("strategy has " + std::to_string(strategy.blocks.size()) +
                         " blocks, game has " + std::to_string(tree.num_info_sets()) +
                         " info sets");
  static const Rational kFloatTol(1, 1000000000000L);  // 1e-12
  for (int i = 0; i < tree.num_info_sets(); ++i) {
    const auto& block = strategy.blocks[i];
    const InfoSet& is = tree.info_set(i);
    if (block.size() != is.actions.size())
      throw DimensionError("block for info set '" + is.label + "' has " +
                           std::to_string(block.size()) + " entries, expected " +
                           std::to_string(is.actions.size()));
    Rational sum(0);
    for (const Rational& p : block) {
      if (p.sign() < 0)
        throw InputError("negative probability in block for info set '" + is.label + "'");
      sum += p;
    }
    Rational err = (sum - Rational(1)).abs();
    bool ok = strategy.mode == NumericMode::kExact ? err.is_zero() : err <= kFloatTol;
    if (!ok)
      throw InputError("block for info set '" + is.label + "' sums to " + sum.str());
  }
}

NodeHistory history(const GameTree& tree, int node_index) {
  if (node_index < 0 || node_index >= tree.num_nodes())
    throw InputError("unknown node index " + std::to_string(node_index));
  NodeHistory h;
  h.node = node_index;
  int cur = node_index;
  while (cur >= 0) {
    h.node_path.push_back(cur);
    const Node& nd = tree.node(cur);
    if (nd.parent >= 0) {
      h.action_indices.push_back(nd.incoming);
      h.action_path.push_back(tree.action_labels(nd.parent)[nd.incoming]);
    }
    cur = nd.parent;
  }
  std::reverse(h.node_path.begin(), h.node_path.end());
  std::reverse(h.action_path.begin(), h.action_path.end());
  std::reverse(h.action_indices.begin(), h.action_indices.end());
  return h;
}

std::vector<Rational> node_reach_probs(const GameTree& tree, const Strategy& strategy) {
  validate_strategy(tree, strategy);
  std::vector<Rational> reach(tree.num_nodes(), Rational(0));
  if (tree.num_nodes() == 0) return reach;
  reach[tree.root()] = Rational(1);
  for (int i = 0; i < tree.num_nodes(); ++i) {
    const Node& nd = tree.node(i);
    for (std::size_t c = 0; c < nd.children.size(); ++c) {
      Rational p = nd.kind == NodeKind::kChance ? nd.chance[c]
                                                : strategy.blocks[nd.info_set][c];
      reach[nd.children[c]] = reach[i] * p;
    }
  }
  return reach;
}

Rational reach_prob(const GameTree& tree, const Strategy& strategy, int from, int to) {
  if (from < 0 || from >= tree.num_nodes() || to < 0 || to >= tree.num_nodes())
    throw InputError("unknown node index");
  validate_strategy(tree, strategy);
  // Walk ancestors of `to` until `from` is found (or not).
  Rational p(1);
  int cur = to;
  while (cur != from) {
    const Node& nd = tree.node(cur);
    if (nd.parent < 0) return Rational(0);  // from is not on hist(to)
    const Node& par = tree.node(nd.parent);
    p *= par.kind == NodeKind::kChance ? par.chance[nd.incoming]
                                       : strategy.blocks[par.info_set][nd.incoming];
    cur = nd.parent;
  }
  return p;
}

std::vector<int> first_entry_nodes(const GameTree& tree, int info_set) {
  if (info_set < 0 || info_set >= tree.num_info_sets())
    throw InputError("unknown info set index " + std::to_string(info_set));
  std::vector<int> out;
  for (int h : tree.info_set(info_set).nodes) {
    bool first = true;
    int cur = tree.node(h).parent;
    while (cur >= 0) {
      if (tree.node(cur).kind == NodeKind::kDecision && tree.node(cur).info_set == info_set) {
        first = false;
        break;
      }
      cur = tree.node(cur).parent;
    }
    if (first) out.push_back(h);
  }
  return out;
}

InfoSetStats info_set_stats(const GameTree& tree, const Strategy& strategy, int info_set) {
  if (info_set < 0 || info_set >= tree.num_info_sets())
    throw InputError("unknown info set index " + std::to_string(info_set));
  InfoSetStats stats;
  stats.info_set = info_set;
  stats.first_entry_nodes = first_entry_nodes(tree, info_set);
  auto reach = node_reach_probs(tree, strategy);
  stats.reach_prob = Rational(0);
  stats.visit_freq = Rational(0);
  for (int h : stats.first_entry_nodes) stats.reach_prob += reach[h];
  for (int h : tree.info_set(info_set).nodes) stats.visit_freq += reach[h];
  return stats;
}

namespace {

Rational expected_utility_below(const GameTree& tree, const Strategy& strategy, int at) {
  const Node& nd = tree.node(at);
  switch (nd.kind) {
    case NodeKind::kTerminal:
      return nd.payoff;
    case NodeKind::kChance: {
      Rational sum(0);
      for (std::size_t c = 0; c < nd.children.size(); ++c)
        if (!nd.chance[c].is_zero())
          sum += nd.chance[c] * expected_utility_below(tree, strategy, nd.children[c]);
      return sum;
    }
    case NodeKind::kDecision: {
      Rational sum(0);
      for (std::size_t c = 0; c < nd.children.size(); ++c) {
        const Rational& p = strategy.blocks[nd.info_set][c];
        if (!p.is_zero()) sum += p * expected_utility_below(tree, strategy, nd.children[c]);
      }
      return sum;
    }
  }
  return Rational(0);
}

}  // namespace

Rational expected_utility(const GameTree& tree, const Strategy& strategy, int at) {
  if (at < 0 || at >= tree.num_nodes()) throw InputError("unknown node index");
  validate_strategy(tree, strategy);
  return expected_utility_below(tree, strategy, at);
}

Rational expected_utility(const GameTree& tree, const Strategy& strategy) {
  return expected_utility(tree, strategy, tree.root());
}

bool has_absentmindedness(const GameTree& tree) {
  for (int s = 0; s < tree.num_info_sets(); ++s) {
    for (int h : tree.info_set(s).nodes) {
      int cur = tree.node(h).parent;
      while (cur >= 0) {
        const Node& nd = tree.node(cur);
        if (nd.kind == NodeKind::kDecision && nd.info_set == s) return true;
        cur = nd.parent;
      }
    }
  }
  return false;
}

Strategy apply_edt_deviation(const Strategy& strategy, int info_set,
                             const std::vector<Rational>& alpha) {
  if (info_set < 0 || info_set >= static_cast<int>(strategy.blocks.size()))
    throw InputError("unknown info set index " + std::to_string(info_set));
  if (alpha.size() != strategy.blocks[info_set].size())
    throw DimensionError("deviation distribution has wrong dimension");
  Strategy out = strategy;
  out.blocks[info_set] = alpha;
  return out;
}

Strategy uniform_strategy(const GameTree& tree) {
  Strategy s;
  for (const InfoSet& is : tree.info_sets()) {
    int m = static_cast<int>(is.actions.size());
    s.blocks.emplace_back(m, Rational(1, m));
  }
  return s;
}

Strategy pure_strategy(const GameTree& tree, const std::vector<int>& picks) {
  if (static_cast<int>(picks.size()) != tree.num_info_sets())
    throw DimensionError("pure strategy needs one action per info set");
  Strategy s;
  for (int i = 0; i < tree.num_info_sets(); ++i) {
    int m = static_cast<int>(tree.info_set(i).actions.size());
    if (picks[i] < 0 || picks[i] >= m) throw InputError("pure action index out of range");
    std::vector<Rational> block(m, Rational(0));
    block[picks[i]] = Rational(1);
    s.blocks.push_back(std::move(block));
  }
  return s;
}

std::vector<int> block_sizes(const GameTree& tree) {
  std::vector<int> out;
  for (const InfoSet& is : tree.info_sets())
    out.push_back(static_cast<int>(is.actions.size()));
  return out;
}

std::string serialize_block_text(const std::vector<Rational>& block) {
  std::string out = "(";
  for (std::size_t j = 0; j < block.size(); ++j) {
    if (j) out += ", ";
    out += block[j].str();
  }
  out += ")";
  return out;
}

int GameBuilder::info_set(const std::string& label, std::vector<std::string> actions) {
  info_sets_.push_back({label, std::move(actions), {}});
  return static_cast<int>(info_sets_.size()) - 1;
}

int GameBuilder::attach(Node node, int parent) {
  int idx = static_cast<int>(nodes_.size());
  node.parent = parent;
  node.id = static_cast<std::uint32_t>(idx);
  if (parent >= 0) {
    node.incoming = static_cast<int>(nodes_[parent].children.size());
    nodes_[parent].children.push_back(idx);
  }
  nodes_.push_back(std::move(node));
  return idx;
}

int GameBuilder::decision(int parent, int info_set) {
  Node n;
  n.kind = NodeKind::kDecision;
  n.info_set = info_set;
  int idx = attach(std::move(n), parent);
  info_sets_[info_set].nodes.push_back(idx);
  return idx;
}

int GameBuilder::chance(int parent, std::vector<std::string> labels,
                        std::vector<Rational> probs) {
  Node n;
  n.kind = NodeKind::kChance;
  n.actions = std::move(labels);
  n.chance = std::move(probs);
  return attach(std::move(n), parent);
}

int GameBuilder::terminal(int parent, Rational payoff) {
  Node n;
  n.kind = NodeKind::kTerminal;
  n.payoff = std::move(payoff);
  return attach(std::move(n), parent);
}

GameTree GameBuilder::build_unchecked() {
  return GameTree(name_, std::move(nodes_), std::move(info_sets_));
}

GameTree GameBuilder::build() {
  GameTree g = build_unchecked();
  ValidationReport rep = validate_game(g);
  if (!rep.pass()) {
    std::string msg = "game '" + g.name() + "' is invalid:";
    for (const auto& issue : rep.issues) msg += " " + issue.message + ";";
    throw InputError(msg);
  }
  return g;
}

}  // namespace irg

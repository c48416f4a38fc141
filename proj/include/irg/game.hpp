#ifndef IRG_GAME_HPP
#define IRG_GAME_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irg/rational.hpp"

namespace irg {

enum class NodeKind { kDecision, kChance, kTerminal };

struct Node {
  NodeKind kind = NodeKind::kTerminal;
  int parent = -1;            // node index; -1 for the root
  int incoming = -1;          // position of this node among the parent's children
  std::vector<int> children;  // node indices, one per outgoing action, in action order
  int info_set = -1;          // decision nodes only
  std::vector<std::string> actions;  // chance nodes: outgoing edge labels
  std::vector<Rational> chance;      // chance nodes: probability per child
  Rational payoff;                   // terminal nodes
  std::uint32_t id = 0;              // external id used in files and reports
};

struct InfoSet {
  std::string label;
  std::vector<std::string> actions;  // ordered action list A_I; order is authoritative
  std::vector<int> nodes;            // member node indices
};

// Single-player extensive-form game with imperfect recall. Immutable after
// construction; all operations below are pure functions.
class GameTree {
 public:
  GameTree() = default;
  GameTree(std::string name, std::vector<Node> nodes, std::vector<InfoSet> info_sets)
      : name_(std::move(name)), nodes_(std::move(nodes)), info_sets_(std::move(info_sets)) {}

  const std::string& name() const { return name_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int root() const { return 0; }
  const Node& node(int i) const { return nodes_[i]; }
  const std::vector<Node>& nodes() const { return nodes_; }
  int num_info_sets() const { return static_cast<int>(info_sets_.size()); }
  const InfoSet& info_set(int i) const { return info_sets_[i]; }
  const std::vector<InfoSet>& info_sets() const { return info_sets_; }

  // Outgoing edge labels of a nonterminal node.
  const std::vector<std::string>& action_labels(int node_index) const;

  std::optional<int> find_info_set(const std::string& label) const;
  std::optional<int> find_node_by_id(std::uint32_t id) const;

  std::vector<int> terminals() const;
  int max_decision_depth() const;  // max decision nodes on any root-to-leaf path

 private:
  std::string name_;
  std::vector<Node> nodes_;
  std::vector<InfoSet> info_sets_;
};

enum class NumericMode { kExact, kFloat64 };

// Behavioural strategy: one distribution per info set, stored exactly.
// kFloat64 marks values that came from floating point (block sums are then
// only required to be within 1e-12 of one).
struct Strategy {
  std::vector<std::vector<Rational>> blocks;
  NumericMode mode = NumericMode::kExact;

  std::vector<Rational> flatten() const;
  std::vector<double> to_doubles() const;
  static Strategy from_flat(const std::vector<Rational>& flat,
                            const std::vector<int>& block_sizes, NumericMode mode);
  static Strategy from_doubles(const std::vector<double>& flat,
                               const std::vector<int>& block_sizes);
};

struct NodeHistory {
  int node = 0;
  std::vector<int> node_path;            // nu(h,0..d), node_path[0] = root
  std::vector<std::string> action_path;  // a(h,0..d-1), edge labels
  std::vector<int> action_indices;       // same edges as child positions
  int depth() const { return static_cast<int>(action_path.size()); }
};

struct InfoSetStats {
  int info_set = 0;
  std::vector<int> first_entry_nodes;  // I^first
  Rational reach_prob;                 // Prob(I | mu)
  Rational visit_freq;                 // Fr(I | mu)
};

struct ValidationIssue {
  std::string message;
  std::optional<std::uint32_t> node_id;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool pass() const { return issues.empty(); }
};

ValidationReport validate_game(const GameTree& tree);

// Throws DimensionError / InputError when the strategy does not fit the game.
void validate_strategy(const GameTree& tree, const Strategy& strategy);

NodeHistory history(const GameTree& tree, int node_index);

// Reach probability of every node in one pass.
std::vector<Rational> node_reach_probs(const GameTree& tree, const Strategy& strategy);

// Prob(to | mu, from): product of action probabilities along the path if
// `from` lies on the history of `to`, else 0.
Rational reach_prob(const GameTree& tree, const Strategy& strategy, int from, int to);

InfoSetStats info_set_stats(const GameTree& tree, const Strategy& strategy, int info_set);

// First-entry nodes of an info set (members with no proper ancestor in it).
std::vector<int> first_entry_nodes(const GameTree& tree, int info_set);

Rational expected_utility(const GameTree& tree, const Strategy& strategy, int at);
Rational expected_utility(const GameTree& tree, const Strategy& strategy);

bool has_absentmindedness(const GameTree& tree);

Strategy apply_edt_deviation(const Strategy& strategy, int info_set,
                             const std::vector<Rational>& alpha);

Strategy uniform_strategy(const GameTree& tree);
// One pure action index per info set.
Strategy pure_strategy(const GameTree& tree, const std::vector<int>& picks);

std::vector<int> block_sizes(const GameTree& tree);

// "(1/2, 0, 1/2)" formatting used by strategy files and reports.
std::string serialize_block_text(const std::vector<Rational>& block);

const std::vector<std::string>& builtin_game_names();
GameTree builtin_game(const std::string& name);
std::vector<std::pair<std::string, GameTree>> builtin_games();

// Incremental game construction. Nodes are numbered in creation order, which
// callers keep in preorder; build() validates the result.
class GameBuilder {
 public:
  explicit GameBuilder(std::string name) : name_(std::move(name)) {}

  int info_set(const std::string& label, std::vector<std::string> actions);
  // parent == -1 creates the root; children attach in action order.
  int decision(int parent, int info_set);
  int chance(int parent, std::vector<std::string> labels, std::vector<Rational> probs);
  int terminal(int parent, Rational payoff);

  GameTree build();            // throws InputError if validation fails
  GameTree build_unchecked();  // for deliberately invalid test inputs

 private:
  int attach(Node node, int parent);
  std::string name_;
  std::vector<Node> nodes_;
  std::vector<InfoSet> info_sets_;
};

}  // namespace irg

#endif  // IRG_GAME_HPP

#include "irg/polynomial.hpp"

#include <algorithm>
#include <string>

#include "irg/errors.hpp"

namespace irg {

int Monomial::degree() const {
  int d = 0;
  for (const auto& [v, e] : factors) d += e;
  return d;
}

int Monomial::exponent(int var) const {
  for (const auto& [v, e] : factors)
    if (v == var) return e;
  return 0;
}

Monomial Monomial::times(const Monomial& other) const {
  Monomial out;
  std::size_t a = 0, b = 0;
  while (a < factors.size() || b < other.factors.size()) {
    if (b == other.factors.size() ||
        (a < factors.size() && factors[a].first < other.factors[b].first)) {
      out.factors.push_back(factors[a++]);
    } else if (a == factors.size() || other.factors[b].first < factors[a].first) {
      out.factors.push_back(other.factors[b++]);
    } else {
      out.factors.emplace_back(factors[a].first, factors[a].second + other.factors[b].second);
      ++a;
      ++b;
    }
  }
  return out;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  // Dense-lex descending: walk variables in increasing index; the monomial
  // with the larger exponent at the first difference comes first.
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    if (a.factors[i].first < b.factors[j].first) return true;   // a has positive exp earlier
    if (b.factors[j].first < a.factors[i].first) return false;
    if (a.factors[i].second != b.factors[j].second)
      return a.factors[i].second > b.factors[j].second;
    ++i;
    ++j;
  }
  return i < a.factors.size();  // remaining positive exponents sort first
}

UtilityPolynomial::UtilityPolynomial(std::vector<int> block_sizes)
    : block_sizes_(std::move(block_sizes)) {
  offsets_.reserve(block_sizes_.size());
  for (int m : block_sizes_) {
    if (m <= 0) throw InputError("polynomial block sizes must be positive");
    offsets_.push_back(num_vars_);
    num_vars_ += m;
  }
}

std::pair<int, int> UtilityPolynomial::var_block(int v) const {
  for (int i = num_blocks() - 1; i >= 0; --i)
    if (v >= offsets_[i]) return {i, v - offsets_[i]};
  throw InputError("variable index out of range");
}

int UtilityPolynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void UtilityPolynomial::add_term(const Monomial& m, const Rational& coeff) {
  if (coeff.is_zero()) return;
  for (const auto& [v, e] : m.factors) {
    if (v < 0 || v >= num_vars_) throw InputError("monomial variable out of range");
    if (e <= 0) throw InputError("monomial exponent must be positive");
  }
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational UtilityPolynomial::constant_term() const {
  auto it = terms_.find(Monomial::one());
  return it == terms_.end() ? Rational(0) : it->second;
}

void UtilityPolynomial::check_point(std::size_t n) const {
  if (static_cast<int>(n) != num_vars_)
    throw DimensionError("point has " + std::to_string(n) + " coordinates, polynomial has " +
                         std::to_string(num_vars_) + " variables");
}

Rational UtilityPolynomial::eval(const std::vector<Rational>& flat) const {
  check_point(flat.size());
  Rational sum(0);
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (const auto& [v, e] : m.factors) term *= pow(flat[v], static_cast<unsigned>(e));
    sum += term;
  }
  return sum;
}

double UtilityPolynomial::eval_d(const std::vector<double>& flat) const {
  check_point(flat.size());
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double term = c.to_double();
    for (const auto& [v, e] : m.factors)
      for (int k = 0; k < e; ++k) term *= flat[v];
    sum += term;
  }
  return sum;
}

Rational UtilityPolynomial::eval(const Strategy& point) const {
  return eval(point.flatten());
}

UtilityPolynomial UtilityPolynomial::partial(int var) const {
  if (var < 0 || var >= num_vars_) throw InputError("partial: variable out of range");
  UtilityPolynomial out(block_sizes_);
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(var);
    if (e == 0) continue;
    Monomial d;
    for (const auto& [v, k] : m.factors) {
      if (v == var) {
        if (k > 1) d.factors.emplace_back(v, k - 1);
      } else {
        d.factors.emplace_back(v, k);
      }
    }
    out.add_term(d, c * Rational(e));
  }
  return out;
}

Rational UtilityPolynomial::partial_at(int block, int j, const Strategy& point) const {
  if (block < 0 || block >= num_blocks() || j < 0 || j >= block_sizes_[block])
    throw InputError("partial_at: (block, action) out of range");
  return partial(var_index(block, j)).eval(point);
}

std::vector<Rational> UtilityPolynomial::gradient(const std::vector<Rational>& flat) const {
  check_point(flat.size());
  std::vector<Rational> g(num_vars_, Rational(0));
  for (int v = 0; v < num_vars_; ++v) g[v] = partial(v).eval(flat);
  return g;
}

std::vector<Rational> UtilityPolynomial::gradient(const Strategy& point) const {
  return gradient(point.flatten());
}

UtilityPolynomial UtilityPolynomial::operator*(const UtilityPolynomial& other) const {
  if (block_sizes_ != other.block_sizes_)
    throw DimensionError("polynomial product requires identical shapes");
  UtilityPolynomial out(block_sizes_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) out.add_term(ma.times(mb), ca * cb);
  return out;
}

UtilityPolynomial& UtilityPolynomial::operator+=(const UtilityPolynomial& other) {
  if (block_sizes_ != other.block_sizes_)
    throw DimensionError("polynomial sum requires identical shapes");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Rational UtilityPolynomial::coeff_abs_sum() const {
  Rational sum(0);
  for (const auto& [m, c] : terms_) sum += c.abs();
  return sum;
}

namespace {

// Monomial of the path from the root to `node`: decision steps contribute
// variable factors, chance steps a constant coefficient.
void path_monomial(const GameTree& tree, const UtilityPolynomial& shape, int node,
                   Monomial& mono, Rational& coeff) {
  std::vector<std::pair<int, int>> steps;  // (parent, incoming)
  int cur = node;
  while (tree.node(cur).parent >= 0) {
    steps.emplace_back(tree.node(cur).parent, tree.node(cur).incoming);
    cur = tree.node(cur).parent;
  }
  std::vector<int> exps(shape.num_vars(), 0);
  coeff = Rational(1);
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const Node& par = tree.node(it->first);
    if (par.kind == NodeKind::kChance) {
      coeff *= par.chance[it->second];
    } else {
      ++exps[shape.var_index(par.info_set, it->second)];
    }
  }
  mono = Monomial::one();
  for (int v = 0; v < shape.num_vars(); ++v)
    if (exps[v] > 0) mono.factors.emplace_back(v, exps[v]);
}

UtilityPolynomial node_sum_polynomial(const GameTree& tree, const std::vector<int>& nodes) {
  UtilityPolynomial p(block_sizes(tree));
  for (int h : nodes) {
    Monomial m;
    Rational c;
    path_monomial(tree, p, h, m, c);
    p.add_term(m, c);
  }
  return p;
}

}  // namespace

UtilityPolynomial utility_polynomial(const GameTree& tree) {
  UtilityPolynomial p(block_sizes(tree));
  for (int z : tree.terminals()) {
    if (tree.node(z).payoff.is_zero()) continue;
    Monomial m;
    Rational c;
    path_monomial(tree, p, z, m, c);
    p.add_term(m, c * tree.node(z).payoff);
  }
  return p;
}

UtilityPolynomial frequency_polynomial(const GameTree& tree, int info_set) {
  if (info_set < 0 || info_set >= tree.num_info_sets())
    throw InputError("unknown info set index");
  return node_sum_polynomial(tree, tree.info_set(info_set).nodes);
}

UtilityPolynomial reach_polynomial(const GameTree& tree, int info_set) {
  return node_sum_polynomial(tree, first_entry_nodes(tree, info_set));
}

UtilityPolynomial restrict_to_simplex(const UtilityPolynomial& p) {
  // Precompute 1 - sum of the leading variables per block.
  std::vector<UtilityPolynomial> complement;
  for (int i = 0; i < p.num_blocks(); ++i) {
    UtilityPolynomial c(p.block_sizes());
    c.add_term(Monomial::one(), Rational(1));
    for (int j = 0; j + 1 < p.block_sizes()[i]; ++j)
      c.add_term(Monomial::var(p.var_index(i, j)), Rational(-1));
    complement.push_back(std::move(c));
  }
  UtilityPolynomial out(p.block_sizes());
  for (const auto& [m, coeff] : p.terms()) {
    UtilityPolynomial term(p.block_sizes());
    Monomial kept;
    std::vector<std::pair<int, int>> substituted;  // (block, exponent)
    for (const auto& [v, e] : m.factors) {
      auto [block, j] = p.var_block(v);
      if (j + 1 == p.block_sizes()[block])
        substituted.emplace_back(block, e);
      else
        kept.factors.emplace_back(v, e);
    }
    term.add_term(kept, coeff);
    for (const auto& [block, e] : substituted)
      for (int k = 0; k < e; ++k) term = term * complement[block];
    out += term;
  }
  return out;
}

UtilityPolynomial restrict_block(const UtilityPolynomial& p, int block, const Strategy& point) {
  if (block < 0 || block >= p.num_blocks()) throw InputError("restrict_block: block out of range");
  std::vector<Rational> flat = point.flatten();
  if (static_cast<int>(flat.size()) != p.num_vars())
    throw DimensionError("restrict_block: point does not match polynomial shape");
  int m = p.block_sizes()[block];
  int lo = p.var_index(block, 0);
  UtilityPolynomial out({m});
  for (const auto& [mono, coeff] : p.terms()) {
    Rational c = coeff;
    Monomial kept;
    for (const auto& [v, e] : mono.factors) {
      if (v >= lo && v < lo + m)
        kept.factors.emplace_back(v - lo, e);
      else
        c *= pow(flat[v], static_cast<unsigned>(e));
    }
    out.add_term(kept, c);
  }
  return out;
}

Rational lipschitz_bound(const UtilityPolynomial& p) {
  Rational best(0);
  for (int v = 0; v < p.num_vars(); ++v)
    best = max(best, p.partial(v).coeff_abs_sum());
  return best;
}

Rational eu_lipschitz_bound(const GameTree& tree, const Rational& lambda) {
  if (lambda.sign() <= 0) throw InputError("eu_lipschitz_bound: lambda must be positive");
  UtilityPolynomial u = utility_polynomial(tree);
  Rational nodes(tree.num_nodes());
  Rational inv_l2 = Rational(1) / (lambda * lambda);
  Rational best(1);
  for (int i = 0; i < tree.num_info_sets(); ++i) {
    Rational b3 = lipschitz_bound(frequency_polynomial(tree, i));
    for (int j = 0; j < static_cast<int>(tree.info_set(i).actions.size()); ++j) {
      UtilityPolynomial du = u.partial(u.var_index(i, j));
      Rational b1 = lipschitz_bound(du);
      Rational b2 = du.coeff_abs_sum();
      best = max(best, inv_l2 * (nodes * b1 + b2 * b3));
    }
  }
  return best;
}

namespace {

struct PolyGameShape {
  std::vector<int> used_blocks;       // original block indices with a used variable
  std::vector<int> block_to_infoset;  // original block -> info set index or -1
};

// Multiset supp(D)^ms in lexicographic (block, action) order.
std::vector<std::pair<int, int>> monomial_multiset(const UtilityPolynomial& p,
                                                   const Monomial& m) {
  std::vector<std::pair<int, int>> ms;
  for (const auto& [v, e] : m.factors) {
    auto bj = p.var_block(v);
    for (int k = 0; k < e; ++k) ms.push_back(bj);
  }
  std::sort(ms.begin(), ms.end());
  return ms;
}

PolyGameShape used_shape(const UtilityPolynomial& p) {
  std::vector<bool> used(p.num_blocks(), false);
  for (const auto& [m, c] : p.terms())
    for (const auto& [v, e] : m.factors) used[p.var_block(v).first] = true;
  PolyGameShape shape;
  shape.block_to_infoset.assign(p.num_blocks(), -1);
  for (int i = 0; i < p.num_blocks(); ++i)
    if (used[i]) shape.used_blocks.push_back(i);
  bool all_used = static_cast<int>(shape.used_blocks.size()) == p.num_blocks();
  bool constant_only = shape.used_blocks.empty();
  if (!all_used && !constant_only)
    throw InputError(
        "game_from_polynomial: every block must appear in the support (or none for a "
        "constant polynomial)");
  return shape;
}

void declare_info_sets(GameBuilder& b, const UtilityPolynomial& p, PolyGameShape& shape) {
  for (int i : shape.used_blocks) {
    std::vector<std::string> actions;
    for (int j = 0; j < p.block_sizes()[i]; ++j)
      actions.push_back("a" + std::to_string(j + 1));
    shape.block_to_infoset[i] = b.info_set("I" + std::to_string(i + 1), std::move(actions));
  }
}

std::vector<std::string> root_labels(std::size_t count) {
  std::vector<std::string> labels;
  for (std::size_t t = 0; t < count; ++t) labels.push_back("z" + std::to_string(t + 1));
  return labels;
}

}  // namespace

GameTree game_from_polynomial_v1(const UtilityPolynomial& p) {
  if (p.is_zero()) {
    GameBuilder b("poly_v1");
    b.terminal(-1, Rational(0));
    return b.build();
  }
  GameBuilder b("poly_v1");
  PolyGameShape shape = used_shape(p);
  declare_info_sets(b, p, shape);
  Rational support_size(static_cast<long>(p.terms().size()));
  std::vector<Rational> probs(p.terms().size(), Rational(1) / support_size);
  int root = b.chance(-1, root_labels(p.terms().size()), probs);
  for (const auto& [mono, coeff] : p.terms()) {
    Rational prize = coeff * support_size;
    if (mono.factors.empty()) {
      b.terminal(root, prize);
      continue;
    }
    auto ms = monomial_multiset(p, mono);
    // Single spine; off-spine children are payoff-0 terminals.
    auto spine = [&](auto&& self, int parent, std::size_t k) -> void {
      auto [block, j] = ms[k];
      int node = b.decision(parent, shape.block_to_infoset[block]);
      for (int a = 0; a < p.block_sizes()[block]; ++a) {
        if (a != j) {
          b.terminal(node, Rational(0));
        } else if (k + 1 == ms.size()) {
          b.terminal(node, prize);
        } else {
          self(self, node, k + 1);
        }
      }
    };
    spine(spine, root, 0);
  }
  return b.build();
}

GameTree game_from_polynomial_v2(const UtilityPolynomial& p, long node_cap) {
  if (p.is_zero()) {
    GameBuilder b("poly_v2");
    b.terminal(-1, Rational(0));
    return b.build();
  }
  // Count nodes before building.
  long total = 1;
  for (const auto& [mono, coeff] : p.terms()) {
    long level = 1;
    total += 1;  // h_D (terminal when the monomial is constant)
    auto ms = monomial_multiset(p, mono);
    for (auto [block, j] : ms) {
      level *= p.block_sizes()[block];
      total += level;
      if (total > node_cap)
        throw BudgetError("game_from_polynomial_v2: node budget " + std::to_string(node_cap) +
                          " exceeded");
    }
  }
  if (total > node_cap)
    throw BudgetError("game_from_polynomial_v2: node budget exceeded");

  GameBuilder b("poly_v2");
  PolyGameShape shape = used_shape(p);
  declare_info_sets(b, p, shape);
  Rational support_size(static_cast<long>(p.terms().size()));
  std::vector<Rational> probs(p.terms().size(), Rational(1) / support_size);
  int root = b.chance(-1, root_labels(p.terms().size()), probs);

  for (const auto& [mono, coeff] : p.terms()) {
    Rational prize = coeff * support_size;
    if (mono.factors.empty()) {
      b.terminal(root, prize);
      continue;
    }
    auto ms = monomial_multiset(p, mono);
    // Full m-ary subtree; only the all-(a_{j(k)}) history pays.
    auto grow = [&](auto&& self, int parent, std::size_t k, bool on_path) -> void {
      if (k == ms.size()) {
        b.terminal(parent, on_path ? prize : Rational(0));
        return;
      }
      auto [block, j] = ms[k];
      int node = b.decision(parent, shape.block_to_infoset[block]);
      for (int a = 0; a < p.block_sizes()[block]; ++a)
        self(self, node, k + 1, on_path && a == j);
    };
    grow(grow, root, 0, true);
  }
  return b.build();
}

std::optional<std::vector<ConstantFrequency>> constant_frequencies(const GameTree& tree) {
  std::vector<ConstantFrequency> out;
  for (int i = 0; i < tree.num_info_sets(); ++i) {
    UtilityPolynomial fr = restrict_to_simplex(frequency_polynomial(tree, i));
    UtilityPolynomial pr = restrict_to_simplex(reach_polynomial(tree, i));
    auto constant = [](const UtilityPolynomial& q) {
      return q.is_zero() || (q.terms().size() == 1 && q.terms().begin()->first.factors.empty());
    };
    if (!constant(fr) || !constant(pr)) return std::nullopt;
    out.push_back({fr.constant_term(), pr.constant_term()});
  }
  return out;
}

}  // namespace irg

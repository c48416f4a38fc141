#include "irg/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "irg/equilibrium.hpp"
#include "irg/errors.hpp"

namespace irg {

bool Cnf3::satisfied_by(const std::vector<bool>& assignment) const {
  for (const auto& clause : clauses) {
    bool sat = false;
    for (int lit : clause) {
      int v = std::abs(lit) - 1;
      bool value = v < static_cast<int>(assignment.size()) ? assignment[v] : true;
      if ((lit > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

int CommonPayoffFamily::class_of(int player, int state) const {
  const auto& classes = player == 0 ? p1_classes : p2_classes;
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int s : classes[c].states)
      if (s == state) return static_cast<int>(c);
  throw InputError("state " + std::to_string(state) + " not covered by player " +
                   std::to_string(player + 1) + " partition");
}

void CommonPayoffFamily::validate() const {
  if (dist.empty()) throw InputError("family has no states");
  Rational sum(0);
  for (const Rational& p : dist) {
    if (p.sign() < 0) throw InputError("negative state probability");
    sum += p;
  }
  if (sum != Rational(1)) throw InputError("state distribution sums to " + sum.str());
  if (static_cast<int>(payoffs.size()) != num_states())
    throw InputError("payoff tensor must have one matrix per state");
  for (int s = 0; s < num_states(); ++s) {
    const auto& a_actions = p1_classes[class_of(0, s)].actions;
    const auto& b_actions = p2_classes[class_of(1, s)].actions;
    if (payoffs[s].size() != a_actions.size())
      throw InputError("payoff matrix rows mismatch at state " + std::to_string(s));
    for (const auto& row : payoffs[s])
      if (row.size() != b_actions.size())
        throw InputError("payoff matrix columns mismatch at state " + std::to_string(s));
  }
  std::set<std::string> labels;
  for (const auto& c : p1_classes)
    if (!labels.insert(c.label).second)
      throw InputError("duplicate class label '" + c.label + "'");
  for (const auto& c : p2_classes)
    if (!labels.insert(c.label).second)
      throw InputError("duplicate class label '" + c.label + "'");
}

void PolytensorGame::validate(bool payoffs_in_unit_interval) const {
  if (c != 5) throw InputError("only c = 5 polytensor games are supported");
  if (n < c) throw InputError("polytensor game needs at least " + std::to_string(c) + " players");
  if (m < 1) throw InputError("polytensor game needs at least one action");
  // Expect all c-subsets in lexicographic order.
  std::vector<std::vector<int>> expected;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == c) {
      expected.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  if (subsets != expected)
    throw InputError("polytensor subsets must be all 5-subsets in lexicographic order");
  long entries = 1;
  for (int k = 0; k < c; ++k) entries *= m;
  if (tables.size() != subsets.size())
    throw InputError("polytensor needs one table per subset");
  for (const auto& t : tables) {
    if (static_cast<long>(t.size()) != entries)
      throw InputError("polytensor table has wrong size");
    if (payoffs_in_unit_interval)
      for (const Rational& v : t)
        if (v.sign() < 0 || v > Rational(1))
          throw InputError("polytensor payoffs must lie in [0,1]");
  }
}

int PolytensorGame::subset_index(const std::vector<int>& subset) const {
  auto it = std::lower_bound(subsets.begin(), subsets.end(), subset);
  if (it == subsets.end() || *it != subset) throw InputError("unknown player subset");
  return static_cast<int>(it - subsets.begin());
}

const Rational& PolytensorGame::entry(int subset_idx, const std::vector<int>& actions) const {
  long index = 0;
  for (int a : actions) index = index * m + a;
  return tables[subset_idx][index];
}

namespace {

// Expected table value for one subset under per-player mixed actions.
Rational expected_entry(const PolytensorGame& pt, int subset_idx,
                        const std::vector<const std::vector<Rational>*>& mixed) {
  Rational total(0);
  std::vector<int> actions(pt.c, 0);
  auto rec = [&](auto&& self, int pos, Rational weight) -> void {
    if (weight.is_zero()) return;
    if (pos == pt.c) {
      total += weight * pt.entry(subset_idx, actions);
      return;
    }
    for (int a = 0; a < pt.m; ++a) {
      actions[pos] = a;
      self(self, pos + 1, weight * (*mixed[pos])[a]);
    }
  };
  rec(rec, 0, Rational(1));
  return total;
}

}  // namespace

Rational PolytensorGame::player_value(const std::vector<std::vector<Rational>>& profile,
                                      int i) const {
  Rational total(0);
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    if (std::find(subsets[s].begin(), subsets[s].end(), i) == subsets[s].end()) continue;
    std::vector<const std::vector<Rational>*> mixed;
    for (int p : subsets[s]) mixed.push_back(&profile[p]);
    total += expected_entry(*this, static_cast<int>(s), mixed);
  }
  return total;
}

Rational PolytensorGame::player_value_deviated(const std::vector<std::vector<Rational>>& profile,
                                               int i, int action) const {
  std::vector<std::vector<Rational>> deviated = profile;
  deviated[i].assign(m, Rational(0));
  deviated[i][action] = Rational(1);
  return player_value(deviated, i);
}

NashCheck check_eps_nash(const PolytensorGame& pt,
                         const std::vector<std::vector<Rational>>& profile,
                         const Rational& eps) {
  NashCheck out;
  out.worst_violation = Rational(0);
  for (int i = 0; i < pt.n; ++i) {
    Rational base = pt.player_value(profile, i);
    for (int a = 0; a < pt.m; ++a)
      out.worst_violation =
          max(out.worst_violation, pt.player_value_deviated(profile, i, a) - base);
  }
  out.pass = out.worst_violation <= eps;
  return out;
}

std::optional<Rational> ReductionOutput::param(const std::string& name) const {
  for (const auto& [k, v] : params)
    if (k == name) return v;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// 3SAT
// ---------------------------------------------------------------------------

namespace {

struct NormalizedCnf {
  int total_vars = 0;
  std::vector<std::array<int, 3>> clauses;  // signed literals, 3 distinct vars
  std::vector<std::string> notes;
};

NormalizedCnf normalize_cnf(const Cnf3& cnf) {
  if (cnf.clauses.empty()) throw InputError("empty formula");
  NormalizedCnf out;
  out.total_vars = cnf.num_vars;
  int fresh = cnf.num_vars;  // next fresh variable (0-based)
  for (std::size_t ci = 0; ci < cnf.clauses.size(); ++ci) {
    const auto& raw = cnf.clauses[ci];
    if (raw.empty()) throw InputError("clause " + std::to_string(ci + 1) + " is empty");
    if (raw.size() > 3)
      throw InputError("clause " + std::to_string(ci + 1) + " has more than 3 literals");
    std::vector<int> lits;
    bool tautology = false;
    for (int lit : raw) {
      if (lit == 0 || std::abs(lit) > cnf.num_vars)
        throw InputError("literal out of range in clause " + std::to_string(ci + 1));
      if (std::find(lits.begin(), lits.end(), lit) != lits.end()) continue;
      if (std::find(lits.begin(), lits.end(), -lit) != lits.end()) {
        tautology = true;
        break;
      }
      lits.push_back(lit);
    }
    if (tautology) {
      out.notes.push_back("clause " + std::to_string(ci + 1) +
                          " dropped: tautology (x and not-x)");
      continue;
    }
    auto emit = [&](int a, int b, int c) { out.clauses.push_back({a, b, c}); };
    if (lits.size() == 3) {
      emit(lits[0], lits[1], lits[2]);
    } else if (lits.size() == 2) {
      int y = ++fresh;  // 1-based literal value of the fresh variable
      emit(lits[0], lits[1], y);
      emit(lits[0], lits[1], -y);
      out.notes.push_back("clause " + std::to_string(ci + 1) +
                          " padded with fresh variable x" + std::to_string(y));
    } else {
      int y = ++fresh;
      int z = ++fresh;
      emit(lits[0], y, z);
      emit(lits[0], y, -z);
      emit(lits[0], -y, z);
      emit(lits[0], -y, -z);
      out.notes.push_back("clause " + std::to_string(ci + 1) +
                          " padded with fresh variables x" + std::to_string(y) + ", x" +
                          std::to_string(z));
    }
  }
  out.total_vars = fresh;
  return out;
}

}  // namespace

ReductionOutput sat3_to_game(const Cnf3& cnf) {
  NormalizedCnf norm = normalize_cnf(cnf);
  ReductionOutput out;
  out.reduction = "sat3";
  out.notes = norm.notes;
  out.source_cnf = cnf;
  out.precision_out = Rational(0);

  GameBuilder b("sat3_game");
  if (norm.clauses.empty()) {
    b.terminal(-1, Rational(1));
    out.notes.push_back("all clauses tautological; formula trivially satisfiable");
    out.game = b.build();
    out.params = {{"target", Rational(1)},
                  {"clauses", Rational(0)},
                  {"vars", Rational(cnf.num_vars)}};
    return out;
  }
  // Info sets only for variables that occur in the normalized formula.
  std::map<int, int> var_to_infoset;  // 1-based var -> info set index
  for (const auto& clause : norm.clauses)
    for (int lit : clause) {
      int v = std::abs(lit);
      if (!var_to_infoset.count(v))
        var_to_infoset[v] = b.info_set("x" + std::to_string(v), {"T", "F"});
    }

  long n = static_cast<long>(norm.clauses.size());
  std::vector<std::string> labels;
  std::vector<Rational> probs(n, Rational(1, n));
  for (long i = 0; i < n; ++i) labels.push_back("c" + std::to_string(i + 1));
  int root = b.chance(-1, labels, probs);

  for (const auto& clause : norm.clauses) {
    // Depth-3 binary subtree over the clause variables in literal order.
    auto grow = [&](auto&& self, int parent, std::size_t level,
                    std::array<bool, 3>& assign) -> void {
      if (level == 3) {
        bool sat = false;
        for (std::size_t k = 0; k < 3; ++k) {
          bool value = assign[k];
          if ((clause[k] > 0) == value) sat = true;
        }
        b.terminal(parent, Rational(sat ? 1 : 0));
        return;
      }
      int node = b.decision(parent, var_to_infoset.at(std::abs(clause[level])));
      assign[level] = true;  // action T
      self(self, node, level + 1, assign);
      assign[level] = false;  // action F
      self(self, node, level + 1, assign);
    };
    std::array<bool, 3> assign{};
    // The first level hangs the clause subtree root under the chance root.
    // grow() creates the node itself, so call it with the chance root.
    grow(grow, root, 0, assign);
  }
  out.game = b.build();
  out.params = {{"target", Rational(1)},
                {"clauses", Rational(n)},
                {"vars", Rational(cnf.num_vars)},
                {"vars_padded", Rational(norm.total_vars)}};
  return out;
}

// ---------------------------------------------------------------------------
// Common-payoff family
// ---------------------------------------------------------------------------

ReductionOutput common_payoff_to_game(const CommonPayoffFamily& family) {
  family.validate();
  ReductionOutput out;
  out.reduction = "common-payoff";
  out.source_family = family;
  out.precision_out = Rational(0);

  GameBuilder b("common_payoff_game");
  std::vector<int> p1_sets, p2_sets;
  for (const auto& cls : family.p1_classes)
    p1_sets.push_back(b.info_set(cls.label, cls.actions));
  for (const auto& cls : family.p2_classes)
    p2_sets.push_back(b.info_set(cls.label, cls.actions));

  std::vector<std::string> labels;
  for (int s = 0; s < family.num_states(); ++s) labels.push_back("s" + std::to_string(s));
  int root = b.chance(-1, labels, family.dist);
  for (int s = 0; s < family.num_states(); ++s) {
    int ci = family.class_of(0, s);
    int cj = family.class_of(1, s);
    int top = b.decision(root, p1_sets[ci]);
    for (std::size_t a = 0; a < family.p1_classes[ci].actions.size(); ++a) {
      int mid = b.decision(top, p2_sets[cj]);
      for (std::size_t bb = 0; bb < family.p2_classes[cj].actions.size(); ++bb)
        b.terminal(mid, family.payoffs[s][a][bb]);
    }
  }
  out.game = b.build();
  out.params = {{"target", Rational(1)},
                {"states", Rational(family.num_states())},
                {"p1_classes", Rational(static_cast<long>(family.p1_classes.size()))},
                {"p2_classes", Rational(static_cast<long>(family.p2_classes.size()))}};
  return out;
}

// ---------------------------------------------------------------------------
// KKT over the cube
// ---------------------------------------------------------------------------

ReductionOutput kkt_cube_to_game(const UtilityPolynomial& p, const Rational& eps,
                                 long node_cap) {
  for (int m : p.block_sizes())
    if (m != 1)
      throw InputError("kkt_cube_to_game: the cube polynomial must be shaped as blocks of size 1");
  if (eps.sign() <= 0) throw InputError("kkt_cube_to_game: eps must be positive");

  ReductionOutput out;
  out.reduction = "kkt-cube";
  out.source_poly = p;

  // Lift to blocks of size 2 over the variables that actually occur.
  std::vector<bool> used(p.num_blocks(), false);
  for (const auto& [mono, c] : p.terms())
    for (const auto& [v, e] : mono.factors) used[v] = true;
  std::vector<int> var_map;  // game block -> original variable
  std::vector<int> var_to_block(p.num_blocks(), -1);
  for (int v = 0; v < p.num_blocks(); ++v)
    if (used[v]) {
      var_to_block[v] = static_cast<int>(var_map.size());
      var_map.push_back(v);
    }
  out.var_map = var_map;

  UtilityPolynomial lifted(std::vector<int>(var_map.size(), 2));
  if (!var_map.empty()) {
    for (const auto& [mono, c] : p.terms()) {
      Monomial remapped;
      for (const auto& [v, e] : mono.factors)
        remapped.factors.emplace_back(lifted.var_index(var_to_block[v], 0), e);
      std::sort(remapped.factors.begin(), remapped.factors.end());
      lifted.add_term(remapped, c);
    }
  } else {
    lifted = UtilityPolynomial(std::vector<int>{});
    for (const auto& [mono, c] : p.terms()) lifted.add_term(mono, c);  // constant only
  }
  out.game = game_from_polynomial_v2(lifted, node_cap);

  Rational lambda(1);
  if (!var_map.empty()) {
    auto constant = constant_frequencies(out.game);
    if (!constant)
      throw Error("kkt_cube_to_game: variant-2 game lost constant frequencies");
    bool any = false;
    for (const auto& cf : *constant) {
      if (cf.visit_freq.is_zero()) continue;
      lambda = any ? min(lambda, cf.visit_freq) : cf.visit_freq;
      any = true;
    }
  }
  Rational lips = eu_lipschitz_bound(out.game, lambda);
  Rational nodes(out.game.num_nodes());
  Rational denom = Rational(3) * lips * nodes * nodes;
  Rational delta = min(Rational(1, 3), (eps * eps) / (denom * denom));
  out.precision_out = delta;
  out.params = {{"eps", eps},   {"delta", delta},   {"lambda", lambda},
                {"L", lips},    {"nodes", nodes}};
  return out;
}

// ---------------------------------------------------------------------------
// Polytensor reductions
// ---------------------------------------------------------------------------

namespace {

long binom(int n, int k) {
  long r = 1;
  for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

}  // namespace

ReductionOutput polytensor_to_game(const PolytensorGame& pt, const Rational& eps,
                                   long node_cap) {
  pt.validate(true);
  if (eps.sign() <= 0) throw InputError("polytensor_to_game: eps must be positive");
  long subtree_nodes = 0, level = 1;
  for (int k = 0; k < 5; ++k) {
    subtree_nodes += level;
    level *= pt.m;
  }
  subtree_nodes += level;  // terminals
  long total = 1 + static_cast<long>(pt.subsets.size()) * subtree_nodes;
  if (total > node_cap) throw BudgetError("polytensor_to_game: node budget exceeded");

  ReductionOutput out;
  out.reduction = "polytensor";
  out.source_polytensor = pt;

  GameBuilder b("polytensor_game");
  std::vector<int> player_sets;
  for (int i = 0; i < pt.n; ++i) {
    std::vector<std::string> actions;
    for (int j = 0; j < pt.m; ++j) actions.push_back("a" + std::to_string(j + 1));
    player_sets.push_back(b.info_set("P" + std::to_string(i + 1), std::move(actions)));
  }
  long K = static_cast<long>(pt.subsets.size());
  std::vector<std::string> labels;
  for (long s = 0; s < K; ++s) labels.push_back("S" + std::to_string(s + 1));
  int root = b.chance(-1, labels, std::vector<Rational>(K, Rational(1, K)));
  for (std::size_t s = 0; s < pt.subsets.size(); ++s) {
    std::vector<int> actions;
    auto grow = [&](auto&& self, int parent, int depth) -> void {
      if (depth == 5) {
        b.terminal(parent, pt.entry(static_cast<int>(s), actions));
        return;
      }
      int node = b.decision(parent, player_sets[pt.subsets[s][depth]]);
      for (int a = 0; a < pt.m; ++a) {
        actions.push_back(a);
        self(self, node, depth + 1);
        actions.pop_back();
      }
    };
    grow(grow, root, 0);
  }
  out.game = b.build();
  Rational delta = eps / Rational(binom(pt.n - 1, 4));
  out.precision_out = delta;
  out.params = {{"eps", eps},
                {"delta", delta},
                {"reach", Rational(5, pt.n)},
                {"subsets", Rational(K)}};
  return out;
}

ReductionOutput polytensor_to_single_infoset_game(const PolytensorGame& pt,
                                                  const Rational& eps, long node_cap) {
  pt.validate(true);
  if (eps.sign() <= 0 || eps >= Rational(1))
    throw InputError("polytensor_to_single_infoset_game: eps must lie in (0, 1)");
  long nm = static_cast<long>(pt.n) * pt.m;
  long total = 0, level = 1;
  for (int k = 0; k <= 5; ++k) {
    total += level;
    if (total > node_cap)
      throw BudgetError("polytensor_to_single_infoset_game: node budget exceeded");
    level *= nm;
  }

  Rational n_r(pt.n), m_r(pt.m);
  Rational m1 = Rational(200) * pow(n_r, 9) * pow(m_r, 4) / eps;
  Rational delta1 = Rational(1, 5) * pow(Rational(1) / n_r - Rational(1) / m1, 4) * eps / Rational(2);
  Rational m2 = (delta1 + pow(n_r, 4)) * pow(m1, 4);

  ReductionOutput out;
  out.reduction = "polytensor-1is";
  out.source_polytensor = pt;

  GameBuilder b("polytensor_1is_game");
  std::vector<std::string> actions;
  for (int i = 0; i < pt.n; ++i)
    for (int j = 0; j < pt.m; ++j)
      actions.push_back("p" + std::to_string(i + 1) + ":a" + std::to_string(j + 1));
  int iset = b.info_set("I", std::move(actions));

  std::vector<int> players, acts;
  auto grow = [&](auto&& self, int parent, int depth) -> void {
    if (depth == 5) {
      std::set<int> distinct(players.begin(), players.end());
      int eta = static_cast<int>(distinct.size());
      Rational payoff = m2 * Rational(eta);
      if (eta == 5) {
        std::vector<int> subset(distinct.begin(), distinct.end());
        std::vector<int> per_player_action(pt.n, 0);
        for (int k = 0; k < 5; ++k) per_player_action[players[k]] = acts[k];
        std::vector<int> ordered;
        for (int p : subset) ordered.push_back(per_player_action[p]);
        payoff += pt.entry(pt.subset_index(subset), ordered);
      }
      b.terminal(parent, payoff);
      return;
    }
    int node = b.decision(parent, iset);
    for (int i = 0; i < pt.n; ++i)
      for (int j = 0; j < pt.m; ++j) {
        players.push_back(i);
        acts.push_back(j);
        self(self, node, depth + 1);
        players.pop_back();
        acts.pop_back();
      }
  };
  grow(grow, -1, 0);
  out.game = b.build();

  Rational lips = eu_lipschitz_bound(out.game, Rational(5));
  Rational nodes(out.game.num_nodes());
  Rational delta2 = pow(delta1 / (Rational(3) * lips * nodes), 2);
  out.precision_out = delta2;
  out.params = {{"eps", eps}, {"M1", m1},      {"delta1", delta1}, {"M2", m2},
                {"L", lips},  {"nodes", nodes}, {"delta2", delta2}};
  return out;
}

// ---------------------------------------------------------------------------
// Recovery
// ---------------------------------------------------------------------------

namespace {

RecoveredSolution recover_sat3(const ReductionOutput& out, const Strategy& solution) {
  RecoveredSolution rec;
  rec.kind = "sat3-assignment";
  const Cnf3& cnf = *out.source_cnf;
  rec.assignment.assign(cnf.num_vars, true);
  for (int v = 1; v <= cnf.num_vars; ++v) {
    auto iset = out.game.find_info_set("x" + std::to_string(v));
    if (!iset) continue;  // variable absent from the normalized formula
    const auto& block = solution.blocks[*iset];
    rec.assignment[v - 1] = block[0].sign() > 0;  // first supported action, T first
  }
  for (int v = 1; v <= cnf.num_vars; ++v)
    rec.lines.push_back("x" + std::to_string(v) + ": " +
                        (rec.assignment[v - 1] ? "T" : "F"));
  bool sat = cnf.satisfied_by(rec.assignment);
  Rational value = expected_utility(out.game, solution);
  rec.validated = sat;
  rec.validation_detail = std::string(sat ? "assignment satisfies" : "assignment falsifies") +
                          " the source formula; game value " + value.str();
  return rec;
}

RecoveredSolution recover_family(const ReductionOutput& out, const Strategy& solution) {
  RecoveredSolution rec;
  rec.kind = "common-payoff-profile";
  const CommonPayoffFamily& fam = *out.source_family;
  std::size_t p1 = fam.p1_classes.size();
  for (std::size_t c = 0; c < solution.blocks.size(); ++c) rec.profile.push_back(solution.blocks[c]);
  // Independent payoff computation from the family tables.
  Rational fam_value(0);
  for (int s = 0; s < fam.num_states(); ++s) {
    int ci = fam.class_of(0, s);
    int cj = fam.class_of(1, s);
    const auto& mu1 = solution.blocks[ci];
    const auto& mu2 = solution.blocks[p1 + cj];
    for (std::size_t a = 0; a < mu1.size(); ++a)
      for (std::size_t bb = 0; bb < mu2.size(); ++bb)
        fam_value += fam.dist[s] * mu1[a] * mu2[bb] * fam.payoffs[s][a][bb];
  }
  Rational game_value = expected_utility(out.game, solution);
  rec.validated = fam_value == game_value;
  rec.validation_detail = "family payoff " + fam_value.str() + ", game value " +
                          game_value.str() + (rec.validated ? " (equal)" : " (MISMATCH)");
  for (std::size_t c = 0; c < fam.p1_classes.size(); ++c)
    rec.lines.push_back("p1 " + fam.p1_classes[c].label + ": " +
                        serialize_block_text(solution.blocks[c]));
  for (std::size_t c = 0; c < fam.p2_classes.size(); ++c)
    rec.lines.push_back("p2 " + fam.p2_classes[c].label + ": " +
                        serialize_block_text(solution.blocks[p1 + c]));
  return rec;
}

RecoveredSolution recover_kkt_cube(const ReductionOutput& out, const Strategy& solution) {
  RecoveredSolution rec;
  rec.kind = "kkt-cube-point";
  const UtilityPolynomial& p = *out.source_poly;
  Rational eps = *out.param("eps");
  Rational delta = out.precision_out;
  Rational lips = *out.param("L");

  Strategy converted = solution;
  std::string detail;
  if (out.game.num_info_sets() > 0) {
    auto fb = frequency_lower_bound(out.game);
    if (!fb) throw Error("kkt-cube recovery: frequency bound unavailable");
    bool input_ok = verify_cdt_approx(out.game, solution, delta).pass;
    detail += input_ok ? "input verified as delta-approximate equilibrium; "
                       : "warning: input is not a delta-approximate equilibrium; ";
    converted = well_supported_from_approx(out.game, solution, delta, *fb, lips);
  }
  rec.cube_point.assign(p.num_blocks(), Rational(0));
  for (std::size_t blk = 0; blk < out.var_map.size(); ++blk)
    rec.cube_point[out.var_map[blk]] = converted.blocks[blk][0];

  bool ok = true;
  std::vector<Rational> flat = rec.cube_point;
  for (int v = 0; v < p.num_blocks(); ++v) {
    Rational grad = p.partial(v).eval(flat);
    if (rec.cube_point[v].sign() > 0 && grad < -eps) ok = false;
    if (rec.cube_point[v] < Rational(1) && grad > eps) ok = false;
    rec.lines.push_back("x" + std::to_string(v + 1) + ": " + rec.cube_point[v].str());
  }
  rec.validated = ok;
  rec.validation_detail =
      detail + (ok ? "eps-KKT cube conditions hold" : "eps-KKT cube conditions violated");
  return rec;
}

RecoveredSolution recover_polytensor(const ReductionOutput& out, const Strategy& solution,
                                     bool single_infoset) {
  RecoveredSolution rec;
  rec.kind = single_infoset ? "polytensor-profile (normalized)" : "polytensor-profile";
  const PolytensorGame& pt = *out.source_polytensor;
  Rational eps = *out.param("eps");
  if (single_infoset) {
    const auto& block = solution.blocks.at(0);
    for (int i = 0; i < pt.n; ++i) {
      Rational p_i(0);
      for (int j = 0; j < pt.m; ++j) p_i += block[i * pt.m + j];
      std::vector<Rational> row;
      if (p_i.is_zero()) {
        row.assign(pt.m, Rational(1, pt.m));
        rec.lines.push_back("note: player " + std::to_string(i + 1) +
                            " has zero mass; uniform fallback");
      } else {
        for (int j = 0; j < pt.m; ++j) row.push_back(block[i * pt.m + j] / p_i);
      }
      rec.profile.push_back(std::move(row));
    }
  } else {
    rec.profile = solution.blocks;
  }
  NashCheck check = check_eps_nash(pt, rec.profile, eps);
  rec.validated = check.pass;
  rec.validation_detail = "eps-Nash check at eps " + eps.str() + ": worst violation " +
                          check.worst_violation.str() + (check.pass ? " (pass)" : " (fail)");
  for (int i = 0; i < pt.n; ++i)
    rec.lines.push_back("player " + std::to_string(i + 1) + ": " +
                        serialize_block_text(rec.profile[i]));
  return rec;
}

}  // namespace

RecoveredSolution recover(const ReductionOutput& out, const Strategy& solution) {
  validate_strategy(out.game, solution);
  if (out.reduction == "sat3") return recover_sat3(out, solution);
  if (out.reduction == "common-payoff") return recover_family(out, solution);
  if (out.reduction == "kkt-cube") return recover_kkt_cube(out, solution);
  if (out.reduction == "polytensor") return recover_polytensor(out, solution, false);
  if (out.reduction == "polytensor-1is") return recover_polytensor(out, solution, true);
  throw InputError("unknown reduction kind '" + out.reduction + "'");
}

}  // namespace irg

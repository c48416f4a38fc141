#include "irg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "irg/beliefs.hpp"
#include "irg/equilibrium.hpp"
#include "irg/errors.hpp"

namespace irg {

namespace {

// Double-precision view of a sparse polynomial for the inner solver loops.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const UtilityPolynomial& p) {
    for (const auto& [m, c] : p.terms()) terms_.push_back({c.to_double(), m.factors});
  }
  double eval(const std::vector<double>& x) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
      double v = t.c;
      for (const auto& [var, exp] : t.f)
        for (int k = 0; k < exp; ++k) v *= x[var];
      sum += v;
    }
    return sum;
  }

 private:
  struct Term {
    double c;
    std::vector<std::pair<int, int>> f;
  };
  std::vector<Term> terms_;
};

struct Compiled {
  std::vector<int> sizes;
  std::vector<int> offsets;
  CompiledPoly value;
  std::vector<CompiledPoly> partials;
  double grad_lipschitz = 0.0;
};

Compiled compile(const UtilityPolynomial& p) {
  Compiled c;
  c.sizes = p.block_sizes();
  int off = 0;
  for (int m : c.sizes) {
    c.offsets.push_back(off);
    off += m;
  }
  c.value = CompiledPoly(p);
  double lg = 0.0;
  for (int v = 0; v < p.num_vars(); ++v) {
    UtilityPolynomial dp = p.partial(v);
    c.partials.emplace_back(dp);
    lg = std::max(lg, lipschitz_bound(dp).to_double());
  }
  c.grad_lipschitz = lg;
  return c;
}

std::vector<double> gradient_d(const Compiled& c, const std::vector<double>& x) {
  std::vector<double> g(c.partials.size());
  for (std::size_t v = 0; v < c.partials.size(); ++v) g[v] = c.partials[v].eval(x);
  return g;
}

// Stationarity gap on the support: max over blocks of
// max_j grad_j - min over supported j of grad_j.
double kkt_residual_d(const Compiled& c, const std::vector<double>& x,
                      const std::vector<double>& g) {
  double res = 0.0;
  for (std::size_t b = 0; b < c.sizes.size(); ++b) {
    int lo = c.offsets[b], m = c.sizes[b];
    double kappa = g[lo];
    for (int j = 1; j < m; ++j) kappa = std::max(kappa, g[lo + j]);
    for (int j = 0; j < m; ++j)
      if (x[lo + j] > 0.0) res = std::max(res, kappa - g[lo + j]);
  }
  return res;
}

void project_blocks(const Compiled& c, std::vector<double>& x) {
  for (std::size_t b = 0; b < c.sizes.size(); ++b) {
    std::vector<double> block(x.begin() + c.offsets[b], x.begin() + c.offsets[b] + c.sizes[b]);
    project_simplex(block);
    std::copy(block.begin(), block.end(), x.begin() + c.offsets[b]);
  }
}

struct RunResult {
  std::vector<double> x;  // best-residual iterate of the run
  double value = 0.0;
  double residual = 0.0;
  int iters = 0;
  bool converged = false;
  double final_value = 0.0;  // value of the last (monotone-best) iterate
  std::vector<double> final_x;
};

RunResult pgd_run(const Compiled& c, std::vector<double> x, const SolverConfig& cfg) {
  project_blocks(c, x);
  double eta0 = cfg.eta0 > 0 ? cfg.eta0 : 1.0 / (c.grad_lipschitz + 1.0);
  RunResult run;
  run.x = x;
  double ux = c.value.eval(x);
  {
    auto g = gradient_d(c, x);
    run.residual = kkt_residual_d(c, x, g);
    run.value = ux;
  }
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    auto g = gradient_d(c, x);
    double res = kkt_residual_d(c, x, g);
    if (res < run.residual) {
      run.residual = res;
      run.x = x;
      run.value = ux;
    }
    run.iters = iter;
    if (run.residual <= cfg.tol) {
      run.converged = true;
      break;
    }
    // Backtracking line search on the projected step.
    double eta = eta0;
    bool accepted = false;
    while (eta > 1e-18) {
      std::vector<double> cand(x.size());
      for (std::size_t v = 0; v < x.size(); ++v) cand[v] = x[v] + eta * g[v];
      project_blocks(c, cand);
      double lin = 0.0, moved = 0.0;
      for (std::size_t v = 0; v < x.size(); ++v) {
        lin += g[v] * (cand[v] - x[v]);
        moved += std::abs(cand[v] - x[v]);
      }
      if (moved == 0.0) break;  // projection fixed point
      double ucand = c.value.eval(cand);
      if (ucand >= ux + cfg.armijo * lin) {
        x = std::move(cand);
        ux = ucand;
        accepted = true;
        break;
      }
      eta *= cfg.backtrack;
    }
    if (!accepted) break;  // numerically stationary
  }
  run.final_x = x;
  run.final_value = ux;
  return run;
}

double rng_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

long lattice_count(const std::vector<int>& sizes, int k, long cap) {
  long count = 1;
  for (int m : sizes) {
    long block = 1;
    for (int t = 1; t < m; ++t) {
      block = block * (k + t) / t;
      if (block > cap) return cap + 1;
    }
    if (block > cap / std::max(count, 1L)) return cap + 1;
    count *= block;
    if (count > cap) return cap + 1;
  }
  return count;
}

// All compositions of k into m parts, first coordinate descending; values as
// exact lattice rationals with denominator k.
std::vector<std::vector<Rational>> block_lattice(int m, int k) {
  std::vector<std::vector<Rational>> out;
  std::vector<int> comp(m, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == m - 1) {
      comp[pos] = left;
      std::vector<Rational> pt;
      pt.reserve(m);
      for (int c : comp) pt.push_back(Rational(c, k));
      out.push_back(std::move(pt));
      return;
    }
    for (int v = left; v >= 0; --v) {
      comp[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, k);
  return out;
}

struct Starts {
  std::vector<std::pair<std::string, std::vector<double>>> list;
};

Starts make_starts(const Compiled& c, const SolverConfig& cfg) {
  Starts s;
  int n = 0;
  for (int m : c.sizes) n += m;
  {
    std::vector<double> uniform(n);
    for (std::size_t b = 0; b < c.sizes.size(); ++b)
      for (int j = 0; j < c.sizes[b]; ++j)
        uniform[c.offsets[b] + j] = 1.0 / c.sizes[b];
    s.list.emplace_back("uniform", std::move(uniform));
  }
  if (cfg.grid_seed_k > 0 &&
      lattice_count(c.sizes, cfg.grid_seed_k, cfg.node_budget) <= cfg.node_budget) {
    std::vector<std::vector<std::vector<Rational>>> per_block;
    for (int m : c.sizes) per_block.push_back(block_lattice(m, cfg.grid_seed_k));
    std::vector<std::size_t> idx(c.sizes.size(), 0);
    std::vector<double> best;
    double best_val = 0.0;
    bool first = true;
    while (true) {
      std::vector<double> x(n);
      for (std::size_t b = 0; b < c.sizes.size(); ++b)
        for (int j = 0; j < c.sizes[b]; ++j)
          x[c.offsets[b] + j] = per_block[b][idx[b]][j].to_double();
      double v = c.value.eval(x);
      if (first || v > best_val) {
        best_val = v;
        best = x;
        first = false;
      }
      std::size_t b = 0;
      while (b < idx.size() && ++idx[b] == per_block[b].size()) idx[b++] = 0;
      if (b == idx.size()) break;
    }
    if (!first) s.list.emplace_back("grid", std::move(best));
  }
  // Pure-strategy corners in lexicographic order, capped.
  {
    long total = 1;
    for (int m : c.sizes) {
      total *= m;
      if (total > cfg.pure_start_cap) break;
    }
    std::vector<int> pick(c.sizes.size(), 0);
    int emitted = 0;
    while (emitted < cfg.pure_start_cap) {
      std::vector<double> x(n, 0.0);
      for (std::size_t b = 0; b < c.sizes.size(); ++b) x[c.offsets[b] + pick[b]] = 1.0;
      s.list.emplace_back("pure " + std::to_string(emitted), std::move(x));
      ++emitted;
      std::size_t b = c.sizes.size();
      bool done = true;
      while (b-- > 0) {
        if (++pick[b] < c.sizes[b]) {
          done = false;
          break;
        }
        pick[b] = 0;
      }
      if (done) break;
    }
  }
  std::mt19937_64 rng(cfg.seed);
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> x(n);
    for (std::size_t b = 0; b < c.sizes.size(); ++b) {
      double sum = 0.0;
      for (int j = 0; j < c.sizes[b]; ++j) {
        double e = -std::log(std::max(rng_unit(rng), 1e-300));
        x[c.offsets[b] + j] = e;
        sum += e;
      }
      for (int j = 0; j < c.sizes[b]; ++j) x[c.offsets[b] + j] /= sum;
    }
    s.list.emplace_back("random " + std::to_string(r), std::move(x));
  }
  return s;
}

struct MultiRun {
  std::vector<RunResult> runs;
  std::vector<std::string> labels;
};

MultiRun run_all(const Compiled& c, const SolverConfig& cfg) {
  MultiRun mr;
  Starts starts = make_starts(c, cfg);
  for (auto& [label, x] : starts.list) {
    mr.runs.push_back(pgd_run(c, std::move(x), cfg));
    mr.labels.push_back(label);
  }
  return mr;
}

SolveResult assemble(const GameTree& tree, const Compiled& c, const MultiRun& mr,
                     bool by_residual, const SolverConfig& cfg) {
  SolveResult out;
  int best = 0;
  for (std::size_t r = 1; r < mr.runs.size(); ++r) {
    const RunResult& a = mr.runs[r];
    const RunResult& b = mr.runs[best];
    bool better;
    if (by_residual)
      better = a.residual < b.residual || (a.residual == b.residual && a.value > b.value);
    else
      better = a.final_value > b.final_value ||
               (a.final_value == b.final_value && a.residual < b.residual);
    if (better) best = static_cast<int>(r);
  }
  const RunResult& win = mr.runs[best];
  const std::vector<double>& x = by_residual ? win.x : win.final_x;
  out.strategy = Strategy::from_doubles(x, block_sizes(tree));
  out.value = by_residual ? win.value : win.final_value;
  {
    auto g = gradient_d(c, x);
    out.kkt_residual = kkt_residual_d(c, x, g);
  }
  out.iterations = win.iters;
  // Status refers to the returned iterate, not the run's best residual.
  out.status = out.kkt_residual <= cfg.tol ? SolveStatus::kConverged
                                           : SolveStatus::kBudgetExhausted;
  for (std::size_t r = 0; r < mr.runs.size(); ++r)
    out.trace.push_back({mr.labels[r], mr.runs[r].final_value, mr.runs[r].residual,
                         mr.runs[r].iters});
  return out;
}

}  // namespace

void project_simplex(std::vector<double>& x) {
  int n = static_cast<int>(x.size());
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumsum = 0.0, theta = 0.0;
  for (int i = 0; i < n; ++i) {
    cumsum += sorted[i];
    double t = (cumsum - 1.0) / (i + 1);
    if (sorted[i] - t > 0) theta = t;
  }
  for (int i = 0; i < n; ++i) x[i] = std::max(0.0, x[i] - theta);
}

SolveResult projected_gradient_kkt(const GameTree& tree, const SolverConfig& cfg) {
  Compiled c = compile(utility_polynomial(tree));
  MultiRun mr = run_all(c, cfg);
  return assemble(tree, c, mr, /*by_residual=*/true, cfg);
}

SolveResult solve_exante(const GameTree& tree, const SolverConfig& cfg) {
  Compiled c = compile(utility_polynomial(tree));
  MultiRun mr = run_all(c, cfg);
  return assemble(tree, c, mr, /*by_residual=*/false, cfg);
}

BlockBestResponse block_best_response(const GameTree& tree, const Strategy& strategy,
                                      int info_set, const SolverConfig& cfg) {
  validate_strategy(tree, strategy);
  if (info_set < 0 || info_set >= tree.num_info_sets())
    throw InputError("unknown info set index " + std::to_string(info_set));
  UtilityPolynomial u = utility_polynomial(tree);
  UtilityPolynomial r = restrict_block(u, info_set, strategy);
  int m = static_cast<int>(tree.info_set(info_set).actions.size());

  // Grid resolution: at least 64 when affordable, halved until the block
  // lattice fits the budget.
  int k = std::max(cfg.grid_k, 64);
  long cap = std::min(cfg.node_budget, 100000L);
  while (k > 1 && lattice_count({m}, k, cap) > cap) k /= 2;

  std::vector<std::vector<Rational>> candidates;
  candidates.push_back(strategy.blocks[info_set]);
  for (int j = 0; j < m; ++j) {
    std::vector<Rational> pure(m, Rational(0));
    pure[j] = Rational(1);
    candidates.push_back(std::move(pure));
  }
  Compiled cr = compile(r);
  {
    auto lattice = block_lattice(m, k);
    int best = 0;
    double best_val = 0.0;
    bool first = true;
    std::vector<double> x(m);
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      for (int j = 0; j < m; ++j) x[j] = lattice[i][j].to_double();
      double v = cr.value.eval(x);
      if (first || v > best_val) {
        best = static_cast<int>(i);
        best_val = v;
        first = false;
      }
    }
    if (!first) {
      // Projected-gradient refinement from the best lattice point.
      SolverConfig rcfg = cfg;
      rcfg.max_iters = std::max(cfg.max_iters, 2000);
      std::vector<double> start(m);
      for (int j = 0; j < m; ++j) start[j] = lattice[best][j].to_double();
      RunResult run = pgd_run(cr, start, rcfg);
      std::vector<Rational> refined;
      Rational sum(0);
      for (double d : run.final_x) {
        Rational v = Rational::from_double(std::max(d, 0.0));
        refined.push_back(v);
        sum += v;
      }
      if (sum.sign() > 0) {
        for (Rational& v : refined) v /= sum;
        candidates.push_back(std::move(refined));
      }
      candidates.push_back(lattice[best]);
    }
  }
  BlockBestResponse out;
  bool first = true;
  for (const auto& cand : candidates) {
    std::vector<Rational> flat = cand;
    Rational v = r.eval(flat);
    if (first || v > out.value) {
      out.value = v;
      out.alpha = cand;
      first = false;
    }
  }
  out.certificate_gap = lipschitz_bound(r) * Rational(2 * (m - 1), k);
  return out;
}

SolveResult edt_best_response_dynamics(const GameTree& tree, const SolverConfig& cfg) {
  return edt_best_response_dynamics(tree, cfg, uniform_strategy(tree));
}

SolveResult edt_best_response_dynamics(const GameTree& tree, const SolverConfig& cfg,
                                       const Strategy& start) {
  validate_strategy(tree, start);
  Strategy mu = start;
  Rational tol = Rational::from_double(std::max(cfg.tol, 0.0));
  SolveResult out;
  int max_sweeps = std::max(1, std::min(cfg.max_iters, 200));
  bool converged = false;
  Rational current = expected_utility(tree, mu);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool changed = false;
    for (int i = 0; i < tree.num_info_sets(); ++i) {
      BlockBestResponse bbr = block_best_response(tree, mu, i, cfg);
      if (bbr.value - current > tol) {
        mu.blocks[i] = bbr.alpha;
        current = bbr.value;
        changed = true;
      }
    }
    out.trace.push_back({"sweep " + std::to_string(sweep), current.to_double(), 0.0,
                         static_cast<int>(tree.num_info_sets())});
    out.iterations = sweep + 1;
    if (!changed) {
      converged = true;
      break;
    }
  }
  mu.mode = start.mode;
  out.strategy = mu;
  out.value = current.to_double();
  Compiled c = compile(utility_polynomial(tree));
  std::vector<double> x = mu.to_doubles();
  auto g = gradient_d(c, x);
  out.kkt_residual = kkt_residual_d(c, x, g);
  out.status = converged ? SolveStatus::kConverged : SolveStatus::kBudgetExhausted;
  return out;
}

GridResult brute_force_grid(const GameTree& tree, int k, long node_budget) {
  if (k < 1) throw InputError("grid resolution must be >= 1");
  auto sizes = block_sizes(tree);
  long count = lattice_count(sizes, k, node_budget);
  if (count > node_budget)
    throw BudgetError("brute_force_grid: lattice exceeds node budget " +
                      std::to_string(node_budget));
  UtilityPolynomial u = utility_polynomial(tree);
  std::vector<std::vector<std::vector<Rational>>> per_block;
  for (int m : sizes) per_block.push_back(block_lattice(m, k));
  GridResult out;
  out.points = std::max(count, 1L);
  if (sizes.empty()) {
    out.strategy = Strategy{};
    out.value = u.eval(out.strategy);
    return out;
  }
  std::vector<std::size_t> idx(sizes.size(), 0);
  bool first = true;
  while (true) {
    std::vector<Rational> flat;
    for (std::size_t b = 0; b < sizes.size(); ++b)
      for (const Rational& v : per_block[b][idx[b]]) flat.push_back(v);
    Rational val = u.eval(flat);
    if (first || val > out.value) {
      out.value = val;
      out.strategy = Strategy::from_flat(flat, sizes, NumericMode::kExact);
      first = false;
    }
    std::size_t b = 0;
    while (b < idx.size() && ++idx[b] == per_block[b].size()) idx[b++] = 0;
    if (b == idx.size()) break;
  }
  return out;
}

DecideQuery parse_decide_query(const std::string& name) {
  if (name == "exante") return DecideQuery::kExAnte;
  if (name == "cdt_eq_value" || name == "cdt-eq-value") return DecideQuery::kCdtEqValue;
  if (name == "edt_eq_value" || name == "edt-eq-value") return DecideQuery::kEdtEqValue;
  if (name == "infoset_eu_cdt" || name == "infoset-eu-cdt") return DecideQuery::kInfoSetEuCdt;
  if (name == "infoset_eu_edt" || name == "infoset-eu-edt") return DecideQuery::kInfoSetEuEdt;
  throw InputError("unknown decide query '" + name + "'");
}

namespace {

Strategy exact_strategy(const GameTree& tree, const Strategy& float_strategy) {
  // Renormalize a float-mode strategy into an exact one.
  Strategy s = float_strategy;
  for (auto& block : s.blocks) {
    Rational sum(0);
    for (Rational& v : block) {
      if (v.sign() < 0) v = Rational(0);
      sum += v;
    }
    if (sum.is_zero()) {
      block.assign(block.size(), Rational(0));
      block[0] = Rational(1);
    } else {
      for (Rational& v : block) v /= sum;
    }
  }
  s.mode = NumericMode::kExact;
  (void)tree;
  return s;
}

// The queried quantity for the infoset queries; nullopt when unreached.
std::optional<Rational> infoset_value(const GameTree& tree, const Strategy& mu, int info_set,
                                      bool cdt) {
  InfoSetStats stats = info_set_stats(tree, mu, info_set);
  if (cdt) {
    if (stats.visit_freq.is_zero()) return std::nullopt;
    return eu_cdt_gt(tree, mu, info_set, mu.blocks[info_set]);
  }
  if (stats.reach_prob.is_zero()) return std::nullopt;
  return eu_edt_gdh(tree, mu, info_set, mu.blocks[info_set]);
}

}  // namespace

DecideResult decide_targets(const GameTree& tree, DecideQuery query,
                            std::optional<int> info_set, const Rational& t,
                            const Rational& eps, const SolverConfig& cfg) {
  if ((query == DecideQuery::kInfoSetEuCdt || query == DecideQuery::kInfoSetEuEdt) &&
      !info_set)
    throw InputError("this query requires an info set");
  if (info_set && (*info_set < 0 || *info_set >= tree.num_info_sets()))
    throw InputError("unknown info set index");

  DecideResult res;
  Rational threshold = t - eps;
  // Float-path default equilibrium tolerance for solver-produced candidates.
  Rational eq_tol = Rational(1, 1000000);
  bool have_value = false;

  auto consider = [&](const Strategy& mu, const Rational& value, bool constraints_ok) {
    if (!constraints_ok) return;
    if (!have_value || value > res.value) {
      res.value = value;
      have_value = true;
      if (value >= threshold) {
        res.witness = mu;
        res.verdict = DecideVerdict::kYes;
      }
    } else if (value >= threshold && res.verdict != DecideVerdict::kYes) {
      res.witness = mu;
      res.verdict = DecideVerdict::kYes;
    }
  };

  auto evaluate = [&](const Strategy& mu) {
    switch (query) {
      case DecideQuery::kExAnte:
        consider(mu, expected_utility(tree, mu), true);
        break;
      case DecideQuery::kCdtEqValue: {
        bool eq = verify_cdt_approx(tree, mu, eq_tol).pass;
        if (eq) consider(mu, expected_utility(tree, mu), true);
        break;
      }
      case DecideQuery::kEdtEqValue: {
        bool eq = verify_edt(tree, mu, eq_tol, cfg).pass;
        if (eq) consider(mu, expected_utility(tree, mu), true);
        break;
      }
      case DecideQuery::kInfoSetEuCdt: {
        auto v = infoset_value(tree, mu, *info_set, true);
        if (v) consider(mu, *v, true);
        break;
      }
      case DecideQuery::kInfoSetEuEdt: {
        auto v = infoset_value(tree, mu, *info_set, false);
        if (v) consider(mu, *v, true);
        break;
      }
    }
  };

  // Solver-produced candidates.
  if (query == DecideQuery::kEdtEqValue) {
    evaluate(exact_strategy(tree, edt_best_response_dynamics(tree, cfg).strategy));
    int pures = 1;
    for (int m : block_sizes(tree)) {
      pures *= m;
      if (pures > 8) break;
    }
    pures = std::min(pures, 8);
    std::vector<int> pick(tree.num_info_sets(), 0);
    for (int p = 0; p < pures; ++p) {
      evaluate(exact_strategy(
          tree, edt_best_response_dynamics(tree, cfg, pure_strategy(tree, pick)).strategy));
      std::size_t b = pick.size();
      bool done = true;
      while (b-- > 0) {
        if (++pick[b] < static_cast<int>(tree.info_set(b).actions.size())) {
          done = false;
          break;
        }
        pick[b] = 0;
      }
      if (done) break;
    }
  } else {
    SolveResult sr = query == DecideQuery::kCdtEqValue ? projected_gradient_kkt(tree, cfg)
                                                       : solve_exante(tree, cfg);
    evaluate(exact_strategy(tree, sr.strategy));
  }

  if (res.verdict == DecideVerdict::kYes) {
    res.detail = "witness from solver/grid search";
    return res;
  }

  // Exhaustive lattice scan at the configured resolution.
  try {
    auto sizes = block_sizes(tree);
    long count = lattice_count(sizes, cfg.grid_k, cfg.node_budget);
    if (count > cfg.node_budget)
      throw BudgetError("decide_targets: grid budget exceeded");
    std::vector<std::vector<std::vector<Rational>>> per_block;
    for (int m : sizes) per_block.push_back(block_lattice(m, cfg.grid_k));
    if (sizes.empty()) {
      evaluate(Strategy{});
    } else {
      std::vector<std::size_t> idx(sizes.size(), 0);
      while (true) {
        std::vector<Rational> flat;
        for (std::size_t b = 0; b < sizes.size(); ++b)
          for (const Rational& v : per_block[b][idx[b]]) flat.push_back(v);
        Strategy mu = Strategy::from_flat(flat, sizes, NumericMode::kExact);
        // Equilibrium verification on every lattice point is too costly; for
        // equilibrium queries only promising points are verified.
        if (query == DecideQuery::kCdtEqValue || query == DecideQuery::kEdtEqValue) {
          if (expected_utility(tree, mu) >= threshold) evaluate(mu);
        } else {
          evaluate(mu);
        }
        std::size_t b = 0;
        while (b < idx.size() && ++idx[b] == per_block[b].size()) idx[b++] = 0;
        if (b == idx.size()) break;
      }
    }
    if (res.verdict == DecideVerdict::kYes) {
      res.detail = "witness from exhaustive lattice at k=" + std::to_string(cfg.grid_k);
    } else {
      res.verdict = DecideVerdict::kNoEvidence;
      res.detail = "no candidate reached the target on the lattice at k=" +
                   std::to_string(cfg.grid_k) + " or via solvers";
    }
  } catch (const BudgetError&) {
    res.verdict = DecideVerdict::kInconclusive;
    res.detail = "budget exceeded before the lattice scan completed";
  }
  return res;
}

}  // namespace irg

#include "irg/equilibrium.hpp"

#include <algorithm>

#include "irg/beliefs.hpp"
#include "irg/errors.hpp"

namespace irg {

KktCertificate kkt_certificate(const UtilityPolynomial& poly, const Strategy& strategy,
                               const Rational& epsilon) {
  std::vector<Rational> flat = strategy.flatten();
  std::vector<Rational> grad = poly.gradient(flat);
  KktCertificate cert;
  cert.strategy = strategy;
  cert.epsilon = epsilon;
  cert.residual = Rational(0);
  cert.cs_violation = Rational(0);
  for (int i = 0; i < poly.num_blocks(); ++i) {
    int m = poly.block_sizes()[i];
    Rational kappa = grad[poly.var_index(i, 0)];
    for (int j = 1; j < m; ++j) kappa = max(kappa, grad[poly.var_index(i, j)]);
    std::vector<Rational> tau_block;
    for (int j = 0; j < m; ++j) {
      const Rational& mu_ij = strategy.blocks[i][j];
      Rational slack = kappa - grad[poly.var_index(i, j)];
      cert.cs_violation = max(cert.cs_violation, slack * mu_ij);
      if (mu_ij.sign() > 0) {
        tau_block.push_back(Rational(0));
        cert.residual = max(cert.residual, slack);
      } else {
        tau_block.push_back(slack);
      }
    }
    cert.kappa.push_back(kappa);
    cert.tau.push_back(std::move(tau_block));
  }
  cert.valid = cert.residual <= epsilon;
  return cert;
}

KktCertificate kkt_certificate(const GameTree& tree, const Strategy& strategy,
                               const Rational& epsilon) {
  validate_strategy(tree, strategy);
  return kkt_certificate(utility_polynomial(tree), strategy, epsilon);
}

namespace {

EquilibriumReport verify_cdt(const GameTree& tree, const Strategy& strategy,
                             const Rational& epsilon, bool well_supported) {
  validate_strategy(tree, strategy);
  EquilibriumReport rep;
  rep.kind = well_supported ? VerifyKind::kCdtWellSupported : VerifyKind::kCdtApprox;
  rep.epsilon = epsilon;
  rep.max_gap = Rational(0);
  for (int i = 0; i < tree.num_info_sets(); ++i) {
    InfoSetGap row;
    row.info_set = i;
    InfoSetStats stats = info_set_stats(tree, strategy, i);
    if (stats.visit_freq.is_zero()) {
      row.skipped = true;
      rep.gaps.push_back(std::move(row));
      continue;
    }
    int m = static_cast<int>(tree.info_set(i).actions.size());
    std::vector<Rational> eu;
    eu.reserve(m);
    for (int j = 0; j < m; ++j) eu.push_back(eu_cdt_gt_pure(tree, strategy, i, j));
    Rational best = eu[0];
    for (int j = 1; j < m; ++j) best = max(best, eu[j]);
    if (well_supported) {
      Rational gap(0);
      for (int j = 0; j < m; ++j)
        if (strategy.blocks[i][j].sign() > 0) gap = max(gap, best - eu[j]);
      row.gap = gap;
    } else {
      Rational current(0);
      for (int j = 0; j < m; ++j) current += strategy.blocks[i][j] * eu[j];
      row.gap = best - current;
    }
    rep.max_gap = max(rep.max_gap, row.gap);
    rep.gaps.push_back(std::move(row));
  }
  rep.pass = rep.max_gap <= epsilon;
  return rep;
}

}  // namespace

EquilibriumReport verify_cdt_approx(const GameTree& tree, const Strategy& strategy,
                                    const Rational& epsilon) {
  return verify_cdt(tree, strategy, epsilon, false);
}

EquilibriumReport verify_cdt_well_supported(const GameTree& tree, const Strategy& strategy,
                                            const Rational& epsilon) {
  return verify_cdt(tree, strategy, epsilon, true);
}

EquilibriumReport verify_edt(const GameTree& tree, const Strategy& strategy,
                             const Rational& epsilon, const SolverConfig& block_cfg) {
  validate_strategy(tree, strategy);
  EquilibriumReport rep;
  rep.kind = VerifyKind::kEdt;
  rep.epsilon = epsilon;
  rep.max_gap = Rational(0);
  rep.certificate_slack = Rational(0);
  Rational current = expected_utility(tree, strategy);
  for (int i = 0; i < tree.num_info_sets(); ++i) {
    InfoSetGap row;
    row.info_set = i;
    InfoSetStats stats = info_set_stats(tree, strategy, i);
    if (stats.reach_prob.is_zero()) {
      row.skipped = true;
      rep.gaps.push_back(std::move(row));
      continue;
    }
    BlockBestResponse bbr = block_best_response(tree, strategy, i, block_cfg);
    row.gap = max(Rational(0), bbr.value - current);
    rep.certificate_slack = max(rep.certificate_slack, bbr.certificate_gap);
    rep.max_gap = max(rep.max_gap, row.gap);
    rep.gaps.push_back(std::move(row));
  }
  rep.pass = rep.max_gap <= epsilon;
  return rep;
}

std::optional<FrequencyBound> frequency_lower_bound(const GameTree& tree) {
  FrequencyBound fb;
  auto constant = constant_frequencies(tree);
  fb.strategy_independent = constant.has_value();
  bool any_positive = false;
  Rational lambda(0);
  auto account = [&](const Rational& value) {
    if (!any_positive || value < lambda) lambda = value;
    any_positive = true;
  };
  for (int i = 0; i < tree.num_info_sets(); ++i) {
    FrequencyBound::PerInfoSet row;
    if (constant) {
      const Rational& fr = (*constant)[i].visit_freq;
      if (fr.is_zero()) {
        row.identically_zero = true;
      } else {
        row.certified_min = fr;
        account(fr);
      }
      fb.per_info_set.push_back(std::move(row));
      continue;
    }
    UtilityPolynomial fr_poly = frequency_polynomial(tree, i);
    UtilityPolynomial restricted = restrict_to_simplex(fr_poly);
    if (restricted.is_zero()) {
      row.identically_zero = true;
      fb.per_info_set.push_back(std::move(row));
      continue;
    }
    // Certified lower bound: every monomial lies in [0,1] on the domain, so
    // Fr >= constant term minus the total negative coefficient mass.
    Rational bound = restricted.constant_term();
    for (const auto& [mono, c] : restricted.terms())
      if (!mono.factors.empty() && c.sign() < 0) bound += c;
    if (bound.sign() <= 0) {
      // Grid + Lipschitz refinement on the unrestricted polynomial.
      Rational lips = lipschitz_bound(fr_poly);
      auto sizes = block_sizes(tree);
      for (int k = 4; k <= 64; k *= 2) {
        long lattice = 1;
        bool too_big = false;
        for (int m : sizes) {
          for (int t = 1; t < m; ++t) lattice = lattice * (k + t) / t;
          if (lattice > 200000) {
            too_big = true;
            break;
          }
        }
        if (too_big) break;
        Rational gmin;
        bool first = true;
        // Enumerate lattice via odometer over per-block compositions.
        std::vector<std::vector<std::vector<Rational>>> per_block;
        for (int m : sizes) {
          std::vector<std::vector<Rational>> pts;
          std::vector<int> comp(m, 0);
          auto rec = [&](auto&& self, int pos, int left) -> void {
            if (pos == m - 1) {
              comp[pos] = left;
              std::vector<Rational> pt;
              for (int c : comp) pt.push_back(Rational(c, k));
              pts.push_back(std::move(pt));
              return;
            }
            for (int v = left; v >= 0; --v) {
              comp[pos] = v;
              self(self, pos + 1, left - v);
            }
          };
          rec(rec, 0, k);
          per_block.push_back(std::move(pts));
        }
        std::vector<std::size_t> idx(sizes.size(), 0);
        while (true) {
          std::vector<Rational> flat;
          for (std::size_t b = 0; b < sizes.size(); ++b)
            for (const Rational& r : per_block[b][idx[b]]) flat.push_back(r);
          Rational v = fr_poly.eval(flat);
          if (first || v < gmin) gmin = v;
          first = false;
          std::size_t b = 0;
          while (b < idx.size() && ++idx[b] == per_block[b].size()) idx[b++] = 0;
          if (b == idx.size()) break;
        }
        Rational radius(0);
        for (int m : sizes) radius += Rational(2 * (m - 1), k);
        Rational cert = gmin - lips * radius;
        if (cert.sign() > 0) {
          bound = cert;
          break;
        }
      }
    }
    if (bound.sign() <= 0) return std::nullopt;
    row.certified_min = bound;
    account(bound);
    fb.per_info_set.push_back(std::move(row));
  }
  fb.lambda = any_positive ? lambda : Rational(1);
  return fb;
}

Strategy well_supported_from_approx(const GameTree& tree, const Strategy& strategy,
                                    const Rational& eps, const FrequencyBound& bound,
                                    const Rational& lipschitz) {
  validate_strategy(tree, strategy);
  if (eps.sign() < 0) throw InputError("well_supported_from_approx: negative epsilon");
  if (bound.lambda.sign() <= 0) throw InputError("well_supported_from_approx: invalid lambda");
  if (lipschitz < Rational(1)) throw InputError("well_supported_from_approx: invalid L");
  if (static_cast<int>(bound.per_info_set.size()) != tree.num_info_sets())
    throw DimensionError("frequency bound does not match the game");
  for (int m : block_sizes(tree))
    if (Rational(1, m) <= eps)
      throw InputError("well_supported_from_approx: epsilon must be below 1/m_i");

  Strategy out = strategy;
  for (int i = 0; i < tree.num_info_sets(); ++i) {
    if (bound.per_info_set[i].identically_zero) continue;
    auto& block = out.blocks[i];
    int m = static_cast<int>(block.size());
    // mu_ij <= sqrt(eps) compared exactly via squaring.
    std::vector<bool> low(m, false);
    int low_count = 0;
    Rational low_mass(0);
    for (int j = 0; j < m; ++j) {
      if (block[j] * block[j] <= eps) {
        low[j] = true;
        ++low_count;
        low_mass += block[j];
      }
    }
    if (low_count == 0) continue;
    if (low_count == m) {
      // Degenerate case (possible when sqrt(eps) >= 1/m): keep the heaviest
      // action, ties to the lowest index.
      int best = 0;
      for (int j = 1; j < m; ++j)
        if (block[j] > block[best]) best = j;
      for (int j = 0; j < m; ++j) block[j] = Rational(j == best ? 1 : 0);
      continue;
    }
    Rational share = low_mass / Rational(m - low_count);
    for (int j = 0; j < m; ++j) block[j] = low[j] ? Rational(0) : block[j] + share;
  }
  return out;
}

HierarchyReport hierarchy_check(const GameTree& tree, const Strategy& mu_exante,
                                const Strategy& mu_edt, const Strategy& mu_cdt,
                                const SolverConfig& cfg, const Rational& tolerance) {
  HierarchyReport rep;
  rep.tolerance = tolerance;
  rep.grid_value = brute_force_grid(tree, cfg.grid_k, cfg.node_budget).value;
  auto row_for = [&](const std::string& label, const Strategy& mu) {
    HierarchyRow row;
    row.label = label;
    row.value = expected_utility(tree, mu);
    row.exante_gap = rep.grid_value - row.value;
    row.exante_pass = row.exante_gap <= tolerance;
    row.edt_pass = verify_edt(tree, mu, tolerance, cfg).pass;
    row.cdt_pass = verify_cdt_approx(tree, mu, tolerance).pass;
    if (row.exante_pass && !row.edt_pass)
      rep.violations.push_back(label + ": ex-ante optimal at tolerance but fails EDT verify");
    if (row.edt_pass && !row.cdt_pass)
      rep.violations.push_back(label + ": passes EDT verify but fails CDT verify");
    rep.rows.push_back(row);
  };
  row_for("exante", mu_exante);
  row_for("edt", mu_edt);
  row_for("cdt", mu_cdt);
  return rep;
}

}  // namespace irg

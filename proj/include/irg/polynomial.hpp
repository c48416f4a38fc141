#ifndef IRG_POLYNOMIAL_HPP
#define IRG_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "irg/game.hpp"
#include "irg/rational.hpp"

namespace irg {

// Sparse exponent multi-index over flattened block variables, canonical form:
// factors sorted by variable, all exponents positive.
struct Monomial {
  std::vector<std::pair<int, int>> factors;  // (flat variable, exponent > 0)

  int degree() const;
  int exponent(int var) const;
  Monomial times(const Monomial& other) const;
  static Monomial one() { return {}; }
  static Monomial var(int v, int exp = 1) { return {{{v, exp}}}; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors == b.factors;
  }
};

// Orders monomials by descending lexicographic comparison of their dense
// exponent vectors; this is the canonical term order used for storage,
// printing and equality tests.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using TermMap = std::map<Monomial, Rational, MonomialOrder>;

// Sparse multivariate polynomial over the product of simplices
// Delta^{m_1-1} x ... x Delta^{m_l-1}, stored in the standard monomial basis.
class UtilityPolynomial {
 public:
  UtilityPolynomial() = default;
  explicit UtilityPolynomial(std::vector<int> block_sizes);

  const std::vector<int>& block_sizes() const { return block_sizes_; }
  int num_blocks() const { return static_cast<int>(block_sizes_.size()); }
  int num_vars() const { return num_vars_; }
  int var_index(int block, int j) const { return offsets_[block] + j; }
  std::pair<int, int> var_block(int v) const;

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  void add_term(const Monomial& m, const Rational& coeff);
  Rational constant_term() const;

  Rational eval(const std::vector<Rational>& flat) const;
  double eval_d(const std::vector<double>& flat) const;
  Rational eval(const Strategy& point) const;

  UtilityPolynomial partial(int var) const;
  Rational partial_at(int block, int j, const Strategy& point) const;
  std::vector<Rational> gradient(const std::vector<Rational>& flat) const;
  std::vector<Rational> gradient(const Strategy& point) const;

  UtilityPolynomial operator*(const UtilityPolynomial& other) const;
  UtilityPolynomial& operator+=(const UtilityPolynomial& other);

  Rational coeff_abs_sum() const;

  friend bool operator==(const UtilityPolynomial& a, const UtilityPolynomial& b) {
    return a.block_sizes_ == b.block_sizes_ && a.terms_ == b.terms_;
  }

 private:
  void check_point(std::size_t n) const;
  std::vector<int> block_sizes_;
  std::vector<int> offsets_;
  int num_vars_ = 0;
  TermMap terms_;
};

// Expected-utility polynomial of a game: one monomial per terminal before
// merging, chance probabilities folded into the coefficients.
UtilityPolynomial utility_polynomial(const GameTree& tree);

// Fr(I | .) and Prob(I | .) as polynomials in the strategy variables.
UtilityPolynomial frequency_polynomial(const GameTree& tree, int info_set);
UtilityPolynomial reach_polynomial(const GameTree& tree, int info_set);

// Eliminates the last variable of every block via x_{i,m_i} = 1 - sum of the
// block's other variables. Two polynomials agree on the simplex product iff
// their restrictions are equal.
UtilityPolynomial restrict_to_simplex(const UtilityPolynomial& p);

// Restriction of p to one block, all other variables fixed at `point`.
// The result is shaped as a single block of size m_block.
UtilityPolynomial restrict_block(const UtilityPolynomial& p, int block,
                                 const Strategy& point);

// max over coordinates of the absolute coefficient sum of the partial
// derivative; bounds |grad p|_inf over the unit cube.
Rational lipschitz_bound(const UtilityPolynomial& p);

// Lipschitz constant L >= 1 for all reachable (CDT,GT) expected-utility
// functions, built from coefficient-sum bounds:
// L_ij = (|N| * B1_ij + B2_ij * B3_i) / lambda^2.
Rational eu_lipschitz_bound(const GameTree& tree, const Rational& lambda);

// Game constructions realizing U = p on the product of simplices. Every block
// of p must occur in its support (constant/empty p maps to a terminal-only
// game). Variant 2 refuses to build more than `node_cap` nodes.
GameTree game_from_polynomial_v1(const UtilityPolynomial& p);
GameTree game_from_polynomial_v2(const UtilityPolynomial& p, long node_cap = 1000000);

// Present iff every info set's visit frequency and reach probability are
// strategy-independent (verified symbolically); value per info set.
struct ConstantFrequency {
  Rational visit_freq;
  Rational reach_prob;
};
std::optional<std::vector<ConstantFrequency>> constant_frequencies(const GameTree& tree);

}  // namespace irg

#endif  // IRG_POLYNOMIAL_HPP

#include "irg/rational.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>
#include <ostream>

#include "irg/errors.hpp"

namespace irg {

Rational::Rational(long num, long den) {
  if (den == 0) throw InputError("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InputError("rational division by zero");
  v_ /= o.v_;
  return *this;
}

double Rational::to_double() const {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, v_.get_mpq_t(), MPFR_RNDN);
  double out = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return out;
}

Rational Rational::from_double(double d) {
  if (!std::isfinite(d)) throw InputError("non-finite double cannot be converted to a rational");
  return Rational(mpq_class(d));
}

namespace {

bool parse_integer(const std::string& s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  out = mpz_class(s, 10);
  return true;
}

// Decimal with optional exponent, e.g. "-0.25", "1e-3", "2.5e2".
bool parse_decimal(const std::string& s, mpq_class& out) {
  std::size_t epos = s.find_first_of("eE");
  std::string mant = (epos == std::string::npos) ? s : s.substr(0, epos);
  long exp10 = 0;
  if (epos != std::string::npos) {
    mpz_class e;
    if (!parse_integer(s.substr(epos + 1), e) || !e.fits_slong_p()) return false;
    exp10 = e.get_si();
  }
  std::size_t dot = mant.find('.');
  std::string digits = mant;
  long frac_digits = 0;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    frac_digits = static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty() || digits == "+" || digits == "-") return false;
  mpz_class m;
  if (!parse_integer(digits, m)) return false;
  mpq_class q(m);
  long net = exp10 - frac_digits;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
  if (net >= 0)
    q *= mpq_class(p10);
  else
    q /= mpq_class(p10);
  q.canonicalize();
  out = q;
  return true;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw InputError("empty rational literal");

  std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    mpz_class num, den;
    if (!parse_integer(s.substr(0, slash), num) || !parse_integer(s.substr(slash + 1), den) ||
        sgn(den) == 0)
      throw InputError("malformed rational literal '" + text + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  }
  mpz_class i;
  if (parse_integer(s, i)) return Rational(mpq_class(i));
  mpq_class q;
  if (parse_decimal(s, q)) return Rational(q);
  throw InputError("malformed rational literal '" + text + "'");
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::abs() const {
  return sign() < 0 ? -*this : *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

std::size_t Rational::hash() const {
  std::hash<std::string> h;
  return h(str());
}

Rational pow(const Rational& base, unsigned exp) {
  Rational result(1);
  Rational b = base;
  while (exp > 0) {
    if (exp & 1u) result *= b;
    b *= b;
    exp >>= 1u;
  }
  return result;
}

const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }
const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

bool leq_scaled_sqrt(const Rational& value, const Rational& scale, const Rational& arg) {
  if (arg.sign() < 0) throw InputError("leq_scaled_sqrt: negative radicand");
  if (value.sign() <= 0) return true;
  if (scale.sign() <= 0) return false;
  return value * value <= scale * scale * arg;
}

}  // namespace irg

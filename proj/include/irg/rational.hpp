#ifndef IRG_RATIONAL_HPP
#define IRG_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

namespace irg {

// Arbitrary-precision rational, kept in lowest terms. Thin wrapper around
// GMP's mpq_class so the rest of the code base has one spelling for exact
// arithmetic, string IO ("num/den", integers, decimals) and hashing.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long num) : v_(num) {}
  Rational(long num, long den);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Exact conversion of a finite double (binary fraction).
  static Rational from_double(double d);
  // Accepts "num/den", plain integers and decimal literals ("0.25", "-1e-3").
  // Throws irg::InputError on malformed text.
  static Rational parse(const std::string& text);

  // Correctly rounded (to nearest) double conversion.
  double to_double() const;
  std::string str() const;

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  Rational abs() const;

  const mpq_class& raw() const { return v_; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

  std::size_t hash() const;

 private:
  mpq_class v_;
};

Rational pow(const Rational& base, unsigned exp);
const Rational& max(const Rational& a, const Rational& b);
const Rational& min(const Rational& a, const Rational& b);

// True iff value <= scale * sqrt(arg), all exact (arg >= 0).
bool leq_scaled_sqrt(const Rational& value, const Rational& scale, const Rational& arg);

}  // namespace irg

template <>
struct std::hash<irg::Rational> {
  std::size_t operator()(const irg::Rational& r) const { return r.hash(); }
};

#endif  // IRG_RATIONAL_HPP

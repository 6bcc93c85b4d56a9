#pragma once

#include <string>

#include "qenv/laurent.hpp"

namespace qenv {

// Element of the rational function field Q(q), kept as a reduced fraction
// num/den of Laurent polynomials. Canonical form: den is an ordinary
// polynomial with nonzero constant term, monic, and gcd(num, den) = 1;
// zero is 0/1. Exactness everywhere, no floating point.
class QScalar {
 public:
  QScalar() : num_(), den_(Rat(1)) {}
  QScalar(const Rat& c) : num_(c), den_(Rat(1)) {}
  QScalar(long c) : num_(Rat(c)), den_(Rat(1)) {}
  explicit QScalar(const Laurent& l) : num_(l), den_(Rat(1)) {}
  QScalar(Laurent num, Laurent den);

  static QScalar q(int exp = 1) { return QScalar(Laurent::q(exp)); }

  const Laurent& num() const { return num_; }
  const Laurent& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }

  QScalar operator-() const;
  friend QScalar operator+(const QScalar& a, const QScalar& b);
  friend QScalar operator-(const QScalar& a, const QScalar& b);
  friend QScalar operator*(const QScalar& a, const QScalar& b);
  friend QScalar operator/(const QScalar& a, const QScalar& b);
  QScalar& operator+=(const QScalar& o) { *this = *this + o; return *this; }
  QScalar& operator-=(const QScalar& o) { *this = *this - o; return *this; }
  QScalar& operator*=(const QScalar& o) { *this = *this * o; return *this; }
  QScalar& operator/=(const QScalar& o) { *this = *this / o; return *this; }

  QScalar inverse() const;
  QScalar pow(long e) const;
  // substitute q -> q^{-1}
  QScalar bar() const;

  bool operator==(const QScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const QScalar& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void normalize();
  Laurent num_, den_;
};

// [n]_t with t = q^d, as a Laurent polynomial; [-n] = -[n].
Laurent q_int(long n, int d = 1);
// [n]_t! for n >= 0
Laurent q_factorial(long n, int d = 1);
// Gaussian binomial [n choose m]_t, n any integer, m >= 0. Always a Laurent
// polynomial; computed as an exact quotient.
QScalar q_binomial(long n, long m, int d = 1);

}  // namespace qenv

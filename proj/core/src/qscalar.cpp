#include "qenv/qscalar.hpp"

#include <stdexcept>

namespace qenv {

QScalar::QScalar(Laurent num, Laurent den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("QScalar: zero denominator");
  normalize();
}

void QScalar::normalize() {
  if (num_.is_zero()) {
    den_ = Laurent(Rat(1));
    return;
  }
  if (den_.is_one()) return;
  // move the denominator's q-power into the numerator
  if (den_.low_degree() != 0) {
    num_ = num_.shifted(-den_.low_degree());
    den_ = den_.shifted(-den_.low_degree());
  }
  Laurent g = Laurent::poly_gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_.divexact(g.shifted(0));
    den_ = den_.divexact(g);
  }
  if (den_.low_degree() != 0) {  // gcd may expose another q-power
    num_ = num_.shifted(-den_.low_degree());
    den_ = den_.shifted(-den_.low_degree());
  }
  if (den_.leading() != 1) {
    Rat inv = Rat(1) / den_.leading();
    num_ *= inv;
    den_ *= inv;
  }
}

QScalar QScalar::operator-() const {
  QScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

QScalar operator+(const QScalar& a, const QScalar& b) {
  if (a.den_.is_one() && b.den_.is_one()) return QScalar(a.num_ + b.num_);
  return QScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QScalar operator-(const QScalar& a, const QScalar& b) {
  if (a.den_.is_one() && b.den_.is_one()) return QScalar(a.num_ - b.num_);
  return QScalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

QScalar operator*(const QScalar& a, const QScalar& b) {
  if (a.is_zero() || b.is_zero()) return QScalar();
  if (a.den_.is_one() && b.den_.is_one()) return QScalar(a.num_ * b.num_);
  return QScalar(a.num_ * b.num_, a.den_ * b.den_);
}

QScalar operator/(const QScalar& a, const QScalar& b) {
  if (b.is_zero()) throw std::domain_error("QScalar: division by zero");
  return QScalar(a.num_ * b.den_, a.den_ * b.num_);
}

QScalar QScalar::inverse() const {
  if (is_zero()) throw std::domain_error("QScalar: inverse of zero");
  return QScalar(den_, num_);
}

QScalar QScalar::pow(long e) const {
  if (e == 0) return QScalar(Rat(1));
  QScalar base = e > 0 ? *this : inverse();
  long n = e > 0 ? e : -e;
  QScalar acc(Rat(1));
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

QScalar QScalar::bar() const {
  return QScalar(num_.bar(), den_.bar());
}

std::string QScalar::str() const {
  if (den_.is_one()) return num_.str();
  std::string n = num_.str();
  std::string d = den_.str();
  return "(" + n + ")/(" + d + ")";
}

Laurent q_int(long n, int d) {
  if (n == 0) return Laurent();
  if (n < 0) return -q_int(-n, d);
  Laurent r;
  for (long j = 0; j < n; ++j) r += Laurent::q(static_cast<int>(d * (n - 1 - 2 * j)));
  return r;
}

Laurent q_factorial(long n, int d) {
  Laurent r{Rat(1)};
  for (long k = 2; k <= n; ++k) r *= q_int(k, d);
  return r;
}

QScalar q_binomial(long n, long m, int d) {
  if (m < 0) throw std::domain_error("q_binomial: m < 0");
  Laurent num{Rat(1)};
  for (long s = 0; s < m; ++s) num *= q_int(n - s, d);
  return QScalar(num, q_factorial(m, d));
}

}  // namespace qenv

#pragma once

#include <string>
#include <vector>

#include "qenv/qscalar.hpp"

namespace qenv {

// Specialization point: q -> 1 (ell = 1) or q -> zeta_ell, a fixed primitive
// ell-th root of unity for odd ell. The coprime-to-3 rule for G2 is enforced
// where a Cartan datum is in play (see Algebra::check_spec_point).
struct SpecPoint {
  int ell = 1;
  bool is_one() const { return ell == 1; }
};
SpecPoint spec_one();
SpecPoint spec_zeta(int ell);

// Element of Q(zeta_ell) = Q[x]/Phi_ell(x), reduced representative of degree
// < deg Phi_ell. For ell = 1 this degenerates to Q.
class Cyclo {
 public:
  Cyclo() : ell_(1), c_() {}
  Cyclo(long n) : ell_(1), c_() {
    if (n != 0) c_ = {Rat(n)};
  }
  Cyclo(int ell, const Rat& r);
  static Cyclo zero(int ell) { return Cyclo(ell, Rat(0)); }
  static Cyclo one(int ell) { return Cyclo(ell, Rat(1)); }
  // zeta^k, exponent taken mod ell
  static Cyclo zeta_pow(int ell, long k);

  int ell() const { return ell_; }
  bool is_zero() const;
  bool is_rational(Rat* out = nullptr) const;

  Cyclo operator-() const;
  friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b);
  Cyclo& operator+=(const Cyclo& o) { *this = *this + o; return *this; }
  Cyclo& operator-=(const Cyclo& o) { *this = *this - o; return *this; }
  Cyclo& operator*=(const Cyclo& o) { *this = *this * o; return *this; }
  Cyclo& operator/=(const Cyclo& o) { *this = *this / o; return *this; }
  Cyclo inverse() const;
  Cyclo pow(long e) const;

  bool operator==(const Cyclo& o) const;
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  // printed as a polynomial in z with an l=<ell> annotation (plain rational
  // for ell = 1), e.g. "-z - 1 [l=3]"
  std::string str() const;

  // cyclotomic polynomial Phi_ell as a dense coefficient vector (monic)
  static const std::vector<Rat>& phi(int ell);

 private:
  static void check_compatible(const Cyclo& a, const Cyclo& b);
  void reduce();
  int ell_;
  std::vector<Rat> c_;  // coefficients of 1, z, ..., z^(deg Phi_ell - 1)
};

// True iff a has a representation f/g with g(z) != 0; decided after full
// reduction, so (q-1)/(q-1) never reports a pole.
bool in_localization(const QScalar& a, const SpecPoint& z);

// Exact image of a under q -> z. Throws std::domain_error on a pole.
Cyclo specialize_scalar(const QScalar& a, const SpecPoint& z);

// a / by, asserting that the quotient lies in the localization at z.
// A pole signals a broken divisibility precondition upstream.
QScalar divide_exact(const QScalar& a, const QScalar& by, const SpecPoint& z);

// Laurent evaluation at zeta_ell (uses zeta^ell = 1)
Cyclo eval_laurent(const Laurent& l, const SpecPoint& z);

}  // namespace qenv

#pragma once

#include <vector>
#include <string>

#include "qenv/rational.hpp"

namespace qenv {

// Laurent polynomial in q over the rationals, dense coefficients with an
// exponent offset. Invariant: coeff_ is empty (zero) or has nonzero first
// and last entries; coeff_[i] is the coefficient of q^(low_ + i).
class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(const Rat& c) {
    if (c != 0) coeff_ = {c};
  }
  Laurent(long c) : Laurent(Rat(c)) {}

  static Laurent monomial(const Rat& c, int exp);
  static Laurent q(int exp = 1) { return monomial(Rat(1), exp); }

  bool is_zero() const { return coeff_.empty(); }
  bool is_one() const { return coeff_.size() == 1 && low_ == 0 && coeff_[0] == 1; }
  // degree of the highest / lowest term; only valid when nonzero
  int degree() const { return low_ + static_cast<int>(coeff_.size()) - 1; }
  int low_degree() const { return low_; }
  const Rat& leading() const { return coeff_.back(); }
  Rat coeff(int exp) const;

  // true iff no negative exponents (an honest polynomial)
  bool is_polynomial() const { return coeff_.empty() || low_ >= 0; }

  Laurent operator-() const;
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { a += b; return a; }
  friend Laurent operator-(Laurent a, const Laurent& b) { a -= b; return a; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent& operator*=(const Laurent& o) { *this = *this * o; return *this; }
  Laurent& operator*=(const Rat& c);

  bool operator==(const Laurent& o) const {
    return coeff_ == o.coeff_ && (coeff_.empty() || low_ == o.low_);
  }
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  // multiply by q^k
  Laurent shifted(int k) const;

  // substitute q -> q^{-1}
  Laurent bar() const;

  Rat eval_at_one() const;

  // Division with remainder of polynomial parts (both shifted to low 0).
  // Requires o nonzero. Works on the associated polynomials; the quotient
  // and remainder are again Laurent with low >= 0 relative to the shifts.
  static void poly_divmod(const Laurent& a, const Laurent& b, Laurent& quo, Laurent& rem);

  // monic gcd of the polynomial parts (q-power factors are ignored)
  static Laurent poly_gcd(Laurent a, Laurent b);

  // exact division; throws if not divisible
  Laurent divexact(const Laurent& o) const;

  std::string str() const;   // e.g. "q^2 - 2 + q^-2"

 private:
  void trim();
  int low_ = 0;
  std::vector<Rat> coeff_;
};

}  // namespace qenv

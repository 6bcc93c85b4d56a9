#include "qenv/laurent.hpp"

#include <stdexcept>

namespace qenv {

void Laurent::trim() {
  size_t a = 0, b = coeff_.size();
  while (a < b && coeff_[a] == 0) ++a;
  while (b > a && coeff_[b - 1] == 0) --b;
  if (a == b) {
    coeff_.clear();
    low_ = 0;
    return;
  }
  if (a > 0 || b < coeff_.size()) {
    coeff_ = std::vector<Rat>(coeff_.begin() + a, coeff_.begin() + b);
    low_ += static_cast<int>(a);
  }
}

Laurent Laurent::monomial(const Rat& c, int exp) {
  Laurent r;
  if (c != 0) {
    r.low_ = exp;
    r.coeff_ = {c};
  }
  return r;
}

Rat Laurent::coeff(int exp) const {
  if (coeff_.empty() || exp < low_ || exp > degree()) return Rat(0);
  return coeff_[exp - low_];
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& c : r.coeff_) c = -c;
  return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  if (o.coeff_.empty()) return *this;
  if (coeff_.empty()) { *this = o; return *this; }
  int lo = std::min(low_, o.low_);
  int hi = std::max(degree(), o.degree());
  std::vector<Rat> out(static_cast<size_t>(hi - lo + 1), Rat(0));
  for (size_t i = 0; i < coeff_.size(); ++i) out[low_ - lo + i] += coeff_[i];
  for (size_t i = 0; i < o.coeff_.size(); ++i) out[o.low_ - lo + i] += o.coeff_[i];
  low_ = lo;
  coeff_ = std::move(out);
  trim();
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  *this += (-o);
  return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  if (a.coeff_.empty() || b.coeff_.empty()) return r;
  r.low_ = a.low_ + b.low_;
  r.coeff_.assign(a.coeff_.size() + b.coeff_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.coeff_.size(); ++i) {
    if (a.coeff_[i] == 0) continue;
    for (size_t j = 0; j < b.coeff_.size(); ++j)
      if (b.coeff_[j] != 0) r.coeff_[i + j] += a.coeff_[i] * b.coeff_[j];
  }
  r.trim();
  return r;
}

Laurent& Laurent::operator*=(const Rat& c) {
  if (c == 0) {
    coeff_.clear();
    low_ = 0;
    return *this;
  }
  for (auto& x : coeff_) x *= c;
  return *this;
}

Laurent Laurent::shifted(int k) const {
  Laurent r = *this;
  if (!r.coeff_.empty()) r.low_ += k;
  return r;
}

Laurent Laurent::bar() const {
  Laurent r;
  if (coeff_.empty()) return r;
  r.coeff_.assign(coeff_.rbegin(), coeff_.rend());
  r.low_ = -degree();
  return r;
}

Rat Laurent::eval_at_one() const {
  Rat s(0);
  for (const auto& c : coeff_) s += c;
  return s;
}

void Laurent::poly_divmod(const Laurent& a, const Laurent& b, Laurent& quo, Laurent& rem) {
  if (b.is_zero()) throw std::domain_error("Laurent: division by zero");
  // work on polynomial parts (shift lows to 0)
  Laurent r = a.shifted(a.coeff_.empty() ? 0 : -a.low_);
  Laurent d = b.shifted(b.coeff_.empty() ? 0 : -b.low_);
  quo = Laurent();
  while (!r.is_zero() && r.degree() >= d.degree()) {
    Rat c = r.leading() / d.leading();
    int e = r.degree() - d.degree();
    Laurent t = Laurent::monomial(c, e);
    quo += t;
    r -= t * d;
  }
  rem = r;
}

Laurent Laurent::poly_gcd(Laurent a, Laurent b) {
  if (!a.is_zero()) a = a.shifted(-a.low_);
  if (!b.is_zero()) b = b.shifted(-b.low_);
  while (!b.is_zero()) {
    Laurent q, r;
    poly_divmod(a, b, q, r);
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  // monic normalization
  Rat inv = Rat(1) / a.leading();
  a *= inv;
  return a;
}

Laurent Laurent::divexact(const Laurent& o) const {
  if (o.is_zero()) throw std::domain_error("Laurent: division by zero");
  if (is_zero()) return Laurent();
  Laurent q, r;
  poly_divmod(*this, o, q, r);
  if (!r.is_zero()) throw std::domain_error("Laurent: inexact division");
  return q.shifted(low_ - o.low_);
}

std::string Laurent::str() const {
  if (coeff_.empty()) return "0";
  std::string s;
  // highest exponent first
  for (int i = static_cast<int>(coeff_.size()) - 1; i >= 0; --i) {
    const Rat& c = coeff_[i];
    if (c == 0) continue;
    int e = low_ + i;
    Rat ac = c < 0 ? Rat(-c) : c;
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += (c < 0) ? " - " : " + ";
    }
    bool cone = (ac == 1);
    if (e == 0) {
      s += to_string(ac);
    } else {
      if (!cone) {
        s += to_string(ac);
        s += "*";
      }
      s += "q";
      if (e != 1) s += "^" + std::to_string(e);
    }
  }
  return s;
}

}  // namespace qenv

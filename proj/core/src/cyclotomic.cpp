#include "qenv/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace qenv {

SpecPoint spec_one() { return SpecPoint{1}; }

SpecPoint spec_zeta(int ell) {
  if (ell < 1 || ell % 2 == 0)
    throw std::invalid_argument("SpecPoint: ell must be a positive odd integer");
  return SpecPoint{ell};
}

namespace {

// polynomial helpers on dense rational vectors (lowest degree first)
using Poly = std::vector<Rat>;

void ptrim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly pmul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ptrim(r);
  return r;
}

void pdivmod(Poly a, const Poly& b, Poly& quo, Poly& rem) {
  quo.assign(a.size(), Rat(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rat c = a.back() / b.back();
    size_t shift = a.size() - b.size();
    quo[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    ptrim(a);
  }
  ptrim(quo);
  rem = a;
}

}  // namespace

const std::vector<Rat>& Cyclo::phi(int ell) {
  static std::map<int, Poly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, over the divisors of ell
  // in increasing order so every needed Phi_d is already present.
  for (int n = 1; n <= ell; ++n) {
    if (ell % n != 0 || cache.count(n)) continue;
    Poly num(n + 1, Rat(0));
    num[0] = Rat(-1);
    num[n] = Rat(1);
    Poly den{Rat(1)};
    for (int d = 1; d < n; ++d)
      if (n % d == 0) den = pmul(den, cache.at(d));
    Poly q, r;
    pdivmod(num, den, q, r);
    if (!r.empty()) throw std::logic_error("cyclotomic: nonzero remainder");
    cache[n] = q;
  }
  return cache.at(ell);
}

Cyclo::Cyclo(int ell, const Rat& r) : ell_(ell) {
  if (r != 0) c_ = {r};
  reduce();
}

Cyclo Cyclo::zeta_pow(int ell, long k) {
  long e = ((k % ell) + ell) % ell;
  Cyclo r;
  r.ell_ = ell;
  r.c_.assign(static_cast<size_t>(e) + 1, Rat(0));
  r.c_[static_cast<size_t>(e)] = Rat(1);
  r.reduce();
  return r;
}

void Cyclo::reduce() {
  const Poly& p = phi(ell_);
  size_t deg = p.size() - 1;
  while (c_.size() >= p.size()) {
    Rat c = c_.back() / p.back();
    size_t shift = c_.size() - p.size();
    for (size_t i = 0; i < p.size(); ++i) c_[shift + i] -= c * p[i];
    c_.pop_back();
  }
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  (void)deg;
}

bool Cyclo::is_zero() const { return c_.empty(); }

bool Cyclo::is_rational(Rat* out) const {
  if (c_.size() > 1) return false;
  if (out) *out = c_.empty() ? Rat(0) : c_[0];
  return true;
}

void Cyclo::check_compatible(const Cyclo& a, const Cyclo& b) {
  if (a.ell_ != b.ell_) {
    // allow mixing with plain rationals (ell = 1 embeds everywhere)
    if (a.ell_ != 1 && b.ell_ != 1) throw std::invalid_argument("Cyclo: mixed cyclotomic fields");
  }
}

namespace {
Cyclo promote(const Cyclo& a, int ell) {
  if (a.ell() == ell) return a;
  Rat r;
  if (!a.is_rational(&r)) throw std::invalid_argument("Cyclo: cannot promote non-rational");
  return Cyclo(ell, r);
}
}  // namespace

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
  Cyclo::check_compatible(a, b);
  int ell = std::max(a.ell_, b.ell_);
  Cyclo x = promote(a, ell), y = promote(b, ell);
  if (y.c_.size() > x.c_.size()) std::swap(x, y);
  for (size_t i = 0; i < y.c_.size(); ++i) x.c_[i] += y.c_[i];
  x.reduce();
  return x;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  Cyclo::check_compatible(a, b);
  int ell = std::max(a.ell_, b.ell_);
  Cyclo x = promote(a, ell), y = promote(b, ell);
  Cyclo r;
  r.ell_ = ell;
  if (x.c_.empty() || y.c_.empty()) return r;
  r.c_.assign(x.c_.size() + y.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < x.c_.size(); ++i)
    for (size_t j = 0; j < y.c_.size(); ++j) r.c_[i + j] += x.c_[i] * y.c_[j];
  r.reduce();
  return r;
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw std::domain_error("Cyclo: inverse of zero");
  // extended Euclid in Q[x] against Phi_ell
  Poly r0 = phi(ell_), r1 = c_;
  Poly s0{}, s1{Rat(1)};  // coefficients of the input in the Bezout identity
  while (true) {
    Poly q, r;
    pdivmod(r0, r1, q, r);
    if (r.empty()) break;
    // s = s0 - q*s1
    Poly qs = pmul(q, s1);
    Poly s(std::max(s0.size(), qs.size()), Rat(0));
    for (size_t i = 0; i < s0.size(); ++i) s[i] += s0[i];
    for (size_t i = 0; i < qs.size(); ++i) s[i] -= qs[i];
    ptrim(s);
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s;
  }
  // r1 is a nonzero constant gcd (Phi_ell has no roots in the residue ring
  // shared with a nonzero reduced element)
  if (r1.size() != 1) throw std::logic_error("Cyclo: non-unit gcd with Phi_ell");
  Rat inv = Rat(1) / r1[0];
  Cyclo out;
  out.ell_ = ell_;
  out.c_ = s1;
  for (auto& x : out.c_) x *= inv;
  out.reduce();
  return out;
}

Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

Cyclo Cyclo::pow(long e) const {
  Cyclo base = e >= 0 ? *this : inverse();
  long n = e >= 0 ? e : -e;
  Cyclo acc = Cyclo::one(ell_);
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

bool Cyclo::operator==(const Cyclo& o) const {
  if (ell_ == o.ell_) return c_ == o.c_;
  Rat a, b;
  if (is_rational(&a) && o.is_rational(&b)) return a == b;
  return false;
}

std::string Cyclo::str() const {
  if (c_.empty()) return ell_ == 1 ? "0" : "0 [l=" + std::to_string(ell_) + "]";
  std::string s;
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
    const Rat& c = c_[static_cast<size_t>(i)];
    if (c == 0) continue;
    Rat ac = c < 0 ? Rat(-c) : c;
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += (c < 0) ? " - " : " + ";
    }
    if (i == 0) {
      s += to_string(ac);
    } else {
      if (ac != 1) s += to_string(ac) + "*";
      s += "z";
      if (i != 1) s += "^" + std::to_string(i);
    }
  }
  if (ell_ != 1) s += " [l=" + std::to_string(ell_) + "]";
  return s;
}

Cyclo eval_laurent(const Laurent& l, const SpecPoint& z) {
  Cyclo r = Cyclo::zero(z.ell);
  if (l.is_zero()) return r;
  for (int e = l.low_degree(); e <= l.degree(); ++e) {
    Rat c = l.coeff(e);
    if (c == 0) continue;
    r += Cyclo(z.ell, c) * Cyclo::zeta_pow(z.ell, e);
  }
  return r;
}

bool in_localization(const QScalar& a, const SpecPoint& z) {
  if (a.is_zero()) return true;
  return !eval_laurent(a.den(), z).is_zero();
}

Cyclo specialize_scalar(const QScalar& a, const SpecPoint& z) {
  if (a.is_zero()) return Cyclo::zero(z.ell);
  Cyclo d = eval_laurent(a.den(), z);
  if (d.is_zero()) throw std::domain_error("specialize_scalar: pole at the specialization point");
  return eval_laurent(a.num(), z) / d;
}

QScalar divide_exact(const QScalar& a, const QScalar& by, const SpecPoint& z) {
  QScalar c = a / by;
  if (!in_localization(c, z))
    throw std::domain_error("divide_exact: quotient has a pole at the specialization point");
  return c;
}

}  // namespace qenv

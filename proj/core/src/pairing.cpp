#include "qenv/pairing.hpp"

#include <algorithm>
#include <stdexcept>

namespace qenv {

Pairing::Pairing(std::shared_ptr<Algebra> u) : u_(std::move(u)) {
  if (u_->flavor() != Flavor::U)
    throw std::invalid_argument("Pairing: needs the U-flavor instance");
}

// tau(E_{i w'}, y) = (q_i^{-1}-q_i)^{-1} tau(E_{w'}, D_i y) where D_i strips
// the leading letter i off the shuffle coordinates of y.
QScalar Pairing::tau_words(const Word& e, const WordVec& yshuffle) {
  if (e.empty()) {
    auto it = yshuffle.find(Word{});
    return it == yshuffle.end() ? QScalar() : it->second;
  }
  int i = e.front();
  WordVec stripped = u_->half().strip_front(yshuffle, i);
  if (stripped.empty()) return QScalar();
  Word rest(e.begin() + 1, e.end());
  int d = u_->qd(i);
  QScalar factor = QScalar(Laurent(Rat(1)), Laurent::q(-d) - Laurent::q(d));
  return factor * tau_words(rest, stripped);
}

const Algebra::Mat2& Pairing::gram(const Weight& gamma) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = gram_.find(gamma);
  if (it != gram_.end()) return it->second;
  const auto& basis = u_->half().component(gamma).basis;
  Algebra::Mat2 g(basis.size(), std::vector<QScalar>(basis.size()));
  for (size_t b = 0; b < basis.size(); ++b) {
    WordVec ysh = u_->half().sh_word(basis[b]);
    for (size_t a = 0; a < basis.size(); ++a) g[a][b] = tau_words(basis[a], ysh);
  }
  return gram_[gamma] = std::move(g);
}

Algebra::Mat2 Pairing::gram_inverse(const Weight& gamma) { return mat_inverse(gram(gamma)); }

QScalar Pairing::tau(const AlgElt& x, const AlgElt& y) {
  if (x.flavor() != Flavor::U || y.flavor() != Flavor::U)
    throw std::invalid_argument("tau: U-flavor arguments required");
  if (!x.in_upper()) throw std::invalid_argument("tau: first argument not in U^{>=0}");
  if (!y.in_lower()) throw std::invalid_argument("tau: second argument not in U^{<=0}");
  QScalar out;
  for (const auto& [kx, cx] : x.terms()) {
    Weight ge = u_->half().weight_of(kx.e);
    for (const auto& [ky, cy] : y.terms()) {
      Weight gf = u_->half().weight_of(ky.f);
      if (ge != gf) continue;  // weight orthogonality
      // K_lam E_e = q^{(lam, ge)} E_e K_lam, then Lemma 2.2(iii)
      QScalar factor = QScalar::q(static_cast<int>(u_->cd().form(kx.k, ge)));
      factor *= QScalar::q(static_cast<int>(-u_->cd().form(kx.k, ky.k)));
      QScalar tpart(1);
      if (!ge.is_zero()) {
        const auto& basis = u_->half().component(ge).basis;
        const auto& g = gram(ge);
        size_t a = static_cast<size_t>(std::find(basis.begin(), basis.end(), kx.e) - basis.begin());
        size_t b = static_cast<size_t>(std::find(basis.begin(), basis.end(), ky.f) - basis.begin());
        tpart = g[a][b];
      }
      out += cx * cy * factor * tpart;
    }
  }
  return out;
}

QScalar Pairing::tau_pbw_closed_form(const std::vector<int>& m) const {
  const RootOrder& ro = u_->order();
  QScalar out(1);
  for (size_t k = 0; k < ro.size(); ++k) {
    int mk = m[k];
    if (mk == 0) continue;
    int d = ro.dbeta[k];
    QScalar f = QScalar(q_factorial(mk, d));
    f *= QScalar::q(d * (mk * (mk - 1) / 2));
    Laurent par = Laurent::q(d) - Laurent::q(-d);
    f /= QScalar(par).pow(mk);
    if (mk % 2) f = -f;
    out *= f;
  }
  return out;
}

const AlgElt& Pairing::s_of_fword(const Word& a) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = sfw_.find(a);
  if (it != sfw_.end()) return it->second;
  AlgElt x(Flavor::U);
  x.add(TriKey{a, Weight(static_cast<size_t>(u_->cd().rank())), Word{}}, QScalar(1));
  return sfw_[a] = u_->antipode(x);
}

// S(F_a) = sum_{a'} R[a][a'] F_{a'} K_{wt a}; R is the (invertible) matrix of
// the reversal anti-automorphism in the canonical bases.
const Algebra::Mat2& Pairing::rev_transfer(const Weight& gamma) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = rev_.find(gamma);
  if (it != rev_.end()) return it->second;
  const auto& basis = u_->half().component(gamma).basis;
  Algebra::Mat2 r(basis.size(), std::vector<QScalar>(basis.size()));
  for (size_t a = 0; a < basis.size(); ++a) {
    const AlgElt& s = s_of_fword(basis[a]);
    for (const auto& [k, c] : s.terms()) {
      if (!k.e.empty() || k.k != gamma)
        throw std::logic_error("rev_transfer: unexpected antipode shape");
      size_t ap = static_cast<size_t>(std::find(basis.begin(), basis.end(), k.f) - basis.begin());
      r[a][ap] = c;
    }
  }
  return rev_[gamma] = std::move(r);
}

const AlgElt& Pairing::twisted_base(const Word& a, const Word& b) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(a, b);
  auto it = twist_base_.find(key);
  if (it != twist_base_.end()) return it->second;
  AlgElt eb = u_->from_half(WordVec{{b, QScalar(1)}}, true);
  return twist_base_[key] = u_->mul(eb, s_of_fword(a));
}

AlgElt Pairing::twisted_elt(const Word& a, const Weight& lam, const Word& b) {
  const AlgElt& p = twisted_base(a, b);
  // E_b K_lam S(F_a) = q^{-(lam, wt b)} K_lam (E_b S(F_a)); left K-multiplication
  // scales each key by q^{-(lam, wt f')}.
  Weight wb = u_->half().weight_of(b);
  QScalar global = QScalar::q(static_cast<int>(-u_->cd().form(lam, wb)));
  AlgElt out(Flavor::U);
  for (const auto& [k, c] : p.terms()) {
    QScalar f = QScalar::q(static_cast<int>(-u_->cd().form(lam, u_->half().weight_of(k.f))));
    out.add(TriKey{k.f, k.k + lam, k.e}, c * f * global);
  }
  return out;
}

std::map<TriKey, QScalar> Pairing::twisted_decompose(const AlgElt& u) {
  if (u.flavor() != Flavor::U) throw std::invalid_argument("twisted_decompose: U flavor only");
  std::map<TriKey, QScalar> coords;
  AlgElt rem = u;
  auto& half = u_->half();
  while (!rem.is_zero()) {
    int dmax = -1;
    for (const auto& [k, c] : rem.terms())
      dmax = std::max(dmax, half.weight_of(k.f).height() + half.weight_of(k.e).height());
    // collect the top slice, grouped by (minus weight, lambda', plus word)
    std::map<std::tuple<Weight, Weight, Word>, std::map<Word, QScalar>> groups;
    for (const auto& [k, c] : rem.terms()) {
      Weight gm = half.weight_of(k.f);
      if (gm.height() + half.weight_of(k.e).height() != dmax) continue;
      groups[{gm, k.k, k.e}][k.f] = c;
    }
    for (const auto& [gk, slice] : groups) {
      const auto& [gm, lamp, b] = gk;
      Weight lam = lamp - gm;
      const auto& basis = half.component(gm).basis;
      const auto& R = rev_transfer(gm);
      // top coefficient of twisted_elt(a, lam, b) on key (a', lam + gm, b):
      //   R[a][a'] * q^{-((lam+gm), wt b) - (lam, gm)}
      Weight wb = half.weight_of(b);
      QScalar phi = QScalar::q(static_cast<int>(-u_->cd().form(lam + gm, wb) -
                                                u_->cd().form(lam, gm)));
      std::vector<QScalar> v(basis.size());
      for (size_t ap = 0; ap < basis.size(); ++ap) {
        auto itv = slice.find(basis[ap]);
        v[ap] = itv == slice.end() ? QScalar() : itv->second / phi;
      }
      // solve sum_a C[a] R[a][a'] = v[a']
      Algebra::Mat2 rt(basis.size(), std::vector<QScalar>(basis.size()));
      for (size_t a = 0; a < basis.size(); ++a)
        for (size_t ap = 0; ap < basis.size(); ++ap) rt[ap][a] = R[a][ap];
      std::vector<QScalar> c = solve_square(rt, v);
      for (size_t a = 0; a < basis.size(); ++a) {
        if (c[a].is_zero()) continue;
        TriKey tk{basis[a], lam, b};
        coords[tk] += c[a];
        if (coords[tk].is_zero()) coords.erase(tk);
        rem -= twisted_elt(basis[a], lam, b) * c[a];
      }
    }
  }
  return coords;
}

AlgElt Pairing::twisted_compose(const std::map<TriKey, QScalar>& coords) {
  AlgElt out(Flavor::U);
  for (const auto& [k, c] : coords) out += twisted_elt(k.f, k.k, k.e) * c;
  return out;
}

QScalar Pairing::sigma(const AlgElt& u, const AlgElt& v) {
  if (v.flavor() != Flavor::V) throw std::invalid_argument("sigma: second argument must be in V");
  auto& half = u_->half();
  const auto tw = twisted_decompose(u);
  QScalar out;
  for (const auto& [ku, cu] : tw) {
    // ku: E_b K_lam S(F_a)
    Weight wplus = half.weight_of(ku.e);
    Weight wminus = half.weight_of(ku.f);
    for (const auto& [kv, cv] : v.terms()) {
      // kv: Y_f Z_mu X_e = q^{(mu, wt e)} Y_f X_e Z_mu
      Weight vplus = half.weight_of(kv.e);
      Weight vminus = half.weight_of(kv.f);
      if (wplus != vminus || wminus != vplus) continue;
      QScalar factor = QScalar::q(static_cast<int>(u_->cd().form(kv.k, vplus)));
      // tau(u_0, eta(v_0)) = tau(K_lam, K_{-mu}) = q^{(lam, mu)}
      factor *= QScalar::q(static_cast<int>(u_->cd().form(ku.k, kv.k)));
      QScalar g1(1), g2(1);
      if (!wplus.is_zero()) {
        const auto& basis = half.component(wplus).basis;
        const auto& g = gram(wplus);
        size_t ia = static_cast<size_t>(std::find(basis.begin(), basis.end(), ku.e) - basis.begin());
        size_t ib = static_cast<size_t>(std::find(basis.begin(), basis.end(), kv.f) - basis.begin());
        g1 = g[ia][ib];
      }
      if (!wminus.is_zero()) {
        const auto& basis = half.component(wminus).basis;
        const auto& g = gram(wminus);
        size_t ia = static_cast<size_t>(std::find(basis.begin(), basis.end(), kv.e) - basis.begin());
        size_t ib = static_cast<size_t>(std::find(basis.begin(), basis.end(), ku.f) - basis.begin());
        g2 = g[ia][ib];
      }
      out += cu * cv * factor * g1 * g2;
    }
  }
  return out;
}

bool Pairing::sigma_invariance_check(const AlgElt& u, const AlgElt& v, const AlgElt& vp) {
  auto vcomp = u_->companion(Flavor::V);
  QScalar lhs = sigma(u, vcomp->mul(v, vp));
  TensorElt du = u_->coproduct(u, 1);
  QScalar rhs;
  for (const auto& [keys, c] : du.terms()) {
    QScalar s1 = sigma(u_->key_elt(keys[0]), v);
    if (s1.is_zero()) continue;
    rhs += c * s1 * sigma(u_->key_elt(keys[1]), vp);
  }
  return lhs == rhs;
}

Cyclo Pairing::cartan_char(const Weight& lam, const Weight& mu, const SpecPoint& z) {
  return Cyclo::zeta_pow(z.ell, u_->cd().form(lam, mu));
}

Cyclo Pairing::middle_char(const Weight& lam, const MidKey& mid, const SpecPoint& z) {
  Cyclo out = Cyclo::one(z.ell);
  for (int i = 0; i < u_->cd().rank(); ++i) {
    long ci = u_->cd().coroot_pair(lam, i);
    int d = u_->cd().d(i);
    if (mid.eps[static_cast<size_t>(i)])
      out *= Cyclo::zeta_pow(z.ell, d * ci);
    int m = mid.mm[static_cast<size_t>(i)];
    if (m == 0) continue;
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto key = std::make_tuple(ci, m, d, z.ell);
    auto it = qbinom_memo_.find(key);
    if (it == qbinom_memo_.end()) {
      Cyclo val = specialize_scalar(q_binomial(ci, m, d), z);
      it = qbinom_memo_.emplace(key, val).first;
    }
    out *= it->second;
  }
  return out;
}

RadicalBasis Pairing::radical_truncated(const SpecPoint& z, int degree_bound) {
  u_->check_spec_point(z.ell);
  int rank = u_->cd().rank();
  int L = z.ell * (degree_bound + 1) - 1;
  // columns: all (eps, mm) with mm_i <= degree_bound
  std::vector<MidKey> cols;
  MidKey cur;
  cur.eps.assign(static_cast<size_t>(rank), 0);
  cur.mm.assign(static_cast<size_t>(rank), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == rank) {
      cols.push_back(cur);
      return;
    }
    for (int e = 0; e <= 1; ++e)
      for (int m = 0; m <= degree_bound; ++m) {
        cur.eps[static_cast<size_t>(i)] = static_cast<uint8_t>(e);
        cur.mm[static_cast<size_t>(i)] = m;
        rec(i + 1);
      }
    cur.eps[static_cast<size_t>(i)] = 0;
    cur.mm[static_cast<size_t>(i)] = 0;
  };
  rec(0);
  // rows: lambda in the symmetric box
  std::vector<Weight> lams;
  Weight wl(static_cast<size_t>(rank));
  std::function<void(int)> lrec = [&](int i) {
    if (i == rank) {
      lams.push_back(wl);
      return;
    }
    for (int v = -L; v <= L; ++v) {
      wl.c[static_cast<size_t>(i)] = v;
      lrec(i + 1);
    }
    wl.c[static_cast<size_t>(i)] = 0;
  };
  lrec(0);
  Mat<Cyclo> m(lams.size(), std::vector<Cyclo>(cols.size()));
  for (size_t r = 0; r < lams.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c) m[r][c] = middle_char(lams[r], cols[c], z);
  Mat<Cyclo> ker = kernel_basis(m);
  RadicalBasis out;
  out.z = z;
  out.degree_bound = degree_bound;
  for (const auto& kv : ker) {
    std::map<MidKey, Cyclo> combo;
    for (size_t c = 0; c < cols.size(); ++c)
      if (!kv[c].is_zero()) combo[cols[c]] = kv[c];
    out.kernel.push_back(std::move(combo));
  }
  return out;
}

}  // namespace qenv

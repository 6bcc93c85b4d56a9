#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "qenv/algebra.hpp"
#include "qenv/cyclotomic.hpp"
#include "qenv/linalg.hpp"

namespace qenv {

// Middle (Cartan) integral-basis key: prod_i K_i^{eps_i} [K_i; mm_i]
// (resp. Z_i on the V side).
struct MidKey {
  std::vector<uint8_t> eps;
  std::vector<int> mm;
  bool operator<(const MidKey& o) const {
    if (eps != o.eps) return eps < o.eps;
    return mm < o.mm;
  }
  bool operator==(const MidKey& o) const { return eps == o.eps && mm == o.mm; }
};

// Truncated radical data: elements of V^0_z spanning the computed part of
// J_z cap V^0_z, in the (eps, mm) basis.
struct RadicalBasis {
  SpecPoint z;
  int degree_bound = 0;
  std::vector<std::map<MidKey, Cyclo>> kernel;
};

// Drinfeld pairing tau on U^{>=0} x U^{<=0} and the Gavarini pairing
// sigma on U x V, computed against per-weight Gram blocks between the
// canonical half-algebra bases.
class Pairing {
 public:
  explicit Pairing(std::shared_ptr<Algebra> u);

  Algebra& alg() const { return *u_; }

  // tau by bilinear reduction: K-parts via tau(K_lam,K_mu) = q^{-(lam,mu)}
  // and Lemma 2.2(iii); +/- parts via the Gram blocks.
  QScalar tau(const AlgElt& x, const AlgElt& y);

  // Prop DPPBW closed form for a matching exponent pair.
  QScalar tau_pbw_closed_form(const std::vector<int>& m) const;

  // Gram block: tau between the canonical bases of U^+_gamma and U^-_{-gamma}.
  const Algebra::Mat2& gram(const Weight& gamma);
  Algebra::Mat2 gram_inverse(const Weight& gamma);

  // S-twisted triangular coordinates: u = sum c_{a,lam,b} E_b K_lam S(F_a),
  // keys reuse TriKey with f = a, k = lam, e = b.
  std::map<TriKey, QScalar> twisted_decompose(const AlgElt& u);
  AlgElt twisted_elt(const Word& a, const Weight& lam, const Word& b);
  AlgElt twisted_compose(const std::map<TriKey, QScalar>& coords);

  // sigma(u_+ u_0 S(u_-), v_- v_+ v_0) = tau(u_+, eta(v_-)) tau(u_0, eta(v_0))
  //                                      tau(eta(v_+), u_-)
  QScalar sigma(const AlgElt& u, const AlgElt& v);
  // sigma(u, v v') = (sigma x sigma)(Delta(u), v x v'), evaluated exactly
  bool sigma_invariance_check(const AlgElt& u, const AlgElt& v, const AlgElt& vp);

  // character value sigma_z(K_lam, prod_i Z_i^{eps_i}[Z_i; mm_i])
  Cyclo middle_char(const Weight& lam, const MidKey& mid, const SpecPoint& z);
  // sigma_z(K_lam, Z_mu) = z^{(lam,mu)}
  Cyclo cartan_char(const Weight& lam, const Weight& mu, const SpecPoint& z);

  // kernel of the middle character pairing on binomial degree <= D,
  // evaluated over the lambda box [-(ell(D+1)-1), ell(D+1)-1]^rank:
  // the V^0 part of J_z. The full ideal is V^- V^+ (kernel) structurally.
  RadicalBasis radical_truncated(const SpecPoint& z, int degree_bound);

 private:
  QScalar tau_words(const Word& e, const WordVec& yshuffle);
  const Algebra::Mat2& rev_transfer(const Weight& gamma);  // S(F_a) top coefficients
  const AlgElt& s_of_fword(const Word& a);
  const AlgElt& twisted_base(const Word& a, const Word& b);  // E_b * S(F_a)

  std::shared_ptr<Algebra> u_;
  std::recursive_mutex mu_;
  std::map<Weight, Algebra::Mat2> gram_;
  std::map<Weight, Algebra::Mat2> rev_;
  std::map<Word, AlgElt> sfw_;
  std::map<std::pair<Word, Word>, AlgElt> twist_base_;
  std::map<std::tuple<long, int, int, int>, Cyclo> qbinom_memo_;  // (n, m, d, ell)
};

}  // namespace qenv

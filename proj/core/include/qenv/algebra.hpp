#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qenv/halfalg.hpp"

namespace qenv {

// U = U_q(g) with generators K_lambda, E_i, F_i, or V = U_q(m) with
// generators Z_lambda, X_i, Y_i (whose plus and minus halves commute).
enum class Flavor { U, V };

// Triangular basis key: minus word, Cartan weight, plus word, standing for
// F_w K_lam E_w' (U) resp. Y_w Z_lam X_w' (V) with w, w' canonical words.
struct TriKey {
  Word f;
  Weight k;
  Word e;
  bool operator<(const TriKey& o) const {
    if (f != o.f) return f < o.f;
    if (k.c != o.k.c) return k.c < o.k.c;
    return e < o.e;
  }
  bool operator==(const TriKey& o) const { return f == o.f && k == o.k && e == o.e; }
};

class Algebra;

// Element in triangular normal form: finite map TriKey -> QScalar with
// canonical-word half parts and no zero coefficients. Plain value type;
// all algebra operations live on Algebra.
class AlgElt {
 public:
  AlgElt() = default;
  explicit AlgElt(Flavor fl) : flavor_(fl) {}

  Flavor flavor() const { return flavor_; }
  bool is_zero() const { return t_.empty(); }
  const std::map<TriKey, QScalar>& terms() const { return t_; }

  void add(const TriKey& k, const QScalar& c);
  AlgElt operator+(const AlgElt& o) const;
  AlgElt operator-(const AlgElt& o) const;
  AlgElt operator-() const;
  AlgElt operator*(const QScalar& c) const;
  AlgElt& operator+=(const AlgElt& o);
  AlgElt& operator-=(const AlgElt& o);
  bool operator==(const AlgElt& o) const { return flavor_ == o.flavor_ && t_ == o.t_; }
  bool operator!=(const AlgElt& o) const { return !(*this == o); }

  // coefficient of the identity-supported key (f, lam, e) = (., 0, .)
  QScalar scalar_part() const;
  bool pure_plus() const;   // only keys with empty f and zero lam... see .cpp
  bool pure_minus() const;
  bool in_upper() const;    // no minus letters (U^{>=0} / V^{>=0})
  bool in_lower() const;

 private:
  friend class Algebra;
  Flavor flavor_ = Flavor::U;
  std::map<TriKey, QScalar> t_;
};

// Element of a tensor power, canonical over tuples of triangular keys.
class TensorElt {
 public:
  TensorElt() = default;
  TensorElt(Flavor fl, int arity) : flavor_(fl), arity_(arity) {}

  Flavor flavor() const { return flavor_; }
  int arity() const { return arity_; }
  bool is_zero() const { return t_.empty(); }
  const std::map<std::vector<TriKey>, QScalar>& terms() const { return t_; }
  void add(const std::vector<TriKey>& k, const QScalar& c);
  TensorElt operator+(const TensorElt& o) const;
  TensorElt operator-(const TensorElt& o) const;
  TensorElt operator*(const QScalar& c) const;
  bool operator==(const TensorElt& o) const {
    return arity_ == o.arity_ && t_ == o.t_;
  }
  bool operator!=(const TensorElt& o) const { return !(*this == o); }

 private:
  friend class Algebra;
  Flavor flavor_ = Flavor::U;
  int arity_ = 2;
  std::map<std::vector<TriKey>, QScalar> t_;
};

// PBW exponent triple (minus exponents, Cartan weight, plus exponents),
// exponents indexed by the root order, applied in descending order
// E_{beta_N}^{n_N} ... E_{beta_1}^{n_1}.
struct PBWMono {
  std::vector<int> m;
  Weight lam;
  std::vector<int> n;
  bool operator<(const PBWMono& o) const {
    if (m != o.m) return m < o.m;
    if (lam.c != o.lam.c) return lam.c < o.lam.c;
    return n < o.n;
  }
  bool operator==(const PBWMono& o) const { return m == o.m && lam == o.lam && n == o.n; }
};

enum class PBWFlavor { Plain, Lusztig, DCP };

// One algebra instance: datum + fixed root order + caches. U and V instances
// over the same datum share the half-algebra context.
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  using Mat2 = std::vector<std::vector<QScalar>>;

  static std::shared_ptr<Algebra> make(std::shared_ptr<const CartanDatum> cd, Flavor fl,
                                       std::optional<RootOrder> order = std::nullopt);
  static std::shared_ptr<Algebra> make(const std::string& type, Flavor fl,
                                       bool allow_exceptional = false);

  const CartanDatum& cd() const { return *cd_; }
  std::shared_ptr<const CartanDatum> cd_ptr() const { return cd_; }
  const RootOrder& order() const { return order_; }
  Flavor flavor() const { return flavor_; }
  HalfCtx& half() const { return *half_; }
  int qd(int i) const { return cd_->d(i); }        // (alpha_i, alpha_i)/2
  int qd_root(size_t k) const { return order_.dbeta[k]; }

  // ell odd, and prime to 3 in type G2
  void check_spec_point(int ell) const;

  // ---- element constructors ----
  AlgElt zero() const { return AlgElt(flavor_); }
  AlgElt one() const;
  AlgElt scalar(const QScalar& c) const;
  AlgElt gen_plus(int i) const;    // E_i / X_i
  AlgElt gen_minus(int i) const;   // F_i / Y_i
  AlgElt gen_cartan(const Weight& lam) const;  // K_lam / Z_lam
  AlgElt from_half(const WordVec& canon, bool plus) const;
  AlgElt divided_power(const AlgElt& gen_or_root, int qd, int n) const;

  // ---- ring structure ----
  AlgElt mul(const AlgElt& a, const AlgElt& b) const;
  AlgElt mul_gen_plus(const AlgElt& a, int i) const;
  AlgElt mul_gen_minus(const AlgElt& a, int j) const;
  AlgElt mul_gen_cartan(const AlgElt& a, const Weight& mu) const;

  // ---- Hopf structure ----
  TensorElt coproduct(const AlgElt& a, int n = 1) const;
  QScalar counit(const AlgElt& a) const;
  AlgElt antipode(const AlgElt& a) const;
  AlgElt antipode_inverse(const AlgElt& a) const;
  TensorElt tensor_mul(const TensorElt& a, const TensorElt& b) const;
  AlgElt key_elt(const TriKey& k) const;
  TensorElt outer(const std::vector<AlgElt>& legs) const;

  // ---- braid group action (U flavor only) ----
  AlgElt braid(int i, const AlgElt& a, bool inverse = false) const;
  AlgElt braid_word(const std::vector<int>& word, const AlgElt& a, bool inverse = false) const;

  // ---- root vectors and PBW ----
  // canonical-word coordinates of E_{beta_k} resp. F_{beta_k}; V instances
  // transport them through eta (same coordinates, X/Y reading)
  const WordVec& root_coords(size_t k, bool plus) const;
  AlgElt root_vector(size_t k, bool plus) const;
  // exponent vectors m with sum m_k beta_k = gamma, deterministic order
  const std::vector<std::vector<int>>& pbw_exponents(const Weight& gamma) const;
  // coordinates of the ordered product over the canonical words (plain flavor)
  const WordVec& pbw_half_coords(const std::vector<int>& expo, bool plus) const;
  AlgElt pbw_expand(const PBWMono& mono, PBWFlavor fl) const;
  // exact PBW coordinates; throws if the per-weight system is singular
  std::map<PBWMono, QScalar> pbw_coordinates(const AlgElt& x, PBWFlavor fl) const;
  // half-element coordinates over plain PBW monomials of its weight blocks
  std::map<std::vector<int>, QScalar> pbw_half_coordinates(const WordVec& half, bool plus) const;

  // ---- eta: V^{<=0} -> U^{<=0} (Y->F, Z_lam -> K_{-lam}) and
  //      V^{>=0} -> U^{>=0} (X->E, Z_lam -> K_lam), with inverses ----
  AlgElt eta_leq0(const AlgElt& v) const;
  AlgElt eta_geq0(const AlgElt& v) const;
  AlgElt eta_leq0_inv(const AlgElt& u) const;
  AlgElt eta_geq0_inv(const AlgElt& u) const;

  // middle-leg extraction phi^i_{r,s} of Delta_2 on a pure minus element
  AlgElt coproduct_component(const AlgElt& f, int i, int r, int s) const;

  // companion instance of the other flavor over the same datum/order
  std::shared_ptr<Algebra> companion(Flavor fl) const;

 private:
  Algebra() = default;

  std::shared_ptr<const CartanDatum> cd_;
  RootOrder order_;
  Flavor flavor_ = Flavor::U;
  std::shared_ptr<HalfCtx> half_;

  mutable std::recursive_mutex mu_;
  mutable std::map<std::pair<size_t, bool>, WordVec> root_cache_;
  mutable std::map<Weight, std::vector<std::vector<int>>> expo_cache_;
  mutable std::map<std::pair<std::vector<int>, bool>, WordVec> pbw_cache_;
  mutable std::map<std::pair<Weight, bool>, Mat2> pbw_solver_;
  mutable std::map<Flavor, std::weak_ptr<Algebra>> companions_;
};

}  // namespace qenv

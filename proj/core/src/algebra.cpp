#include "qenv/algebra.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "qenv/linalg.hpp"

namespace qenv {

void AlgElt::add(const TriKey& k, const QScalar& c) {
  if (c.is_zero()) return;
  auto it = t_.find(k);
  if (it == t_.end()) {
    t_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

AlgElt AlgElt::operator+(const AlgElt& o) const {
  AlgElt r = *this;
  r += o;
  return r;
}

AlgElt& AlgElt::operator+=(const AlgElt& o) {
  for (const auto& [k, c] : o.t_) add(k, c);
  return *this;
}

AlgElt AlgElt::operator-(const AlgElt& o) const {
  AlgElt r = *this;
  r -= o;
  return r;
}

AlgElt& AlgElt::operator-=(const AlgElt& o) {
  for (const auto& [k, c] : o.t_) add(k, -c);
  return *this;
}

AlgElt AlgElt::operator-() const {
  AlgElt r = *this;
  for (auto& [k, c] : r.t_) c = -c;
  return r;
}

AlgElt AlgElt::operator*(const QScalar& c) const {
  AlgElt r(flavor_);
  if (c.is_zero()) return r;
  r.t_ = t_;
  for (auto& [k, x] : r.t_) x *= c;
  return r;
}

QScalar AlgElt::scalar_part() const {
  for (const auto& [k, c] : t_)
    if (k.f.empty() && k.e.empty() && k.k.is_zero()) return c;
  return QScalar();
}

bool AlgElt::pure_plus() const {
  for (const auto& [k, c] : t_)
    if (!k.f.empty() || !k.k.is_zero()) return false;
  return true;
}

bool AlgElt::pure_minus() const {
  for (const auto& [k, c] : t_)
    if (!k.e.empty() || !k.k.is_zero()) return false;
  return true;
}

bool AlgElt::in_upper() const {
  for (const auto& [k, c] : t_)
    if (!k.f.empty()) return false;
  return true;
}

bool AlgElt::in_lower() const {
  for (const auto& [k, c] : t_)
    if (!k.e.empty()) return false;
  return true;
}

void TensorElt::add(const std::vector<TriKey>& k, const QScalar& c) {
  if (c.is_zero()) return;
  auto it = t_.find(k);
  if (it == t_.end()) {
    t_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

TensorElt TensorElt::operator+(const TensorElt& o) const {
  TensorElt r = *this;
  for (const auto& [k, c] : o.t_) r.add(k, c);
  return r;
}

TensorElt TensorElt::operator-(const TensorElt& o) const {
  TensorElt r = *this;
  for (const auto& [k, c] : o.t_) r.add(k, -c);
  return r;
}

TensorElt TensorElt::operator*(const QScalar& c) const {
  TensorElt r(flavor_, arity_);
  if (c.is_zero()) return r;
  r.t_ = t_;
  for (auto& [k, x] : r.t_) x *= c;
  return r;
}

// ------------------------------------------------------------------------

std::shared_ptr<Algebra> Algebra::make(std::shared_ptr<const CartanDatum> cd, Flavor fl,
                                       std::optional<RootOrder> order) {
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->cd_ = std::move(cd);
  a->order_ = order ? *order : longest_word(*a->cd_);
  a->flavor_ = fl;
  a->half_ = std::make_shared<HalfCtx>(a->cd_);
  return a;
}

std::shared_ptr<Algebra> Algebra::make(const std::string& type, Flavor fl,
                                       bool allow_exceptional) {
  return make(CartanDatum::parse(type, allow_exceptional), fl);
}

std::shared_ptr<Algebra> Algebra::companion(Flavor fl) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  if (fl == flavor_) return std::const_pointer_cast<Algebra>(shared_from_this());
  auto it = companions_.find(fl);
  if (it != companions_.end())
    if (auto sp = it->second.lock()) return sp;
  auto a = std::shared_ptr<Algebra>(new Algebra());
  a->cd_ = cd_;
  a->order_ = order_;
  a->flavor_ = fl;
  a->half_ = half_;  // shared straightening caches
  companions_[fl] = a;
  return a;
}

void Algebra::check_spec_point(int ell) const {
  if (ell < 1 || ell % 2 == 0)
    throw std::invalid_argument("specialization order ell must be a positive odd integer");
  if (cd_->letter() == 'G' && ell % 3 == 0)
    throw std::invalid_argument("ell must be prime to 3 in type G2");
}

AlgElt Algebra::one() const { return scalar(QScalar(1)); }

AlgElt Algebra::scalar(const QScalar& c) const {
  AlgElt r(flavor_);
  r.add(TriKey{Word{}, Weight(static_cast<size_t>(cd_->rank())), Word{}}, c);
  return r;
}

AlgElt Algebra::gen_plus(int i) const {
  AlgElt r(flavor_);
  r.add(TriKey{Word{}, Weight(static_cast<size_t>(cd_->rank())), Word{static_cast<uint8_t>(i)}},
        QScalar(1));
  return r;
}

AlgElt Algebra::gen_minus(int i) const {
  AlgElt r(flavor_);
  r.add(TriKey{Word{static_cast<uint8_t>(i)}, Weight(static_cast<size_t>(cd_->rank())), Word{}},
        QScalar(1));
  return r;
}

AlgElt Algebra::gen_cartan(const Weight& lam) const {
  cd_->check_weight(lam);
  AlgElt r(flavor_);
  r.add(TriKey{Word{}, lam, Word{}}, QScalar(1));
  return r;
}

AlgElt Algebra::from_half(const WordVec& canon, bool plus) const {
  AlgElt r(flavor_);
  Weight zero(static_cast<size_t>(cd_->rank()));
  for (const auto& [w, c] : canon)
    r.add(plus ? TriKey{Word{}, zero, w} : TriKey{w, zero, Word{}}, c);
  return r;
}

AlgElt Algebra::divided_power(const AlgElt& x, int qd, int n) const {
  AlgElt acc = one();
  for (int t = 0; t < n; ++t) acc = mul(acc, x);
  return acc * QScalar(Laurent(Rat(1)), q_factorial(n, qd));
}

// ---- generator multiplications -----------------------------------------

AlgElt Algebra::mul_gen_plus(const AlgElt& a, int i) const {
  AlgElt out(flavor_);
  for (const auto& [key, c] : a.terms()) {
    const WordVec& coords = half_->canon_word(word_cat(key.e, Word{static_cast<uint8_t>(i)}));
    for (const auto& [w, x] : coords) out.add(TriKey{key.f, key.k, w}, c * x);
  }
  return out;
}

AlgElt Algebra::mul_gen_cartan(const AlgElt& a, const Weight& mu) const {
  cd_->check_weight(mu);
  AlgElt out(flavor_);
  for (const auto& [key, c] : a.terms()) {
    QScalar f = QScalar::q(static_cast<int>(-cd_->form(mu, half_->weight_of(key.e))));
    out.add(TriKey{key.f, key.k + mu, key.e}, c * f);
  }
  return out;
}

AlgElt Algebra::mul_gen_minus(const AlgElt& a, int j) const {
  AlgElt out(flavor_);
  Weight aj = Weight::simple(static_cast<size_t>(cd_->rank()), static_cast<size_t>(j));
  for (const auto& [key, c] : a.terms()) {
    // move the new minus letter through the Cartan part
    int sgn = (flavor_ == Flavor::U) ? -1 : +1;
    QScalar kf = QScalar::q(static_cast<int>(sgn * cd_->form(key.k, aj)));
    const WordVec& fc = half_->canon_word(word_cat(key.f, Word{static_cast<uint8_t>(j)}));
    for (const auto& [w, x] : fc) out.add(TriKey{w, key.k, key.e}, c * kf * x);
    if (flavor_ == Flavor::V) continue;  // X and Y commute, no cross terms
    // E-part straightening: each matching plus letter contributes a K_j^{+-1} term
    if (key.e.empty()) continue;
    QScalar denom{q_int(1, 0)};  // placeholder, replaced below
    Laurent dl = Laurent::q(cd_->d(j)) - Laurent::q(-cd_->d(j));
    denom = QScalar(dl);
    Weight pre(static_cast<size_t>(cd_->rank()));
    for (size_t pos = 0; pos < key.e.size(); ++pos) {
      if (key.e[pos] == j) {
        Word rest;
        rest.reserve(key.e.size() - 1);
        rest.insert(rest.end(), key.e.begin(), key.e.begin() + static_cast<long>(pos));
        rest.insert(rest.end(), key.e.begin() + static_cast<long>(pos) + 1, key.e.end());
        long ip = cd_->form(aj, pre);
        QScalar cp = QScalar::q(static_cast<int>(-ip)) / denom;
        QScalar cm = -(QScalar::q(static_cast<int>(ip)) / denom);
        const WordVec& rc = half_->canon_word(rest);
        for (const auto& [w, x] : rc) {
          out.add(TriKey{key.f, key.k + aj, w}, c * cp * x);
          out.add(TriKey{key.f, key.k - aj, w}, c * cm * x);
        }
      }
      pre.c[key.e[pos]] += 1;
    }
  }
  return out;
}

AlgElt Algebra::mul(const AlgElt& a, const AlgElt& b) const {
  if (a.flavor() != flavor_ || b.flavor() != flavor_)
    throw std::invalid_argument("mul: flavor mismatch");
  AlgElt out(flavor_);
  for (const auto& [key, c] : b.terms()) {
    AlgElt cur = a * c;
    for (uint8_t j : key.f) cur = mul_gen_minus(cur, j);
    if (!key.k.is_zero()) cur = mul_gen_cartan(cur, key.k);
    for (uint8_t i : key.e) cur = mul_gen_plus(cur, i);
    out += cur;
  }
  return out;
}

// ---- Hopf structure ------------------------------------------------------

AlgElt Algebra::key_elt(const TriKey& k) const {
  AlgElt r(flavor_);
  r.add(k, QScalar(1));
  return r;
}

TensorElt Algebra::outer(const std::vector<AlgElt>& legs) const {
  TensorElt out(flavor_, static_cast<int>(legs.size()));
  std::vector<TriKey> key(legs.size());
  QScalar coeff(1);
  std::function<void(size_t, QScalar)> rec = [&](size_t leg, QScalar acc) {
    if (leg == legs.size()) {
      out.add(key, acc);
      return;
    }
    for (const auto& [k, c] : legs[leg].terms()) {
      key[leg] = k;
      rec(leg + 1, acc * c);
    }
  };
  rec(0, QScalar(1));
  (void)coeff;
  return out;
}

TensorElt Algebra::tensor_mul(const TensorElt& a, const TensorElt& b) const {
  if (a.arity() != b.arity()) throw std::invalid_argument("tensor_mul: arity mismatch");
  TensorElt out(flavor_, a.arity());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      std::vector<AlgElt> legs;
      legs.reserve(static_cast<size_t>(a.arity()));
      for (int j = 0; j < a.arity(); ++j)
        legs.push_back(mul(key_elt(ka[static_cast<size_t>(j)]), key_elt(kb[static_cast<size_t>(j)])));
      TensorElt prod = outer(legs);
      for (const auto& [k, c] : prod.terms()) out.add(k, ca * cb * c);
    }
  return out;
}

TensorElt Algebra::coproduct(const AlgElt& a, int n) const {
  if (n < 1) throw std::invalid_argument("coproduct: n >= 1 required");
  int legs = n + 1;
  size_t rk = static_cast<size_t>(cd_->rank());
  Weight zero(rk);
  TriKey onek{Word{}, zero, Word{}};

  auto delta_plus = [&](int i) {
    TensorElt d(flavor_, legs);
    Weight ai = Weight::simple(rk, static_cast<size_t>(i));
    for (int p = 0; p < legs; ++p) {
      std::vector<TriKey> key(static_cast<size_t>(legs), onek);
      for (int j = 0; j < p; ++j) key[static_cast<size_t>(j)] = TriKey{Word{}, ai, Word{}};
      key[static_cast<size_t>(p)] = TriKey{Word{}, zero, Word{static_cast<uint8_t>(i)}};
      d.add(key, QScalar(1));
    }
    return d;
  };
  auto delta_minus = [&](int i) {
    TensorElt d(flavor_, legs);
    Weight ai = Weight::simple(rk, static_cast<size_t>(i));
    Weight tail = (flavor_ == Flavor::U) ? -ai : ai;  // K_i^{-1} vs Z_i
    for (int p = 0; p < legs; ++p) {
      std::vector<TriKey> key(static_cast<size_t>(legs), onek);
      key[static_cast<size_t>(p)] = TriKey{Word{static_cast<uint8_t>(i)}, zero, Word{}};
      for (int j = p + 1; j < legs; ++j) key[static_cast<size_t>(j)] = TriKey{Word{}, tail, Word{}};
      d.add(key, QScalar(1));
    }
    return d;
  };

  TensorElt out(flavor_, legs);
  for (const auto& [key, c] : a.terms()) {
    TensorElt state(flavor_, legs);
    state.add(std::vector<TriKey>(static_cast<size_t>(legs), onek), c);
    for (uint8_t j : key.f) state = tensor_mul(state, delta_minus(j));
    if (!key.k.is_zero()) {
      TensorElt dk(flavor_, legs);
      dk.add(std::vector<TriKey>(static_cast<size_t>(legs), TriKey{Word{}, key.k, Word{}}),
             QScalar(1));
      state = tensor_mul(state, dk);
    }
    for (uint8_t i : key.e) state = tensor_mul(state, delta_plus(i));
    out = out + state;
  }
  return out;
}

QScalar Algebra::counit(const AlgElt& a) const {
  QScalar s;
  for (const auto& [k, c] : a.terms())
    if (k.f.empty() && k.e.empty()) s += c;
  return s;
}

AlgElt Algebra::antipode(const AlgElt& a) const {
  AlgElt out(flavor_);
  size_t rk = static_cast<size_t>(cd_->rank());
  for (const auto& [key, c] : a.terms()) {
    AlgElt acc = scalar(c);
    // S(F_w K E_w') = S(E)...S(E) S(K) S(F)...S(F), letters reversed
    for (size_t j = key.e.size(); j-- > 0;) {
      int i = key.e[j];
      Weight mai = -Weight::simple(rk, static_cast<size_t>(i));
      // U: S(E_i) = -K_i^{-1} E_i ; V: S(X_i) = -Z_i^{-1} X_i
      acc = mul_gen_plus(mul_gen_cartan(acc, mai), i) * QScalar(-1);
    }
    if (!key.k.is_zero()) acc = mul_gen_cartan(acc, -key.k);
    for (size_t j = key.f.size(); j-- > 0;) {
      int i = key.f[j];
      Weight ai = Weight::simple(rk, static_cast<size_t>(i));
      if (flavor_ == Flavor::U) {
        // S(F_i) = -F_i K_i
        acc = mul_gen_cartan(mul_gen_minus(acc, i), ai) * QScalar(-1);
      } else {
        // S(Y_i) = -Y_i Z_i^{-1}
        acc = mul_gen_cartan(mul_gen_minus(acc, i), -ai) * QScalar(-1);
      }
    }
    out += acc;
  }
  return out;
}

AlgElt Algebra::antipode_inverse(const AlgElt& a) const {
  AlgElt out(flavor_);
  size_t rk = static_cast<size_t>(cd_->rank());
  for (const auto& [key, c] : a.terms()) {
    AlgElt acc = scalar(c);
    for (size_t j = key.e.size(); j-- > 0;) {
      int i = key.e[j];
      Weight mai = -Weight::simple(rk, static_cast<size_t>(i));
      // U: S^{-1}(E_i) = -E_i K_i^{-1} ; V: S^{-1}(X_i) = -X_i Z_i^{-1}
      acc = mul_gen_cartan(mul_gen_plus(acc, i), mai) * QScalar(-1);
    }
    if (!key.k.is_zero()) acc = mul_gen_cartan(acc, -key.k);
    for (size_t j = key.f.size(); j-- > 0;) {
      int i = key.f[j];
      Weight ai = Weight::simple(rk, static_cast<size_t>(i));
      if (flavor_ == Flavor::U) {
        // S^{-1}(F_i) = -K_i F_i
        acc = mul_gen_minus(mul_gen_cartan(acc, ai), i) * QScalar(-1);
      } else {
        // S^{-1}(Y_i) = -Z_i^{-1} Y_i
        acc = mul_gen_minus(mul_gen_cartan(acc, -ai), i) * QScalar(-1);
      }
    }
    out += acc;
  }
  return out;
}

// ---- braid action --------------------------------------------------------

AlgElt Algebra::braid(int i, const AlgElt& a, bool inverse) const {
  if (flavor_ != Flavor::U)
    throw std::invalid_argument("braid action is not defined on U_q(m)");
  if (i < 0 || i >= cd_->rank()) throw std::invalid_argument("braid: index out of range");
  size_t rk = static_cast<size_t>(cd_->rank());
  Weight ai = Weight::simple(rk, static_cast<size_t>(i));
  int di = cd_->d(i);

  auto image_plus = [&](int j) -> AlgElt {
    if (j == i) {
      AlgElt r = one();
      if (!inverse) {
        // T_i(E_i) = -F_i K_i
        r = mul_gen_cartan(mul_gen_minus(r, i), ai) * QScalar(-1);
      } else {
        // T_i^{-1}(E_i) = -K_i^{-1} F_i
        r = mul_gen_minus(mul_gen_cartan(r, -ai), i) * QScalar(-1);
      }
      return r;
    }
    int na = -cd_->a(i, j);
    AlgElt sum = zero();
    for (int k = 0; k <= na; ++k) {
      Word w;
      int n1 = na - k;
      if (!inverse) {
        // E_i^{(n1)} E_j E_i^{(k)}
        for (int t = 0; t < n1; ++t) w.push_back(static_cast<uint8_t>(i));
        w.push_back(static_cast<uint8_t>(j));
        for (int t = 0; t < k; ++t) w.push_back(static_cast<uint8_t>(i));
      } else {
        // E_i^{(k)} E_j E_i^{(n1)}
        for (int t = 0; t < k; ++t) w.push_back(static_cast<uint8_t>(i));
        w.push_back(static_cast<uint8_t>(j));
        for (int t = 0; t < n1; ++t) w.push_back(static_cast<uint8_t>(i));
      }
      QScalar coeff = QScalar::q(-di * k) / QScalar(q_factorial(n1, di) * q_factorial(k, di));
      if (k % 2) coeff = -coeff;
      WordVec canon = half_->canon_word(w);
      AlgElt term = from_half(canon, true);
      sum += term * coeff;
    }
    return sum;
  };
  auto image_minus = [&](int j) -> AlgElt {
    if (j == i) {
      AlgElt r = one();
      if (!inverse) {
        // T_i(F_i) = -K_i^{-1} E_i
        r = mul_gen_plus(mul_gen_cartan(r, -ai), i) * QScalar(-1);
      } else {
        // T_i^{-1}(F_i) = -E_i K_i
        r = mul_gen_cartan(mul_gen_plus(r, i), ai) * QScalar(-1);
      }
      return r;
    }
    int na = -cd_->a(i, j);
    AlgElt sum = zero();
    for (int k = 0; k <= na; ++k) {
      Word w;
      int n1 = na - k;
      if (!inverse) {
        // F_i^{(k)} F_j F_i^{(n1)}
        for (int t = 0; t < k; ++t) w.push_back(static_cast<uint8_t>(i));
        w.push_back(static_cast<uint8_t>(j));
        for (int t = 0; t < n1; ++t) w.push_back(static_cast<uint8_t>(i));
      } else {
        // F_i^{(n1)} F_j F_i^{(k)}
        for (int t = 0; t < n1; ++t) w.push_back(static_cast<uint8_t>(i));
        w.push_back(static_cast<uint8_t>(j));
        for (int t = 0; t < k; ++t) w.push_back(static_cast<uint8_t>(i));
      }
      QScalar coeff = QScalar::q(di * k) / QScalar(q_factorial(n1, di) * q_factorial(k, di));
      if (k % 2) coeff = -coeff;
      WordVec canon = half_->canon_word(w);
      AlgElt term = from_half(canon, false);
      sum += term * coeff;
    }
    return sum;
  };

  AlgElt out(flavor_);
  for (const auto& [key, c] : a.terms()) {
    AlgElt acc = scalar(c);
    for (uint8_t j : key.f) acc = mul(acc, image_minus(j));
    if (!key.k.is_zero()) acc = mul_gen_cartan(acc, cd_->reflect(i, key.k));
    for (uint8_t j : key.e) acc = mul(acc, image_plus(j));
    out += acc;
  }
  return out;
}

AlgElt Algebra::braid_word(const std::vector<int>& word, const AlgElt& a, bool inverse) const {
  AlgElt cur = a;
  if (!inverse) {
    for (size_t j = word.size(); j-- > 0;) cur = braid(word[j], cur, false);
  } else {
    // (T_{i1}...T_{in})^{-1} = T_{in}^{-1}...T_{i1}^{-1}
    for (int i : word) cur = braid(i, cur, true);
  }
  return cur;
}

// ---- root vectors and PBW -------------------------------------------------

const WordVec& Algebra::root_coords(size_t k, bool plus) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(k, plus);
  auto it = root_cache_.find(key);
  if (it != root_cache_.end()) return it->second;
  if (k >= order_.size()) throw std::invalid_argument("root index out of range");

  WordVec coords;
  if (flavor_ != Flavor::U) {
    coords = companion(Flavor::U)->root_coords(k, plus);
  } else {
    AlgElt x = plus ? gen_plus(order_.word[k]) : gen_minus(order_.word[k]);
    for (size_t j = k; j-- > 0;) x = braid(order_.word[j], x, false);
    // root vectors live in a single half of a single weight
    for (const auto& [tk, c] : x.terms()) {
      if (!tk.k.is_zero() || !(plus ? tk.f.empty() : tk.e.empty()))
        throw std::logic_error("root vector left its half");
      coords.emplace(plus ? tk.e : tk.f, c);
    }
  }
  return root_cache_[key] = std::move(coords);
}

AlgElt Algebra::root_vector(size_t k, bool plus) const {
  return from_half(root_coords(k, plus), plus);
}

const std::vector<std::vector<int>>& Algebra::pbw_exponents(const Weight& gamma) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = expo_cache_.find(gamma);
  if (it != expo_cache_.end()) return it->second;
  std::vector<std::vector<int>> out;
  size_t N = order_.size();
  std::vector<int> cur(N, 0);
  std::function<void(size_t, Weight)> rec = [&](size_t k, Weight rem) {
    if (k == N) {
      if (rem.is_zero()) out.push_back(cur);
      return;
    }
    Weight r = rem;
    int e = 0;
    while (true) {
      cur[k] = e;
      rec(k + 1, r);
      r = r - order_.roots[k];
      if (!r.nonneg()) break;
      ++e;
    }
    cur[k] = 0;
  };
  rec(0, gamma);
  return expo_cache_[gamma] = std::move(out);
}

const WordVec& Algebra::pbw_half_coords(const std::vector<int>& expo, bool plus) const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(expo, plus);
  auto it = pbw_cache_.find(key);
  if (it != pbw_cache_.end()) return it->second;
  // ordered product, descending root index
  WordVec acc{{Word{}, QScalar(1)}};
  for (size_t k = order_.size(); k-- > 0;) {
    for (int t = 0; t < expo[k]; ++t) acc = half_->mul(acc, root_coords(k, plus));
  }
  return pbw_cache_[key] = std::move(acc);
}

AlgElt Algebra::pbw_expand(const PBWMono& mono, PBWFlavor fl) const {
  cd_->check_weight(mono.lam);
  const WordVec& mc = pbw_half_coords(mono.m, false);
  const WordVec& pc = pbw_half_coords(mono.n, true);
  QScalar scale(1);
  for (size_t k = 0; k < order_.size(); ++k) {
    int db = order_.dbeta[k];
    if (fl == PBWFlavor::Lusztig) {
      scale /= QScalar(q_factorial(mono.m[k], db) * q_factorial(mono.n[k], db));
    } else if (fl == PBWFlavor::DCP) {
      Laurent par = Laurent::q(db) - Laurent::q(-db);
      scale *= QScalar(par).pow(mono.m[k] + mono.n[k]);
    }
  }
  AlgElt out(flavor_);
  for (const auto& [wf, cf] : mc)
    for (const auto& [we, ce] : pc) out.add(TriKey{wf, mono.lam, we}, cf * ce * scale);
  return out;
}

std::map<std::vector<int>, QScalar> Algebra::pbw_half_coordinates(const WordVec& half,
                                                                  bool plus) const {
  std::map<std::vector<int>, QScalar> out;
  // split by weight
  std::map<Weight, WordVec> blocks;
  for (const auto& [w, c] : half) blocks[half_->weight_of(w)].insert({w, c});
  for (const auto& [g, vec] : blocks) {
    const auto& expos = pbw_exponents(g);
    const auto& basis = half_->component(g).basis;
    if (expos.empty()) throw std::logic_error("pbw_half_coordinates: no monomials at weight");
    Mat2 A(basis.size(), std::vector<QScalar>(expos.size()));
    for (size_t col = 0; col < expos.size(); ++col) {
      const WordVec& pc = pbw_half_coords(expos[col], plus);
      for (size_t row = 0; row < basis.size(); ++row) {
        auto it = pc.find(basis[row]);
        A[row][col] = (it == pc.end()) ? QScalar() : it->second;
      }
    }
    std::vector<QScalar> b(basis.size());
    for (size_t row = 0; row < basis.size(); ++row) {
      auto it = vec.find(basis[row]);
      b[row] = (it == vec.end()) ? QScalar() : it->second;
    }
    std::vector<QScalar> x = solve_square(A, b);
    for (size_t col = 0; col < expos.size(); ++col)
      if (!x[col].is_zero()) out[expos[col]] += x[col];
  }
  return out;
}

std::map<PBWMono, QScalar> Algebra::pbw_coordinates(const AlgElt& x, PBWFlavor fl) const {
  std::map<PBWMono, QScalar> out;
  // group keys by (minus weight, lambda, plus weight)
  std::map<std::tuple<Weight, Weight, Weight>, std::map<TriKey, QScalar>> blocks;
  for (const auto& [k, c] : x.terms())
    blocks[{half_->weight_of(k.f), k.k, half_->weight_of(k.e)}].insert({k, c});
  for (const auto& [bk, terms] : blocks) {
    const auto& [gm, lam, gp] = bk;
    const auto& em = pbw_exponents(gm);
    const auto& ep = pbw_exponents(gp);
    const auto& bm = half_->component(gm).basis;
    const auto& bp = half_->component(gp).basis;
    // A: minus-side PBW coordinates, B: plus-side
    Mat2 A(bm.size(), std::vector<QScalar>(em.size()));
    for (size_t col = 0; col < em.size(); ++col) {
      const WordVec& pc = pbw_half_coords(em[col], false);
      for (size_t row = 0; row < bm.size(); ++row) {
        auto it = pc.find(bm[row]);
        A[row][col] = (it == pc.end()) ? QScalar() : it->second;
      }
    }
    Mat2 B(bp.size(), std::vector<QScalar>(ep.size()));
    for (size_t col = 0; col < ep.size(); ++col) {
      const WordVec& pc = pbw_half_coords(ep[col], true);
      for (size_t row = 0; row < bp.size(); ++row) {
        auto it = pc.find(bp[row]);
        B[row][col] = (it == pc.end()) ? QScalar() : it->second;
      }
    }
    // X[a][b] coefficients over canonical-word pairs
    Mat2 X(bm.size(), std::vector<QScalar>(bp.size()));
    for (const auto& [k, c] : terms) {
      size_t ra = static_cast<size_t>(
          std::find(bm.begin(), bm.end(), k.f) - bm.begin());
      size_t cb = static_cast<size_t>(
          std::find(bp.begin(), bp.end(), k.e) - bp.begin());
      X[ra][cb] = c;
    }
    // solve A D B^T = X
    Mat2 Y(em.size(), std::vector<QScalar>(bp.size()));
    for (size_t cb = 0; cb < bp.size(); ++cb) {
      std::vector<QScalar> col(bm.size());
      for (size_t ra = 0; ra < bm.size(); ++ra) col[ra] = X[ra][cb];
      std::vector<QScalar> y = solve_square(A, col);
      for (size_t r = 0; r < em.size(); ++r) Y[r][cb] = y[r];
    }
    for (size_t r = 0; r < em.size(); ++r) {
      std::vector<QScalar> d = solve_square(B, Y[r]);
      for (size_t cb = 0; cb < ep.size(); ++cb) {
        if (d[cb].is_zero()) continue;
        QScalar coeff = d[cb];
        for (size_t k = 0; k < order_.size(); ++k) {
          int db = order_.dbeta[k];
          if (fl == PBWFlavor::Lusztig) {
            coeff *= QScalar(q_factorial(em[r][k], db) * q_factorial(ep[cb][k], db));
          } else if (fl == PBWFlavor::DCP) {
            Laurent par = Laurent::q(db) - Laurent::q(-db);
            coeff /= QScalar(par).pow(em[r][k] + ep[cb][k]);
          }
        }
        PBWMono mono{em[r], lam, ep[cb]};
        out[mono] += coeff;
        if (out[mono].is_zero()) out.erase(mono);
      }
    }
  }
  return out;
}

// ---- eta -------------------------------------------------------------------

AlgElt Algebra::eta_leq0(const AlgElt& v) const {
  if (v.flavor() != Flavor::V) throw std::invalid_argument("eta: expected a V element");
  if (!v.in_lower()) throw std::invalid_argument("eta_leq0: element not in V^{<=0}");
  AlgElt out(Flavor::U);
  for (const auto& [k, c] : v.terms()) out.add(TriKey{k.f, -k.k, k.e}, c);
  return out;
}

AlgElt Algebra::eta_geq0(const AlgElt& v) const {
  if (v.flavor() != Flavor::V) throw std::invalid_argument("eta: expected a V element");
  if (!v.in_upper()) throw std::invalid_argument("eta_geq0: element not in V^{>=0}");
  AlgElt out(Flavor::U);
  for (const auto& [k, c] : v.terms()) out.add(k, c);
  return out;
}

AlgElt Algebra::eta_leq0_inv(const AlgElt& u) const {
  if (u.flavor() != Flavor::U) throw std::invalid_argument("eta inverse: expected a U element");
  if (!u.in_lower()) throw std::invalid_argument("eta_leq0_inv: element not in U^{<=0}");
  AlgElt out(Flavor::V);
  for (const auto& [k, c] : u.terms()) out.add(TriKey{k.f, -k.k, k.e}, c);
  return out;
}

AlgElt Algebra::eta_geq0_inv(const AlgElt& u) const {
  if (u.flavor() != Flavor::U) throw std::invalid_argument("eta inverse: expected a U element");
  if (!u.in_upper()) throw std::invalid_argument("eta_geq0_inv: element not in U^{>=0}");
  AlgElt out(Flavor::V);
  for (const auto& [k, c] : u.terms()) out.add(k, c);
  return out;
}

// ---- phi^i_{r,s} extraction -------------------------------------------------

AlgElt Algebra::coproduct_component(const AlgElt& f, int i, int r, int s) const {
  if (flavor_ != Flavor::U)
    throw std::invalid_argument("coproduct_component: U flavor only");
  if (!f.pure_minus()) throw std::invalid_argument("coproduct_component: input must be in U^-");
  size_t rk = static_cast<size_t>(cd_->rank());
  Weight ai = Weight::simple(rk, static_cast<size_t>(i));
  int di = cd_->d(i);
  AlgElt out(flavor_);
  TensorElt d2 = coproduct(f, 2);
  QScalar norm = QScalar(q_factorial(r, di) * q_factorial(s, di));
  for (const auto& [keys, c] : d2.terms()) {
    const TriKey& k1 = keys[0];
    const TriKey& k2 = keys[1];
    const TriKey& k3 = keys[2];
    if (!k1.k.is_zero()) throw std::logic_error("phi: unexpected Cartan part in leg 1");
    Weight w1 = half_->weight_of(k1.f);
    Weight w3 = half_->weight_of(k3.f);
    if (w1 != ai * r || w3 != ai * s) continue;
    if (k2.k != -(ai * r)) throw std::logic_error("phi: middle K-factor mismatch");
    out.add(TriKey{k2.f, Weight(rk), Word{}}, c * norm);
  }
  return out;
}

}  // namespace qenv

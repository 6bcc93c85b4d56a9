#include "qenv/cartan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace qenv {

bool Weight::is_zero() const {
  for (int x : c)
    if (x) return false;
  return true;
}

bool Weight::nonneg() const {
  for (int x : c)
    if (x < 0) return false;
  return true;
}

int Weight::height() const {
  int h = 0;
  for (int x : c) h += x;
  return h;
}

Weight Weight::operator+(const Weight& o) const {
  Weight r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
  return r;
}

Weight Weight::operator-(const Weight& o) const {
  Weight r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
  return r;
}

Weight Weight::operator-() const {
  Weight r = *this;
  for (auto& x : r.c) x = -x;
  return r;
}

Weight Weight::operator*(int k) const {
  Weight r = *this;
  for (auto& x : r.c) x *= k;
  return r;
}

std::string Weight::str() const {
  std::string s = "(";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

void CartanDatum::check_weight(const Weight& w) const {
  if (static_cast<int>(w.rank()) != rank_)
    throw std::invalid_argument("weight rank does not match the Cartan datum");
}

std::shared_ptr<const CartanDatum> CartanDatum::build(char letter, int rank,
                                                      bool allow_exceptional) {
  auto cd = std::shared_ptr<CartanDatum>(new CartanDatum());
  cd->letter_ = letter;
  cd->rank_ = rank;
  auto bad = [&]() {
    throw std::invalid_argument("unsupported Cartan type " + std::string(1, letter) +
                                std::to_string(rank));
  };
  if (rank < 1 || rank > 4) bad();
  int n = rank;
  cd->a_.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) cd->a_[i][i] = 2;
  auto chain = [&](int i, int j) {  // simply-laced bond
    cd->a_[i][j] = -1;
    cd->a_[j][i] = -1;
  };
  switch (letter) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      cd->d_.assign(n, 1);
      break;
    case 'B':
      // alpha_1..alpha_{n-1} long, alpha_n short
      if (n < 2) bad();
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      cd->a_[n - 1][n - 2] = -2;
      cd->d_.assign(n, 2);
      cd->d_[n - 1] = 1;
      break;
    case 'C':
      // alpha_1..alpha_{n-1} short, alpha_n long
      if (n < 2) bad();
      for (int i = 0; i + 1 < n; ++i) chain(i, i + 1);
      cd->a_[n - 2][n - 1] = -2;
      cd->d_.assign(n, 1);
      cd->d_[n - 1] = 2;
      break;
    case 'D':
      if (n != 4) bad();
      chain(0, 1);
      chain(1, 2);
      chain(1, 3);
      cd->d_.assign(n, 1);
      break;
    case 'G':
      if (!allow_exceptional || n != 2) bad();
      cd->a_[0][1] = -1;
      cd->a_[1][0] = -3;
      cd->d_ = {3, 1};
      break;
    case 'F':
      if (!allow_exceptional || n != 4) bad();
      chain(0, 1);
      chain(2, 3);
      cd->a_[1][2] = -1;
      cd->a_[2][1] = -2;
      cd->d_ = {2, 2, 1, 1};
      break;
    default:
      bad();
  }
  cd->validate();
  cd->compute_positive_roots();
  return cd;
}

std::shared_ptr<const CartanDatum> CartanDatum::parse(const std::string& type,
                                                      bool allow_exceptional) {
  if (type.size() != 2 || type[1] < '1' || type[1] > '9')
    throw std::invalid_argument("bad type string '" + type + "' (expected e.g. A2, B2)");
  return build(type[0], type[1] - '0', allow_exceptional);
}

void CartanDatum::validate() const {
  int mind = d_[0];
  for (int i = 0; i < rank_; ++i) {
    mind = std::min(mind, d_[i]);
    if (a_[i][i] != 2) throw std::logic_error("Cartan: diagonal must be 2");
    for (int j = 0; j < rank_; ++j) {
      if (i != j && a_[i][j] > 0) throw std::logic_error("Cartan: off-diagonal must be <= 0");
      if ((a_[i][j] == 0) != (a_[j][i] == 0)) throw std::logic_error("Cartan: zero pattern");
      if (d_[i] * a_[i][j] != d_[j] * a_[j][i]) throw std::logic_error("Cartan: symmetrization");
    }
  }
  if (mind != 1) throw std::logic_error("Cartan: short-root normalization requires min d = 1");
}

long CartanDatum::form(const Weight& lam, const Weight& mu) const {
  check_weight(lam);
  check_weight(mu);
  long s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (lam.c[i] == 0) continue;
    for (int j = 0; j < rank_; ++j)
      s += static_cast<long>(lam.c[i]) * mu.c[j] * d_[i] * a_[i][j];
  }
  return s;
}

long CartanDatum::coroot_pair(const Weight& lam, int i) const {
  check_weight(lam);
  long s = 0;
  for (int j = 0; j < rank_; ++j) s += static_cast<long>(a_[i][j]) * lam.c[j];
  return s;
}

Weight CartanDatum::reflect(int i, const Weight& lam) const {
  if (i < 0 || i >= rank_) throw std::invalid_argument("reflect: index out of range");
  Weight r = lam;
  r.c[i] -= static_cast<int>(coroot_pair(lam, i));
  return r;
}

void CartanDatum::compute_positive_roots() {
  // closure of the simple roots under simple reflections, keeping Q+
  std::set<Weight> roots;
  for (int i = 0; i < rank_; ++i) roots.insert(Weight::simple(rank_, i));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Weight> cur(roots.begin(), roots.end());
    for (const auto& b : cur)
      for (int i = 0; i < rank_; ++i) {
        Weight r = reflect(i, b);
        if (r.nonneg() && !roots.count(r)) {
          roots.insert(r);
          grew = true;
        }
      }
  }
  pos_roots_.assign(roots.begin(), roots.end());
  std::sort(pos_roots_.begin(), pos_roots_.end(), [](const Weight& x, const Weight& y) {
    if (x.height() != y.height()) return x.height() < y.height();
    return x.c < y.c;
  });
}

long CartanDatum::kostant_count(const Weight& gamma) const {
  check_weight(gamma);
  if (!gamma.nonneg()) throw std::domain_error("kostant_count: weight not in Q+");
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& [w, v] : kostant_memo_)
    if (w == gamma) return v;
  // count multisets recursively over the fixed positive-root list
  std::vector<std::pair<Weight, long>> local;
  std::function<long(Weight, size_t)> rec = [&](Weight g, size_t k) -> long {
    if (g.is_zero()) return 1;
    if (k >= pos_roots_.size()) return 0;
    long total = 0;
    Weight cur = g;
    while (true) {
      total += rec(cur, k + 1);
      cur = cur - pos_roots_[k];
      if (!cur.nonneg()) break;
    }
    return total;
  };
  long v = rec(gamma, 0);
  kostant_memo_.emplace_back(gamma, v);
  return v;
}

RootOrder root_order_from_word(const CartanDatum& cd, const std::vector<int>& word) {
  RootOrder ro;
  ro.word = word;
  int n = cd.rank();
  // running product w = s_{i1}...s_{ik} applied on the fly
  for (size_t k = 0; k < word.size(); ++k) {
    Weight b = Weight::simple(n, word[k]);
    for (size_t j = k; j-- > 0;) b = cd.reflect(word[j], b);
    ro.roots.push_back(b);
    ro.dbeta.push_back(static_cast<int>(cd.form(b, b) / 2));
  }
  return ro;
}

RootOrder longest_word(const CartanDatum& cd) {
  int n = cd.rank();
  std::vector<int> word;
  // images of the simple roots under the prefix word (acting on the left)
  std::vector<Weight> img;
  for (int i = 0; i < n; ++i) img.push_back(Weight::simple(n, i));
  size_t N = cd.num_positive_roots();
  while (word.size() < N) {
    int pick = -1;
    for (int i = 0; i < n; ++i)
      if (img[i].nonneg()) {
        pick = i;
        break;
      }
    if (pick < 0) throw std::logic_error("longest_word: no ascent found before length N");
    word.push_back(pick);
    // w := w * s_pick, so each alpha_j image becomes w(s_pick(alpha_j))
    std::vector<Weight> next(n, Weight(static_cast<size_t>(n)));
    for (int j = 0; j < n; ++j) {
      Weight sj = cd.reflect(pick, Weight::simple(n, j));
      Weight acc(static_cast<size_t>(n));
      for (int t = 0; t < n; ++t)
        if (sj.c[t]) acc += img[t] * sj.c[t];
      next[j] = acc;
    }
    img = std::move(next);
  }
  for (int i = 0; i < n; ++i)
    if (img[i].nonneg()) throw std::logic_error("longest_word: did not reach w0");
  RootOrder ro = root_order_from_word(cd, word);
  // sanity: the beta_k enumerate the positive roots without repetition
  std::set<Weight> seen(ro.roots.begin(), ro.roots.end());
  if (seen.size() != N) throw std::logic_error("longest_word: convex order is degenerate");
  return ro;
}

}  // namespace qenv

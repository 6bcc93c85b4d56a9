#include "qenv/halfalg.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qenv {

Word word_cat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Word word_of(std::initializer_list<int> letters) {
  Word w;
  for (int x : letters) w.push_back(static_cast<uint8_t>(x));
  return w;
}

void wv_add(WordVec& acc, const Word& w, const QScalar& c) {
  if (c.is_zero()) return;
  auto it = acc.find(w);
  if (it == acc.end()) {
    acc.emplace(w, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

void wv_axpy(WordVec& acc, const QScalar& c, const WordVec& v) {
  if (c.is_zero()) return;
  for (const auto& [w, x] : v) wv_add(acc, w, c * x);
}

Weight HalfCtx::weight_of(const Word& w) const {
  Weight g(static_cast<size_t>(cd_->rank()));
  for (uint8_t l : w) g.c[l] += 1;
  return g;
}

// Merge recursion for the q-shuffle: the crossing of a right-hand letter b
// past the whole left remainder u contributes q^{(wt u, alpha_b)}.
WordVec HalfCtx::shuffle_words(const Word& a, const Word& b) {
  size_t m = a.size(), n = b.size();
  // memo over suffix pairs (i, j): shuffle of a[i:] and b[j:]
  std::vector<std::vector<WordVec>> memo(m + 1, std::vector<WordVec>(n + 1));
  std::vector<Weight> awt(m + 1, Weight(static_cast<size_t>(cd_->rank())));
  for (size_t i = m; i-- > 0;) {
    awt[i] = awt[i + 1];
    awt[i].c[a[i]] += 1;
  }
  for (size_t i = m + 1; i-- > 0;) {
    for (size_t j = n + 1; j-- > 0;) {
      WordVec& out = memo[i][j];
      if (i == m && j == n) {
        out.emplace(Word{}, QScalar(1));
        continue;
      }
      if (i < m) {
        for (const auto& [w, c] : memo[i + 1][j]) {
          Word nw;
          nw.reserve(w.size() + 1);
          nw.push_back(a[i]);
          nw.insert(nw.end(), w.begin(), w.end());
          wv_add(out, nw, c);
        }
      }
      if (j < n) {
        Weight ai = Weight::simple(static_cast<size_t>(cd_->rank()), b[j]);
        QScalar f = QScalar::q(static_cast<int>(cd_->form(awt[i], ai)));
        for (const auto& [w, c] : memo[i][j + 1]) {
          Word nw;
          nw.reserve(w.size() + 1);
          nw.push_back(b[j]);
          nw.insert(nw.end(), w.begin(), w.end());
          wv_add(out, nw, f * c);
        }
      }
    }
  }
  return memo[0][0];
}

WordVec HalfCtx::shuffle(const WordVec& a, const WordVec& b) {
  WordVec out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) wv_axpy(out, ca * cb, shuffle_words(wa, wb));
  return out;
}

const WordVec& HalfCtx::sh_word(const Word& w) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = sh_cache_.find(w);
  if (it != sh_cache_.end()) return it->second;
  WordVec v;
  if (w.empty()) {
    v.emplace(Word{}, QScalar(1));
  } else {
    Word pre(w.begin(), w.end() - 1);
    Word last{w.back()};
    v = shuffle(sh_word(pre), WordVec{{last, QScalar(1)}});
  }
  return sh_cache_[w] = std::move(v);
}

WordVec HalfCtx::strip_front(const WordVec& v, int i) const {
  WordVec out;
  for (const auto& [w, c] : v) {
    if (w.empty() || w.front() != i) continue;
    out.emplace(Word(w.begin() + 1, w.end()), c);
  }
  return out;
}

WordVec HalfCtx::strip_back(const WordVec& v, int i) const {
  WordVec out;
  Weight ai = Weight::simple(static_cast<size_t>(cd_->rank()), static_cast<size_t>(i));
  for (const auto& [w, c] : v) {
    if (w.empty() || w.back() != i) continue;
    Word nw(w.begin(), w.end() - 1);
    QScalar f = QScalar::q(static_cast<int>(-cd_->form(ai, weight_of(nw))));
    out.emplace(std::move(nw), f * c);
  }
  return out;
}

std::vector<Word> HalfCtx::words_of_weight(const Weight& gamma) const {
  std::vector<Word> out;
  Word cur;
  std::vector<int> rem = gamma.c;
  int total = gamma.height();
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.size()) == total) {
      out.push_back(cur);
      return;
    }
    for (size_t i = 0; i < rem.size(); ++i) {
      if (rem[i] == 0) continue;
      rem[i]--;
      cur.push_back(static_cast<uint8_t>(i));
      rec();
      cur.pop_back();
      rem[i]++;
    }
  };
  if (total >= 0 && gamma.nonneg()) rec();
  return out;
}

const HalfCtx::Component& HalfCtx::component(const Weight& gamma) {
  cd_->check_weight(gamma);
  if (!gamma.nonneg()) throw std::domain_error("component: weight not in Q+");
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = comp_.find(gamma);
  if (it != comp_.end()) return it->second;

  Component comp;
  long target = cd_->kostant_count(gamma);
  // lex scan of the words of this weight; keep the independent ones
  for (const Word& w : words_of_weight(gamma)) {
    if (static_cast<long>(comp.basis.size()) == target) break;
    WordVec v = sh_word(w);
    WordVec lift;
    for (const auto& row : comp.rows) {
      auto p = v.find(row.pivot);
      if (p == v.end()) continue;
      QScalar c = p->second / row.vec.at(row.pivot);
      wv_axpy(v, -c, row.vec);
      wv_axpy(lift, -c, row.lift);
    }
    if (v.empty()) continue;
    wv_add(lift, w, QScalar(1));
    Component::Row row;
    row.pivot = v.begin()->first;  // leftmost (lex-least) surviving word
    row.vec = std::move(v);
    row.lift = std::move(lift);
    comp.rows.push_back(std::move(row));
    comp.basis.push_back(w);
  }
  if (static_cast<long>(comp.basis.size()) != target)
    throw std::logic_error("component: canonical scan did not reach the Kostant dimension");
  return comp_[gamma] = std::move(comp);
}

long HalfCtx::dim(const Weight& gamma) {
  return static_cast<long>(component(gamma).basis.size());
}

WordVec HalfCtx::reduce_shuffle(const WordVec& sh) {
  // split by weight, eliminate against the component rows
  std::map<Weight, WordVec> blocks;
  for (const auto& [w, c] : sh) blocks[weight_of(w)].emplace(w, c);
  WordVec out;
  for (auto& [g, v] : blocks) {
    const Component& comp = component(g);
    for (const auto& row : comp.rows) {
      auto p = v.find(row.pivot);
      if (p == v.end()) continue;
      QScalar c = p->second / row.vec.at(row.pivot);
      wv_axpy(v, -c, row.vec);
      wv_axpy(out, c, row.lift);
    }
    if (!v.empty())
      throw std::logic_error("reduce_shuffle: vector outside the embedded subalgebra");
  }
  return out;
}

const WordVec& HalfCtx::canon_word(const Word& w) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = canon_cache_.find(w);
  if (it != canon_cache_.end()) return it->second;
  WordVec coords = reduce_shuffle(sh_word(w));
  return canon_cache_[w] = std::move(coords);
}

WordVec HalfCtx::mul(const WordVec& a, const WordVec& b) {
  WordVec out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) wv_axpy(out, ca * cb, canon_word(word_cat(wa, wb)));
  return out;
}

WordVec HalfCtx::to_shuffle(const WordVec& canon) {
  WordVec out;
  for (const auto& [w, c] : canon) wv_axpy(out, c, sh_word(w));
  return out;
}

}  // namespace qenv

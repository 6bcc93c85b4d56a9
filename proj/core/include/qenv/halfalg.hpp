#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "qenv/cartan.hpp"
#include "qenv/qscalar.hpp"

namespace qenv {

// Word in the generator alphabet (0-based indices into I). A word stands for
// the product of its letters in one half algebra: E_{i1}...E_{im} in U+, and
// likewise for F/X/Y words -- all four halves share the same Serre
// presentation, so one context serves them all.
using Word = std::vector<uint8_t>;

Word word_cat(const Word& a, const Word& b);
Word word_of(std::initializer_list<int> letters);

// Sparse vector over words. Used both for shuffle coordinates (the faithful
// linear coordinates on the Serre quotient) and for canonical-word
// coordinates of algebra elements.
using WordVec = std::map<Word, QScalar>;

void wv_add(WordVec& acc, const Word& w, const QScalar& c);
void wv_axpy(WordVec& acc, const QScalar& c, const WordVec& v);

// Shared per-datum context for the half algebras U^+, U^-, V^+, V^-.
//
// Elements of a half algebra are held in coordinates over a canonical set of
// basis words per weight. The quotient by the Serre ideal is realized through
// the quantum shuffle embedding: the product of letters E_{i1}...E_{im} maps
// to the q-shuffle product (i1)*(i2)*...*(im), whose kernel on the free
// algebra is exactly the Serre ideal over Q(q). Shuffle coordinates are
// therefore faithful, and per-weight row reduction of the shuffled word
// images with leftmost-pivot selection yields a deterministic canonical
// basis of size kostant_count(gamma).
class HalfCtx {
 public:
  explicit HalfCtx(std::shared_ptr<const CartanDatum> cd) : cd_(std::move(cd)) {}

  const CartanDatum& cd() const { return *cd_; }
  std::shared_ptr<const CartanDatum> cd_ptr() const { return cd_; }

  Weight weight_of(const Word& w) const;

  // q-shuffle product of shuffle-coordinate vectors
  WordVec shuffle(const WordVec& a, const WordVec& b);
  // shuffle expansion of the product of letters of w (memoized)
  const WordVec& sh_word(const Word& w);

  // Strip maps on shuffle coordinates, the coordinate form of the skew
  // derivations entering the Drinfeld pairing and the EF straightening:
  //   strip_front:  c_w(out) = c_{[i] w}(in)
  //   strip_back:   c_w(out) = q^{-(alpha_i, wt w)} c_{w [i]}(in)
  WordVec strip_front(const WordVec& v, int i) const;
  WordVec strip_back(const WordVec& v, int i) const;

  struct Component {
    std::vector<Word> basis;  // canonical words in scan (lex) order
    struct Row {
      Word pivot;
      WordVec vec;   // reduced shuffle vector of a canonical word
      WordVec lift;  // its expression over the canonical words
    };
    std::vector<Row> rows;
  };
  const Component& component(const Weight& gamma);
  long dim(const Weight& gamma);

  // coordinates over canonical words; input must lie in the embedded
  // subalgebra (always true for vectors produced by algebra operations)
  WordVec reduce_shuffle(const WordVec& sh);
  // canonical coordinates of the product of letters of w (memoized)
  const WordVec& canon_word(const Word& w);
  // product of half-algebra elements in canonical coordinates
  WordVec mul(const WordVec& a, const WordVec& b);
  WordVec to_shuffle(const WordVec& canon);

  // all words of weight gamma in lex order (enumeration helper; the
  // canonical scan uses the same order lazily)
  std::vector<Word> words_of_weight(const Weight& gamma) const;

 private:
  WordVec shuffle_words(const Word& a, const Word& b);

  std::shared_ptr<const CartanDatum> cd_;
  std::map<Word, WordVec> sh_cache_;
  std::map<Word, WordVec> canon_cache_;
  std::map<Weight, Component> comp_;
  std::recursive_mutex mu_;
};

}  // namespace qenv

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qenv/rational.hpp"

namespace qenv {

// Element of the root lattice Q in simple-root coordinates.
struct Weight {
  std::vector<int> c;

  Weight() = default;
  explicit Weight(size_t rank) : c(rank, 0) {}
  explicit Weight(std::vector<int> v) : c(std::move(v)) {}
  static Weight simple(size_t rank, size_t i) {
    Weight w(rank);
    w.c[i] = 1;
    return w;
  }

  size_t rank() const { return c.size(); }
  bool is_zero() const;
  bool nonneg() const;  // membership in Q+
  int height() const;

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;
  Weight operator*(int k) const;
  Weight& operator+=(const Weight& o) { *this = *this + o; return *this; }
  bool operator==(const Weight& o) const { return c == o.c; }
  bool operator!=(const Weight& o) const { return !(*this == o); }
  bool operator<(const Weight& o) const { return c < o.c; }

  std::string str() const;  // "(c1,...,cr)"
};

struct RootOrder;

// Finite-type Cartan datum: Cartan matrix a_ij, symmetrizers d_i with
// d_i a_ij = d_j a_ji and min d_i = 1 (short roots have (a,a)/2 = 1).
class CartanDatum {
 public:
  // Classical types A1..A4, B2..B4, C2..C4, D4 by default; G2 and F4 only
  // with allow_exceptional.
  static std::shared_ptr<const CartanDatum> build(char letter, int rank,
                                                  bool allow_exceptional = false);
  static std::shared_ptr<const CartanDatum> parse(const std::string& type,
                                                  bool allow_exceptional = false);

  char letter() const { return letter_; }
  int rank() const { return rank_; }
  std::string type_string() const { return std::string(1, letter_) + std::to_string(rank_); }
  int a(int i, int j) const { return a_[i][j]; }
  int d(int i) const { return d_[i]; }

  // symmetric bilinear form on the root lattice
  long form(const Weight& lam, const Weight& mu) const;
  // (lam, alpha_i^vee) = 2(lam, alpha_i)/(alpha_i, alpha_i), always an integer
  long coroot_pair(const Weight& lam, int i) const;
  // simple reflection s_i
  Weight reflect(int i, const Weight& lam) const;

  // all positive roots, sorted by (height, coordinates); deterministic
  const std::vector<Weight>& positive_roots() const { return pos_roots_; }
  size_t num_positive_roots() const { return pos_roots_.size(); }

  // number of multisets of positive roots summing to gamma (exhaustive,
  // memoized); the test oracle for weight-component dimensions
  long kostant_count(const Weight& gamma) const;

  void check_weight(const Weight& w) const;

 private:
  CartanDatum() = default;
  void validate() const;
  void compute_positive_roots();

  char letter_ = 'A';
  int rank_ = 1;
  std::vector<std::vector<int>> a_;
  std::vector<int> d_;
  std::vector<Weight> pos_roots_;
  mutable std::vector<std::pair<Weight, long>> kostant_memo_;  // flat memo, guarded
};

// Fixed reduced word for w0 together with the induced convex order
// beta_k = s_{i_1}...s_{i_{k-1}}(alpha_{i_k}) on the positive roots.
struct RootOrder {
  std::vector<int> word;        // i_1 .. i_N (0-based indices)
  std::vector<Weight> roots;    // beta_1 .. beta_N
  std::vector<int> dbeta;       // (beta_k, beta_k)/2

  size_t size() const { return word.size(); }
};

// Deterministic greedy reduced word for w0: repeatedly append the smallest
// index whose simple root stays positive under the prefix built so far.
RootOrder longest_word(const CartanDatum& cd);

// Applies beta_k = s_{i1}..s_{i,k-1}(alpha_{ik}) to an arbitrary reduced word
// (used by tests to compare PBW data across different words for w0).
RootOrder root_order_from_word(const CartanDatum& cd, const std::vector<int>& word);

}  // namespace qenv

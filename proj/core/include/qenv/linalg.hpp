#pragma once

#include <stdexcept>
#include <vector>

namespace qenv {

// Small dense exact linear algebra over a field type F (QScalar, Cyclo).
// F must provide default-construct-to-zero, is_zero(), +, -, *, /, ==.
template <class F>
using Mat = std::vector<std::vector<F>>;

template <class F>
long mat_rank(Mat<F> m) {
  long rank = 0;
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t rr = 0;
  for (size_t c = 0; c < cols && rr < rows; ++c) {
    size_t p = rr;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rr]);
    for (size_t r = 0; r < rows; ++r) {
      if (r == rr || m[r][c].is_zero()) continue;
      F f = m[r][c] / m[rr][c];
      for (size_t k = c; k < cols; ++k) m[r][k] = m[r][k] - f * m[rr][k];
    }
    ++rr;
    ++rank;
  }
  return rank;
}

// Solve A x = b for square invertible A; throws on singular input.
template <class F>
std::vector<F> solve_square(Mat<F> a, std::vector<F> b) {
  size_t n = a.size();
  if (n == 0) return {};
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) throw std::domain_error("solve_square: singular matrix");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      F f = a[r][c] / a[c][c];
      for (size_t k = c; k < n; ++k) a[r][k] = a[r][k] - f * a[c][k];
      b[r] = b[r] - f * b[c];
    }
  }
  std::vector<F> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

template <class F>
Mat<F> mat_inverse(const Mat<F>& a) {
  size_t n = a.size();
  Mat<F> aug = a;
  for (size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n);
    for (size_t j = 0; j < n; ++j) aug[i][n + j] = F();
    aug[i][n + i] = F(1);
  }
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && aug[p][c].is_zero()) ++p;
    if (p == n) throw std::domain_error("mat_inverse: singular matrix");
    std::swap(aug[p], aug[c]);
    F inv = F(1) / aug[c][c];
    for (size_t k = 0; k < 2 * n; ++k) aug[c][k] = aug[c][k] * inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == c || aug[r][c].is_zero()) continue;
      F f = aug[r][c];
      for (size_t k = 0; k < 2 * n; ++k) aug[r][k] = aug[r][k] - f * aug[c][k];
    }
  }
  Mat<F> inv(n, std::vector<F>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

// Basis of the right kernel {x : A x = 0}.
template <class F>
Mat<F> kernel_basis(Mat<F> a) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  std::vector<long> pivot_of_col(cols, -1);
  size_t rr = 0;
  for (size_t c = 0; c < cols && rr < rows; ++c) {
    size_t p = rr;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rr]);
    F inv = F(1) / a[rr][c];
    for (size_t k = 0; k < cols; ++k) a[rr][k] = a[rr][k] * inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rr || a[r][c].is_zero()) continue;
      F f = a[r][c];
      for (size_t k = 0; k < cols; ++k) a[r][k] = a[r][k] - f * a[rr][k];
    }
    pivot_of_col[c] = static_cast<long>(rr);
    ++rr;
  }
  Mat<F> ker;
  for (size_t c = 0; c < cols; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<F> v(cols);
    v[c] = F(1);
    for (size_t c2 = 0; c2 < cols; ++c2)
      if (pivot_of_col[c2] >= 0) v[c2] = F() - a[static_cast<size_t>(pivot_of_col[c2])][c];
    ker.push_back(std::move(v));
  }
  return ker;
}

}  // namespace qenv

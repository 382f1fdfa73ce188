#pragma once
// Dense matrices over an exact field: reduced row echelon form, rank, kernel,
// inverse, solving. Everything is deterministic for a fixed input (first
// nonzero entry in a column is the pivot; no magnitude-based pivoting exists
// for exact fields).

#include <optional>
#include <string>
#include <vector>

#include "core.hpp"
#include "fields.hpp"

namespace conelab {

template <FieldType K>
class Matrix {
 public:
  Matrix() : r_(0), c_(0) {}
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, K()) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<K> data)
      : r_(rows), c_(cols), a_(std::move(data)) {
    if (a_.size() != r_ * c_) throw error("matrix data size mismatch");
  }

  static Matrix identity(std::size_t n, const K& sample) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = sample.make(i == j ? 1 : 0);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  K& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const K& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<K> row(std::size_t i) const {
    return std::vector<K>(a_.begin() + static_cast<std::ptrdiff_t>(i * c_),
                          a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
  }
  void set_row(std::size_t i, const std::vector<K>& v) {
    if (v.size() != c_) throw error("row size mismatch");
    std::copy(v.begin(), v.end(), a_.begin() + static_cast<std::ptrdiff_t>(i * c_));
  }
  void append_row(const std::vector<K>& v) {
    if (c_ == 0 && r_ == 0) c_ = v.size();
    if (v.size() != c_) throw error("row size mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++r_;
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (c_ != o.r_) throw error("matrix product shape mismatch");
    Matrix p(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        if (at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < o.c_; ++j)
          p.at(i, j) = p.at(i, j) + at(i, k) * o.at(k, j);
      }
    return p;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    if (v.size() != c_) throw error("matrix-vector shape mismatch");
    std::vector<K> out(r_, K());
    for (std::size_t i = 0; i < r_; ++i) {
      K acc = K();
      for (std::size_t j = 0; j < c_; ++j) acc = acc + at(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }

  bool operator==(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) return false;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (!(a_[i] == o.a_[i])) return false;
    return true;
  }

  std::string to_str() const {
    std::string out;
    for (std::size_t i = 0; i < r_; ++i) {
      out += "[";
      for (std::size_t j = 0; j < c_; ++j) {
        if (j) out += ", ";
        out += at(i, j).to_str();
      }
      out += "]\n";
    }
    return out;
  }

 private:
  std::size_t r_, c_;
  std::vector<K> a_;
};

// Reduced row echelon form in place. Returns the rank; optionally reports the
// pivot columns. Deterministic: pivot = first row with a nonzero entry in the
// leftmost unfinished column.
template <FieldType K>
std::size_t rref_in_place(Matrix<K>& m, std::vector<std::size_t>* pivot_cols = nullptr) {
  std::size_t rank = 0;
  if (pivot_cols) pivot_cols->clear();
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(rank, j));
    K inv = m.at(rank, col).inv();
    for (std::size_t j = col; j < m.cols(); ++j) m.at(rank, j) = m.at(rank, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || m.at(i, col).is_zero()) continue;
      K f = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m.at(i, j) = m.at(i, j) - f * m.at(rank, j);
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++rank;
  }
  return rank;
}

template <FieldType K>
Matrix<K> rref(Matrix<K> m, std::vector<std::size_t>* pivot_cols = nullptr,
               std::size_t* rank_out = nullptr) {
  std::size_t r = rref_in_place(m, pivot_cols);
  if (rank_out) *rank_out = r;
  return m;
}

template <FieldType K>
std::size_t rank(Matrix<K> m) {
  return rref_in_place(m);
}

// Basis of the right kernel {v : M v = 0}, returned as the rows of a matrix in
// canonical reduced echelon form. dim = cols - rank.
template <FieldType K>
Matrix<K> kernel_basis(Matrix<K> m) {
  std::vector<std::size_t> pivots;
  std::size_t r = rref_in_place(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  Matrix<K> ker(m.cols() - r, m.cols());
  std::size_t row = 0;
  K one = K().make(1);
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    ker.at(row, free) = one;
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) ker.at(row, pivots[pi]) = -m.at(pi, free);
    ++row;
  }
  rref_in_place(ker);  // canonicalize
  return ker;
}

// Inverse of a square matrix; throws when singular.
template <FieldType K>
Matrix<K> inverse(const Matrix<K>& m) {
  if (m.rows() != m.cols()) throw error("inverse of a non-square matrix");
  std::size_t n = m.rows();
  K sample = n ? m.at(0, 0).make(1) : K().make(1);
  Matrix<K> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = sample;
  }
  if (rref_in_place(aug) != n) throw error("matrix is singular");
  Matrix<K> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

// One solution of M x = b, if any.
template <FieldType K>
std::optional<std::vector<K>> solve(const Matrix<K>& m, const std::vector<K>& b) {
  if (b.size() != m.rows()) throw error("solve shape mismatch");
  Matrix<K> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  std::vector<std::size_t> pivots;
  rref_in_place(aug, &pivots);
  for (std::size_t c : pivots)
    if (c == m.cols()) return std::nullopt;  // inconsistent
  std::vector<K> x(m.cols(), K().make(0));
  for (std::size_t pi = 0; pi < pivots.size(); ++pi) x[pivots[pi]] = aug.at(pi, m.cols());
  return x;
}

}  // namespace conelab

#pragma once

// Linear subspaces of a tagged coordinate space, held in reduced row echelon
// form so equality is representation-independent. The ambient tag prevents
// accidentally mixing coefficient spaces of different rings or degrees.

#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"

namespace conelab {

struct Ambient {
  std::size_t dim = 0;
  std::string tag;  // canonical fingerprint of what the coordinates mean

  bool operator==(const Ambient& o) const { return dim == o.dim && tag == o.tag; }
};

inline Ambient forms_ambient(unsigned nvars, unsigned deg) {
  std::size_t dim = 1;
  // C(deg + nvars - 1, nvars - 1)
  for (unsigned i = 1; i < nvars; ++i) dim = dim * (deg + i) / i;
  return Ambient{dim, "forms(n=" + std::to_string(nvars) + ",d=" + std::to_string(deg) + ")"};
}

template <FieldType K>
class SubspaceBasis {
 public:
  SubspaceBasis() = default;
  explicit SubspaceBasis(Ambient amb) : amb_(std::move(amb)) {}

  // Canonicalize any spanning list of row vectors.
  SubspaceBasis(Ambient amb, Matrix<K> rows) : amb_(std::move(amb)) {
    if (rows.cols() != amb_.dim && rows.rows() > 0)
      throw ambient_mismatch_error("basis rows do not match the ambient dimension");
    std::size_t r = rref_in_place(rows);
    rows_ = Matrix<K>(r, amb_.dim);
    for (std::size_t i = 0; i < r; ++i) rows_.set_row(i, rows.row(i));
  }

  SubspaceBasis(Ambient amb, const std::vector<std::vector<K>>& rows)
      : SubspaceBasis(std::move(amb), pack(rows, amb.dim)) {}

  const Ambient& ambient() const { return amb_; }
  std::size_t dim() const { return rows_.rows(); }
  const Matrix<K>& rows() const { return rows_; }
  std::vector<K> row(std::size_t i) const { return rows_.row(i); }

  bool contains(const std::vector<K>& v) const {
    if (v.size() != amb_.dim) throw ambient_mismatch_error("vector is not in this ambient");
    // reduce v against the echelonized rows
    std::vector<K> w = v;
    for (std::size_t i = 0; i < rows_.rows(); ++i) {
      std::size_t piv = pivot_of(i);
      if (w[piv].is_zero()) continue;
      K c = w[piv];
      for (std::size_t j = 0; j < amb_.dim; ++j) w[j] = w[j] - c * rows_.at(i, j);
    }
    for (auto& x : w)
      if (!x.is_zero()) return false;
    return true;
  }

  bool contains(const SubspaceBasis& o) const {
    check_ambient(o);
    for (std::size_t i = 0; i < o.dim(); ++i)
      if (!contains(o.row(i))) return false;
    return true;
  }

  bool operator==(const SubspaceBasis& o) const {
    return amb_ == o.amb_ && rows_ == o.rows_;
  }

  friend SubspaceBasis sum(const SubspaceBasis& a, const SubspaceBasis& b) {
    a.check_ambient(b);
    Matrix<K> stacked = a.rows_;
    if (stacked.cols() == 0) stacked = Matrix<K>(0, a.amb_.dim);
    for (std::size_t i = 0; i < b.dim(); ++i) stacked.append_row(b.row(i));
    return SubspaceBasis(a.amb_, std::move(stacked));
  }

  friend SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b) {
    a.check_ambient(b);
    // Solutions of u*A = v*B give the intersection; read them off the left
    // kernel of the stacked matrix [A; -B].
    std::size_t ra = a.dim(), rb = b.dim();
    if (ra == 0 || rb == 0) return SubspaceBasis(a.amb_);
    Matrix<K> stacked(ra + rb, a.amb_.dim);
    for (std::size_t i = 0; i < ra; ++i) stacked.set_row(i, a.row(i));
    for (std::size_t i = 0; i < rb; ++i) {
      auto r = b.row(i);
      for (auto& x : r) x = -x;
      stacked.set_row(ra + i, r);
    }
    Matrix<K> lker = kernel_basis(stacked.transpose());
    Matrix<K> rows(lker.rows(), a.amb_.dim);
    for (std::size_t i = 0; i < lker.rows(); ++i) {
      std::vector<K> v(a.amb_.dim, K(0));
      for (std::size_t s = 0; s < ra; ++s) {
        if (lker.at(i, s).is_zero()) continue;
        for (std::size_t j = 0; j < a.amb_.dim; ++j)
          v[j] = v[j] + lker.at(i, s) * a.rows_.at(s, j);
      }
      rows.set_row(i, v);
    }
    return SubspaceBasis(a.amb_, std::move(rows));
  }

 private:
  static Matrix<K> pack(const std::vector<std::vector<K>>& rows, std::size_t dim) {
    Matrix<K> m(0, dim);
    for (auto& r : rows) m.append_row(r);
    return m;
  }
  std::size_t pivot_of(std::size_t i) const {
    for (std::size_t j = 0; j < amb_.dim; ++j)
      if (!rows_.at(i, j).is_zero()) return j;
    throw error("zero row in echelon basis");
  }
  void check_ambient(const SubspaceBasis& o) const {
    if (!(amb_ == o.amb_)) throw ambient_mismatch_error("subspaces live in different ambients");
  }

  Ambient amb_;
  Matrix<K> rows_;
};

// Coefficient-wise image of a basis in a larger coefficient field. The
// ambient tag is kept, so lifted spaces compare against spaces built over
// the big field directly.
template <FieldType L, FieldType K>
SubspaceBasis<L> lift_subspace(const SubspaceBasis<K>& b, const L& sample) {
  if constexpr (std::is_same_v<L, K>) {
    (void)sample;
    return b;
  } else {
    Matrix<L> rows(0, b.ambient().dim);
    for (std::size_t i = 0; i < b.dim(); ++i) {
      std::vector<L> r;
      r.reserve(b.ambient().dim);
      for (auto& v : b.row(i)) r.push_back(embed_scalar(v, sample));
      rows.append_row(std::move(r));
    }
    return SubspaceBasis<L>(b.ambient(), std::move(rows));
  }
}

}  // namespace conelab

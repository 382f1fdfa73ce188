#pragma once

// Flat limit at t = 0 of a family of subspaces given by basis rows over the
// rational function field K(t). The family is saturated by row operations
// until the constant-term matrix has full rank, then evaluated at t = 0.

#include <vector>

#include "matrix.hpp"
#include "ratfunc.hpp"
#include "subspace.hpp"

namespace conelab {

namespace detail {

// Minimum t-adic valuation over a polynomial row (all entries nonzero ones).
template <FieldType K>
int row_min_valuation(const std::vector<UPoly<K>>& row) {
  int best = -1;
  for (auto& p : row) {
    if (p.is_zero()) continue;
    int v = 0;
    while (p.coeff(static_cast<std::size_t>(v)).is_zero()) ++v;
    if (best < 0 || v < best) best = v;
  }
  return best;  // -1 when the row is zero
}

template <FieldType K>
void divide_row_by_t_power(std::vector<UPoly<K>>& row, int v) {
  if (v <= 0) return;
  for (auto& p : row) {
    if (p.is_zero()) continue;
    std::vector<K> c(p.coeffs().begin() + v, p.coeffs().end());
    p = UPoly<K>(std::move(c));
  }
}

}  // namespace detail

// Basis rows over K(t) spanning a subspace of K(t)^N. The limit is the
// subspace of K^N spanned by the constant terms after saturation. Rows that
// are dependent over K(t) are discarded up front.
template <FieldType K>
SubspaceBasis<K> flat_limit(Ambient amb, Matrix<RatFunc<K>> rows) {
  if (rows.rows() == 0) return SubspaceBasis<K>(amb);
  if (rows.cols() != amb.dim) throw ambient_mismatch_error("rows do not match the ambient dimension");
  std::size_t r = rref_in_place(rows);
  std::size_t n = amb.dim;

  // Clear denominators and strip the common t power from each row.
  std::vector<std::vector<UPoly<K>>> poly(r, std::vector<UPoly<K>>(n));
  for (std::size_t i = 0; i < r; ++i) {
    UPoly<K> lcm;
    bool have = false;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& den = rows.at(i, j).denominator();
      if (rows.at(i, j).is_zero()) continue;
      if (!have) {
        lcm = den;
        have = true;
      } else {
        lcm = (lcm * den).divexact(poly_gcd(lcm, den));  // denominators are monic
      }
    }
    if (!have) continue;  // impossible after rref, but harmless
    for (std::size_t j = 0; j < n; ++j) {
      const auto& f = rows.at(i, j);
      if (f.is_zero()) continue;
      poly[i][j] = f.numerator() * lcm.divexact(f.denominator());
    }
    detail::divide_row_by_t_power(poly[i], detail::row_min_valuation(poly[i]));
  }

  // Saturation loop: as long as the constant terms are dependent, replace the
  // highest-index participating row by the dependency combination divided by
  // its t power. Each step strictly drops a minor valuation, so it ends.
  for (;;) {
    Matrix<K> consts(r, n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!poly[i][j].is_zero()) consts.at(i, j) = poly[i][j].coeff(0);
    Matrix<K> lker = kernel_basis(consts.transpose());
    if (lker.rows() == 0) {
      std::size_t rk = rref_in_place(consts);
      if (rk != r) throw error("flat limit lost rank");
      return SubspaceBasis<K>(amb, std::move(consts));
    }
    // use the first dependency; replace its highest-index participant
    std::vector<K> c = lker.row(0);
    std::size_t target = r;
    for (std::size_t i = r; i-- > 0;)
      if (!c[i].is_zero()) {
        target = i;
        break;
      }
    if (target == r) throw error("flat limit produced an empty dependency");
    std::vector<UPoly<K>> combo(n);
    for (std::size_t i = 0; i < r; ++i) {
      if (c[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        combo[j] = combo[j] + poly[i][j] * UPoly<K>::constant(c[i]);
    }
    int v = detail::row_min_valuation(combo);
    if (v < 1) throw error("flat limit combination kept a constant term");
    detail::divide_row_by_t_power(combo, v);
    poly[target] = std::move(combo);
  }
}

template <FieldType K>
SubspaceBasis<K> flat_limit(Ambient amb, const std::vector<std::vector<RatFunc<K>>>& rows) {
  Matrix<RatFunc<K>> m(0, amb.dim);
  for (auto& r : rows) m.append_row(r);
  return flat_limit(std::move(amb), std::move(m));
}

}  // namespace conelab

#pragma once

// Resultant machinery: bivariate polynomial views, fraction-free (Bareiss)
// determinants over a univariate polynomial ring, Sylvester resultants, and
// elimination of one variable from a pair of homogeneous forms.

#include <vector>

#include "multipoly.hpp"
#include "upoly.hpp"

namespace conelab {

// Dense bivariate polynomial: entry i is the UPoly-in-x coefficient of y^i.
template <FieldType K>
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(std::vector<UPoly<K>> c) : c_(std::move(c)) { trim(); }

  // View of a multivariate polynomial with variable `inner` as x, `outer` as
  // y, and the remaining variables substituted by the given constants.
  BiPoly(const MultiPoly<K>& f, unsigned inner, unsigned outer, const std::vector<K>& others) {
    if (inner == outer) throw error("bivariate view needs two distinct variables");
    if (others.size() != f.nvars()) throw ambient_mismatch_error("substitution vector has wrong length");
    for (auto& [e, c] : f.terms()) {
      K v = c;
      for (unsigned i = 0; i < f.nvars(); ++i) {
        if (i == inner || i == outer) continue;
        for (unsigned k = 0; k < e[i]; ++k) v = v * others[i];
      }
      if (v.is_zero()) continue;
      unsigned dy = e[outer];
      if (c_.size() <= dy) c_.resize(dy + 1);
      UPoly<K>& slot = c_[dy];
      slot = slot + UPoly<K>::monomial(v, e[inner]);
    }
    trim();
  }

  bool is_zero() const { return c_.empty(); }
  int degree_outer() const { return static_cast<int>(c_.size()) - 1; }
  const UPoly<K>& coeff(std::size_t i) const {
    static const UPoly<K> kZero{};
    return i < c_.size() ? c_[i] : kZero;
  }
  const std::vector<UPoly<K>>& coeffs() const { return c_; }

  K evaluate(const K& x, const K& y) const {
    K acc = x.make(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * y + c_[i].eval(x);
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<UPoly<K>> c_;
};

// Bareiss fraction-free determinant over a polynomial ring; every division is
// exact. Works on any square matrix of ring elements supporting is_zero,
// ring arithmetic, and divexact (univariate and multivariate polynomials).
template <class R>
R ring_determinant(std::vector<std::vector<R>> m) {
  std::size_t n = m.size();
  for (auto& row : m)
    if (row.size() != n) throw error("determinant of a non-square matrix");
  if (n == 0) throw error("determinant of an empty matrix");
  R zero = m[0][0] - m[0][0];
  bool negate = false;
  R prev = zero;  // previous pivot; starts as 1
  bool have_prev = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) return zero;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        R num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = have_prev ? num.divexact(prev) : num;
      }
      m[i][k] = zero;
    }
    prev = m[k][k];
    have_prev = true;
  }
  R det = m[n - 1][n - 1];
  if (negate) det = -det;
  return det;
}

// Resultant of f and g with respect to the outer variable, as a polynomial in
// the inner one. Formal degrees are the trimmed outer degrees.
template <FieldType K>
UPoly<K> sylvester_resultant(const BiPoly<K>& f, const BiPoly<K>& g) {
  if (f.is_zero() || g.is_zero()) return UPoly<K>{};
  int m = f.degree_outer(), n = g.degree_outer();
  if (m == 0 && n == 0) throw error("resultant of two constants in the outer variable");
  if (m == 0) return f.coeff(0).pow(static_cast<unsigned>(n));
  if (n == 0) return g.coeff(0).pow(static_cast<unsigned>(m));
  std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<UPoly<K>>> s(size, std::vector<UPoly<K>>(size));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s[i][i + j] = f.coeff(static_cast<std::size_t>(m - j));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s[n + i][i + j] = g.coeff(static_cast<std::size_t>(n - j));
  return ring_determinant(std::move(s));
}

// Eliminate variable `var` from two homogeneous forms. Both forms must be
// regular in `var` (the pure power of `var` appears with nonzero coefficient),
// which a generic coordinate change guarantees; the result is a homogeneous
// form in the remaining two variables of degree deg(f) * deg(g).
template <FieldType K>
MultiPoly<K> resultant_eliminating(const MultiPoly<K>& f, const MultiPoly<K>& g, unsigned var) {
  if (f.is_zero() || g.is_zero()) return MultiPoly<K>::zero(f.nvars());
  if (f.nvars() != 3 || g.nvars() != 3)
    throw ambient_mismatch_error("variable elimination expects ternary forms");
  unsigned m = f.homogeneous_degree(), n = g.homogeneous_degree();
  auto regular_in = [&](const MultiPoly<K>& h, unsigned v, unsigned d) {
    Expo e{};
    e[v] = static_cast<std::uint16_t>(d);
    return !h.coefficient(e).is_zero();
  };
  if (!regular_in(f, var, m) || !regular_in(g, var, n))
    throw construction_error("resultant needs forms regular in the eliminated variable");
  unsigned a = var == 0 ? 1 : 0;
  unsigned b = var == 2 ? 1 : 2;
  // inner = a stays symbolic, outer = var is eliminated, b is set to 1.
  std::vector<K> subst(3, f.unit().make(0));
  subst[b] = f.unit().make(1);
  BiPoly<K> fv(f, a, var, subst);
  BiPoly<K> gv(g, a, var, subst);
  UPoly<K> r = sylvester_resultant(fv, gv);
  MultiPoly<K> out(3);
  unsigned total = m * n;
  for (int i = 0; i <= r.degree(); ++i) {
    if (r.coeff(static_cast<std::size_t>(i)).is_zero()) continue;
    Expo e{};
    e[a] = static_cast<std::uint16_t>(i);
    e[b] = static_cast<std::uint16_t>(total - static_cast<unsigned>(i));
    out.add_term(e, r.coeff(static_cast<std::size_t>(i)));
  }
  return out;
}

// Resultant of two polynomials with respect to one variable, staying in the
// full multivariate ring: the Sylvester determinant over K[remaining vars].
// No regularity requirement; works on inhomogeneous input. Vanishes exactly
// on the projection of the common zero locus (plus leading-form degeneracies).
template <FieldType K>
MultiPoly<K> multi_resultant(const MultiPoly<K>& f, const MultiPoly<K>& g, unsigned var) {
  if (f.nvars() != g.nvars()) throw ambient_mismatch_error("resultant of mixed-arity polynomials");
  unsigned nv = f.nvars();
  auto split = [&](const MultiPoly<K>& h) {
    std::vector<MultiPoly<K>> c;
    for (auto& [e, v] : h.terms()) {
      unsigned j = e[var];
      if (c.size() <= j) c.resize(j + 1, MultiPoly<K>::zero(nv));
      Expo e2 = e;
      e2[var] = 0;
      c[j].add_term(e2, v);
    }
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    return c;
  };
  auto cf = split(f), cg = split(g);
  if (cf.empty() || cg.empty()) return MultiPoly<K>::zero(nv);
  std::size_t m = cf.size() - 1, n = cg.size() - 1;
  if (m == 0 && n == 0) throw error("resultant of two polynomials constant in the variable");
  if (m == 0) return cf[0].pow(static_cast<unsigned>(n));
  if (n == 0) return cg[0].pow(static_cast<unsigned>(m));
  std::size_t size = m + n;
  std::vector<std::vector<MultiPoly<K>>> s(size, std::vector<MultiPoly<K>>(size, MultiPoly<K>::zero(nv)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) s[i][i + j] = cf[m - j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) s[n + i][i + j] = cg[n - j];
  return ring_determinant(std::move(s));
}

}  // namespace conelab

#pragma once

// Divisors cut on a space curve by a homogeneous form: support points over
// small extensions of a finite base field, multiplicities read off local
// series, residue degrees from Frobenius orbits. One entry per closed point
// (a single Galois-orbit representative), so the degree identity reads
// sum(multiplicity * residue_degree) = curve_degree * form_degree.

#include <algorithm>
#include <numeric>
#include <set>

#include "local_series.hpp"
#include "resultant.hpp"

namespace conelab {

template <FieldType K>
struct DivisorEntry {
  ProjPoint<Ext<K>> point;  // representative over the minimal field of definition
  unsigned multiplicity = 0;
  unsigned residue_degree = 1;
};

template <FieldType K>
struct CurveDivisor {
  std::vector<DivisorEntry<K>> entries;
  unsigned total_degree() const {
    unsigned t = 0;
    for (auto& e : entries) t += e.multiplicity * e.residue_degree;
    return t;
  }
};

// Minimal extension degree over the base containing all coordinates.
template <FieldType K>
unsigned point_residue_degree(const ProjPoint<Ext<K>>& p) {
  unsigned r = 1;
  for (auto& c : p) r = std::lcm(r, c.residue_degree());
  return r;
}

namespace detail {

template <FieldType K>
void sort_divisor(CurveDivisor<K>& div) {
  std::sort(div.entries.begin(), div.entries.end(), [](const auto& a, const auto& b) {
    if (a.residue_degree != b.residue_degree) return a.residue_degree < b.residue_degree;
    return point_str(a.point) < point_str(b.point);
  });
}

// The stock parametrizations are injective, so the divisor of f pulled back
// through P^1 is read off the factorization of the pullback form: each
// irreducible parameter factor is one closed point with the factor's
// multiplicity.
template <FieldType K>
CurveDivisor<K> parametric_divisor(const ParametricCurve<K>& par, const MultiPoly<K>& f,
                                   unsigned cap) {
  unsigned d = par.degree(), k = f.homogeneous_degree();
  unsigned total = d * k;
  K one = f.unit().make(1);
  MultiPoly<K> pull = MultiPoly<K>::zero(2);
  for (auto& [e, c] : f.terms()) {
    MultiPoly<K> term = MultiPoly<K>::constant(2, c);
    for (unsigned i = 0; i < 4; ++i)
      for (unsigned rep = 0; rep < e[i]; ++rep) term = term * par.components()[i];
    pull = pull + term;
  }
  if (pull.is_zero()) throw zero_class_error("the form vanishes identically on the curve");
  std::vector<K> oth{one, one.make(0)};
  UPoly<K> p1 = pull.to_upoly(1, oth);  // value along (1 : t)
  CurveDivisor<K> div;
  unsigned at_infinity = total - static_cast<unsigned>(p1.degree());
  for (auto& [fac, mult] : factor_over_finite_field(p1, one)) {
    unsigned r = static_cast<unsigned>(fac.degree());
    if (r > cap)
      throw extension_exhausted_error(
          "divisor support needs a degree-" + std::to_string(r) + " extension", cap);
    auto ctx = make_extension(one, r);
    Ext<K> es = Ext<K>::generator(ctx);
    auto roots = roots_in_field(lift_upoly(fac, es), es);
    if (roots.size() != r) throw contract_violation_error("irreducible factor short of roots");
    Ext<K> rep = roots[0];
    for (auto& t : roots)
      if (t.rep().to_str() < rep.rep().to_str()) rep = t;
    div.entries.push_back({par.point_at(es.make(1), rep), mult, r});
  }
  if (at_infinity > 0) {
    auto ctx = make_extension(one, 1);
    Ext<K> es = Ext<K>::generator(ctx);
    div.entries.push_back({par.point_at(es.make(0), es.make(1)), at_infinity, 1});
  }
  if (div.total_degree() != total)
    throw contract_violation_error("parametric divisor degree mismatch");
  sort_divisor(div);
  return div;
}

// Quadric-intersection route: eliminate down to a binary form whose zeros
// contain the (x0 : x1) slices through the support, then solve each candidate
// slice. The eliminant may carry extraneous factors — harmless, since every
// candidate is verified by evaluation; completeness is certified by the final
// degree identity. Multiplicities always come from local series.
template <FieldType K>
CurveDivisor<K> quadric_divisor(const QuadricCurve<K>& qc, const MultiPoly<K>& f, unsigned cap) {
  unsigned k = f.homogeneous_degree();
  unsigned total = 4 * k;
  K one = f.unit().make(1);
  if (qc.ideal().in_ideal(f)) throw zero_class_error("the form vanishes identically on the curve");

  // Squarefree polynomial in t whose roots cover the x1/x0 ratios of all
  // affine support points (possibly with extraneous roots — each candidate is
  // verified). Zero result signals a degenerate elimination order.
  auto var_degree = [](const MultiPoly<K>& h, unsigned v) {
    unsigned m = 0;
    for (auto& [e, val] : h.terms()) m = std::max<unsigned>(m, e[v]);
    return m;
  };
  auto eliminant = [&](unsigned v1, unsigned v2) -> UPoly<K> {
    if (var_degree(f, v1) == 0 &&
        (var_degree(qc.quadric1(), v1) == 0 || var_degree(qc.quadric2(), v1) == 0))
      return UPoly<K>{};
    MultiPoly<K> a = multi_resultant(qc.quadric1(), f, v1);
    MultiPoly<K> c = multi_resultant(qc.quadric2(), f, v1);
    if (a.is_zero() || c.is_zero()) return UPoly<K>{};
    std::vector<K> oth{one, one.make(0), one.make(0), one.make(0)};
    UPoly<K> bt;
    if (var_degree(a, v2) == 0 && var_degree(c, v2) == 0) {
      bt = poly_gcd(a.to_upoly(1, oth), c.to_upoly(1, oth));
    } else {
      MultiPoly<K> big = multi_resultant(a, c, v2);
      if (big.is_zero()) return UPoly<K>{};
      bt = big.to_upoly(1, oth);
    }
    if (bt.is_zero()) return UPoly<K>{};
    if (bt.degree() < 1) return bt.monic();  // no affine slice candidates
    return squarefree_part(bt.monic());
  };
  UPoly<K> slices = eliminant(3, 2);
  if (slices.is_zero()) slices = eliminant(2, 3);
  if (slices.is_zero())
    throw construction_error("divisor support projection degenerates in both elimination orders");

  unsigned trunc = 2 * 4 * k + 1;
  CurveDivisor<K> div;
  for (unsigned r = 1; r <= cap && div.total_degree() < total; ++r) {
    auto ctx = make_extension(one, r);
    using L = Ext<K>;
    L es = L::generator(ctx);
    L lone = es.make(1), lzero = es.make(0);
    MultiPoly<L> q1 = lift_poly(qc.quadric1(), lone), q2 = lift_poly(qc.quadric2(), lone);
    MultiPoly<L> lf = lift_poly(f, lone);
    GroebnerBasis<L> lgb = lift_basis(qc.ideal(), lone);
    std::set<std::string> seen;  // conjugate-closed within this level
    auto consider = [&](const ProjPoint<L>& praw) {
      if (!lf.evaluate(praw).is_zero()) return;
      ProjPoint<L> p = normalize_point(praw);
      if (seen.count(point_str(p))) return;
      ProjPoint<L> cur = p;
      for (unsigned i = 0; i < r; ++i) {
        seen.insert(point_str(cur));
        ProjPoint<L> nxt;
        for (auto& c : cur) nxt.push_back(c.frobenius());
        cur = normalize_point(std::move(nxt));
      }
      if (point_residue_degree(p) != r) return;  // already recorded at its minimal field
      CurveGerm<L> germ = quadric_germ(qc, p, trunc);
      auto vo = vanishing_order(lf, germ, lgb);
      if (vo.infinite || vo.order == 0)
        throw contract_violation_error("support point without a finite positive order");
      div.entries.push_back({p, vo.order, r});
    };
    for (auto& t : roots_in_field(lift_upoly(slices, es), es))
      for (auto& pt : solve_quadric_slice(q1, q2, lone, t)) consider(pt);
    // the finitely many curve points on the plane x0 = 0
    for (auto& pt : solve_quadric_slice(q1, q2, lzero, lone)) consider(pt);
    std::vector<L> on_line{lzero, lzero, lone, lzero};
    UPoly<L> u1 = q1.to_upoly(3, on_line), u2 = q2.to_upoly(3, on_line);
    UPoly<L> g = u1.is_zero() ? u2 : (u2.is_zero() ? u1 : poly_gcd(u1, u2));
    if (!g.is_zero() && g.degree() >= 1)
      for (auto& z : roots_in_field(g, es)) {
        ProjPoint<L> pt{lzero, lzero, lone, z};
        if (q1.evaluate(pt).is_zero() && q2.evaluate(pt).is_zero()) consider(pt);
      }
    ProjPoint<L> e3{lzero, lzero, lzero, lone};
    if (q1.evaluate(e3).is_zero() && q2.evaluate(e3).is_zero()) consider(e3);
  }
  if (div.total_degree() < total)
    throw extension_exhausted_error("divisor support not resolved within the extension bound", cap);
  if (div.total_degree() > total) throw contract_violation_error("divisor degree overshoot");
  sort_divisor(div);
  return div;
}

}  // namespace detail

// Divisor cut on the curve by a homogeneous form f not vanishing on the
// curve. Finite base fields only (the support search enumerates roots).
template <FieldType K>
CurveDivisor<K> divisor_on_curve(const CurveModel<K>& curve, const MultiPoly<K>& f,
                                 unsigned extension_cap = 8) {
  if constexpr (!K::finite_kind) {
    throw extension_exhausted_error("divisor support search needs a finite base field", 0);
  } else {
    if (f.is_zero()) throw zero_class_error("the zero form cuts no divisor");
    if (!f.is_homogeneous()) throw construction_error("divisors are cut by homogeneous forms");
    if (std::holds_alternative<ParametricCurve<K>>(curve)) {
      const auto& par = std::get<ParametricCurve<K>>(curve);
      if (par.ideal().in_ideal(f)) throw zero_class_error("the form vanishes identically on the curve");
      return detail::parametric_divisor(par, f, extension_cap);
    }
    return detail::quadric_divisor(std::get<QuadricCurve<K>>(curve), f, extension_cap);
  }
}

// "(a0 : a1 : a2 : a3) over F_{p^k}" — the field is the residue field of the
// closed point, not the field the computation happened to run in.
template <FieldType K>
std::string entry_str(const DivisorEntry<K>& e) {
  mpz_class p = field_order(e.point[0].context()->base);
  std::string fld = "F_{" + p.get_str();
  if (e.residue_degree > 1) fld += "^" + std::to_string(e.residue_degree);
  return point_str(e.point) + " over " + fld + "}";
}

template <FieldType K>
std::string divisor_str(const CurveDivisor<K>& div) {
  std::string out;
  for (auto& e : div.entries) {
    if (!out.empty()) out += " + ";
    if (e.multiplicity != 1) out += std::to_string(e.multiplicity) + "*";
    out += entry_str(e);
  }
  return out.empty() ? "0" : out;
}

// True when the divisor is concentrated in a single base-field point q with
// the stated multiplicity.
template <FieldType K>
bool divisor_is_point_multiple(const CurveDivisor<K>& div, const ProjPoint<K>& q, unsigned m) {
  if (div.entries.size() != 1) return false;
  const auto& e = div.entries[0];
  if (e.residue_degree != 1 || e.multiplicity != m) return false;
  ProjPoint<Ext<K>> qe;
  for (auto& c : q) qe.push_back(embed_scalar(c, e.point[0]));
  return points_equal(e.point, qe);
}

}  // namespace conelab

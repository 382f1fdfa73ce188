#pragma once

// Local analytic germs of a space curve at a smooth point: the four
// homogeneous coordinates as truncated power series in a uniformizer, the
// vanishing order of a form along the curve, and jet spans / annihilators.

#include <array>
#include <vector>

#include "curves.hpp"
#include "series.hpp"

namespace conelab {

template <FieldType L>
struct CurveGerm {
  ProjPoint<L> point;                   // normalized: last nonzero coordinate is 1
  unsigned chart = 0;                   // index whose series is constant 1
  std::vector<PowerSeries<L>> coords;   // four series, common truncation
  unsigned truncation = 0;
};

// Evaluate a homogeneous form on the germ's coordinate series.
template <FieldType L>
PowerSeries<L> evaluate_on_germ(const MultiPoly<L>& f, const CurveGerm<L>& g) {
  L zero = g.point[g.chart].make(0);
  PowerSeries<L> acc = PowerSeries<L>::zero(g.truncation, zero);
  for (auto& [e, c] : f.terms()) {
    PowerSeries<L> term = PowerSeries<L>::constant(g.truncation, c);
    for (unsigned i = 0; i < f.nvars(); ++i)
      for (unsigned rep = 0; rep < e[i]; ++rep) term = term * g.coords[i];
    acc = acc + term;
  }
  return acc;
}

namespace detail {

// Recover (s : u) parameters hitting a given image point (dedupes identical
// preimages; for the stock injective parametrizations a single value).
template <FieldType L, FieldType K>
std::vector<std::pair<L, L>> parameters_of_point(const ParametricCurve<K>& par,
                                                 const ProjPoint<L>& p) {
  L sample = p[0].make(0);
  std::vector<std::pair<L, L>> out;
  // cross-ratio equations comp_i(1, t) p_j - comp_j(1, t) p_i = 0 for all i, j
  UPoly<L> g;
  bool have = false;
  std::vector<L> par_pt{sample.make(1), sample.make(0)};
  for (unsigned i = 0; i < 4; ++i)
    for (unsigned j = i + 1; j < 4; ++j) {
      // comp as univariate in t = u/s
      auto lift = [&](unsigned idx) {
        auto c = lift_poly(par.components()[idx], sample.make(1));
        std::vector<L> oth{sample.make(1), sample.make(0)};
        return c.to_upoly(1, oth);
      };
      UPoly<L> eq = lift(i) * UPoly<L>::constant(p[j]) - lift(j) * UPoly<L>::constant(p[i]);
      if (eq.is_zero()) continue;
      g = have ? poly_gcd(g, eq) : eq.monic();
      have = true;
    }
  if (have && g.degree() >= 1) {
    if constexpr (L::finite_kind) {
      for (auto& t : roots_in_field(g, sample))
        if (points_equal(par.point_at(sample.make(1), t), p)) out.emplace_back(sample.make(1), t);
    } else {
      // degree-one factor read off directly; enough for injective models
      if (g.degree() == 1) {
        L t = -g.coeff(0) / g.coeff(1);
        if (points_equal(par.point_at(sample.make(1), t), p)) out.emplace_back(sample.make(1), t);
      }
    }
  }
  ProjPoint<L> at_inf = par.point_at(sample.make(0), sample.make(1));
  if (points_equal(at_inf, p)) out.emplace_back(sample.make(0), sample.make(1));
  return out;
}

}  // namespace detail

// Germ of a parametric curve at the parameter (s0 : u0).
template <FieldType L, FieldType K>
CurveGerm<L> parametric_germ(const ParametricCurve<K>& par, const L& s0, const L& u0,
                             unsigned truncation) {
  // center the parameter: (s0 + ... ) with local parameter eps
  CurveGerm<L> g;
  g.truncation = truncation;
  L one = s0.make(1);
  for (auto& comp : par.components()) {
    auto lifted = lift_poly(comp, one);
    // substitute (s, u) = (s0 + a*eps, u0 + b*eps) with (a, b) a direction not
    // proportional to (s0, u0); (-u0, s0) fails when s0^2 + u0^2 = 0, so pick
    // a coordinate direction instead
    L a = s0.is_zero() ? one : one.make(0);
    L b = s0.is_zero() ? one.make(0) : one;
    PowerSeries<L> s_ser = PowerSeries<L>::linear(truncation, s0, a);
    PowerSeries<L> u_ser = PowerSeries<L>::linear(truncation, u0, b);
    PowerSeries<L> acc = PowerSeries<L>::zero(truncation, one.make(0));
    for (auto& [e, c] : lifted.terms()) {
      PowerSeries<L> term = PowerSeries<L>::constant(truncation, c);
      for (unsigned rep = 0; rep < e[0]; ++rep) term = term * s_ser;
      for (unsigned rep = 0; rep < e[1]; ++rep) term = term * u_ser;
      acc = acc + term;
    }
    g.coords.push_back(acc);
  }
  // normalize: point, chart, chart series scaled to 1
  ProjPoint<L> p;
  for (auto& c : g.coords) p.push_back(c.coeff(0));
  g.point = normalize_point(p);
  for (unsigned i = 4; i-- > 0;)
    if (!g.point[i].is_zero()) {
      g.chart = i;
      break;
    }
  PowerSeries<L> inv = g.coords[g.chart].inverse();
  for (auto& c : g.coords) c = c * inv;
  return g;
}

// Germ of a quadric-intersection curve at a smooth point, by Newton iteration
// on the two defining equations.
template <FieldType L, FieldType K>
CurveGerm<L> quadric_germ(const QuadricCurve<K>& qc, const ProjPoint<L>& point,
                          unsigned truncation) {
  CurveGerm<L> g;
  g.truncation = truncation;
  g.point = normalize_point(point);
  L one = g.point[0].make(1);
  MultiPoly<L> q1 = lift_poly(qc.quadric1(), one);
  MultiPoly<L> q2 = lift_poly(qc.quadric2(), one);
  if (!q1.evaluate(g.point).is_zero() || !q2.evaluate(g.point).is_zero())
    throw construction_error("germ requested at a point not on the curve");
  for (unsigned i = 4; i-- > 0;)
    if (!g.point[i].is_zero()) {
      g.chart = i;
      break;
    }

  // choose the two dependent coordinates: a pair with invertible Jacobian
  std::array<MultiPoly<L>, 4> d1, d2;
  for (unsigned i = 0; i < 4; ++i) {
    d1[i] = q1.partial_derivative(i);
    d2[i] = q2.partial_derivative(i);
  }
  std::vector<unsigned> free_vars;
  for (unsigned i = 0; i < 4; ++i)
    if (i != g.chart) free_vars.push_back(i);
  unsigned uniform = 4, dep_a = 4, dep_b = 4;
  for (unsigned skip = 0; skip < 3 && uniform == 4; ++skip) {
    unsigned a = free_vars[(skip + 1) % 3], b = free_vars[(skip + 2) % 3];
    L det = d1[a].evaluate(g.point) * d2[b].evaluate(g.point) -
            d1[b].evaluate(g.point) * d2[a].evaluate(g.point);
    if (!det.is_zero()) {
      uniform = free_vars[skip];
      dep_a = a;
      dep_b = b;
    }
  }
  if (uniform == 4) throw not_smooth_error("no invertible Jacobian pair at the point");

  // series unknowns; uniformizer moves linearly
  std::vector<PowerSeries<L>> x(4, PowerSeries<L>::zero(truncation, one.make(0)));
  x[g.chart] = PowerSeries<L>::constant(truncation, one);
  x[uniform] = PowerSeries<L>::linear(truncation, g.point[uniform], one);
  x[dep_a] = PowerSeries<L>::constant(truncation, g.point[dep_a]);
  x[dep_b] = PowerSeries<L>::constant(truncation, g.point[dep_b]);

  auto eval_poly = [&](const MultiPoly<L>& f) {
    PowerSeries<L> acc = PowerSeries<L>::zero(truncation, one.make(0));
    for (auto& [e, c] : f.terms()) {
      PowerSeries<L> term = PowerSeries<L>::constant(truncation, c);
      for (unsigned i = 0; i < 4; ++i)
        for (unsigned rep = 0; rep < e[i]; ++rep) term = term * x[i];
      acc = acc + term;
    }
    return acc;
  };

  for (unsigned iter = 0; iter < 24; ++iter) {
    PowerSeries<L> f1 = eval_poly(q1), f2 = eval_poly(q2);
    if (f1.valuation() < 0 && f2.valuation() < 0) break;
    PowerSeries<L> ja = eval_poly(d1[dep_a]), jb = eval_poly(d1[dep_b]);
    PowerSeries<L> jc = eval_poly(d2[dep_a]), jd = eval_poly(d2[dep_b]);
    PowerSeries<L> det = ja * jd - jb * jc;
    PowerSeries<L> dinv = det.inverse();
    // delta = J^{-1} F via the adjugate
    PowerSeries<L> da = (jd * f1 - jb * f2) * dinv;
    PowerSeries<L> db = (ja * f2 - jc * f1) * dinv;
    x[dep_a] = x[dep_a] - da;
    x[dep_b] = x[dep_b] - db;
  }
  if (eval_poly(q1).valuation() >= 0 || eval_poly(q2).valuation() >= 0)
    throw not_smooth_error("local solver failed to converge");
  g.coords = std::move(x);
  return g;
}

// Germ on any curve model at a given point. For parametric models the
// parameter is recovered first.
template <FieldType L, FieldType K>
CurveGerm<L> local_germ(const CurveModel<K>& curve, const ProjPoint<L>& point,
                        unsigned truncation) {
  if (std::holds_alternative<QuadricCurve<K>>(curve))
    return quadric_germ(std::get<QuadricCurve<K>>(curve), point, truncation);
  const auto& par = std::get<ParametricCurve<K>>(curve);
  auto params = detail::parameters_of_point(par, point);
  if (params.empty()) throw construction_error("germ requested at a point not on the curve");
  return parametric_germ(par, params[0].first, params[0].second, truncation);
}

// Vanishing order of a homogeneous form along the germ. `curve_gb` is the
// curve ideal over the germ's field, used to certify an infinite order.
template <FieldType L>
struct VanishingOrder {
  bool infinite = false;
  unsigned order = 0;
};

template <FieldType L>
VanishingOrder<L> vanishing_order(const MultiPoly<L>& f, const CurveGerm<L>& g,
                                  const GroebnerBasis<L>& curve_gb) {
  PowerSeries<L> v = evaluate_on_germ(f, g);
  int val = v.valuation();
  if (val >= 0) return {false, static_cast<unsigned>(val)};
  if (curve_gb.in_ideal(f)) return {true, 0};
  throw truncation_error("vanishing order exceeds the truncation " +
                         std::to_string(g.truncation));
}

// Row span of the first (jet_order + 1) series coefficient vectors: jet 1 is
// the embedded tangent line, jet 2 the osculating plane (at general points).
template <FieldType L>
SubspaceBasis<L> jet_span(const CurveGerm<L>& g, unsigned jet_order) {
  Ambient amb{4, "points(P3)"};
  Matrix<L> rows(0, 4);
  for (unsigned j = 0; j <= jet_order && j <= g.truncation; ++j) {
    std::vector<L> r;
    for (unsigned i = 0; i < 4; ++i) r.push_back(g.coords[i].coeff(j));
    rows.append_row(r);
  }
  return SubspaceBasis<L>(amb, std::move(rows));
}

// Linear forms vanishing on the jet (coefficient vectors in the dual basis).
template <FieldType L>
SubspaceBasis<L> jet_annihilator(const CurveGerm<L>& g, unsigned jet_order) {
  Ambient amb = forms_ambient(4, 1);
  Matrix<L> rows(0, 4);
  for (unsigned j = 0; j <= jet_order && j <= g.truncation; ++j) {
    std::vector<L> r;
    for (unsigned i = 0; i < 4; ++i) r.push_back(g.coords[i].coeff(j));
    rows.append_row(r);
  }
  Matrix<L> ker = kernel_basis(std::move(rows));
  // kernel coordinates order: monomial_basis(4, 1) is x > y > z > w = the
  // coordinate order itself, so the kernel rows are already the dual vectors
  return SubspaceBasis<L>(amb, std::move(ker));
}

template <FieldType L>
struct OsculatingData {
  SubspaceBasis<L> tangent_forms;        // linear forms cutting the tangent line
  std::vector<L> osculating_form;        // the plane of maximal jet contact
  unsigned osculating_contact = 0;       // its vanishing order along the curve
  bool degenerate_second_order = false;  // 2-jet failed to span a plane
};

// Tangent line (as a pencil of planes) and osculating plane at a smooth point,
// read off the local series. The contact order of the osculating plane is 3 at
// general points; higher contact marks hyperosculation.
template <FieldType K, FieldType L>
OsculatingData<L> tangent_and_osculating(const CurveModel<K>& curve, const ProjPoint<L>& q,
                                         unsigned truncation = 0) {
  unsigned d = curve_degree(curve);
  unsigned trunc = truncation ? truncation : 2 * d + 1;
  CurveGerm<L> g = local_germ(curve, q, trunc);
  OsculatingData<L> out;
  out.tangent_forms = jet_annihilator(g, 1);
  if (out.tangent_forms.dim() != 2)
    throw not_smooth_error("first-order jet does not cut out a line");
  unsigned j = 2;
  while (jet_span(g, j).dim() < 3) {
    ++j;
    if (j > trunc) throw truncation_error("osculating jet trapped in a plane to the truncation");
  }
  out.degenerate_second_order = (j > 2);
  SubspaceBasis<L> ann = jet_annihilator(g, j);
  if (ann.dim() != 1)
    throw contract_violation_error("osculating-plane annihilator is not a single form");
  out.osculating_form = ann.row(0);
  L one = g.point[g.chart].make(1);
  MultiPoly<L> plane = MultiPoly<L>::linear_form(out.osculating_form);
  auto vo = vanishing_order(plane, g, lift_basis(curve_ideal(curve), one));
  if (vo.infinite) throw contract_violation_error("osculating plane contains the curve");
  out.osculating_contact = vo.order;
  return out;
}

}  // namespace conelab

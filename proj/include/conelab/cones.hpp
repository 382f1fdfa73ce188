#pragma once

// Cones over a space curve with a chosen vertex: the three linear forms
// vanishing at the vertex, classification of vertices by how many degree-d
// cones through them contain the curve, the distinguished cone equation
// where it is unique, and flat limits of the cone as the vertex slides
// along a line onto the curve.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "curves.hpp"
#include "flatlimit.hpp"
#include "local_series.hpp"
#include "ratfunc.hpp"

namespace conelab {

// ---------------------------------------------------------------------------
// W(p) and its symmetric powers.

// The linear forms vanishing at a point of projective 3-space.
template <FieldType L>
SubspaceBasis<L> wspace(const ProjPoint<L>& p) {
  if (p.size() != 4) throw ambient_mismatch_error("vertex points have four coordinates");
  bool nonzero = false;
  for (auto& c : p) nonzero = nonzero || !c.is_zero();
  if (!nonzero) throw construction_error("the zero vector is not a projective point");
  Matrix<L> ev(1, 4);
  for (unsigned j = 0; j < 4; ++j) ev.at(0, j) = p[j];
  SubspaceBasis<L> out(forms_ambient(4, 1), kernel_basis(ev));
  if (out.dim() != 3) throw contract_violation_error("point annihilator is not three-dimensional");
  return out;
}

// Span of all k-fold products of a space of linear forms, inside the full
// degree-k coefficient space.
template <FieldType L>
SubspaceBasis<L> symmetric_power(const SubspaceBasis<L>& w, unsigned k) {
  if (!(w.ambient() == forms_ambient(4, 1)))
    throw ambient_mismatch_error("symmetric powers are taken of spaces of linear forms");
  if (k < 1) throw error("symmetric power needs a positive degree");
  if (w.dim() == 0) return SubspaceBasis<L>(forms_ambient(4, k));
  std::vector<MultiPoly<L>> gens;
  for (std::size_t i = 0; i < w.dim(); ++i) gens.push_back(MultiPoly<L>::linear_form(w.row(i)));
  Matrix<L> rows(0, forms_ambient(4, k).dim);
  std::vector<std::size_t> idx(k, 0);  // non-decreasing index words = monomials in the gens
  while (true) {
    MultiPoly<L> prod = gens[idx[0]];
    for (unsigned j = 1; j < k; ++j) prod = prod * gens[idx[j]];
    rows.append_row(prod.coefficient_vector(k));
    int pos = static_cast<int>(k) - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] + 1 == w.dim()) --pos;
    if (pos < 0) break;
    std::size_t up = static_cast<std::size_t>(pos);
    ++idx[up];
    for (std::size_t j = up + 1; j < k; ++j) idx[j] = idx[up];
  }
  return SubspaceBasis<L>(forms_ambient(4, k), std::move(rows));
}

namespace detail {

// A context-carrying 1 taken from the coordinates of a projective point.
template <FieldType L>
L unit_of(const ProjPoint<L>& p) {
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    if (!it->is_zero()) return it->make(1);
  throw construction_error("the zero vector is not a projective point");
}

// Degree-j cones with the given vertex containing the curve, as a subspace
// of the degree-j coefficient space over the point's field.
template <FieldType K, FieldType L>
SubspaceBasis<L> cone_space(const CurveModel<K>& curve, const ProjPoint<L>& p, unsigned j) {
  L one = unit_of(p);
  return intersect(symmetric_power(wspace(p), j),
                   lift_subspace<L>(curve_ideal(curve).ideal_piece(j), one));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Vertex classification.

enum class VertexType {
  unique_cone,    // off the curve; projection from the vertex is birational
  curve_vertex,   // on the curve; projection from the vertex is birational
  multiple_cone,  // projection from the vertex is a multiple cover
};

struct VertexClass {
  VertexType type = VertexType::unique_cone;
  bool on_curve = false;
  // Dimension of the space of degree-d cones with this vertex containing the
  // curve, d = curve degree.
  std::size_t witness = 0;
  // Degree r of the reduced cone over the curve with this vertex.
  unsigned cone_degree = 0;
  // Covering degree e of the projection from the vertex; e * r = d off the
  // curve and e * r = d - 1 on it. Birational vertices have e = 1.
  unsigned projection_degree = 1;
};

// Classify a vertex by rank arithmetic on the spaces of cones through it.
// The minimal degree r carrying a cone determines everything else; the
// degree-d witness dimension must then equal C(d-r+2, 2) (the cones of top
// degree are exactly the multiples of the reduced cone), so any other value
// exposes a bug rather than a data condition.
template <FieldType K, FieldType L>
VertexClass classify_vertex(const CurveModel<K>& curve, const ProjPoint<L>& p) {
  unsigned d = curve_degree(curve);
  VertexClass out;
  out.on_curve = point_on_curve(curve, p);
  unsigned top = d - (out.on_curve ? 1 : 0);
  std::size_t dim_at_min = 0;
  for (unsigned j = 1; j <= top; ++j) {
    std::size_t dimj = detail::cone_space(curve, p, j).dim();
    if (dimj == 0) continue;
    if (dimj != 1)
      throw contract_violation_error("the minimal-degree cone at a vertex is not unique");
    out.cone_degree = j;
    dim_at_min = dimj;
    break;
  }
  if (out.cone_degree == 0)
    throw contract_violation_error("no cone through the vertex up to the expected degree");
  if (top % out.cone_degree != 0)
    throw contract_violation_error("reduced cone degree does not divide the projection-image degree");
  out.projection_degree = top / out.cone_degree;
  out.witness =
      out.cone_degree == d ? dim_at_min : detail::cone_space(curve, p, d).dim();
  if (out.witness != binomial_u64(d - out.cone_degree + 2, 2))
    throw contract_violation_error("cone-space dimension is off the multiples-of-reduced-cone count");
  out.type = out.projection_degree == 1
                 ? (out.on_curve ? VertexType::curve_vertex : VertexType::unique_cone)
                 : VertexType::multiple_cone;
  return out;
}

// ---------------------------------------------------------------------------
// The cone equation at a birational vertex.

// Thrown when the cone space at a vertex is higher-dimensional; carries the
// whole space so callers can still work with it.
template <FieldType L>
struct ambiguous_cone_data : ambiguous_cone_error {
  ambiguous_cone_data(const std::string& msg, SubspaceBasis<L> space_)
      : ambiguous_cone_error(msg, space_.dim()), space(std::move(space_)) {}
  SubspaceBasis<L> space;
};

// The unique cone over the curve with the given vertex: degree d off the
// curve, d-1 on it. Normalized via the echelon form of the one-dimensional
// cone space, so the output is canonical.
template <FieldType K, FieldType L>
MultiPoly<L> cone_equation(const CurveModel<K>& curve, const ProjPoint<L>& p) {
  VertexClass cls = classify_vertex(curve, p);
  if (cls.type == VertexType::multiple_cone)
    throw ambiguous_cone_data<L>("the vertex carries a positive-dimensional family of cones",
                                 detail::cone_space(curve, p, curve_degree(curve)));
  unsigned deg = curve_degree(curve) - (cls.on_curve ? 1 : 0);
  SubspaceBasis<L> space = detail::cone_space(curve, p, deg);
  if (space.dim() != 1)
    throw contract_violation_error("birational vertex without a unique cone equation");
  return MultiPoly<L>::from_coefficient_vector(4, deg, space.row(0));
}

// ---------------------------------------------------------------------------
// Incidence of a line with the curve (genericity probes).

struct LineIncidence {
  unsigned contact_at_base = 0;  // intersection multiplicity of line and curve at the base point
  bool meets_curve_again = false;  // the line meets the curve away from the base point
                                   // (over the algebraic closure)
};

// Restrict every ideal generator to the line through `base` with the given
// direction and read the incidence scheme off the gcd of the restrictions.
template <FieldType K, FieldType L>
LineIncidence line_curve_incidence(const CurveModel<K>& curve, const ProjPoint<L>& base,
                                   const std::vector<L>& direction) {
  if (base.size() != 4 || direction.size() != 4)
    throw ambient_mismatch_error("lines are given by two points with four coordinates");
  L one = detail::unit_of(base);
  {
    Matrix<L> span(0, 4);
    span.append_row(base);
    span.append_row(direction);
    if (rref_in_place(span) != 2)
      throw construction_error("the two points do not span a line");
  }
  std::vector<MultiPoly<L>> subs;  // coordinate i restricted to the line, in the parameter s
  for (unsigned i = 0; i < 4; ++i)
    subs.push_back(MultiPoly<L>::constant(1, base[i]) +
                   MultiPoly<L>::variable(0, 1, one) * direction[i]);
  UPoly<L> g;
  for (auto& f : curve_ideal(curve).polys()) {
    UPoly<L> r = lift_poly(f, one).compose(subs).to_upoly(0, {one});
    if (r.is_zero()) continue;
    g = g.is_zero() ? r : poly_gcd(g, r);
  }
  if (g.is_zero()) throw contract_violation_error("a whole line satisfies the curve equations");
  LineIncidence out;
  unsigned v = 0;
  while (g.coeff(v).is_zero()) ++v;
  out.contact_at_base = v;
  bool direction_on_curve = true;
  for (auto& f : curve_ideal(curve).polys())
    direction_on_curve = direction_on_curve && f.evaluate(direction).is_zero();
  out.meets_curve_again = direction_on_curve || static_cast<unsigned>(g.degree()) > v;
  return out;
}

// ---------------------------------------------------------------------------
// Limit directions and adapted frames.

// A direction along which a vertex slides onto the curve: a base point on
// the curve and either a transverse line through it (given by a second
// point) or the tangent line itself.
template <FieldType L>
struct LimitDirection {
  ProjPoint<L> base;
  std::vector<L> direction;  // ignored when along_tangent is set
  bool along_tangent = false;
};

namespace detail {

// The forms cutting out the tangent line at a smooth curve point.
template <FieldType K, FieldType L>
SubspaceBasis<L> tangent_annihilator(const CurveModel<K>& curve, const ProjPoint<L>& p) {
  CurveGerm<L> g = local_germ(curve, p, 2);
  SubspaceBasis<L> ann = jet_annihilator(g, 1);
  if (ann.dim() != 2) throw not_smooth_error("the tangent line is not cut out by two forms");
  return ann;
}

template <FieldType L>
bool vanishes_at(const SubspaceBasis<L>& forms, const std::vector<L>& pt) {
  for (std::size_t i = 0; i < forms.dim(); ++i) {
    auto r = forms.row(i);
    L acc = pt[0].make(0);
    for (unsigned j = 0; j < 4; ++j) acc = acc + r[j] * pt[j];
    if (!acc.is_zero()) return false;
  }
  return true;
}

// A point spanning the tangent line together with the base point.
template <FieldType K, FieldType L>
std::vector<L> tangent_direction(const CurveModel<K>& curve, const ProjPoint<L>& p) {
  SubspaceBasis<L> ann = tangent_annihilator(curve, p);
  Matrix<L> m(0, 4);
  for (std::size_t i = 0; i < ann.dim(); ++i) m.append_row(ann.row(i));
  Matrix<L> pts = kernel_basis(m);
  for (std::size_t i = 0; i < pts.rows(); ++i) {
    Matrix<L> chk(0, 4);
    chk.append_row(p);
    chk.append_row(pts.row(i));
    if (rref_in_place(chk) == 2) return pts.row(i);
  }
  throw contract_violation_error("the tangent line collapsed to its base point");
}

}  // namespace detail

// A linear change of coordinates adapted to a limit direction. In the new
// coordinates the base point is (0:0:0:1), the tangent line is {x=y=0}, and
// the chosen line is {y=z=0}; hence {y=0} is the plane spanned by the two
// lines, and the moving vertex at time t is (-t:0:0:1) up to scale.
template <FieldType L>
struct AdaptedFrame {
  Matrix<L> to_frame;    // rows are the adapted coordinate forms x, y, z, w
  Matrix<L> from_frame;  // inverse change
  // Rewrite a polynomial in the adapted coordinates (and back).
  std::vector<L> spanned_plane() const { return to_frame.row(1); }
};

template <FieldType K, FieldType L>
AdaptedFrame<L> adapt_frame(const CurveModel<K>& curve, const LimitDirection<L>& dir) {
  if (dir.along_tangent)
    throw invalid_direction_error("the tangent direction spans no transverse frame");
  if (!point_on_curve(curve, dir.base))
    throw invalid_direction_error("the frame base point is not on the curve");
  ProjPoint<L> p = normalize_point(dir.base);
  SubspaceBasis<L> tann = detail::tangent_annihilator(curve, p);
  if (dir.direction.size() != 4)
    throw ambient_mismatch_error("direction points have four coordinates");
  Matrix<L> span(0, 4);
  span.append_row(p);
  span.append_row(dir.direction);
  if (rref_in_place(span) != 2)
    throw invalid_direction_error("the direction point coincides with the base point");
  Matrix<L> inc(0, 4);
  inc.append_row(p);
  inc.append_row(dir.direction);
  SubspaceBasis<L> lann(forms_ambient(4, 1), kernel_basis(inc));
  SubspaceBasis<L> yspace = intersect(tann, lann);
  if (yspace.dim() != 1)
    throw invalid_direction_error("the line is the tangent line; take the tangent-direction limit");
  std::vector<L> y = yspace.row(0);
  auto complement_row = [&](const SubspaceBasis<L>& space) -> std::vector<L> {
    for (std::size_t i = 0; i < space.dim(); ++i) {
      Matrix<L> chk(0, 4);
      chk.append_row(y);
      chk.append_row(space.row(i));
      if (rref_in_place(chk) == 2) return space.row(i);
    }
    throw contract_violation_error("a two-dimensional form space has no complement row");
  };
  std::vector<L> x = complement_row(tann);
  std::vector<L> z = complement_row(lann);
  unsigned wi = 0;
  while (p[wi].is_zero()) ++wi;
  std::vector<L> w(4, p[wi].make(0));
  w[wi] = p[wi].inv();
  Matrix<L> m(0, 4);
  m.append_row(x);
  m.append_row(y);
  m.append_row(z);
  m.append_row(w);
  AdaptedFrame<L> out;
  out.from_frame = inverse(m);
  out.to_frame = std::move(m);
  return out;
}

// ---------------------------------------------------------------------------
// Flat limit of the cone family along a direction.

// The limit of the (unique) cone with vertex p_t as p_t approaches the base
// point along the direction: computed as the flat limit over the function
// field of the one-dimensional cone space at the moving vertex.
template <FieldType K, FieldType L>
MultiPoly<L> limit_cone(const CurveModel<K>& curve, const LimitDirection<L>& dir) {
  if (!point_on_curve(curve, dir.base))
    throw invalid_direction_error("the limit base point is not on the curve");
  ProjPoint<L> p = normalize_point(dir.base);
  L one = detail::unit_of(p);
  std::vector<L> v;
  if (dir.along_tangent) {
    v = detail::tangent_direction(curve, p);
  } else {
    if (dir.direction.size() != 4)
      throw ambient_mismatch_error("direction points have four coordinates");
    Matrix<L> span(0, 4);
    span.append_row(p);
    span.append_row(dir.direction);
    if (rref_in_place(span) != 2)
      throw invalid_direction_error("the direction point coincides with the base point");
    if (detail::vanishes_at(detail::tangent_annihilator(curve, p), dir.direction))
      throw invalid_direction_error("the line is the tangent line; set the tangent flag instead");
    v = dir.direction;
  }
  using R = RatFunc<L>;
  R t(UPoly<L>(std::vector<L>{one.make(0), one}));
  ProjPoint<R> pt;
  for (unsigned i = 0; i < 4; ++i) pt.push_back(R(p[i]) + t * R(v[i]));
  unsigned d = curve_degree(curve);
  SubspaceBasis<R> cones = intersect(
      symmetric_power(wspace(pt), d),
      lift_subspace<R>(curve_ideal(curve).ideal_piece(d), R(one)));
  if (cones.dim() != 1)
    throw invalid_direction_error("the moving vertex is not generically a unique-cone point");
  SubspaceBasis<L> lim = flat_limit(forms_ambient(4, d), cones.rows());
  if (lim.dim() != 1)
    throw contract_violation_error("the flat limit of a point of the cone family is not a point");
  return MultiPoly<L>::from_coefficient_vector(4, d, lim.row(0));
}

}  // namespace conelab

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "conelab/cones.hpp"
#include "conelab/flatlimit.hpp"
#include "conelab/local_series.hpp"

namespace conelab {

// ---------------------------------------------------------------------------
// The model of the restricted sections in a fixed twist.
//
// Degree-k forms restrict to sections of the degree-k hyperplane bundle on
// the curve; two forms restrict equally exactly when they differ by a
// degree-k element of the curve ideal. The canonical model of the restricted
// space is therefore the span of the standard monomials of the curve's
// Groebner basis in degree k, and the projection is normal-form reduction.
// The ambient tag carries the basis fingerprint so spaces computed against
// different curves (or different twists) can never be compared by accident.

template <FieldType K>
class SectionsModel {
 public:
  SectionsModel(GroebnerBasis<K> gb, unsigned degree, std::string tag)
      : gb_(std::move(gb)), degree_(degree), smons_(gb_.standard_monomials(degree)) {
    if (gb_.polys().empty()) throw construction_error("section models need a nonzero curve ideal");
    amb_ = Ambient{smons_.size(), std::move(tag)};
  }

  unsigned degree() const { return degree_; }
  std::size_t dimension() const { return smons_.size(); }
  const Ambient& ambient() const { return amb_; }
  const GroebnerBasis<K>& ideal_basis() const { return gb_; }
  const std::vector<Expo>& monomials() const { return smons_; }
  K unit() const { return gb_.polys().front().unit(); }

  // Coordinates of the restriction class of a degree-k form.
  std::vector<K> project(const MultiPoly<K>& f) const {
    if (f.nvars() != 4) throw ambient_mismatch_error("section classes come from forms in four variables");
    if (!f.is_zero() && (!f.is_homogeneous() || f.homogeneous_degree() != degree_))
      throw ambient_mismatch_error("section classes come from forms of the model degree");
    return vector_on_standard_monomials(gb_.normal_form(f), smons_, unit());
  }

  // The distinguished degree-k form with the given class coordinates.
  MultiPoly<K> representative(const std::vector<K>& v) const {
    if (v.size() != smons_.size()) throw ambient_mismatch_error("class coordinates have model length");
    MultiPoly<K> out(4);
    for (std::size_t i = 0; i < v.size(); ++i) out.add_term(smons_[i], v[i]);
    return out;
  }

  // Image of a subspace of degree-k forms under the projection.
  SubspaceBasis<K> project_forms(const SubspaceBasis<K>& forms) const {
    if (!(forms.ambient() == forms_ambient(4, degree_)))
      throw ambient_mismatch_error("projected spaces live among forms of the model degree");
    Matrix<K> rows(0, dimension());
    for (std::size_t i = 0; i < forms.dim(); ++i)
      rows.append_row(project(MultiPoly<K>::from_coefficient_vector(4, degree_, forms.row(i))));
    return SubspaceBasis<K>(amb_, std::move(rows));
  }

 private:
  GroebnerBasis<K> gb_;
  unsigned degree_ = 0;
  std::vector<Expo> smons_;
  Ambient amb_;
};

template <FieldType K>
SectionsModel<K> sections_space(const CurveModel<K>& curve, unsigned k) {
  if (k < 1) throw construction_error("section spaces need a positive twist");
  const GroebnerBasis<K>& gb = curve_ideal(curve);
  SectionsModel<K> model(gb, k, "sections(k=" + std::to_string(k) + ",gb=" + gb.fingerprint() + ")");
  unsigned d = curve_degree(curve);
  unsigned g = curve_genus(curve);
  // Restriction is onto from two twists below the degree on, so there the
  // model dimension is pinned by degree and genus.
  if (k + 2 >= d) {
    std::size_t expect = static_cast<std::size_t>(d) * k + 1 - g;
    if (model.dimension() != expect)
      throw contract_violation_error("the section model is off the degree-genus count");
  }
  return model;
}

// Coefficient-wise image of a model in a larger field. The lifted Groebner
// basis keeps its leading terms, so the standard monomials (and hence the
// model coordinates) match row for row; the tag is kept verbatim so lifted
// and ground-field spaces share their ambient.
template <FieldType L, FieldType K>
SectionsModel<L> lift_model(const SectionsModel<K>& m, const L& sample) {
  if constexpr (std::is_same_v<L, K>) {
    (void)sample;
    return m;
  } else {
    SectionsModel<L> out(lift_basis(m.ideal_basis(), sample), m.degree(), m.ambient().tag);
    if (out.dimension() != m.dimension())
      throw contract_violation_error("a coefficient lift changed the section model");
    return out;
  }
}

// ---------------------------------------------------------------------------
// Conic linear systems.
//
// The degree-k conic system at a vertex is the image in the sections model
// of the degree-k part of the vertex's cone algebra (the symmetric powers of
// the three linear forms through the vertex). Its dimension is forced by the
// vertex class: the kernel of the restriction consists of the multiples of
// the reduced cone over the curve, so exactly C(k-r+2, 2) dimensions die
// once the twist reaches the reduced cone degree r.

template <FieldType L>
struct ConicSystem {
  ProjPoint<L> vertex;               // base point (normalized)
  VertexClass vertex_class;          // stratum data of the base point
  bool is_limit = false;
  std::vector<L> limit_direction;    // second point spanning the chosen line
  unsigned degree = 0;               // twist k
  SubspaceBasis<L> space;            // inside the sections model for this twist
  std::vector<std::string> generators;  // provenance of the spanning classes
  Matrix<L> frame;                   // adapted coordinate forms (limit systems)
  bool line_meets_curve_again = false;
  bool closed_form_checked = false;  // span description verified against the flat limit
  int min_vanishing_order = -1;      // over basis classes at the vertex (limit systems)
};

template <FieldType K, FieldType L>
ConicSystem<L> conic_system(const CurveModel<K>& curve, const ProjPoint<L>& p, unsigned k) {
  unsigned d = curve_degree(curve);
  if (k < 1 || k > d)
    throw construction_error("conic systems are defined for twists between one and the curve degree");
  VertexClass cls = classify_vertex(curve, p);
  ProjPoint<L> q = normalize_point(p);
  L one = detail::unit_of(q);
  SectionsModel<L> model = lift_model(sections_space(curve, k), one);
  SubspaceBasis<L> symk = symmetric_power(wspace(q), k);

  ConicSystem<L> out;
  out.vertex = q;
  out.vertex_class = cls;
  out.degree = k;
  out.space = model.project_forms(symk);
  std::size_t drop = k >= cls.cone_degree ? binomial_u64(k - cls.cone_degree + 2, 2) : 0;
  if (out.space.dim() != binomial_u64(k + 2, 2) - drop)
    throw contract_violation_error("a conic system is off the vertex-class dimension count");
  out.generators.push_back("restrictions of the degree-" + std::to_string(k) +
                           " vertex forms (" + std::to_string(symk.dim()) + " generators, " +
                           std::to_string(symk.dim() - out.space.dim()) + " in the curve ideal)");
  return out;
}

template <FieldType K, FieldType L>
bool conic_systems_equal(const CurveModel<K>& curve, const ProjPoint<L>& p, const ProjPoint<L>& q,
                         unsigned k) {
  ConicSystem<L> a = conic_system(curve, p, k);
  ConicSystem<L> b = conic_system(curve, q, k);
  if (a.vertex_class.type != VertexType::unique_cone || b.vertex_class.type != VertexType::unique_cone)
    throw construction_error("conic systems are compared at unique-cone vertices");
  return a.space == b.space;
}

// ---------------------------------------------------------------------------
// Limit conic systems.
//
// Slide the vertex from a curve point out along a transverse line and take
// the flat limit of the moving systems over the function field of the
// parameter. For the two top twists the limit strictly contains the
// stationary system, and when the line meets the curve only at the base
// point the extra classes have a closed description in the adapted frame:
// with f the vertex cone written in the frame coordinates (x, y, z, w),
// the gap is spanned by w*df/dx one twist below the degree, and by
// z*w*df/dx together with a first- or second-order class at the degree
// itself. The second-order class needs the split x*w*df/dx = q + (ideal
// element) with q a cone form, which we compute by one linear solve; the
// derivative combination it feeds is the order-two coefficient of the
// deformed family once the order-one coefficient dies on the curve.

template <FieldType K, FieldType L>
ConicSystem<L> limit_conic_system(const CurveModel<K>& curve, const LimitDirection<L>& dir,
                                  unsigned k) {
  unsigned d = curve_degree(curve);
  if (k < 1 || k > d)
    throw construction_error("conic systems are defined for twists between one and the curve degree");
  if (dir.along_tangent)
    throw invalid_direction_error("limit conic systems need a line transverse to the tangent");
  if (!point_on_curve(curve, dir.base))
    throw invalid_direction_error("the limit base point is not on the curve");
  ProjPoint<L> p = normalize_point(dir.base);
  VertexClass cls = classify_vertex(curve, p);
  if (cls.type != VertexType::curve_vertex)
    throw construction_error("limit conic systems are based at birational curve vertices");
  LineIncidence inc = line_curve_incidence(curve, p, dir.direction);
  if (inc.contact_at_base >= 2)
    throw invalid_direction_error("the line is the tangent line; no transverse limit exists");
  L one = detail::unit_of(p);

  SectionsModel<L> model = lift_model(sections_space(curve, k), one);

  // Flat limit of the moving systems over the function field.
  using R = RatFunc<L>;
  R t(UPoly<L>(std::vector<L>{one.make(0), one}));
  ProjPoint<R> pt;
  for (unsigned i = 0; i < 4; ++i) pt.push_back(R(p[i]) + t * R(dir.direction[i]));
  SectionsModel<R> model_t = lift_model(model, R(one));
  SubspaceBasis<R> moving = model_t.project_forms(symmetric_power(wspace(pt), k));
  std::size_t generic_dim = binomial_u64(k + 2, 2) - (k == d ? 1 : 0);
  if (moving.dim() != generic_dim)
    throw contract_violation_error("the moving conic system is off the generic dimension");
  SubspaceBasis<L> limit = flat_limit(model.ambient(), moving.rows());
  if (limit.dim() != generic_dim)
    throw contract_violation_error("the flat limit of the moving conic systems lost dimension");

  ConicSystem<L> base = conic_system(curve, p, k);
  if (!limit.contains(base.space))
    throw contract_violation_error("the flat limit does not contain the stationary system");

  ConicSystem<L> out;
  out.vertex = p;
  out.vertex_class = cls;
  out.is_limit = true;
  out.limit_direction = dir.direction;
  out.degree = k;
  out.space = limit;
  out.line_meets_curve_again = inc.meets_curve_again;
  out.generators.push_back("stationary system at the base vertex (" +
                           std::to_string(base.space.dim()) + " classes)");

  CurveGerm<L> germ = local_germ(curve, p, d * d + 4);
  GroebnerBasis<L> gb = lift_basis(curve_ideal(curve), one);
  auto contact = [&](const MultiPoly<L>& h) -> unsigned {
    VanishingOrder<L> vo = vanishing_order(h, germ, gb);
    if (vo.infinite) throw contract_violation_error("a limit generator restricts to zero on the curve");
    return vo.order;
  };
  auto with_row = [&](const SubspaceBasis<L>& s, const std::vector<L>& v) {
    return sum(s, SubspaceBasis<L>(model.ambient(), std::vector<std::vector<L>>{v}));
  };

  if (!inc.meets_curve_again && k + 1 < d) {
    // Below the top two twists the moving system never drops rank, so the
    // limit is the stationary system itself.
    if (!(base.space == limit))
      throw contract_violation_error("a low-twist limit moved away from the stationary system");
    out.closed_form_checked = true;
    out.generators.push_back("low twist: the limit equals the stationary system");
  } else if (!inc.meets_curve_again) {
    AdaptedFrame<L> fr = adapt_frame(curve, dir);
    out.frame = fr.to_frame;
    MultiPoly<L> f = cone_equation(curve, p).apply_linear_forms(fr.from_frame);
    for (auto& [e, c] : f.terms())
      if (e[3] != 0)
        throw contract_violation_error("the vertex cone picked up the unit coordinate in the adapted frame");
    MultiPoly<L> dfx = f.partial_derivative(0);
    MultiPoly<L> xv = MultiPoly<L>::variable(0, 4, one);
    MultiPoly<L> zv = MultiPoly<L>::variable(2, 4, one);
    MultiPoly<L> wv = MultiPoly<L>::variable(3, 4, one);
    auto back = [&](const MultiPoly<L>& h) { return h.apply_linear_forms(fr.to_frame); };

    SubspaceBasis<L> closed = base.space;
    if (k + 1 == d) {
      MultiPoly<L> gen = back(wv * dfx);
      unsigned ord = contact(gen);
      if (ord + 2 != d)
        throw contract_violation_error("the first-order limit class has the wrong contact order");
      closed = with_row(closed, model.project(gen));
      out.generators.push_back("first-order limit class w*df/dx (contact order " +
                               std::to_string(ord) + ")");
    } else {
      MultiPoly<L> mixed = back(zv * wv * dfx);
      unsigned ordm = contact(mixed);
      if (ordm + 1 != d)
        throw contract_violation_error("the mixed limit class has the wrong contact order");
      closed = with_row(closed, model.project(mixed));
      out.generators.push_back("mixed limit class z*w*df/dx (contact order " +
                               std::to_string(ordm) + ")");
      MultiPoly<L> cand = back(xv * wv * dfx);
      std::vector<L> cv = model.project(cand);
      if (!closed.contains(cv)) {
        closed = with_row(closed, cv);
        out.generators.push_back("first-order limit class x*w*df/dx (contact order " +
                                 std::to_string(contact(cand)) + ")");
      } else {
        // The first-order class degenerates into the stationary system (a
        // valuation count rules out landing anywhere else in the span), and
        // the gap is filled at second order.
        if (!base.space.contains(cv))
          throw contract_violation_error("the degenerate first-order class escapes the stationary system");
        SubspaceBasis<L> symd = symmetric_power(wspace(p), d);
        SubspaceBasis<L> ideald = lift_subspace<L>(curve_ideal(curve).ideal_piece(d), one);
        Matrix<L> cols(0, forms_ambient(4, d).dim);
        for (std::size_t i = 0; i < symd.dim(); ++i) cols.append_row(symd.row(i));
        for (std::size_t i = 0; i < ideald.dim(); ++i) cols.append_row(ideald.row(i));
        auto split = solve(cols.transpose(), cand.coefficient_vector(d));
        if (!split)
          throw contract_violation_error("the degenerate first-order class has no cone-plus-ideal split");
        std::vector<L> qv(forms_ambient(4, d).dim, one.make(0));
        for (std::size_t i = 0; i < symd.dim(); ++i)
          for (std::size_t j = 0; j < qv.size(); ++j) qv[j] = qv[j] + (*split)[i] * symd.row(i)[j];
        MultiPoly<L> q =
            MultiPoly<L>::from_coefficient_vector(4, d, qv).apply_linear_forms(fr.from_frame);
        MultiPoly<L> two = MultiPoly<L>::constant(4, one.make(2));
        MultiPoly<L> xi_frame = two * wv * wv * dfx + xv * wv * wv * dfx.partial_derivative(0) -
                                two * wv * q.partial_derivative(0);
        MultiPoly<L> xi = back(xi_frame);
        unsigned ordx = contact(xi);
        if (ordx + 2 != d)
          throw contract_violation_error("the second-order limit class has the wrong contact order");
        closed = with_row(closed, model.project(xi));
        out.generators.push_back("second-order limit class (contact order " + std::to_string(ordx) +
                                 ")");
      }
    }
    if (!(closed == limit))
      throw contract_violation_error("the closed-form span disagrees with the flat limit");
    out.closed_form_checked = true;
  } else {
    out.generators.push_back("closed-form span skipped: the line meets the curve again");
  }

  if (k + 1 >= d) {
    // Every class in a top-twist limit system keeps contact at least d-2
    // with the curve at the vertex; checking the canonical basis suffices
    // since orders of combinations never drop below the minimum.
    int min_ord = -1;
    for (std::size_t i = 0; i < limit.dim(); ++i) {
      unsigned ord = contact(model.representative(limit.row(i)));
      if (min_ord < 0 || static_cast<int>(ord) < min_ord) min_ord = static_cast<int>(ord);
    }
    if (min_ord + 2 < static_cast<int>(d))
      throw contract_violation_error("a limit class has contact order below the floor");
    out.min_vanishing_order = min_ord;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rank diagnostics for the cone map and the restriction family.

// Dimension of w*W(p)_{d-1} modulo its overlap with W(p)_d + I(d), where w
// is the first coordinate form not vanishing at p. Positivity is exactly
// injectivity of the cone map's differential at p.
template <FieldType K, FieldType L>
std::size_t gamma_dim(const CurveModel<K>& curve, const ProjPoint<L>& p) {
  unsigned d = curve_degree(curve);
  VertexClass cls = classify_vertex(curve, p);
  if (cls.type != VertexType::unique_cone)
    throw construction_error("the cone-map differential is probed at unique-cone vertices");
  ProjPoint<L> q = normalize_point(p);
  L one = detail::unit_of(q);
  unsigned wi = 0;
  while (q[wi].is_zero()) ++wi;
  MultiPoly<L> w = MultiPoly<L>::variable(wi, 4, one);

  SubspaceBasis<L> wd1 = symmetric_power(wspace(q), d - 1);
  Matrix<L> rows(0, forms_ambient(4, d).dim);
  for (std::size_t i = 0; i < wd1.dim(); ++i)
    rows.append_row(
        (w * MultiPoly<L>::from_coefficient_vector(4, d - 1, wd1.row(i))).coefficient_vector(d));
  SubspaceBasis<L> w_shift(forms_ambient(4, d), std::move(rows));
  if (w_shift.dim() != wd1.dim())
    throw contract_violation_error("multiplication by a unit form dropped rank");

  SubspaceBasis<L> span = sum(symmetric_power(wspace(q), d),
                              lift_subspace<L>(curve_ideal(curve).ideal_piece(d), one));
  std::size_t out = w_shift.dim() - intersect(span, w_shift).dim();
  if (out < 1)
    throw contract_violation_error("the cone-map differential degenerated at a unique-cone vertex");
  return out;
}

// Kernel dimension of the differential of the restriction family at a cone
// class g with vertex p: the three derivative directions of g, shifted by
// the off-vertex coordinate form, span the horizontal image inside the
// sections model modulo the stationary system.
template <FieldType K, FieldType L>
unsigned dphi_corank(const CurveModel<K>& curve, const ProjPoint<L>& p, const MultiPoly<L>& g) {
  unsigned d = curve_degree(curve);
  VertexClass cls = classify_vertex(curve, p);
  if (cls.type != VertexType::unique_cone)
    throw construction_error("the restriction-family differential is probed at unique-cone vertices");
  ProjPoint<L> q = normalize_point(p);
  L one = detail::unit_of(q);
  if (g.nvars() != 4 || g.is_zero() || !g.is_homogeneous() || g.homogeneous_degree() != d)
    throw ambient_mismatch_error("the probed class must be a nonzero form of the curve degree");
  SubspaceBasis<L> symd = symmetric_power(wspace(q), d);
  std::vector<L> gv = g.coefficient_vector(d);
  if (!symd.contains(gv))
    throw construction_error("the probed class is not a cone form with the given vertex");
  Matrix<L> pair(0, forms_ambient(4, d).dim);
  pair.append_row(cone_equation(curve, q).coefficient_vector(d));
  pair.append_row(gv);
  if (rank(std::move(pair)) != 2)
    throw zero_class_error("the probed class is the cone over the curve itself");

  // Frame: the three vertex forms plus the first coordinate form off the
  // vertex. The horizontal image is frame-independent modulo the stationary
  // system, so any such choice computes the same corank.
  unsigned wi = 0;
  while (q[wi].is_zero()) ++wi;
  SubspaceBasis<L> wsp = wspace(q);
  Matrix<L> to_frame(0, 4);
  for (std::size_t i = 0; i < 3; ++i) to_frame.append_row(wsp.row(i));
  std::vector<L> wrow(4, one.make(0));
  wrow[wi] = one;
  to_frame.append_row(wrow);
  Matrix<L> from_frame = inverse(to_frame);
  MultiPoly<L> gf = g.apply_linear_forms(from_frame);
  for (auto& [e, c] : gf.terms())
    if (e[3] != 0)
      throw contract_violation_error("a vertex cone picked up the unit coordinate in its own frame");
  MultiPoly<L> wv = MultiPoly<L>::variable(3, 4, one);

  SectionsModel<L> model = lift_model(sections_space(curve, d), one);
  SubspaceBasis<L> stationary = model.project_forms(symd);
  Matrix<L> jrows(0, model.dimension());
  for (unsigned i = 0; i < 3; ++i)
    jrows.append_row(model.project((wv * gf.partial_derivative(i)).apply_linear_forms(to_frame)));
  SubspaceBasis<L> horizontal(model.ambient(), std::move(jrows));
  std::size_t added = sum(stationary, horizontal).dim() - stationary.dim();
  if (added > 3) throw contract_violation_error("the horizontal image exceeds its three directions");
  return 3 - static_cast<unsigned>(added);
}

}  // namespace conelab

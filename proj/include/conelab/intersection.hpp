#pragma once
// Intersection arithmetic on the blow-up of P^3 along a smooth space curve,
// plus two finite-field counting oracles (nodes of a generic plane projection,
// ramification of a generic line projection) that reproduce the same numbers
// from the geometry of the curve itself.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conelab/cones.hpp"
#include "conelab/ratfunc.hpp"

namespace conelab {

// ---------------------------------------------------------------------------
// Symbolic divisor classes.
//
// Codimension-c classes (c = 1, 2, 3) are integer combinations of the
// monomials Lt^(c-j) * E^j, where Lt is the pullback of a plane and E the
// exceptional divisor over a curve of degree d and genus g. Top products
// evaluate through the relations
//   Lt^3 = 1,   Lt^2*E = 0,   Lt*E^2 = -d,   E^3 = 2 - 2g - 4d.
class BlowupClass {
 public:
  BlowupClass(unsigned degree, unsigned genus, unsigned codim, std::vector<long long> coeffs)
      : d_(degree), g_(genus), codim_(codim), c_(std::move(coeffs)) {
    if (codim_ < 1 || codim_ > 3)
      throw construction_error("blow-up class codimension must be 1, 2, or 3");
    if (c_.size() != static_cast<std::size_t>(codim_) + 1)
      throw construction_error("blow-up class needs codim+1 coefficients");
  }

  static BlowupClass hyperplane(unsigned d, unsigned g) { return BlowupClass(d, g, 1, {1, 0}); }
  static BlowupClass exceptional(unsigned d, unsigned g) { return BlowupClass(d, g, 1, {0, 1}); }
  // Divisor class pulled back by the extended cone assignment: d*Lt - E.
  static BlowupClass cone_divisor(unsigned d, unsigned g) {
    return BlowupClass(d, g, 1, {static_cast<long long>(d), -1});
  }

  unsigned degree() const { return d_; }
  unsigned genus() const { return g_; }
  unsigned codim() const { return codim_; }
  // coeffs()[j] multiplies Lt^(codim-j) * E^j.
  const std::vector<long long>& coeffs() const { return c_; }

  BlowupClass operator+(const BlowupClass& o) const {
    require_same_graded_piece(o);
    BlowupClass r = *this;
    for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j] += o.c_[j];
    return r;
  }
  BlowupClass operator-(const BlowupClass& o) const {
    require_same_graded_piece(o);
    BlowupClass r = *this;
    for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j] -= o.c_[j];
    return r;
  }
  BlowupClass operator*(long long k) const {
    BlowupClass r = *this;
    for (auto& x : r.c_) x *= k;
    return r;
  }
  friend BlowupClass operator*(long long k, const BlowupClass& a) { return a * k; }

  BlowupClass operator*(const BlowupClass& o) const {
    if (d_ != o.d_ || g_ != o.g_)
      throw ambient_mismatch_error("blow-up classes live over different curve invariants");
    unsigned c = codim_ + o.codim_;
    if (c > 3)
      throw ambient_mismatch_error("codimension of a blow-up product exceeds the ambient dimension");
    std::vector<long long> prod(c + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
    return BlowupClass(d_, g_, c, std::move(prod));
  }

  bool operator==(const BlowupClass& o) const {
    return d_ == o.d_ && g_ == o.g_ && codim_ == o.codim_ && c_ == o.c_;
  }
  bool operator!=(const BlowupClass& o) const { return !(*this == o); }

  // Integer degree of a codimension-3 class via the four relations.
  long long evaluate() const {
    if (codim_ != 3)
      throw ambient_mismatch_error("only codimension-3 blow-up classes evaluate to a number");
    const long long d = d_;
    const long long g = g_;
    return c_[0] + c_[2] * (-d) + c_[3] * (2 - 2 * g - 4 * d);
  }

 private:
  void require_same_graded_piece(const BlowupClass& o) const {
    if (codim_ != o.codim_)
      throw ambient_mismatch_error("blow-up classes of different codimension cannot be added");
    if (d_ != o.d_ || g_ != o.g_)
      throw ambient_mismatch_error("blow-up classes live over different curve invariants");
  }

  unsigned d_;
  unsigned g_;
  unsigned codim_;
  std::vector<long long> c_;
};

inline long long blowup_product(const BlowupClass& a, const BlowupClass& b, const BlowupClass& c) {
  return (a * b * c).evaluate();
}
inline long long blowup_product(const BlowupClass& a, const BlowupClass& b) {
  return (a * b).evaluate();
}

// Largest genus a smooth nondegenerate space curve of the given degree can
// have: floor((d-2)^2 / 4).
inline unsigned castelnuovo_genus_bound(unsigned d) {
  if (d < 3) throw construction_error("nondegenerate space curves have degree at least 3");
  return (d - 2) * (d - 2) / 4;
}

// ---------------------------------------------------------------------------
// Plane model of the projection from a unique-cone vertex. In adapted
// coordinates (rows 0..2 of to_frame span the forms vanishing at the vertex)
// the cone equation loses its last variable, and the surviving three-variable
// form cuts out the image curve in the target plane.
template <FieldType L>
struct PlaneProjection {
  MultiPoly<L> model;    // degree-d form in 3 variables
  Matrix<L> to_frame;    // adapted coordinates: new = to_frame * old
  Matrix<L> from_frame;  // inverse of to_frame

  // Image of a point other than the vertex: its first three adapted
  // coordinates.
  ProjPoint<L> project_point(const ProjPoint<L>& q) const {
    if (q.size() != 4) throw ambient_mismatch_error("projection needs a point of P^3");
    ProjPoint<L> out;
    bool all_zero = true;
    for (std::size_t i = 0; i < 3; ++i) {
      L v = q[0].make(0);
      for (std::size_t j = 0; j < 4; ++j) v = v + to_frame.at(i, j) * q[j];
      all_zero = all_zero && v.is_zero();
      out.push_back(v);
    }
    if (all_zero) throw construction_error("the projection vertex has no image");
    return out;
  }
};

template <FieldType L>
PlaneProjection<L> plane_projection_model(const CurveModel<L>& curve, const ProjPoint<L>& p) {
  VertexClass cls = classify_vertex(curve, p);
  if (cls.type != VertexType::unique_cone)
    throw construction_error("plane projection model needs a unique-cone vertex");
  ProjPoint<L> q = normalize_point(p);
  MultiPoly<L> f = cone_equation(curve, q);
  const L one = f.unit();

  Matrix<L> w = wspace(q).rows();
  std::size_t wi = 0;
  while (wi < 4 && q[wi].is_zero()) ++wi;
  Matrix<L> to(4, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) to.at(i, j) = w.at(i, j);
  to.at(3, wi) = one.make(1);
  Matrix<L> from = inverse(to);

  MultiPoly<L> ff = f.apply_linear_forms(from);
  MultiPoly<L> g3(3);
  for (const auto& [e, c] : ff.terms()) {
    if (e[3] != 0)
      throw contract_violation_error("cone equation depends on its own vertex coordinate");
    Expo e3{};
    e3[0] = e[0];
    e3[1] = e[1];
    e3[2] = e[2];
    g3 += MultiPoly<L>::monomial(3, e3, c);
  }
  return PlaneProjection<L>{g3, to, from};
}

namespace detail {

// Matrix of multiplication by a linear form between two graded pieces of the
// quotient ring, in the given standard-monomial coordinates (row action:
// coordinates of lin * m_i land in row i).
template <FieldType L>
Matrix<L> graded_mult_matrix(const GroebnerBasis<L>& gb, const MultiPoly<L>& lin,
                             const std::vector<Expo>& from, const std::vector<Expo>& to,
                             const L& one) {
  Matrix<L> m(from.size(), to.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    MultiPoly<L> mono = MultiPoly<L>::monomial(gb.nvars(), from[i], one.make(1));
    std::vector<L> vec = vector_on_standard_monomials(gb.normal_form(lin * mono), to, one);
    for (std::size_t j = 0; j < to.size(); ++j) m.at(i, j) = vec[j];
  }
  return m;
}

// Monic minimal polynomial of the row action v -> v * t on the Krylov span of
// v. Stops at the first linear dependence.
template <FieldType L>
UPoly<L> krylov_min_poly(const Matrix<L>& t, std::vector<L> v, const L& one) {
  const std::size_t n = t.rows();
  Matrix<L> kr(0, n);
  for (std::size_t step = 0; step <= n; ++step) {
    if (kr.rows() > 0) {
      if (auto c = solve(kr.transpose(), v)) {
        std::vector<L> coeffs;
        for (auto& x : *c) coeffs.push_back(-x);
        coeffs.push_back(one.make(1));
        return UPoly<L>(std::move(coeffs));
      }
    }
    kr.append_row(v);
    std::vector<L> nv(n, one.make(0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) nv[j] = nv[j] + v[i] * t.at(i, j);
    v = std::move(nv);
  }
  throw contract_violation_error("Krylov iteration escaped its ambient dimension");
}

}  // namespace detail

// Number of singular points of the plane projection from p, counted over the
// algebraic closure. The points are cut out by the Jacobian ideal of the
// plane model; their total length is read off the stabilized Hilbert
// function, and a squarefree minimal polynomial of a generic coordinate
// function certifies that every singularity is an ordinary node (so length =
// point count). Non-nodal projections fail the certificate and raise.
template <FieldType L>
unsigned count_nodes(const CurveModel<L>& curve, const ProjPoint<L>& p) {
  const unsigned d = curve_degree(curve);
  if (std::uint64_t ch = characteristic(detail::unit_of(p)); ch != 0 && ch <= d)
    throw construction_error("node counting needs characteristic zero or beyond the curve degree");
  PlaneProjection<L> pl = plane_projection_model(curve, p);
  const L one = pl.model.unit();

  std::vector<MultiPoly<L>> jac;
  for (unsigned i = 0; i < 3; ++i) jac.push_back(pl.model.partial_derivative(i));
  GroebnerBasis<L> jb(3, jac);

  // The Jacobian generators have degree d-1, so the Hilbert function carries
  // no information before that; scan from there for a stable window.
  const unsigned start = d >= 2 ? d - 1 : 1;
  const unsigned cap = 6 * d + 6;
  std::optional<unsigned> level;
  std::vector<std::size_t> hf;
  for (unsigned k = start; k <= cap; ++k) {
    hf.push_back(jb.standard_monomials(k).size());
    if (hf.size() >= 3) {
      std::size_t a = hf[hf.size() - 3];
      if (a == hf[hf.size() - 2] && a == hf.back()) {
        level = k - 2;
        break;
      }
    }
  }
  if (!level)
    throw sampling_defect_error("Hilbert function of the singular scheme did not stabilize");
  const unsigned k0 = *level;
  const std::vector<Expo> sm0 = jb.standard_monomials(k0);
  const std::vector<Expo> sm1 = jb.standard_monomials(k0 + 1);
  const std::vector<Expo> sm2 = jb.standard_monomials(k0 + 2);
  const std::size_t len = sm0.size();
  if (len == 0) return 0;

  SeededRng rng(0x6e6f646573ULL ^ (static_cast<std::uint64_t>(d) << 20));
  auto rand_lin = [&]() {
    std::vector<L> c(3, one.make(0));
    bool zero = true;
    while (zero) {
      for (auto& x : c) {
        x = one.make(rng.small_signed(40));
        zero = zero && x.is_zero();
      }
    }
    return MultiPoly<L>::linear_form(c);
  };
  auto rand_vec = [&]() {
    std::vector<L> v(len, one.make(0));
    bool zero = true;
    while (zero) {
      for (auto& x : v) {
        x = one.make(rng.small_signed(40));
        zero = zero && x.is_zero();
      }
    }
    return v;
  };

  for (unsigned attempt = 0; attempt < 8; ++attempt) {
    MultiPoly<L> mu = rand_lin();
    MultiPoly<L> la = rand_lin();
    Matrix<L> mu0 = detail::graded_mult_matrix(jb, mu, sm0, sm1, one);
    Matrix<L> mu1 = detail::graded_mult_matrix(jb, mu, sm1, sm2, one);
    if (rank(mu0) < len || rank(mu1) < len) continue;  // mu vanishes on the scheme
    Matrix<L> t0 = detail::graded_mult_matrix(jb, la, sm0, sm1, one) * inverse(mu0);
    Matrix<L> t1 = detail::graded_mult_matrix(jb, la, sm1, sm2, one) * inverse(mu1);
    UPoly<L> m0 = detail::krylov_min_poly(t0, rand_vec(), one);
    UPoly<L> m1 = detail::krylov_min_poly(t1, rand_vec(), one);
    if (m0.degree() != static_cast<int>(len) || m0 != m1) continue;
    UPoly<L> md = m0.derivative();
    if (md.is_zero() || poly_gcd(m0, md).degree() != 0) continue;
    return static_cast<unsigned>(len);
  }
  throw sampling_defect_error(
      "projection is not certifiably nodal from this vertex; resample the vertex");
}

// Number of ramification points (over the algebraic closure) of the degree-d
// covering of P^1 obtained by projecting the curve from the line through r
// and s. The discriminant of the fiber polynomial factors as
// (simple part) * (node images)^2 for a generic line; the simple part counts
// the ramification points and any higher multiplicity raises.
template <FieldType L>
unsigned count_ramification(const CurveModel<L>& curve, const ProjPoint<L>& r,
                            const ProjPoint<L>& s) {
  const unsigned d = curve_degree(curve);
  if (std::uint64_t ch = characteristic(detail::unit_of(r)); ch != 0 && ch <= 2 * d)
    throw construction_error(
        "ramification counting needs characteristic zero or beyond twice the curve degree");
  PlaneProjection<L> pl = plane_projection_model(curve, r);
  const L one = pl.model.unit();

  ProjPoint<L> sbar = pl.project_point(s);
  if (pl.model.evaluate(sbar).is_zero())
    throw sampling_defect_error("projection line meets the curve; resample the second point");

  // Move the image of s to (0:0:1) so the pencil of lines through it is cut
  // by the first two coordinates.
  Matrix<L> srow(1, 3);
  for (std::size_t j = 0; j < 3; ++j) srow.at(0, j) = sbar[j];
  Matrix<L> ann = kernel_basis(srow);
  std::size_t si = 0;
  while (si < 3 && sbar[si].is_zero()) ++si;
  Matrix<L> q(3, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    q.at(0, j) = ann.at(0, j);
    q.at(1, j) = ann.at(1, j);
  }
  q.at(2, si) = one.make(1);
  MultiPoly<L> h = pl.model.apply_linear_forms(inverse(q));

  // Fiber polynomial over the base line, with the second coordinate
  // dehomogenized: G(t, y) = h(1, t, y).
  std::vector<UPoly<L>> by_fiber_degree(d + 1);
  for (const auto& [e, c] : h.terms())
    by_fiber_degree[e[2]] = by_fiber_degree[e[2]] + UPoly<L>::monomial(c, e[1]);
  if (by_fiber_degree[d].degree() != 0)
    throw contract_violation_error("fiber polynomial lost its top coefficient");
  using R = RatFunc<L>;
  std::vector<R> gc;
  for (auto& u : by_fiber_degree) gc.emplace_back(u);
  UPoly<R> fiber(std::move(gc));

  R disc_r = poly_discriminant(fiber);
  if (disc_r.denominator().degree() != 0)
    throw contract_violation_error("discriminant of a polynomial family must be polynomial");
  UPoly<L> disc = disc_r.numerator();
  if (disc.is_zero())
    throw sampling_defect_error("inseparable fiber polynomial; resample the line");
  if (disc.degree() != static_cast<int>(d * (d - 1)))
    throw sampling_defect_error("a branch point escaped to infinity; resample the line");

  UPoly<L> dd = disc.derivative();
  if (dd.is_zero())
    throw sampling_defect_error("discriminant is a p-th power; resample the line");
  UPoly<L> m1 = poly_gcd(disc, dd);
  UPoly<L> w = disc.divexact(m1).monic();     // product of the distinct factors
  UPoly<L> twice = poly_gcd(m1, w);           // factors of multiplicity >= 2
  UPoly<L> simple = w.divexact(twice).monic();
  UPoly<L> rest = m1.divexact(twice);
  if (rest.degree() != 0)
    throw sampling_defect_error("ramification is not simple along this line; resample");
  return static_cast<unsigned>(simple.degree());
}

}  // namespace conelab

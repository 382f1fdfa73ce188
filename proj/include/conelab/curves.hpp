#pragma once

// Space curve models: rational curves given by a parametrization of P^1 and
// genus-one curves given as an intersection of two quadrics. Both expose
// their homogeneous ideal, point sampling over the base field or one
// extension, and graded ideal pieces computed by two independent routes.

#include <array>
#include <set>
#include <variant>
#include <vector>

#include "ext.hpp"
#include "groebner.hpp"
#include "multipoly.hpp"
#include "resultant.hpp"
#include "subspace.hpp"

namespace conelab {

template <FieldType L>
using ProjPoint = std::vector<L>;  // homogeneous coordinates, length = nvars

// Scale so the last nonzero coordinate is 1.
template <FieldType L>
ProjPoint<L> normalize_point(ProjPoint<L> p) {
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i].is_zero()) continue;
    L inv = p[i].inv();
    for (auto& c : p) c = c * inv;
    return p;
  }
  throw zero_class_error("the zero vector is not a projective point");
}

template <FieldType L>
bool points_equal(const ProjPoint<L>& a, const ProjPoint<L>& b) {
  if (a.size() != b.size()) return false;
  auto na = normalize_point(a), nb = normalize_point(b);
  for (std::size_t i = 0; i < na.size(); ++i)
    if (!(na[i] == nb[i])) return false;
  return true;
}

template <FieldType L>
std::string point_str(const ProjPoint<L>& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? " : " : "") + p[i].to_str();
  return out + ")";
}

// ---------------------------------------------------------------------------

template <FieldType K>
class ParametricCurve {
 public:
  // Four binary forms of a common degree d, defining P^1 -> P^3.
  explicit ParametricCurve(std::vector<MultiPoly<K>> components)
      : comps_(std::move(components)) {
    if (comps_.size() != 4) throw construction_error("a space curve needs four coordinates");
    unsigned d = 0;
    for (auto& c : comps_) {
      if (c.is_zero()) continue;
      if (c.nvars() != 2) throw ambient_mismatch_error("parametrization components are binary forms");
      unsigned cd = c.homogeneous_degree();
      if (d && cd != d) throw construction_error("parametrization components of mixed degrees");
      d = cd;
    }
    if (d == 0) throw construction_error("constant parametrization");
    deg_ = d;
    // a morphism P^1 -> P^3 with non-degenerate image: no common parameter
    // root, and the four forms are linearly independent (image not planar)
    K one = comps_[0].unit();
    std::vector<K> u_one{one, one};
    UPoly<K> g;
    bool full_degree = false;
    Matrix<K> coeffs(0, deg_ + 1);
    for (auto& c : comps_) {
      if (c.is_zero()) {
        coeffs.append_row(std::vector<K>(deg_ + 1, one.make(0)));
        continue;
      }
      UPoly<K> f = c.to_upoly(0, u_one);
      if (f.degree() == static_cast<int>(deg_)) full_degree = true;
      g = g.is_zero() ? f : poly_gcd(g, f);
      coeffs.append_row(c.coefficient_vector(deg_));
    }
    if (!full_degree || g.degree() >= 1)
      throw construction_error("parametrization components share a root");
    if (rref_in_place(coeffs) != 4)
      throw construction_error("parametrization image lies in a plane");
    build_ideal();
  }

  unsigned degree() const { return deg_; }
  unsigned genus() const { return 0; }
  const std::vector<MultiPoly<K>>& components() const { return comps_; }
  const GroebnerBasis<K>& ideal() const { return gb_; }

  template <FieldType L>
  ProjPoint<L> point_at(const L& s, const L& u) const {
    std::vector<L> par{s, u};
    ProjPoint<L> out;
    for (auto& c : comps_) out.push_back(c.evaluate(par));
    return normalize_point(std::move(out));
  }

 private:
  // I(2) and I(3) from pullback kernels; the ideal of a rational curve of
  // degree <= 4 is generated there, and the completion is a Groebner basis.
  void build_ideal() {
    std::vector<MultiPoly<K>> gens;
    K one = comps_[0].unit();
    for (unsigned k = 2; k <= 3; ++k) {
      auto mons = monomial_basis(4, k);
      Matrix<K> rows(0, deg_ * k + 1);
      for (auto& e : mons) {
        MultiPoly<K> pull = MultiPoly<K>::constant(2, one);
        for (unsigned i = 0; i < 4; ++i)
          for (unsigned rep = 0; rep < e[i]; ++rep) pull = pull * comps_[i];
        rows.append_row(pull.coefficient_vector(deg_ * k));
      }
      Matrix<K> ker = kernel_basis(rows.transpose());
      for (std::size_t r = 0; r < ker.rows(); ++r)
        gens.push_back(MultiPoly<K>::from_coefficient_vector(4, k, ker.row(r)));
    }
    gb_ = GroebnerBasis<K>(4, std::move(gens));
  }

  std::vector<MultiPoly<K>> comps_;
  unsigned deg_ = 0;
  GroebnerBasis<K> gb_;
};

// ---------------------------------------------------------------------------

// Coefficient-wise image of a polynomial in a larger field.
template <FieldType L, FieldType K>
MultiPoly<L> lift_poly(const MultiPoly<K>& f, const L& sample) {
  if constexpr (std::is_same_v<L, K>) {
    (void)sample;
    return f;
  } else {
    return f.template map_coefficients<L>(f.nvars(),
                                          [&](const K& c) { return embed_scalar(c, sample); });
  }
}

// All points of {q1 = q2 = 0} on the affine plane {x0 = c0, x1 = c1} (the
// scale of (c0, c1) is fixed by the caller). Eliminates x3, solves for x2.
template <FieldType L>
std::vector<ProjPoint<L>> solve_quadric_slice(const MultiPoly<L>& q1, const MultiPoly<L>& q2,
                                              const L& c0, const L& c1) {
  std::vector<L> subst{c0, c1, c0.make(0), c0.make(0)};
  BiPoly<L> b1(q1, 2, 3, subst), b2(q2, 2, 3, subst);
  std::vector<ProjPoint<L>> out;
  auto push_if_on = [&](const L& y, const L& z) {
    ProjPoint<L> p{c0, c1, y, z};
    if (q1.evaluate(p).is_zero() && q2.evaluate(p).is_zero())
      out.push_back(normalize_point(std::move(p)));
  };
  if (b1.is_zero() || b2.is_zero()) return out;  // degenerate slice, caller moves on

  auto z_poly_at = [&](const BiPoly<L>& b, const L& y) {
    std::vector<L> c;
    for (int i = 0; i <= b.degree_outer(); ++i) c.push_back(b.coeff(static_cast<std::size_t>(i)).eval(y));
    return UPoly<L>(std::move(c));
  };

  if constexpr (!L::finite_kind) {
    throw extension_exhausted_error("point search on a quadric model needs a finite field", 0);
  } else {
    if (b1.degree_outer() == 0 && b2.degree_outer() == 0) {
      // no x3 anywhere: verified candidates only (a full line on the curve is
      // impossible for an irreducible quartic, so this stays finite)
      UPoly<L> g = poly_gcd(b1.coeff(0), b2.coeff(0));
      if (g.degree() < 1) return out;
      for (auto& y : roots_in_field(g, c0.make(0))) push_if_on(y, c0.make(0));
      return out;
    }
    UPoly<L> res = sylvester_resultant(b1, b2);
    if (res.is_zero()) return out;  // shared component over this slice; treated elsewhere
    if (res.degree() < 1) return out;
    for (auto& y : roots_in_field(res, c0.make(0))) {
      UPoly<L> z1 = z_poly_at(b1, y), z2 = z_poly_at(b2, y);
      UPoly<L> g = z1.is_zero() ? z2 : (z2.is_zero() ? z1 : poly_gcd(z1, z2));
      if (g.is_zero()) continue;
      if (g.degree() < 1) continue;
      for (auto& z : roots_in_field(g, c0.make(0))) push_if_on(y, z);
    }
    return out;
  }
}

// `unchecked` skips the smoothness certificate (for deliberately degenerate
// models in diagnostics); everything else about the model still works.
enum class ModelCheck { full, unchecked };

template <FieldType K>
class QuadricCurve {
 public:
  QuadricCurve(MultiPoly<K> q1, MultiPoly<K> q2, ModelCheck check = ModelCheck::full)
      : q1_(std::move(q1)), q2_(std::move(q2)) {
    if (q1_.nvars() != 4 || q2_.nvars() != 4)
      throw ambient_mismatch_error("quadric intersection lives in four variables");
    if (q1_.is_zero() || q1_.homogeneous_degree() != 2 || q2_.is_zero() ||
        q2_.homogeneous_degree() != 2)
      throw construction_error("both defining forms must be quadrics");
    gb_ = GroebnerBasis<K>(4, {q1_, q2_});
    if (gb_.is_trivial()) throw construction_error("the two quadrics have no common zero locus");
    if (check == ModelCheck::full) verify_smooth();
  }

  unsigned degree() const { return 4; }
  unsigned genus() const { return 1; }
  const MultiPoly<K>& quadric1() const { return q1_; }
  const MultiPoly<K>& quadric2() const { return q2_; }
  const GroebnerBasis<K>& ideal() const { return gb_; }

  // All curve points in the slice x0 = c0, x1 = c1 (over any field extension;
  // pass the quadrics' coefficient images).
  template <FieldType L>
  std::vector<ProjPoint<L>> slice_points(const L& sample, const L& c0, const L& c1) const {
    MultiPoly<L> l1 = lift_poly(q1_, sample), l2 = lift_poly(q2_, sample);
    return solve_quadric_slice(l1, l2, c0, c1);
  }

 private:
  // The base locus of the pencil is a smooth quartic exactly when the binary
  // form det(l*A + m*B) of the symmetric matrices is squarefree (four distinct
  // singular members, the member at l = (1:0) counted by degree drop).
  void verify_smooth() const {
    K one = q1_.unit().make(1);
    if (one.make(2).is_zero())
      throw construction_error("pencil smoothness certificate needs characteristic not two");
    K half = one.make(2).inv();
    auto sym = [&](const MultiPoly<K>& q) {
      std::vector<std::vector<K>> m(4, std::vector<K>(4, one.make(0)));
      for (auto& [e, c] : q.terms())
        for (unsigned i = 0; i < 4; ++i) {
          if (e[i] == 2) m[i][i] = m[i][i] + c;
          for (unsigned j = i + 1; j < 4; ++j)
            if (e[i] == 1 && e[j] == 1) {
              m[i][j] = m[i][j] + c * half;
              m[j][i] = m[j][i] + c * half;
            }
        }
      return m;
    };
    auto a = sym(q1_), b = sym(q2_);
    std::vector<std::vector<UPoly<K>>> pencil(4, std::vector<UPoly<K>>(4));
    for (unsigned i = 0; i < 4; ++i)
      for (unsigned j = 0; j < 4; ++j)
        pencil[i][j] = UPoly<K>::monomial(a[i][j], 1) + UPoly<K>::monomial(b[i][j], 0);
    UPoly<K> det = ring_determinant(std::move(pencil));
    bool squarefree = !det.is_zero() && poly_gcd(det, det.derivative()).degree() < 1 &&
                      4 - det.degree() <= 1;
    if (!squarefree)
      throw construction_error("the quadric pencil has a repeated singular member");
    if constexpr (K::finite_kind) {
      // Jacobian rank spot-check on a few sampled points
      std::array<MultiPoly<K>, 4> d1, d2;
      for (unsigned i = 0; i < 4; ++i) {
        d1[i] = q1_.partial_derivative(i);
        d2[i] = q2_.partial_derivative(i);
      }
      unsigned found = 0;
      for (std::uint64_t t = 0; found < 20 && t < 40; ++t) {
        for (auto& p : solve_quadric_slice(q1_, q2_, one, one.make(static_cast<std::int64_t>(t)))) {
          Matrix<K> jac(0, 4);
          std::vector<K> r1, r2;
          for (unsigned i = 0; i < 4; ++i) {
            r1.push_back(d1[i].evaluate(p));
            r2.push_back(d2[i].evaluate(p));
          }
          jac.append_row(r1);
          jac.append_row(r2);
          if (rref_in_place(jac) != 2)
            throw construction_error("sampled point fails the smoothness rank test");
          ++found;
        }
      }
    }
  }

  MultiPoly<K> q1_, q2_;
  GroebnerBasis<K> gb_;
};

// ---------------------------------------------------------------------------

template <FieldType K>
using CurveModel = std::variant<ParametricCurve<K>, QuadricCurve<K>>;

template <FieldType K>
unsigned curve_degree(const CurveModel<K>& c) {
  return std::visit([](auto& m) { return m.degree(); }, c);
}
template <FieldType K>
unsigned curve_genus(const CurveModel<K>& c) {
  return std::visit([](auto& m) { return m.genus(); }, c);
}
template <FieldType K>
const GroebnerBasis<K>& curve_ideal(const CurveModel<K>& c) {
  return std::visit([](auto& m) -> const GroebnerBasis<K>& { return m.ideal(); }, c);
}

// Distinct points of the curve over L, in deterministic enumeration order.
// Throws extension_exhausted_error when the field runs out first.
template <FieldType L, FieldType K>
std::vector<ProjPoint<L>> sample_curve_points(const CurveModel<K>& curve, std::size_t count,
                                              const L& sample) {
  std::vector<ProjPoint<L>> pts;
  std::set<std::string> seen;
  auto push = [&](ProjPoint<L> p) {
    std::string key = point_str(p);
    if (seen.insert(key).second) pts.push_back(std::move(p));
    return pts.size() >= count;
  };
  constexpr bool finite = L::finite_kind;
  mpz_class order(0);
  if constexpr (finite) order = field_order(sample);

  if (std::holds_alternative<ParametricCurve<K>>(curve)) {
    const auto& par = std::get<ParametricCurve<K>>(curve);
    // (1 : t), then (0 : 1)
    for (std::uint64_t i = 0;; ++i) {
      if (finite && mpz_class(static_cast<unsigned long>(i)) >= order) break;
      L t = element_at(sample, i);
      if (push(par.point_at(sample.make(1), t))) return pts;
    }
    if (push(par.point_at(sample.make(0), sample.make(1)))) return pts;
    throw extension_exhausted_error("the curve has too few points over " + field_label(sample), 0);
  }

  if constexpr (!L::finite_kind) {
    throw extension_exhausted_error("point search on a quadric model needs a finite field", 0);
  } else {
    const auto& qc = std::get<QuadricCurve<K>>(curve);
    // slices x0 = 1, x1 = t
    for (std::uint64_t i = 0;; ++i) {
      if (mpz_class(static_cast<unsigned long>(i)) >= order) break;
      L t = element_at(sample, i);
      for (auto& p : qc.slice_points(sample, sample.make(1), t))
        if (push(std::move(p))) return pts;
    }
    // plane at infinity: x0 = 0, x1 = 1
    for (auto& p : qc.slice_points(sample, sample.make(0), sample.make(1)))
      if (push(std::move(p))) return pts;
    // line x0 = x1 = 0: substitute x2 = 1 and solve for x3, then the point e3
    MultiPoly<L> l1 = lift_poly(qc.quadric1(), sample);
    MultiPoly<L> l2 = lift_poly(qc.quadric2(), sample);
    std::vector<L> oth{sample.make(0), sample.make(0), sample.make(1), sample.make(0)};
    UPoly<L> u1 = l1.to_upoly(3, oth), u2 = l2.to_upoly(3, oth);
    UPoly<L> g = u1.is_zero() ? u2 : (u2.is_zero() ? u1 : poly_gcd(u1, u2));
    if (!g.is_zero() && g.degree() >= 1)
      for (auto& z : roots_in_field(g, sample)) {
        ProjPoint<L> p{sample.make(0), sample.make(0), sample.make(1), z};
        if (l1.evaluate(p).is_zero() && l2.evaluate(p).is_zero())
          if (push(normalize_point(std::move(p)))) return pts;
      }
    ProjPoint<L> e3{sample.make(0), sample.make(0), sample.make(0), sample.make(1)};
    if (l1.evaluate(e3).is_zero() && l2.evaluate(e3).is_zero())
      if (push(normalize_point(std::move(e3)))) return pts;
    throw extension_exhausted_error("the curve has too few points over " + field_label(sample), 0);
  }
}

// Climb extension degrees until one field carries `count` distinct points;
// all returned points live over that single field.
template <FieldType K>
std::vector<ProjPoint<Ext<K>>> sample_points(const CurveModel<K>& curve, std::size_t count,
                                             unsigned max_extension) {
  static_assert(K::finite_kind, "point enumeration needs a finite base field");
  K one = curve_ideal(curve).polys().at(0).unit().make(1);
  for (unsigned r = 1; r <= max_extension; ++r) {
    auto ctx = make_extension(one, r);
    try {
      return sample_curve_points(curve, count, Ext<K>::generator(ctx).make(1));
    } catch (const extension_exhausted_error&) {
      // this level ran out of points; climb
    }
  }
  throw extension_exhausted_error("not enough curve points within the extension bound",
                                  max_extension);
}

// Whether a point over any extension of the base field lies on the curve.
template <FieldType K, FieldType L>
bool point_on_curve(const CurveModel<K>& curve, const ProjPoint<L>& p) {
  if (p.size() != 4) throw ambient_mismatch_error("curve points have four coordinates");
  bool nonzero = false;
  for (auto& c : p) nonzero = nonzero || !c.is_zero();
  if (!nonzero) throw construction_error("the zero vector is not a projective point");
  for (auto& g : curve_ideal(curve).polys())
    if (!g.evaluate(p).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------

template <FieldType K>
struct IdealPieceResult {
  SubspaceBasis<K> piece;
  unsigned extension_used = 1;  // 1 = base field
};

namespace detail {

// Kernel of the evaluation map at the given points, as a subspace of the
// degree-k coefficient space over the evaluation field.
template <FieldType L>
SubspaceBasis<L> evaluation_kernel(const std::vector<ProjPoint<L>>& pts, unsigned nvars,
                                   unsigned k) {
  auto mons = monomial_basis(nvars, k);
  Matrix<L> m(mons.size(), pts.size());
  for (std::size_t a = 0; a < mons.size(); ++a)
    for (std::size_t b = 0; b < pts.size(); ++b) {
      L v = pts[b][0].make(1);
      for (unsigned i = 0; i < nvars; ++i)
        for (unsigned rep = 0; rep < mons[a][i]; ++rep) v = v * pts[b][i];
      m.at(a, b) = v;
    }
  Matrix<L> ker = kernel_basis(m.transpose());
  Ambient amb = forms_ambient(nvars, k);
  amb.tag += "@" + field_label(pts[0][0]);
  return SubspaceBasis<L>(amb, std::move(ker));
}

template <FieldType K>
SubspaceBasis<K> descend_subspace(const SubspaceBasis<Ext<K>>& s, Ambient target) {
  Matrix<K> rows(s.dim(), target.dim);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    auto r = s.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) rows.at(i, j) = r[j].descend();
  }
  return SubspaceBasis<K>(std::move(target), std::move(rows));
}

}  // namespace detail

// Degree-k graded piece of the curve ideal. Route one: kernel of evaluation
// at degree*k + 6 sampled points (escalating through field extensions up to
// the cap when the base field is too small). Route two: the span of monomial
// multiples of the Groebner basis. The two must agree.
template <FieldType K>
IdealPieceResult<K> graded_ideal_piece(const CurveModel<K>& curve, unsigned k,
                                       unsigned extension_cap = 6) {
  const GroebnerBasis<K>& gb = curve_ideal(curve);
  SubspaceBasis<K> via_gb = gb.ideal_piece(k);
  std::size_t needed = static_cast<std::size_t>(curve_degree(curve)) * k + 6;

  K base_sample = gb.polys().empty() ? K(1) : gb.polys()[0].unit();
  bool evaluable = is_finite_field(base_sample) || std::holds_alternative<ParametricCurve<K>>(curve);
  if (!evaluable) {
    // No effective point search over an infinite base for quadric models; the
    // multiples route stands alone.
    return {via_gb, 1};
  }

  for (unsigned m = 1; m <= extension_cap; ++m) {
    SubspaceBasis<K> via_eval;
    try {
      if (m == 1) {
        auto pts = sample_curve_points(curve, needed, base_sample);
        Ambient amb = forms_ambient(4, k);
        auto kerL = detail::evaluation_kernel(pts, 4, k);
        via_eval = SubspaceBasis<K>(amb, kerL.rows());
      } else {
        if constexpr (K::finite_kind) {
          auto ctx = make_extension(base_sample, m);
          Ext<K> es(ctx, base_sample.make(0));
          auto pts = sample_curve_points(curve, needed, es);
          auto kerL = detail::evaluation_kernel(pts, 4, k);
          via_eval = detail::descend_subspace<K>(kerL, forms_ambient(4, k));
        } else {
          break;  // infinite base field never needs an extension
        }
      }
    } catch (const extension_exhausted_error&) {
      continue;  // not enough points at this level; escalate
    }
    if (!(via_eval == via_gb))
      throw sampling_defect_error("ideal piece routes disagree in degree " + std::to_string(k) +
                                  " (evaluation " + std::to_string(via_eval.dim()) +
                                  ", multiples " + std::to_string(via_gb.dim()) + ")");
    return {via_gb, m};
  }
  throw extension_exhausted_error("no extension within the cap has enough curve points",
                                  extension_cap);
}

// ---------------------------------------------------------------------------
// Stock curves.

template <FieldType K>
ParametricCurve<K> twisted_cubic_curve(const K& one) {
  MultiPoly<K> s = MultiPoly<K>::variable(0, 2, one), u = MultiPoly<K>::variable(1, 2, one);
  return ParametricCurve<K>({s * s * s, s * s * u, s * u * u, u * u * u});
}

template <FieldType K>
ParametricCurve<K> rational_quartic_curve(const K& one) {
  MultiPoly<K> s = MultiPoly<K>::variable(0, 2, one), u = MultiPoly<K>::variable(1, 2, one);
  return ParametricCurve<K>({s * s * s * s, s * s * s * u, s * u * u * u, u * u * u * u});
}

// Quadrics carrying a plane cubic in Weierstrass form: on the image of
// x -> (1 : x : y : x^2) they cut out y^2 = x^3 + a x + b.
template <FieldType K>
QuadricCurve<K> weierstrass_quartic_curve(const K& a, const K& b) {
  K one = a.make(1);
  K disc = a * a * a * one.make(4) + b * b * one.make(27);
  if (disc.is_zero()) throw construction_error("singular cubic model: 4a^3 + 27b^2 = 0");
  using MP = MultiPoly<K>;
  MP x0 = MP::variable(0, 4, one), x1 = MP::variable(1, 4, one), x2 = MP::variable(2, 4, one),
     x3 = MP::variable(3, 4, one);
  MP q1 = x1 * x1 - x0 * x3;
  MP q2 = x2 * x2 - x1 * x3 - x0 * x1 * a - x0 * x0 * b;
  return QuadricCurve<K>(std::move(q1), std::move(q2));
}

// Diagonal genus-one model: sum x_i^2 and sum a_i x_i^2 with distinct a_i.
template <FieldType K>
QuadricCurve<K> diagonal_quartic_curve(const std::array<K, 4>& a) {
  K one = a[0].make(1);
  using MP = MultiPoly<K>;
  MP q1(4), q2(4);
  for (unsigned i = 0; i < 4; ++i) {
    MP xi2 = MP::variable(i, 4, one) * MP::variable(i, 4, one);
    q1 += xi2;
    q2 += xi2 * a[i];
  }
  return QuadricCurve<K>(std::move(q1), std::move(q2));
}

}  // namespace conelab

// Ideal and point machinery for the stock curves: Groebner bases, graded
// ideal pieces by two routes, quotient (standard monomial) dimensions, and
// point sampling over base fields and extensions.

#include <catch2/catch_amalgamated.hpp>

#include "conelab/curves.hpp"

using namespace conelab;

TEST_CASE("groebner basics on a known ideal", "[groebner]") {
  Fp s(101, 0);
  using MP = MultiPoly<Fp>;
  Fp one = s.make(1);
  MP x = MP::variable(0, 4, one), y = MP::variable(1, 4, one), z = MP::variable(2, 4, one),
     w = MP::variable(3, 4, one);
  // the three 2x2 minors of [x y z; y z w]
  std::vector<MP> gens{x * z - y * y, x * w - y * z, y * w - z * z};
  GroebnerBasis<Fp> gb(4, gens);
  REQUIRE(gb.polys().size() == 3);
  for (auto& g : gens) REQUIRE(gb.in_ideal(g));
  REQUIRE(gb.in_ideal(gens[0] * x + gens[2] * w));
  REQUIRE(!gb.in_ideal(x * z));
  // normal form is linear and idempotent
  MP f = x * x * z + y * y * w;
  MP nf = gb.normal_form(f);
  REQUIRE(gb.normal_form(nf) == nf);
  REQUIRE(gb.in_ideal(f - nf));
  // fingerprint ignores generator order and scale
  GroebnerBasis<Fp> gb2(4, {gens[2] * s.make(7), gens[0], gens[1] * s.make(-1)});
  REQUIRE(gb.fingerprint() == gb2.fingerprint());
}

TEST_CASE("standard monomials complement the ideal piece", "[groebner]") {
  Fp s(101, 0);
  auto curve = twisted_cubic_curve(s.make(1));
  const auto& gb = curve.ideal();
  for (unsigned k = 2; k <= 5; ++k) {
    auto piece = gb.ideal_piece(k);
    auto smons = gb.standard_monomials(k);
    REQUIRE(piece.dim() + smons.size() == monomial_basis(4, k).size());
  }
}

TEST_CASE("twisted cubic ideal dimensions", "[curves]") {
  Fp s(101, 0);
  auto curve = twisted_cubic_curve(s.make(1));
  REQUIRE(curve.degree() == 3);
  REQUIRE(curve.genus() == 0);
  const auto& gb = curve.ideal();
  REQUIRE(gb.ideal_piece(2).dim() == 3);
  REQUIRE(gb.ideal_piece(3).dim() == 10);           // 20 - h^0(O(9) on P^1)
  REQUIRE(gb.standard_monomials(3).size() == 10);   // = h^0 = 9 + 1
}

TEST_CASE("rational quartic ideal dimensions", "[curves]") {
  Fp s(101, 0);
  auto curve = rational_quartic_curve(s.make(1));
  REQUIRE(curve.degree() == 4);
  const auto& gb = curve.ideal();
  REQUIRE(gb.ideal_piece(2).dim() == 1);
  REQUIRE(gb.ideal_piece(3).dim() == 7);
  REQUIRE(gb.ideal_piece(4).dim() == 18);  // 35 - (16 + 1)
  // the one quadric is x0 x3 - x1 x2
  using MP = MultiPoly<Fp>;
  Fp one = s.make(1);
  MP q = MP::variable(0, 4, one) * MP::variable(3, 4, one) -
         MP::variable(1, 4, one) * MP::variable(2, 4, one);
  REQUIRE(gb.in_ideal(q));
}

TEST_CASE("genus-one quartic ideal dimensions", "[curves]") {
  Fp s(101, 0);
  auto curve = weierstrass_quartic_curve(s.make(3), s.make(7));
  REQUIRE(curve.degree() == 4);
  REQUIRE(curve.genus() == 1);
  const auto& gb = curve.ideal();
  REQUIRE(gb.ideal_piece(2).dim() == 2);
  REQUIRE(gb.ideal_piece(3).dim() == 8);
  REQUIRE(gb.ideal_piece(4).dim() == 19);
  REQUIRE(gb.standard_monomials(4).size() == 16);
}

TEST_CASE("parametric points satisfy the ideal", "[curves]") {
  Fp s(101, 0);
  auto curve = twisted_cubic_curve(s.make(1));
  SeededRng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Fp t = random_element(s, rng);
    auto p = curve.point_at(s.make(1), t);
    for (auto& g : curve.ideal().polys()) REQUIRE(g.evaluate(p).is_zero());
  }
  auto inf = curve.point_at(s.make(0), s.make(1));
  for (auto& g : curve.ideal().polys()) REQUIRE(g.evaluate(inf).is_zero());
}

TEST_CASE("curve sampling returns distinct verified points", "[curves]") {
  Fp s(101, 0);
  CurveModel<Fp> cubic = twisted_cubic_curve(s.make(1));
  auto pts = sample_curve_points(cubic, 30, s);
  REQUIRE(pts.size() == 30);
  std::set<std::string> seen;
  for (auto& p : pts) {
    seen.insert(point_str(p));
    for (auto& g : curve_ideal(cubic).polys()) REQUIRE(g.evaluate(p).is_zero());
  }
  REQUIRE(seen.size() == 30);

  CurveModel<Fp> ell = weierstrass_quartic_curve(s.make(3), s.make(7));
  auto epts = sample_curve_points(ell, 40, s);
  REQUIRE(epts.size() == 40);
  for (auto& p : epts) {
    REQUIRE(std::get<QuadricCurve<Fp>>(ell).quadric1().evaluate(p).is_zero());
    REQUIRE(std::get<QuadricCurve<Fp>>(ell).quadric2().evaluate(p).is_zero());
  }
}

TEST_CASE("sampling escalates to an extension on a tiny base field", "[curves]") {
  Fp s(5, 0);
  CurveModel<Fp> cubic = twisted_cubic_curve(s.make(1));
  // P^1(F_5) has six points only
  REQUIRE_THROWS_AS(sample_curve_points(cubic, 30, s), extension_exhausted_error);
  auto ctx = make_extension(s, 2);
  Ext<Fp> es(ctx, s.make(0));
  auto pts = sample_curve_points(cubic, 26, es);  // P^1(F_25) has 26
  REQUIRE(pts.size() == 26);
}

TEST_CASE("graded ideal pieces agree across both routes", "[curves]") {
  Fp s(101, 0);
  CurveModel<Fp> cubic = twisted_cubic_curve(s.make(1));
  for (unsigned k = 2; k <= 4; ++k) {
    auto res = graded_ideal_piece(cubic, k);
    REQUIRE(res.extension_used == 1);
    REQUIRE(res.piece.dim() == curve_ideal(cubic).ideal_piece(k).dim());
  }
  CurveModel<Fp> ell = weierstrass_quartic_curve(s.make(3), s.make(7));
  auto res4 = graded_ideal_piece(ell, 4);
  REQUIRE(res4.piece.dim() == 19);

  CurveModel<Fp> rq = rational_quartic_curve(s.make(1));
  REQUIRE(graded_ideal_piece(rq, 3).piece.dim() == 7);
}

TEST_CASE("graded ideal pieces escalate the field when the base is small", "[curves]") {
  Fp s(5, 0);
  CurveModel<Fp> cubic = twisted_cubic_curve(s.make(1));
  auto res = graded_ideal_piece(cubic, 3, 4);
  REQUIRE(res.piece.dim() == 10);
  REQUIRE(res.extension_used > 1);
  // refusing the extension fails honestly
  REQUIRE_THROWS_AS(graded_ideal_piece(cubic, 3, 1), extension_exhausted_error);
}

TEST_CASE("curves over the rationals work through the parametric route", "[curves]") {
  Rational one(1);
  CurveModel<Rational> cubic = twisted_cubic_curve(one);
  auto res = graded_ideal_piece(cubic, 2);
  REQUIRE(res.piece.dim() == 3);
  REQUIRE(res.extension_used == 1);
  // quadric models over Q fall back to the multiples route
  CurveModel<Rational> ell = weierstrass_quartic_curve(Rational(-1), Rational(1));
  auto res2 = graded_ideal_piece(ell, 3);
  REQUIRE(res2.piece.dim() == 8);
}

TEST_CASE("diagonal model is a genus-one curve with the right ideal sizes", "[curves]") {
  Fp s(101, 0);
  std::array<Fp, 4> a{s.make(1), s.make(2), s.make(3), s.make(4)};
  CurveModel<Fp> c = diagonal_quartic_curve(a);
  REQUIRE(curve_ideal(c).ideal_piece(2).dim() == 2);
  REQUIRE(graded_ideal_piece(c, 4).piece.dim() == 19);
  auto pts = sample_curve_points(c, 20, s);
  REQUIRE(pts.size() == 20);
}

TEST_CASE("degenerate model specs are rejected at construction", "[curves]") {
  Fp one(101, 1);
  using MP = MultiPoly<Fp>;
  MP s = MP::variable(0, 2, one), u = MP::variable(1, 2, one);

  SECTION("components sharing a parameter root") {
    // all four vanish at (0 : 1)
    REQUIRE_THROWS_AS(ParametricCurve<Fp>({s * s * s, s * s * u, s * u * u, s * s * s}),
                      construction_error);
    // all four vanish at (1 : 0)
    REQUIRE_THROWS_AS(ParametricCurve<Fp>({s * s * u, s * u * u, u * u * u, s * s * u}),
                      construction_error);
  }
  SECTION("planar image") {
    REQUIRE_THROWS_AS(ParametricCurve<Fp>({s * s * s, s * s * u, s * u * u, s * s * u}),
                      construction_error);
  }
  SECTION("quadric pencil with a repeated singular member") {
    MP x = MP::variable(0, 4, one), y = MP::variable(1, 4, one), z = MP::variable(2, 4, one),
       w = MP::variable(3, 4, one);
    // cubic-plus-secant-line configuration: singular base locus
    REQUIRE_THROWS_AS(QuadricCurve<Fp>(y * y - x * z, z * z - y * w), construction_error);
    // the same spec is accepted unchecked for diagnostics
    QuadricCurve<Fp> lax(y * y - x * z, z * z - y * w, ModelCheck::unchecked);
    REQUIRE(lax.degree() == 4);
  }
  SECTION("singular cubic coefficients") {
    // 4a^3 + 27b^2 = 0 at (a, b) = (-3, 2)
    REQUIRE_THROWS_AS(weierstrass_quartic_curve(one.make(-3), one.make(2)), construction_error);
  }
  SECTION("repeated diagonal coefficient") {
    std::array<Fp, 4> a{one.make(1), one.make(2), one.make(2), one.make(4)};
    REQUIRE_THROWS_AS(diagonal_quartic_curve(a), construction_error);
  }
}

TEST_CASE("bounded sampling climbs to the smallest sufficient field", "[curves]") {
  Fp one(5, 1);
  CurveModel<Fp> cubic = twisted_cubic_curve(one);
  // P^1(F_5) has 6 points, so 6 fit at level one
  auto base = sample_points(cubic, 6, 3);
  REQUIRE(base.size() == 6);
  REQUIRE(base[0][0].residue_degree() == 1);
  // 10 need the quadratic extension (P^1(F_25) has 26 points)
  auto lifted = sample_points(cubic, 10, 3);
  REQUIRE(lifted.size() == 10);
  unsigned top = 1;
  for (auto& p : lifted)
    for (auto& c : p) top = std::max(top, c.residue_degree());
  REQUIRE(top == 2);
  const GroebnerBasis<Fp>& gb = curve_ideal(cubic);
  for (auto& p : lifted)
    for (auto& g : gb.polys()) REQUIRE(lift_poly(g, p[0].make(1)).evaluate(p).is_zero());
  // no field within the bound carries this many points
  REQUIRE_THROWS_AS(sample_points(cubic, 200, 2), extension_exhausted_error);
}

// Cones with a chosen vertex over the stock curves: point annihilators,
// vertex classification by rank arithmetic, the distinguished cone equation,
// line-curve incidence probes, adapted frames, and flat limits of the cone
// as its vertex slides onto the curve.

#include <catch2/catch_amalgamated.hpp>

#include "conelab/cones.hpp"

using namespace conelab;

namespace {

std::vector<Fp> fpvec(const Fp& one, std::initializer_list<std::int64_t> cs) {
  std::vector<Fp> out;
  for (auto c : cs) out.push_back(one.make(c));
  return out;
}

// Restriction of a form to the line spanned by two points, as a polynomial
// in the affine parameter along the line.
template <FieldType L>
UPoly<L> line_restriction(const MultiPoly<L>& f, const ProjPoint<L>& base,
                          const std::vector<L>& dir) {
  L one = base[0].make(1);
  std::vector<MultiPoly<L>> subs;
  for (unsigned i = 0; i < 4; ++i)
    subs.push_back(MultiPoly<L>::constant(1, base[i]) +
                   MultiPoly<L>::variable(0, 1, one) * dir[i]);
  return f.compose(subs).to_upoly(0, {one});
}

// The degree-k cone space at a vertex, assembled from public pieces.
template <FieldType K>
SubspaceBasis<Fp> cone_space_at(const CurveModel<K>& cm, const ProjPoint<Fp>& p, unsigned k) {
  return intersect(symmetric_power(wspace(p), k), curve_ideal(cm).ideal_piece(k));
}

}  // namespace

TEST_CASE("point annihilators at the frozen vertices", "[cones]") {
  Fp one(101, 1);
  Fp zero = one.make(0);

  SubspaceBasis<Fp> w0 = wspace(ProjPoint<Fp>{zero, zero, zero, one});
  SubspaceBasis<Fp> expect0(forms_ambient(4, 1),
                            std::vector<std::vector<Fp>>{fpvec(one, {1, 0, 0, 0}),
                                                         fpvec(one, {0, 1, 0, 0}),
                                                         fpvec(one, {0, 0, 1, 0})});
  CHECK(w0 == expect0);

  SubspaceBasis<Fp> w1 = wspace(ProjPoint<Fp>{one, zero, zero, zero});
  SubspaceBasis<Fp> expect1(forms_ambient(4, 1),
                            std::vector<std::vector<Fp>>{fpvec(one, {0, 1, 0, 0}),
                                                         fpvec(one, {0, 0, 1, 0}),
                                                         fpvec(one, {0, 0, 0, 1})});
  CHECK(w1 == expect1);

  Fp o7(7, 1);
  ProjPoint<Fp> diag{o7, o7, o7, o7};
  SubspaceBasis<Fp> w7 = wspace(diag);
  REQUIRE(w7.dim() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    Fp acc = o7.make(0);
    auto r = w7.row(i);
    for (unsigned j = 0; j < 4; ++j) acc = acc + r[j] * diag[j];
    CHECK(acc.is_zero());
  }

  CHECK_THROWS_AS(wspace(ProjPoint<Fp>{zero, zero, zero, zero}), construction_error);
}

TEST_CASE("vertex classification separates the three strata", "[cones]") {
  Fp one(101, 1);
  Fp zero = one.make(0);
  CurveModel<Fp> cubic = twisted_cubic_curve(one);
  CurveModel<Fp> ell = weierstrass_quartic_curve(one.make(2), one.make(4));
  CurveModel<Fp> diag =
      diagonal_quartic_curve(std::array<Fp, 4>{one, one.make(2), one.make(3), one.make(5)});

  SECTION("coordinate points of the diagonal model are multiple-cone vertices") {
    for (unsigned i = 0; i < 4; ++i) {
      ProjPoint<Fp> e(4, zero);
      e[i] = one;
      VertexClass cls = classify_vertex(diag, e);
      CHECK(cls.type == VertexType::multiple_cone);
      CHECK_FALSE(cls.on_curve);
      CHECK(cls.witness == 6);
      CHECK(cls.cone_degree == 2);
      CHECK(cls.projection_degree == 2);
    }
  }

  SECTION("points off the curve and off the special set carry a unique cone") {
    VertexClass cd = classify_vertex(diag, ProjPoint<Fp>{one, one.make(2), one.make(3), one.make(4)});
    CHECK(cd.type == VertexType::unique_cone);
    CHECK(cd.witness == 1);
    CHECK(cd.cone_degree == 4);
    CHECK(cd.projection_degree == 1);

    VertexClass ce = classify_vertex(ell, ProjPoint<Fp>{one, one, one, one});
    CHECK(ce.type == VertexType::unique_cone);
    CHECK(ce.witness == 1);
    CHECK(ce.cone_degree == 4);

    VertexClass cc = classify_vertex(cubic, ProjPoint<Fp>{one, one, one, one.make(2)});
    CHECK(cc.type == VertexType::unique_cone);
    CHECK(cc.witness == 1);
    CHECK(cc.cone_degree == 3);
  }

  SECTION("curve points are birational vertices with the dropped degree") {
    VertexClass cc = classify_vertex(cubic, ProjPoint<Fp>{one, one, one, one});
    CHECK(cc.type == VertexType::curve_vertex);
    CHECK(cc.on_curve);
    CHECK(cc.witness == 3);
    CHECK(cc.cone_degree == 2);
    CHECK(cc.projection_degree == 1);

    VertexClass co = classify_vertex(ell, ProjPoint<Fp>{zero, zero, zero, one});
    CHECK(co.type == VertexType::curve_vertex);
    CHECK(co.witness == 3);
    CHECK(co.cone_degree == 3);

    for (auto& p : sample_curve_points(ell, 6, one)) {
      VertexClass cls = classify_vertex(ell, p);
      CHECK(cls.type == VertexType::curve_vertex);
      CHECK(cls.witness == 3);
    }
  }
}

TEST_CASE("the unique cone at frozen vertices", "[cones]") {
  Fp one(101, 1);
  Fp zero = one.make(0);
  CurveModel<Fp> cubic = twisted_cubic_curve(one);
  CurveModel<Fp> ell = weierstrass_quartic_curve(one.make(2), one.make(4));
  using MP = MultiPoly<Fp>;
  MP x0 = MP::variable(0, 4, one), x1 = MP::variable(1, 4, one), x2 = MP::variable(2, 4, one),
     x3 = MP::variable(3, 4, one);

  SECTION("cubic vertex (1:0:0:-1)") {
    ProjPoint<Fp> p{one, zero, zero, -one};
    SubspaceBasis<Fp> w = wspace(p);
    SubspaceBasis<Fp> expect(forms_ambient(4, 1),
                             std::vector<std::vector<Fp>>{fpvec(one, {1, 0, 0, 1}),
                                                          fpvec(one, {0, 1, 0, 0}),
                                                          fpvec(one, {0, 0, 1, 0})});
    CHECK(w == expect);

    MP f = cone_equation(cubic, p);
    REQUIRE(f.homogeneous_degree() == 3);
    CHECK(curve_ideal(cubic).ideal_piece(3).contains(f.coefficient_vector(3)));
    CHECK(symmetric_power(w, 3).contains(f.coefficient_vector(3)));
    MP expect_cone = x1 * x1 * x1 + x2 * x2 * x2 - x1 * x2 * (x0 + x3);
    CHECK(f.normalized() == expect_cone.normalized());

    // a cone is a union of lines through its vertex
    for (auto& c : sample_curve_points(cubic, 8, one)) {
      CHECK(f.evaluate(c).is_zero());
      CHECK(line_restriction(f, p, c).is_zero());
    }
  }

  SECTION("on-curve vertex of the elliptic quartic") {
    ProjPoint<Fp> o{zero, zero, zero, one};
    MP f = cone_equation(ell, o);
    REQUIRE(f.homogeneous_degree() == 3);
    MP expect_cone = x0 * x2 * x2 - x1 * x1 * x1 - x0 * x0 * x1 * one.make(2) -
                     x0 * x0 * x0 * one.make(4);
    CHECK(f.normalized() == expect_cone.normalized());

    // the degree-4 cone space at an on-curve vertex is f * W(p)
    SubspaceBasis<Fp> w = wspace(o);
    Matrix<Fp> rows(0, forms_ambient(4, 4).dim);
    for (std::size_t i = 0; i < 3; ++i)
      rows.append_row((f * MP::linear_form(w.row(i))).coefficient_vector(4));
    CHECK(SubspaceBasis<Fp>(forms_ambient(4, 4), std::move(rows)) == cone_space_at(ell, o, 4));
  }

  SECTION("multiple-cone vertices refuse a single equation but expose the space") {
    CurveModel<Fp> diag =
        diagonal_quartic_curve(std::array<Fp, 4>{one, one.make(2), one.make(3), one.make(5)});
    ProjPoint<Fp> e0{one, zero, zero, zero};
    bool threw = false;
    try {
      cone_equation(diag, e0);
    } catch (const ambiguous_cone_data<Fp>& amb) {
      threw = true;
      CHECK(amb.dim_found == 6);
      REQUIRE(amb.space.dim() == 6);
      for (std::size_t i = 0; i < 6; ++i)
        CHECK(curve_ideal(diag).ideal_piece(4).contains(amb.space.row(i)));
    }
    CHECK(threw);
  }
}

TEST_CASE("line incidence probes detect secants and tangents", "[cones]") {
  Fp one(101, 1);
  Fp zero = one.make(0);
  CurveModel<Fp> cubic = twisted_cubic_curve(one);
  CurveModel<Fp> ell = weierstrass_quartic_curve(one.make(2), one.make(4));

  SECTION("secant through two curve points") {
    auto pts = sample_curve_points(cubic, 4, one);
    LineIncidence inc = line_curve_incidence(cubic, pts[0], pts[2]);
    CHECK(inc.contact_at_base >= 1);
    CHECK(inc.meets_curve_again);
  }

  SECTION("tangent lines meet with contact two and no residual point") {
    LineIncidence ic = line_curve_incidence(cubic, ProjPoint<Fp>{zero, zero, zero, one},
                                            fpvec(one, {0, 0, 1, 0}));
    CHECK(ic.contact_at_base == 2);
    CHECK_FALSE(ic.meets_curve_again);

    LineIncidence ie = line_curve_incidence(ell, ProjPoint<Fp>{zero, zero, zero, one},
                                            fpvec(one, {0, 0, 1, 0}));
    CHECK(ie.contact_at_base == 2);
    CHECK_FALSE(ie.meets_curve_again);
  }

  SECTION("a generic line through an off-curve point misses the curve") {
    LineIncidence inc = line_curve_incidence(cubic, ProjPoint<Fp>{one, one, one, one.make(2)},
                                             fpvec(one, {0, 1, 0, 0}));
    CHECK(inc.contact_at_base == 0);
    CHECK_FALSE(inc.meets_curve_again);
  }

  SECTION("degenerate spans are rejected") {
    CHECK_THROWS_AS(line_curve_incidence(cubic, ProjPoint<Fp>{one, one, one, one},
                                         fpvec(one, {2, 2, 2, 2})),
                    construction_error);
  }
}

TEST_CASE("adapted frames normalize the limit data", "[cones]") {
  Fp one(101, 1);
  Fp zero = one.make(0);
  CurveModel<Fp> ell = weierstrass_quartic_curve(one.make(2), one.make(4));
  ProjPoint<Fp> o{zero, zero, zero, one};
  LimitDirection<Fp> dir{o, fpvec(one, {1, 0, 0, 0}), false};
  AdaptedFrame<Fp> fr = adapt_frame(ell, dir);

  SECTION("the change of coordinates is invertible and sends the data to normal position") {
    Matrix<Fp> prod = fr.to_frame * fr.from_frame;
    CHECK(prod == Matrix<Fp>::identity(4, one));

    auto img = [&](const std::vector<Fp>& v) {
      std::vector<Fp> out(4, zero);
      for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j) out[i] = out[i] + fr.to_frame.at(i, j) * v[j];
      return out;
    };
    std::vector<Fp> ip = img(o);
    CHECK((ip[0].is_zero() && ip[1].is_zero() && ip[2].is_zero()));
    CHECK(ip[3] == one);
    // the tangent line {x0=x1=0} lands on {x=y=0}
    std::vector<Fp> it = img(fpvec(one, {0, 0, 1, 0}));
    CHECK((it[0].is_zero() && it[1].is_zero()));
    // the chosen line lands on {y=z=0}
    std::vector<Fp> il = img(fpvec(one, {1, 0, 0, 0}));
    CHECK((il[1].is_zero() && il[2].is_zero()));
  }

  SECTION("the moving vertex has the expected form space") {
    std::vector<Fp> x = fr.to_frame.row(0), y = fr.to_frame.row(1), z = fr.to_frame.row(2),
                    w = fr.to_frame.row(3);
    for (std::int64_t t : {1, 2, 3}) {
      std::vector<Fp> frame_pt{-one.make(t), zero, zero, one};
      ProjPoint<Fp> pt(4, zero);
      for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j) pt[i] = pt[i] + fr.from_frame.at(i, j) * frame_pt[j];
      std::vector<Fp> xw(4, zero);
      for (unsigned j = 0; j < 4; ++j) xw[j] = x[j] + one.make(t) * w[j];
      SubspaceBasis<Fp> expect(forms_ambient(4, 1),
                               std::vector<std::vector<Fp>>{xw, y, z});
      CHECK(expect == wspace(pt));
    }
  }

  SECTION("invalid frame requests are refused") {
    CHECK_THROWS_AS(adapt_frame(ell, LimitDirection<Fp>{o, {}, true}), invalid_direction_error);
    CHECK_THROWS_AS(adapt_frame(ell, LimitDirection<Fp>{ProjPoint<Fp>{one, one, one, one},
                                                        fpvec(one, {1, 0, 0, 0}), false}),
                    invalid_direction_error);
    // a direction spanning the tangent line is not transverse
    CHECK_THROWS_AS(adapt_frame(ell, LimitDirection<Fp>{o, fpvec(one, {0, 0, 1, 0}), false}),
                    invalid_direction_error);
  }
}

TEST_CASE("limit cones factor through the base cone", "[cones]") {
  Fp one(101, 1);
  Fp zero = one.make(0);
  CurveModel<Fp> cubic = twisted_cubic_curve(one);
  CurveModel<Fp> ell = weierstrass_quartic_curve(one.make(2), one.make(4));
  using MP = MultiPoly<Fp>;
  MP x0 = MP::variable(0, 4, one), x1 = MP::variable(1, 4, one), x2 = MP::variable(2, 4, one);

  SECTION("frozen cubic limits") {
    ProjPoint<Fp> p{zero, zero, zero, one};
    MP conic = x0 * x2 - x1 * x1;
    MP lim = limit_cone(cubic, LimitDirection<Fp>{p, fpvec(one, {1, 0, 0, 0}), false});
    CHECK(lim.normalized() == (conic * x1).normalized());
    MP tlim = limit_cone(cubic, LimitDirection<Fp>{p, {}, true});
    CHECK(tlim.normalized() == (conic * x0).normalized());
  }

  SECTION("frozen elliptic tangent limit at the hyperosculating point") {
    ProjPoint<Fp> o{zero, zero, zero, one};
    MP f = cone_equation(ell, o);
    MP lim = limit_cone(ell, LimitDirection<Fp>{o, {}, true});
    CHECK(lim.normalized() == (f * x0).normalized());
  }

  SECTION("generic elliptic limits split off the spanned plane") {
    SeededRng rng(2026);
    auto pts = sample_curve_points(ell, 5, one);
    unsigned checked = 0;
    for (auto& p : pts) {
      std::vector<Fp> u;
      for (unsigned i = 0; i < 4; ++i)
        u.push_back(one.make(static_cast<std::int64_t>(rng.below(101))));
      LimitDirection<Fp> dir{p, u, false};
      MP lim;
      try {
        lim = limit_cone(ell, dir);
      } catch (const invalid_direction_error&) {
        continue;  // the random direction was degenerate for this base point
      }
      MP f = cone_equation(ell, p);
      MP h(4);
      REQUIRE(lim.try_divide(f, h));
      REQUIRE(h.homogeneous_degree() == 1);
      // the linear factor is the plane spanned by the line and the tangent
      AdaptedFrame<Fp> fr = adapt_frame(ell, dir);
      CHECK(h.normalized() == MP::linear_form(fr.spanned_plane()).normalized());
      // and the limit is still a cone with vertex p containing the curve
      CHECK(curve_ideal(ell).ideal_piece(4).contains(lim.coefficient_vector(4)));
      CHECK(line_restriction(lim, p, u).is_zero());
      ++checked;
    }
    CHECK(checked >= 4);
  }

  SECTION("generic elliptic tangent limits split off the osculating plane") {
    auto pts = sample_curve_points(ell, 3, one);
    for (auto& p : {pts[0], pts[2]}) {
      MP lim = limit_cone(ell, LimitDirection<Fp>{p, {}, true});
      MP f = cone_equation(ell, p);
      MP h(4);
      REQUIRE(lim.try_divide(f, h));
      REQUIRE(h.homogeneous_degree() == 1);
      auto osc = tangent_and_osculating(ell, p);
      CHECK(h.normalized() == MP::linear_form(osc.osculating_form).normalized());
    }
  }

  SECTION("invalid limit requests are refused") {
    CHECK_THROWS_AS(
        limit_cone(ell, LimitDirection<Fp>{ProjPoint<Fp>{one, one, one, one},
                                           fpvec(one, {1, 0, 0, 0}), false}),
        invalid_direction_error);
    CHECK_THROWS_AS(limit_cone(ell, LimitDirection<Fp>{ProjPoint<Fp>{zero, zero, zero, one},
                                                       fpvec(one, {0, 0, 1, 0}), false}),
                    invalid_direction_error);
  }
}

#include <catch2/catch_amalgamated.hpp>

#include "qclab/polygon.hpp"

using namespace qclab;
using Catch::Matchers::WithinAbs;

TEST_CASE("unit square has quarter-turn angle parameters") {
    Polygon p = make_polygon({cplx(0, 0), cplx(1, 0), cplx(1, 1), cplx(0, 1)});
    REQUIRE(p.size() == 4);
    for (double b : p.beta) CHECK_THAT(b, WithinAbs(0.5, 1e-14));
    for (double a : p.alpha_ext) CHECK_THAT(a, WithinAbs(1.5, 1e-14));
    CHECK(is_convex(p));
}

TEST_CASE("right isoceles triangle angle parameters") {
    Polygon p = make_polygon({cplx(0, 0), cplx(1, 0), cplx(0, 1)});
    CHECK_THAT(p.beta[0], WithinAbs(0.5, 1e-14));
    CHECK_THAT(p.beta[1], WithinAbs(0.25, 1e-14));
    CHECK_THAT(p.beta[2], WithinAbs(0.25, 1e-14));
}

TEST_CASE("collinear vertices are rejected") {
    CHECK_THROWS_AS(make_polygon({cplx(0, 0), cplx(1, 0), cplx(2, 0), cplx(3, 0)}),
                    degenerate_error);
    CHECK_THROWS_AS(make_polygon({cplx(0, 0), cplx(1, 0)}), degenerate_error);
    CHECK_THROWS_AS(make_polygon({cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 1)}),
                    degenerate_error);
}

TEST_CASE("self-intersecting polyline is rejected") {
    CHECK_THROWS_AS(make_polygon({cplx(0, 0), cplx(1, 1), cplx(1, 0), cplx(0, 1)}),
                    degenerate_error);
}

TEST_CASE("clockwise input is normalized to counterclockwise") {
    Polygon p = make_polygon({cplx(0, 1), cplx(1, 1), cplx(1, 0), cplx(0, 0)});
    double a = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        cplx u = p.vertices[i], v = p.vertices[(i + 1) % 4];
        a += u.real() * v.imag() - v.real() * u.imag();
    }
    CHECK(a > 0.0);
}

TEST_CASE("angle sums are exact") {
    Polygon p = make_polygon({cplx(0, 0), cplx(3, 0.1), cplx(2.5, 2), cplx(1, 2.6),
                              cplx(-0.5, 1.2)});
    double bs = 0.0;
    for (double b : p.beta) bs += b;
    CHECK_THAT(bs, WithinAbs(3.0, 1e-10));
    for (std::size_t j = 0; j < p.size(); ++j)
        CHECK(p.alpha_ext[j] + p.beta[j] == 2.0);
}

TEST_CASE("reflex corner makes the polygon nonconvex") {
    Polygon L = make_polygon({cplx(0, 0), cplx(2, 0), cplx(2, 1), cplx(1, 1), cplx(1, 2),
                              cplx(0, 2)});
    CHECK_FALSE(is_convex(L));
    CHECK(is_convex(make_polygon({cplx(0, 0), cplx(1, 0), cplx(0.2, 0.9)})));
}

TEST_CASE("affine deformation of the unit square") {
    Polygon sq = make_polygon({cplx(0, 0), cplx(1, 0), cplx(1, 1), cplx(0, 1)});
    SECTION("identity leaves vertices unchanged") {
        Polygon img = affine_apply(AffineDeformation(1.0, 0.0, 0.0), sq);
        for (std::size_t j = 0; j < 4; ++j)
            CHECK_THAT(std::abs(img.vertices[j] - sq.vertices[j]), WithinAbs(0.0, 1e-15));
    }
    SECTION("real stretch c2 = 1/2") {
        Polygon img = affine_apply(AffineDeformation(1.0, 0.5, 0.0), sq);
        std::vector<cplx> want = {cplx(0, 0), cplx(1.5, 0), cplx(1.5, 0.5),
                                  cplx(0, 0.5)};
        for (std::size_t j = 0; j < 4; ++j)
            CHECK_THAT(std::abs(img.vertices[j] - want[j]), WithinAbs(0.0, 1e-14));
        CHECK(is_convex(img));
    }
    SECTION("|c2| >= |c1| is inadmissible") {
        CHECK_THROWS_AS(AffineDeformation(1.0, 1.0, 0.0), domain_error);
    }
    SECTION("inverse round-trips the vertices") {
        AffineDeformation A(cplx(1.1, 0.2), cplx(0.3, -0.4), cplx(0.7, 0.1));
        Polygon img = affine_apply(A.inverse(), affine_apply(A, sq));
        for (std::size_t j = 0; j < 4; ++j)
            CHECK_THAT(std::abs(img.vertices[j] - sq.vertices[j]), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("Beltrami composition algebra") {
    SECTION("conformal outer factor") {
        BeltramiConst nu(cplx(0.3, 0.2));
        CHECK(beltrami_compose(nu, BeltramiConst(0.0)).value == nu.value);
    }
    SECTION("real example") {
        cplx tau = beltrami_compose(BeltramiConst(0.3), BeltramiConst(0.2)).value;
        CHECK_THAT(tau.real(), WithinAbs(0.5 / 1.06, 1e-15));
        CHECK_THAT(tau.imag(), WithinAbs(0.0, 1e-15));
    }
    SECTION("inverse deformation cancels") {
        cplx tau = beltrami_compose(BeltramiConst(0.45), BeltramiConst(-0.45)).value;
        CHECK_THAT(std::abs(tau), WithinAbs(0.0, 1e-15));
    }
    SECTION("associativity on real arguments") {
        double nu = 0.3, mu = 0.25, rho = -0.15;
        cplx left = beltrami_compose(
                        BeltramiConst(beltrami_compose(BeltramiConst(nu), BeltramiConst(mu))
                                          .value),
                        BeltramiConst(rho))
                        .value;
        cplx right = beltrami_compose(
                         BeltramiConst(nu),
                         BeltramiConst(beltrami_compose(BeltramiConst(mu), BeltramiConst(rho))
                                           .value))
                         .value;
        CHECK_THAT(std::abs(left - right), WithinAbs(0.0, 1e-14));
    }
    SECTION("modulus bound with equality for positive reals") {
        double nu = 0.5, mu = 0.3;
        cplx tau = beltrami_compose(BeltramiConst(nu), BeltramiConst(mu)).value;
        CHECK_THAT(std::abs(tau), WithinAbs((nu + mu) / (1 + nu * mu), 1e-15));
        cplx tauC =
            beltrami_compose(BeltramiConst(cplx(0.0, 0.5)), BeltramiConst(0.3)).value;
        CHECK(std::abs(tauC) <= (0.5 + 0.3) / (1 + 0.15) + 1e-15);
    }
}

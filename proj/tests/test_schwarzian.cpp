#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "qclab/schwarzian.hpp"

using namespace qclab;
using Catch::Matchers::WithinAbs;

namespace {

SchwarzianData square_data() {
    const double k = 3.0 - 2.0 * std::sqrt(2.0);
    return halfplane_schwarzian({-1.0 / k, -1.0, 1.0, 1.0 / k}, {0.5, 0.5, 0.5, 0.5});
}

}  // namespace

TEST_CASE("square Schwarzian constants") {
    SchwarzianData d = square_data();
    for (double c : d.C) CHECK(c == -0.625);
    for (const auto& row : d.Cpair)
        for (double c : row) CHECK(c == 0.25);
    // convexity sign pattern
    for (double c : d.C) CHECK(c < 0.0);
    for (const auto& row : d.Cpair)
        for (double c : row) CHECK(c > 0.0);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(halfplane_schwarzian({1.0, -1.0, 2.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3}),
                    domain_error);  // not increasing
    CHECK_THROWS_AS(halfplane_schwarzian({-1.0, 0.0, 1.0}, {0.5, 0.5, 0.5}),
                    domain_error);  // sum rule violated
    CHECK_THROWS_AS(halfplane_schwarzian({-1.0, 0.0, 1.0}, {1.2, 0.4, 0.4}),
                    domain_error);  // nonconvex parameter
    CHECK_NOTHROW(halfplane_schwarzian({-1.0, 0.0, 1.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3}));
}

TEST_CASE("closed-form values of S_t at z = i for the square") {
    SchwarzianData d = square_data();
    const cplx i(0.0, 1.0);
    // exact rational-surd values from the partial-fraction formula
    CHECK(std::abs(d.schwarzian(i) - cplx(1.0 / 6.0)) < 1e-12);
    CHECK(std::abs(s_fn_t(d, 1.0)(i) - d.schwarzian(i)) < 1e-14);
    CHECK(std::abs(s_fn_t(d, 0.5)(i) - cplx(7.0 / 18.0 - std::sqrt(2.0) / 6.0)) < 1e-12);
    CHECK(std::abs(s_fn_t(d, 0.0)(i) - cplx(11.0 / 18.0 - std::sqrt(2.0) / 3.0)) < 1e-12);
    // t = 1 coincidence at generic points
    for (cplx z : {cplx(1.0, 2.0), cplx(-3.0, 0.5)})
        CHECK(std::abs(s_fn_t(d, 1.0)(z) - d.schwarzian(z)) < 1e-12);
    CHECK_THROWS_AS(d.schwarzian(cplx(0.3, 0.0)), domain_error);
}

TEST_CASE("quartic decay along rays") {
    SchwarzianData d = square_data();
    cplx dir = std::polar(1.0, 1.1);
    double a3 = std::abs(d.schwarzian(1e3 * dir)) * 1e12;
    double a4 = std::abs(d.schwarzian(1e4 * dir)) * 1e16;
    CHECK_THAT(a4 / a3, WithinAbs(1.0, 0.1));
}

TEST_CASE("r0 quadratic roots") {
    SECTION("square") {
        R0Roots r = r0_root({0.5, 0.5, 0.5, 0.5});
        CHECK_THAT(r.inclusive, WithinAbs((-2.0 + 2.0 * std::sqrt(6.0)) / 5.0, 1e-14));
        CHECK(r.exclusive > 0.0);
    }
    SECTION("equilateral triangle") {
        R0Roots r = r0_root({1.0 / 3, 1.0 / 3, 1.0 / 3});
        CHECK_THAT(r.inclusive, WithinAbs(0.5687, 1e-4));
    }
    SECTION("regular n-gon limit approaches the golden ratio root") {
        std::vector<double> al(400, 1.0 - 2.0 / 400.0);
        R0Roots r = r0_root(al);
        CHECK_THAT(r.inclusive, WithinAbs((std::sqrt(5.0) - 1.0) / 2.0, 1e-2));
    }
    SECTION("nonconvex rejected") {
        CHECK_THROWS_AS(r0_root({1.0, 0.5, 0.5}), domain_error);
    }
}

TEST_CASE("B-norm estimates") {
    SECTION("zero function") {
        CHECK(bnorm([](cplx) { return cplx(0.0); }) == 0.0);
    }
    SECTION("(z+i)^-4 attains 0.25 at z = i") {
        auto phi = [](cplx z) {
            cplx w = z + cplx(0, 1);
            cplx w2 = w * w;
            return 1.0 / (w2 * w2);
        };
        CHECK_THAT(bnorm(phi), WithinAbs(0.25, 1e-6));
    }
    SECTION("square Schwarzian has a finite stable norm") {
        SchwarzianData d = square_data();
        auto phi = [&](cplx z) { return d.schwarzian(z); };
        double v = bnorm(phi);
        CHECK(v > 0.0);
        BnormOptions tight;
        tight.relTol = 1e-8;
        CHECK_THAT(bnorm(phi, tight) / v, WithinAbs(1.0, 1e-4));
    }
}

TEST_CASE("harmonic Beltrami coefficients") {
    auto phi = [](cplx z) {
        cplx w = z + cplx(0, 1);
        cplx w2 = w * w;
        return 1.0 / (w2 * w2);
    };
    SECTION("domain restriction") {
        CHECK_THROWS_AS(ahlfors_weill_mu(phi, cplx(0.0, 1.0), -2.0), domain_error);
        CHECK_THROWS_AS(ahlfors_weill_mu(phi, cplx(0.3, 0.0), -2.0), domain_error);
    }
    SECTION("pointwise value") {
        cplx z(0.2, -0.7);
        cplx want = -2.0 * 0.49 * phi(std::conj(z));
        CHECK(std::abs(ahlfors_weill_mu(phi, z, -2.0) - want) < 1e-15);
    }
    SECTION("sup identity: Ahlfors-Weill scale gives half the B-norm") {
        CHECK_THAT(mu_sup(phi, -2.0), WithinAbs(0.125, 1e-6));
    }
    SECTION("nu_r identity at r = r0/2 for the square") {
        SchwarzianData d = square_data();
        double r0 = r0_root(d.alphaInt).inclusive;
        double r = 0.5 * r0;
        auto phiR = s_fn_t(d, r0);
        double got = mu_sup(phiR, -0.5 * r);
        double want = 0.125 * r * bnorm(phiR);
        CHECK_THAT(got, WithinAbs(want, 1e-4 * std::max(1.0, want)));
    }
}

#include <catch2/catch_amalgamated.hpp>
#include <complex>

#include "qclab/laurent.hpp"

using namespace qclab;
using Catch::Matchers::WithinAbs;

TEST_CASE("coefficient extraction of z + c/z") {
    const double c = 0.4;
    LaurentSeries s =
        laurent_coeffs([c](cplx z) { return z + c / z; }, 1.6, 12);
    CHECK_THAT(std::abs(s.b[0]), WithinAbs(0.0, 1e-12));
    CHECK_THAT(std::abs(s.b[1] - c), WithinAbs(0.0, 1e-12));
    for (int k = 2; k <= 12; ++k) CHECK_THAT(std::abs(s.b[k]), WithinAbs(0.0, 1e-12));
    CHECK_THAT(area_sum(s), WithinAbs(c * c, 1e-12));
}

TEST_CASE("identity map extracts to zero coefficients") {
    LaurentSeries s = laurent_coeffs([](cplx z) { return z; }, 1.5, 10);
    for (int k = 0; k <= 10; ++k) CHECK_THAT(std::abs(s.b[k]), WithinAbs(0.0, 1e-13));
}

TEST_CASE("translation shows up only in b0") {
    LaurentSeries s =
        laurent_coeffs([](cplx z) { return z + cplx(0.3, -0.7); }, 1.5, 8);
    CHECK_THAT(std::abs(s.b[0] - cplx(0.3, -0.7)), WithinAbs(0.0, 1e-13));
    CHECK_THAT(area_sum(s), WithinAbs(0.0, 1e-13));
}

TEST_CASE("sampling radius must exceed one") {
    CHECK_THROWS_AS(laurent_coeffs([](cplx z) { return z; }, 0.9, 4), domain_error);
}

TEST_CASE("two-radius disagreement is flagged") {
    // A function holomorphic only in |z| > 1.3 has radius-dependent "coefficients"
    auto bad = [](cplx z) { return z + 1.0 / (z - 1.3); };
    CHECK_THROWS_AS(laurent_coeffs(bad, 1.31, 16), accuracy_error);
}

TEST_CASE("homotopy reparametrization scales coefficients by t^{k+1}") {
    LaurentSeries s;
    s.b = {cplx(0.1, 0.0), cplx(0.5, -0.2), cplx(0.0, 0.3)};
    LaurentSeries t = series_homotopy(s, cplx(0.5, 0.0));
    CHECK_THAT(std::abs(t.b[0] - cplx(0.05, 0.0)), WithinAbs(0.0, 1e-16));
    CHECK_THAT(std::abs(t.b[1] - cplx(0.125, -0.05)), WithinAbs(0.0, 1e-16));
    CHECK_THAT(std::abs(t.b[2] - cplx(0.0, 0.0375)), WithinAbs(0.0, 1e-16));
    CHECK_THROWS_AS(series_homotopy(s, cplx(1.2, 0.0)), domain_error);
}

TEST_CASE("series evaluation matches the defining function") {
    const double c = 0.35;
    LaurentSeries s = laurent_coeffs([c](cplx z) { return z + c / z; }, 1.5, 8);
    cplx z(1.7, 0.9);
    CHECK_THAT(std::abs(s.eval(z) - (z + c / z)), WithinAbs(0.0, 1e-13));
}

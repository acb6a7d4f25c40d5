#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "qclab/families.hpp"
#include "qclab/laurent.hpp"
#include "qclab/scmap.hpp"

using namespace qclab;
using Catch::Matchers::WithinAbs;

namespace {

Polygon unit_square() {
    return make_polygon({cplx(1, 1), cplx(-1, 1), cplx(-1, -1), cplx(1, -1)});
}

double dist_to_boundary(const Polygon& P, cplx w) {
    double best = 1e300;
    for (std::size_t j = 0; j < P.size(); ++j) {
        cplx a = P.vertices[j], b = P.vertices[(j + 1) % P.size()];
        cplx ab = b - a;
        double t = std::clamp(((w - a) / ab).real(), 0.0, 1.0);
        best = std::min(best, std::abs(w - (a + t * ab)));
    }
    return best;
}

}  // namespace

TEST_CASE("square prevertices are equally spaced") {
    ScExteriorMap M = solve_parameters(unit_square());
    REQUIRE(M.thetas.size() == 4);
    CHECK_THAT(M.thetas[0], WithinAbs(0.0, 1e-14));
    for (int j = 0; j < 3; ++j)
        CHECK_THAT(M.thetas[j + 1] - M.thetas[j],
                   WithinAbs(std::numbers::pi / 2, 1e-9));
    CHECK(M.residual < 1e-9);
}

TEST_CASE("regular hexagon prevertices are equally spaced") {
    std::vector<cplx> v;
    for (int j = 0; j < 6; ++j)
        v.push_back(std::polar(1.0, std::numbers::pi * j / 3.0));
    ScExteriorMap M = solve_parameters(make_polygon(std::move(v)));
    for (int j = 0; j < 5; ++j)
        CHECK_THAT(M.thetas[j + 1] - M.thetas[j],
                   WithinAbs(std::numbers::pi / 3, 1e-9));
}

TEST_CASE("random quadrilateral solves to its own side lengths") {
    Polygon P = random_convex_quad(2);
    ScExteriorMap M = solve_parameters(P);
    CHECK(M.residual < 1e-9);
    const std::size_t n = P.size();
    for (std::size_t j = 0; j < n; ++j) {
        double want = std::abs(P.vertices[(j + 1) % n] - P.vertices[j]);
        double got = std::abs(M.vertex_value((j + 1) % n) - M.vertex_value(j));
        CHECK_THAT(got / want, WithinAbs(1.0, 1e-8));
    }
    // single-valuedness: no logarithmic term in the integrand expansion
    cplx sv = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        sv += (M.alpha_ext[j] - 1.0) * M.prevertex(j);
    CHECK(std::abs(sv) < 1e-8);
}

TEST_CASE("map evaluation domain and vertex snapping") {
    ScExteriorMap M = solve_parameters(unit_square());
    CHECK_THROWS_AS(eval_map(M, cplx(0.5, 0.0)), domain_error);
    for (std::size_t j = 0; j < 4; ++j)
        CHECK(std::abs(eval_map(M, M.prevertex(j)) - M.target.vertices[j]) < 1e-8);
}

TEST_CASE("normalized map is asymptotically the identity") {
    ScExteriorMap M = normalize_sigma0(solve_parameters(unit_square()));
    cplx z = std::polar(1e6, 0.4);
    CHECK(std::abs(eval_map(M, z) / z - 1.0) < 1e-5);
}

TEST_CASE("quadrature node doubling is converged") {
    ScExteriorMap M = solve_parameters(random_convex_quad(4));
    for (cplx z : {std::polar(1.1, 0.7), std::polar(1.5, 2.9), std::polar(4.0, 4.2)})
        CHECK(std::abs(eval_map(M, z, 24) - eval_map(M, z, 48)) < 1e-10);
}

TEST_CASE("boundary trace reconstructs the polygon") {
    Polygon P = random_convex_quad(7);
    ScExteriorMap M = solve_parameters(P);
    double worst = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        double lo = M.thetas[j];
        double hi = (j + 1 < 4) ? M.thetas[j + 1] : M.thetas[0] + 2 * std::numbers::pi;
        for (int k = 1; k < 8; ++k) {
            double th = lo + (hi - lo) * k / 8.0;
            worst = std::max(worst, dist_to_boundary(P, eval_map(M, std::polar(1.0 + 1e-13, th))));
        }
    }
    CHECK(worst < 1e-6 * P.diameter());
}

TEST_CASE("closed-form series of the square map") {
    ScExteriorMap M = normalize_sigma0(solve_parameters(unit_square()));
    LaurentSeries S = sc_series(M, 16);
    // |b_k| of the square exterior map: (1 - z^{-4})^{1/2} integrand
    CHECK_THAT(std::abs(S.b[3]), WithinAbs(1.0 / 6.0, 1e-12));
    CHECK_THAT(std::abs(S.b[7]), WithinAbs(1.0 / 56.0, 1e-12));
    CHECK_THAT(std::abs(S.b[11]), WithinAbs(1.0 / 176.0, 1e-12));
    for (int k : {1, 2, 4, 5, 6}) CHECK_THAT(std::abs(S.b[k]), WithinAbs(0.0, 1e-12));
    CHECK(area_sum(S) <= 1.0 + 1e-6);
}

TEST_CASE("series agrees with direct evaluation through the DFT extractor") {
    ScExteriorMap M = normalize_sigma0(solve_parameters(random_convex_quad(9)));
    // small radius keeps the R^k noise amplification below the series accuracy
    LaurentSeries direct = laurent_coeffs(
        [&](cplx z) { return eval_map(M, z, 48); }, 1.15, 10, 256);
    LaurentSeries series = sc_series(M, 48);
    for (int k = 0; k <= 10; ++k)
        CHECK(std::abs(direct.b[k] - series.b[k]) < 1e-9);
    CHECK(area_sum(series) <= 1.0 + 1e-6);
}

TEST_CASE("elongated polygons trigger the crowding warning") {
    Polygon thin = make_polygon({cplx(0, 0), cplx(50, 0), cplx(50, 1), cplx(0, 1)});
    ScExteriorMap M = solve_parameters(thin);
    CHECK(M.crowdingWarning);
}

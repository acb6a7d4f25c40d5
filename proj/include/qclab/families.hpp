#ifndef QCLAB_FAMILIES_HPP
#define QCLAB_FAMILIES_HPP

// Parametrized polygon families for sweeps and consistency suites: seeded
// random convex quadrilaterals (points on a circle pushed through a mild
// affine stretch) and a trapezoid family interpolating the square toward a
// generic trapezoid.

#include <algorithm>
#include <numbers>
#include <random>
#include <vector>

#include "qclab/errors.hpp"
#include "qclab/polygon.hpp"

namespace qclab {

// Four angles on the unit circle with pairwise gaps > 0.5 rad (keeps the
// quadrilateral away from degenerate slivers), then an affine stretch
// z + c2 conj(z) with |c2| < 0.4. Deterministic in the seed.
inline Polygon random_convex_quad(unsigned seed) {
    std::mt19937_64 g(seed);
    auto u01 = [&g] { return (g() >> 11) * 0x1.0p-53; };
    std::vector<double> th(4);
    for (;;) {
        for (auto& t : th) t = u01() * 2.0 * std::numbers::pi;
        std::sort(th.begin(), th.end());
        double mn = th[0] + 2.0 * std::numbers::pi - th[3];
        for (int i = 0; i < 3; ++i) mn = std::min(mn, th[i + 1] - th[i]);
        if (mn > 0.5) break;
    }
    double r = u01() * 0.4, ph = u01() * 2.0 * std::numbers::pi;
    cplx c2 = std::polar(r, ph);
    std::vector<cplx> v;
    for (double t : th) {
        cplx p = std::polar(1.0, t);
        v.push_back(p + c2 * std::conj(p));
    }
    return make_polygon(std::move(v));
}

// s = 0 is the unit square; s = 1 a generic convex trapezoid (parallel
// horizontal sides, the top one shrunk and shifted). Convex for s in [0, 1].
inline Polygon trapezoid(double s) {
    if (s < 0.0 || s > 1.0) throw domain_error("trapezoid parameter must lie in [0, 1]");
    std::vector<cplx> v = {cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(1.0 - 0.15 * s, 1.0),
                           cplx(0.35 * s, 1.0)};
    return make_polygon(std::move(v));
}

}  // namespace qclab

#endif

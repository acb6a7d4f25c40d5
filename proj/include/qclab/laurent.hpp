#ifndef QCLAB_LAURENT_HPP
#define QCLAB_LAURENT_HPP

// Laurent expansions F(z) = z + b0 + b1/z + ... for maps of class Sigma-0,
// coefficient extraction by DFT on a circle, the area-theorem sum, and the
// homotopy reparametrization F_t(z) = t F(z/t).

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "qclab/errors.hpp"
#include "qclab/polygon.hpp"

namespace qclab {

struct LaurentSeries {
    std::vector<cplx> b;   // b[0] = b0, b[k] multiplies z^{-k}
    double sourceRadius = 0.0;

    int order() const { return static_cast<int>(b.size()) - 1; }

    cplx eval(cplx z) const {
        // Horner in 1/z for the tail
        cplx iz = 1.0 / z, acc = 0.0;
        for (int k = order(); k >= 1; --k) acc = (acc + b[k]) * iz;
        return z + b[0] + acc;
    }
};

// Sum k*|b_k|^2; <= 1 for univalent Sigma-0 maps (area theorem).
inline double area_sum(const LaurentSeries& s) {
    double a = 0.0;
    for (int k = 1; k <= s.order(); ++k) a += k * std::norm(s.b[k]);
    return a;
}

namespace detail {

inline std::vector<cplx> dft_coeffs(const std::function<cplx(cplx)>& f, double R,
                                    int M, int K) {
    // b_k = R^k / K * sum_m (f - z)(R w^m) w^{mk},  w = e^{2 pi i / K}
    std::vector<cplx> g(K);
    for (int m = 0; m < K; ++m) {
        double th = 2.0 * std::numbers::pi * m / K;
        cplx z = std::polar(R, th);
        g[m] = f(z) - z;
    }
    std::vector<cplx> b(M + 1);
    for (int k = 0; k <= M; ++k) {
        cplx acc = 0.0;
        for (int m = 0; m < K; ++m) {
            double ph = 2.0 * std::numbers::pi * m * k / K;
            acc += g[m] * cplx(std::cos(ph), std::sin(ph));
        }
        b[k] = acc * std::pow(R, k) / static_cast<double>(K);
    }
    return b;
}

}  // namespace detail

// Extracts b_0..b_M of f on |z| = R, with a consistency re-extraction at
// radius 1.25 R. Coefficients above the relative floor must agree between the
// two radii or the sampling is declared untrustworthy.
inline LaurentSeries laurent_coeffs(const std::function<cplx(cplx)>& f, double R,
                                    int M, int K = 0) {
    if (R <= 1.0) throw domain_error("sampling radius must exceed 1");
    if (K < 4 * M) K = 4 * M;
    auto b1 = detail::dft_coeffs(f, R, M, K);
    auto b2 = detail::dft_coeffs(f, 1.25 * R, M, K);

    double scale = 0.0;
    for (const auto& v : b1) scale = std::max(scale, std::abs(v));
    scale = std::max(scale, 1.0);
    for (int k = 0; k <= M; ++k) {
        if (std::abs(b1[k]) < 1e-8 * scale) continue;  // below retention floor
        if (std::abs(b1[k] - b2[k]) > 1e-6 * std::abs(b1[k]))
            throw accuracy_error(
                "two-radius Laurent extraction disagrees at k = " + std::to_string(k) +
                "; increase R or the sample count");
    }
    LaurentSeries s;
    s.b = std::move(b1);
    s.sourceRadius = R;
    return s;
}

// Series of F_t(z) = t F(z/t): b0 -> t b0, b_k -> t^{k+1} b_k.
inline LaurentSeries series_homotopy(const LaurentSeries& s, cplx t) {
    if (std::abs(t) > 1.0) throw domain_error("homotopy parameter must satisfy |t| <= 1");
    LaurentSeries out = s;
    cplx p = t;
    for (auto& bk : out.b) {
        bk *= p;
        p *= t;
    }
    return out;
}

}  // namespace qclab

#endif

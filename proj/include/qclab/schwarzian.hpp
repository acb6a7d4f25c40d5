#ifndef QCLAB_SCHWARZIAN_HPP
#define QCLAB_SCHWARZIAN_HPP

// Closed-form Schwarzian data of the half-plane Schwarz-Christoffel map of a
// convex polygon with finite prevertices a_j and interior parameters alpha_j:
// b(z) = log-derivative of f' = sum (alpha_j - 1)/(z - a_j), S = b' - b^2/2,
// the homotopy-weighted S_t = t b' - b^2/2, the r0 quadratic, half-plane
// B-norms, and Ahlfors-Weill harmonic Beltrami coefficients.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "qclab/errors.hpp"
#include "qclab/polygon.hpp"

namespace qclab {

struct SchwarzianData {
    std::vector<double> a;         // prevertices, strictly increasing
    std::vector<double> alphaInt;  // interior parameters, 0 < alpha_j < 1
    std::vector<double> C;         // C_j = alpha_j - 1 - (alpha_j - 1)^2 / 2 < 0
    std::vector<std::vector<double>> Cpair;  // C_jl = (alpha_j-1)(alpha_l-1) > 0
    double t = 1.0;

    cplx b(cplx z) const {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j)
            acc += (alphaInt[j] - 1.0) / (z - a[j]);
        return acc;
    }

    cplx bprime(cplx z) const {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) {
            cplx d = z - a[j];
            acc -= (alphaInt[j] - 1.0) / (d * d);
        }
        return acc;
    }

    cplx schwarzian(cplx z) const {
        if (z.imag() == 0.0) throw domain_error("Schwarzian pole set: real axis");
        cplx bb = b(z);
        return bprime(z) - 0.5 * bb * bb;
    }
};

inline SchwarzianData halfplane_schwarzian(const std::vector<double>& a,
                                           const std::vector<double>& alphaInt) {
    const std::size_t n = a.size();
    if (n < 3 || alphaInt.size() != n)
        throw domain_error("need matching prevertex and parameter lists, n >= 3");
    for (std::size_t j = 0; j + 1 < n; ++j)
        if (a[j] >= a[j + 1]) throw domain_error("prevertices must be increasing");
    double sum = 0.0;
    for (double al : alphaInt) {
        if (al <= 0.0 || al >= 1.0)
            throw domain_error("interior parameters of a convex polygon lie in (0,1)");
        sum += al - 1.0;
    }
    if (std::abs(sum + 2.0) > 1e-10)
        throw domain_error("parameter sum violated: sum(alpha_j - 1) must be -2");

    SchwarzianData d;
    d.a = a;
    d.alphaInt = alphaInt;
    d.C.resize(n);
    d.Cpair.assign(n, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        double aj = alphaInt[j] - 1.0;
        d.C[j] = aj - 0.5 * aj * aj;
        for (std::size_t l = 0; l < n; ++l)
            d.Cpair[j][l] = aj * (alphaInt[l] - 1.0);
    }
    return d;
}

// Evaluator for S_t = t b' - b^2/2; coincides with the Schwarzian at t = 1.
inline std::function<cplx(cplx)> s_fn_t(const SchwarzianData& d, double t) {
    return [d, t](cplx z) {
        if (z.imag() == 0.0) throw domain_error("Schwarzian pole set: real axis");
        cplx bb = d.b(z);
        return t * d.bprime(z) - 0.5 * bb * bb;
    };
}

struct R0Roots {
    double inclusive = 0.0;  // double sum over all pairs including j = l
    double exclusive = 0.0;  // diagonal excluded (alternative reading)
};

// Positive root of (1/2)[sum (alpha_j-1)^2 + sum_{j,l} C_jl] r^2
//                  - sum (alpha_j-1) r - 2 = 0.
inline R0Roots r0_root(const std::vector<double>& alphaInt) {
    double s1 = 0.0, s2 = 0.0;
    for (double al : alphaInt) {
        if (al >= 1.0) throw domain_error("nonconvex parameter: alpha_j >= 1");
        s1 += al - 1.0;
        s2 += (al - 1.0) * (al - 1.0);
    }
    auto posroot = [&](double pairSum) {
        double A = 0.5 * (s2 + pairSum), B = -s1, Cc = -2.0;
        double disc = B * B - 4.0 * A * Cc;
        if (disc <= 0.0) throw domain_error("r0 quadratic has no positive root");
        return (-B + std::sqrt(disc)) / (2.0 * A);
    };
    R0Roots r;
    r.inclusive = posroot(s1 * s1);
    r.exclusive = posroot(s1 * s1 - s2);
    return r;
}

struct BnormOptions {
    double relTol = 1e-6;
    int maxRounds = 60;
};

// sup over the upper half-plane of |z - conj z|^2 |phi(z)| = 4 y^2 |phi|,
// estimated from below: coarse grid logarithmic in y, then shrinking window
// refinement around the running maximizer.
inline double bnorm(const std::function<cplx(cplx)>& phi,
                    const BnormOptions& opts = {}) {
    double bestV = 0.0, bestX = 0.0, bestY = 1.0;
    auto probe = [&](double x, double y) {
        double v = 4.0 * y * y * std::abs(phi(cplx(x, y)));
        if (v > bestV) {
            bestV = v;
            bestX = x;
            bestY = y;
        }
    };
    for (int iy = 0; iy <= 72; ++iy) {
        double y = std::pow(10.0, -3.0 + 6.0 * iy / 72.0);
        for (int ix = 0; ix <= 160; ++ix) probe(-8.0 + 16.0 * ix / 160.0, y);
    }
    if (bestV == 0.0) return 0.0;

    double hx = 0.1, hly = 0.05;  // half-widths: linear in x, log10 in y
    double prev = bestV;
    int growth = 0;
    for (int round = 0; round < opts.maxRounds; ++round) {
        double cx = bestX, cly = std::log10(bestY);
        for (int i = -8; i <= 8; ++i)
            for (int j = -8; j <= 8; ++j)
                probe(cx + hx * i / 8.0, std::pow(10.0, cly + hly * j / 8.0));
        hx *= 0.35;
        hly *= 0.35;
        double rel = (bestV - prev) / bestV;
        if (rel < opts.relTol && round > 2) return bestV;
        growth = (bestV > 5.0 * prev) ? growth + 1 : 0;
        if (growth >= 3)
            throw accuracy_error("B-norm estimate diverges across refinements");
        prev = bestV;
    }
    return bestV;
}

// mu(z) = scale * y^2 * phi(conj z) for Im z < 0, y = Im conj(z);
// scale = -2 is the Ahlfors-Weill coefficient, -r/2 gives nu_r.
inline cplx ahlfors_weill_mu(const std::function<cplx(cplx)>& phi, cplx z,
                             double scale) {
    if (z.imag() >= 0.0)
        throw domain_error("harmonic Beltrami coefficient lives on the lower half-plane");
    double y = -z.imag();
    return scale * y * y * phi(std::conj(z));
}

// Sampled sup of |mu| over the lower half-plane, by direct evaluation of the
// coefficient on its own grid (compare with scale/4 times the B-norm).
inline double mu_sup(const std::function<cplx(cplx)>& phi, double scale,
                     const BnormOptions& opts = {}) {
    double bestV = -1.0, bestX = 0.0, bestY = 1.0;  // y = -Im z > 0
    auto probe = [&](double x, double y) {
        double v = std::abs(ahlfors_weill_mu(phi, cplx(x, -y), scale));
        if (v > bestV) {
            bestV = v;
            bestX = x;
            bestY = y;
        }
    };
    for (int iy = 0; iy <= 72; ++iy) {
        double y = std::pow(10.0, -3.0 + 6.0 * iy / 72.0);
        for (int ix = 0; ix <= 160; ++ix) probe(-8.0 + 16.0 * ix / 160.0, y);
    }
    if (bestV <= 0.0) return 0.0;
    double hx = 0.1, hly = 0.05, prev = bestV;
    for (int round = 0; round < opts.maxRounds; ++round) {
        double cx = bestX, cly = std::log10(bestY);
        for (int i = -8; i <= 8; ++i)
            for (int j = -8; j <= 8; ++j)
                probe(cx + hx * i / 8.0, std::pow(10.0, cly + hly * j / 8.0));
        hx *= 0.35;
        hly *= 0.35;
        if ((bestV - prev) / bestV < opts.relTol && round > 2) break;
        prev = bestV;
    }
    return bestV;
}

}  // namespace qclab

#endif

#ifndef QCLAB_SCMAP_HPP
#define QCLAB_SCMAP_HPP

// Exterior Schwarz-Christoffel maps F(z) = d0 + d1 * int^z prod (1 - e_j/zeta)^{alpha_j - 1} dzeta
// from |z| > 1 onto the exterior of a target polygon. Covers the parameter
// problem (prevertex angles), evaluation along circle-arc + radial paths, the
// Sigma-0 normalization, and the closed-form Laurent series of the solved map.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qclab/errors.hpp"
#include "qclab/laurent.hpp"
#include "qclab/polygon.hpp"
#include "qclab/quadrature.hpp"

namespace qclab {

struct ScSolverOptions {
    double tol = 1e-9;  // max residual (single-valuedness + log side ratios)
    int maxIter = 60;
    int nodes = 24;  // Gauss nodes per half-arc
};

struct ScExteriorMap {
    std::vector<double> thetas;     // prevertex angles, increasing, thetas[0] = 0
    std::vector<double> alpha_ext;  // exponents alpha_j, sum(alpha_j - 1) = 2
    cplx d0, d1;
    std::vector<cplx> U;  // unnormalized vertex images, U[0] = 0
    Polygon target;
    double residual = 0.0;       // final solver residual
    bool crowdingWarning = false;

    std::size_t size() const { return thetas.size(); }
    cplx prevertex(std::size_t j) const { return std::polar(1.0, thetas[j]); }
    cplx vertex_value(std::size_t j) const { return d0 + d1 * U[j]; }
};

namespace detail {

// Smooth part of the integrand on the arc (thetas[jl], thetas[jr']) where
// jr = (jl+1) mod n: i*e^{i th} * prod_j (1 - e_j/zeta)^{alpha_j-1} with the
// vanishing factors at the two arc ends divided out by (th - th_l) resp.
// (th_r - th). Principal powers; every factor stays in the closed right
// half-plane on the unit circle.
inline cplx sc_arc_smooth(double th, double th_l, double th_r, std::size_t jl,
                          std::size_t jr, const std::vector<double>& thetas,
                          const std::vector<double>& alphas,
                          bool strip_left, bool strip_right) {
    const std::size_t n = thetas.size();
    cplx z = std::polar(1.0, th);
    cplx val = cplx(0.0, 1.0) * z;
    for (std::size_t j = 0; j < n; ++j) {
        cplx w = 1.0 - std::polar(1.0, thetas[j]) / z;
        double a = alphas[j] - 1.0;
        if (strip_left && j == jl) {
            double d = th - th_l;
            val *= std::exp(a * std::log(w / d));
        } else if (strip_right && j == jr) {
            double d = th_r - th;
            val *= std::exp(a * std::log(w / d));
        } else {
            val *= std::exp(a * std::log(w));
        }
    }
    return val;
}

// Integral of the full SC integrand over one whole side arc
// [thetas[j], thetas[j]+gap]; both endpoint singularities are folded into
// Gauss-Jacobi weights, one per half-arc.
inline cplx sc_side_integral(std::size_t j, double gap,
                             const std::vector<double>& thetas,
                             const std::vector<double>& alphas, int nq) {
    const std::size_t n = thetas.size();
    const std::size_t jr = (j + 1) % n;
    const double a = thetas[j], b = a + gap, mid = a + 0.5 * gap;
    const double al = alphas[j] - 1.0, ar = alphas[jr] - 1.0;
    cplx tot = 0.0;

    // both endpoint factors stripped from the smooth part; the quadrature
    // weight restores the near one and pow() the far (regular there) one
    QuadRule left = gauss_jacobi(nq, 0.0, al);  // weight (1+x)^al at the a end
    double half = 0.5 * (mid - a);
    cplx acc = 0.0;
    for (int k = 0; k < nq; ++k) {
        double t = a + half * (left.nodes[k] + 1.0);
        cplx s = sc_arc_smooth(t, a, b, j, jr, thetas, alphas, true, true);
        acc += left.weights[k] * s * std::pow(b - t, ar);
    }
    tot += acc * std::pow(half, al) * half;

    QuadRule right = gauss_jacobi(nq, ar, 0.0);  // weight (1-x)^ar at the b end
    half = 0.5 * (b - mid);
    acc = 0.0;
    for (int k = 0; k < nq; ++k) {
        double t = mid + half * (right.nodes[k] + 1.0);
        cplx s = sc_arc_smooth(t, a, b, j, jr, thetas, alphas, true, true);
        acc += right.weights[k] * s * std::pow(t - a, al);
    }
    tot += acc * std::pow(half, ar) * half;
    return tot;
}

inline std::vector<cplx> sc_side_integrals(const std::vector<double>& thetas,
                                           const std::vector<double>& alphas,
                                           int nq) {
    const std::size_t n = thetas.size();
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        double gap = (j + 1 < n ? thetas[j + 1] : thetas[0] + 2.0 * std::numbers::pi) -
                     thetas[j];
        out[j] = sc_side_integral(j, gap, thetas, alphas, nq);
    }
    return out;
}

inline std::vector<double> thetas_from_gaps(const Eigen::VectorXd& y) {
    // gaps proportional to (1, e^{y_1}, ..., e^{y_{n-1}}), theta_1 = 0
    const int n = static_cast<int>(y.size()) + 1;
    std::vector<double> g(n);
    double sum = g[0] = 1.0;
    for (int j = 1; j < n; ++j) sum += g[j] = std::exp(y[j - 1]);
    std::vector<double> th(n, 0.0);
    for (int j = 1; j < n; ++j)
        th[j] = th[j - 1] + g[j - 1] * 2.0 * std::numbers::pi / sum;
    return th;
}

}  // namespace detail

// Solves the prevertex parameter problem for a polygon by damped Newton on
// the n-1 gap variables: two real single-valuedness equations
// sum (alpha_j - 1) e_j = 0 plus n-3 log side-length-ratio equations.
inline ScExteriorMap solve_parameters(const Polygon& P,
                                      const ScSolverOptions& opts = {}) {
    const int n = static_cast<int>(P.size());
    const std::vector<double>& alphas = P.alpha_ext;

    std::vector<double> sideLen(n);
    for (int j = 0; j < n; ++j)
        sideLen[j] = std::abs(P.vertices[(j + 1) % n] - P.vertices[j]);

    auto resid = [&](const Eigen::VectorXd& y) {
        std::vector<double> th = detail::thetas_from_gaps(y);
        cplx sv = 0.0;
        for (int j = 0; j < n; ++j)
            sv += (alphas[j] - 1.0) * std::polar(1.0, th[j]);
        Eigen::VectorXd r(n - 1);
        r[0] = sv.real();
        r[1] = sv.imag();
        if (n > 3) {
            std::vector<cplx> si = detail::sc_side_integrals(th, alphas, opts.nodes);
            for (int j = 1; j <= n - 3; ++j)
                r[j + 1] = std::log(std::abs(si[j]) / std::abs(si[0])) -
                           std::log(sideLen[j] / sideLen[0]);
        }
        return r;
    };

    Eigen::VectorXd y = Eigen::VectorXd::Zero(n - 1);
    Eigen::VectorXd r = resid(y);
    double best = r.lpNorm<Eigen::Infinity>();
    for (int it = 0; it < opts.maxIter && best > 1e-12; ++it) {
        Eigen::MatrixXd J(n - 1, n - 1);
        const double h = 1e-7;
        for (int c = 0; c < n - 1; ++c) {
            Eigen::VectorXd yp = y;
            yp[c] += h;
            J.col(c) = (resid(yp) - r) / h;
        }
        Eigen::VectorXd step = J.partialPivLu().solve(-r);
        double t = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
            Eigen::VectorXd yt = y + t * step;
            if (yt.lpNorm<Eigen::Infinity>() > 30.0) continue;  // softmax overflow guard
            Eigen::VectorXd rt = resid(yt);
            if (rt.norm() < r.norm()) {
                y = yt;
                r = rt;
                accepted = true;
                break;
            }
        }
        best = r.lpNorm<Eigen::Infinity>();
        if (!accepted) break;
    }
    if (best > opts.tol)
        throw nonconvergence_error("prevertex solver did not reach tolerance", best);

    ScExteriorMap M;
    M.thetas = detail::thetas_from_gaps(y);
    M.alpha_ext = alphas;
    M.target = P;
    M.residual = best;

    // vertex images of the unnormalized map, then d0, d1 by least-squares
    // similarity fit U_j -> A_j
    std::vector<cplx> si = detail::sc_side_integrals(M.thetas, alphas, opts.nodes);
    M.U.assign(n, 0.0);
    for (int j = 1; j < n; ++j) M.U[j] = M.U[j - 1] + si[j - 1];
    Eigen::Matrix2cd A2;
    Eigen::Vector2cd rhs;
    cplx suu = 0.0, su = 0.0, sua = 0.0, sa = 0.0;
    for (int j = 0; j < n; ++j) {
        suu += std::norm(M.U[j]);
        su += M.U[j];
        sua += std::conj(M.U[j]) * P.vertices[j];
        sa += P.vertices[j];
    }
    A2 << suu, std::conj(su), su, cplx(n, 0);
    rhs << sua, sa;
    Eigen::Vector2cd d = A2.partialPivLu().solve(rhs);
    M.d1 = d[0];
    M.d0 = d[1];

    // crowding guard: thin targets crowd the prevertices
    double per = 0.0;
    for (int j = 0; j < n; ++j) per += sideLen[j];
    double area = 0.0;
    for (int j = 0; j < n; ++j) {
        const cplx &p = P.vertices[j], &q = P.vertices[(j + 1) % n];
        area += 0.5 * (p.real() * q.imag() - q.real() * p.imag());
    }
    M.crowdingWarning = P.diameter() * per > 20.0 * 2.0 * std::abs(area);
    return M;
}

namespace detail {

// Integral of the full integrand from thetas[j0] to phi (inside side arc j0):
// Gauss-Jacobi on the singular left half, dyadic Gauss-Legendre panels
// refining toward phi on the right half (the next prevertex may be close).
inline cplx sc_partial_arc(const ScExteriorMap& M, std::size_t j0, double phi,
                           int nq) {
    const std::size_t n = M.size();
    const std::size_t jr = (j0 + 1) % n;
    const double a = M.thetas[j0];
    const double thNext =
        (j0 + 1 < n ? M.thetas[j0 + 1] : M.thetas[0] + 2.0 * std::numbers::pi);
    const double al = M.alpha_ext[j0] - 1.0;
    double mid = 0.5 * (a + phi), tot_gap = thNext - a;
    cplx tot = 0.0;

    QuadRule left = gauss_jacobi(nq, 0.0, al);
    double half = 0.5 * (mid - a);
    cplx acc = 0.0;
    for (int k = 0; k < nq; ++k) {
        double t = a + half * (left.nodes[k] + 1.0);
        acc += left.weights[k] *
               sc_arc_smooth(t, a, thNext, j0, jr, M.thetas, M.alpha_ext, true, false);
    }
    tot += acc * std::pow(half, al) * half;

    // right half: refine toward phi since the factor of the next prevertex
    // loses smoothness as phi approaches it
    double distNext = std::max(thNext - phi, 1e-14);
    int depth = std::max(2, static_cast<int>(std::ceil(std::log2(tot_gap / distNext))) + 2);
    QuadRule gl = gauss_legendre(nq);
    double lo = mid;
    for (int lev = depth; lev >= 1; --lev) {
        double hi = phi - (phi - mid) * std::pow(0.5, depth - lev + 1);
        if (lev == 1) hi = phi;
        tot += apply_rule(gl, lo, hi, [&](double t) {
            return sc_arc_smooth(t, a, thNext, j0, jr, M.thetas, M.alpha_ext, false,
                                 false);
        });
        lo = hi;
    }
    return tot;
}

// Radial integral from e^{i phi} out to r e^{i phi}; uses s = 1/rho so the
// far field costs one smooth panel: int = e^{i phi} (r - 1) +
// e^{i phi} int_{1/r}^{1} (I(e^{i phi}/s) - 1)/s^2 ds.
inline cplx sc_radial(const ScExteriorMap& M, double phi, double r, int nq) {
    const std::size_t n = M.size();
    cplx dir = std::polar(1.0, phi);
    auto integrand = [&](double s) {
        cplx z = dir / s;
        cplx prod = 1.0;
        for (std::size_t j = 0; j < n; ++j)
            prod *= std::exp((M.alpha_ext[j] - 1.0) * std::log(1.0 - M.prevertex(j) / z));
        return (prod - 1.0) / (s * s);
    };
    QuadRule gl = gauss_legendre(nq);
    // a few panels graded toward s = 1 (the boundary), where I - 1 is largest
    cplx acc = 0.0;
    double slo = 1.0 / r;
    const double brk[] = {0.0, 0.5, 0.75, 0.875, 0.9375, 1.0};
    for (int p = 0; p + 1 < 6; ++p) {
        double a1 = slo + (1.0 - slo) * brk[p], b1 = slo + (1.0 - slo) * brk[p + 1];
        acc += apply_rule(gl, a1, b1, integrand);
    }
    return dir * (r - 1.0) + dir * acc;
}

}  // namespace detail

// Evaluates F(z) for |z| >= 1 (points on the circle allowed away from
// prevertices) along a boundary-arc + radial path.
inline cplx eval_map(const ScExteriorMap& M, cplx z, int nq = 24) {
    const double r = std::abs(z);
    if (r < 1.0 - 1e-14) throw domain_error("eval_map requires |z| >= 1");
    const std::size_t n = M.size();
    double phi = std::arg(z);
    const double twoPi = 2.0 * std::numbers::pi;
    if (phi < 0.0) phi += twoPi;

    for (std::size_t j = 0; j < n; ++j) {
        double d = std::remainder(phi - M.thetas[j], twoPi);
        if (std::abs(d) < 1e-10 && r < 1.0 + 1e-14) return M.vertex_value(j);
    }

    std::size_t j0 = n - 1;  // arc containing phi
    for (std::size_t j = 0; j + 1 < n; ++j)
        if (phi >= M.thetas[j] && phi < M.thetas[j + 1]) {
            j0 = j;
            break;
        }
    if (j0 == n - 1 && phi < M.thetas[n - 1]) phi += twoPi;  // wrapped last arc

    // a zero-length arc degenerates the singular quadrature; its value is 0
    cplx arc = (phi - M.thetas[j0] > 1e-12) ? detail::sc_partial_arc(M, j0, phi, nq)
                                            : cplx(0.0);
    cplx rad = (r > 1.0 + 1e-14) ? detail::sc_radial(M, phi, r, nq) : cplx(0.0);
    return M.d0 + M.d1 * (M.U[j0] + arc + rad);
}

// Rescales so the map is in Sigma-0 (leading coefficient 1): divides the whole
// image by d1; the recorded target becomes the similarity copy A_j / d1.
inline ScExteriorMap normalize_sigma0(const ScExteriorMap& M) {
    ScExteriorMap out = M;
    out.d0 = M.d0 / M.d1;
    out.d1 = 1.0;
    std::vector<cplx> scaled(M.target.vertices.size());
    for (std::size_t j = 0; j < scaled.size(); ++j)
        scaled[j] = M.target.vertices[j] / M.d1;
    out.target = make_polygon(std::move(scaled));
    return out;
}

// Laurent series of the Sigma-0 normalized map, in closed form from
// log F'(z) = sum_j (alpha_j - 1) log(1 - e_j/z): exponentiating the series by
// the power-series recurrence gives F' and termwise integration gives b_k.
// The |coefficient of 1/z in F'| is the single-valuedness residual and must
// already be negligible for a solved map.
inline LaurentSeries sc_series(const ScExteriorMap& M, int order) {
    const std::size_t n = M.size();
    std::vector<cplx> L(order + 2, 0.0);  // log F' = sum L[k] z^{-k}
    for (std::size_t j = 0; j < n; ++j) {
        cplx e = M.prevertex(j), p = e;
        for (int k = 1; k <= order + 1; ++k) {
            L[k] -= (M.alpha_ext[j] - 1.0) * p / static_cast<double>(k);
            p *= e;
        }
    }
    std::vector<cplx> Fp(order + 2, 0.0);  // F' = sum Fp[k] z^{-k}
    Fp[0] = 1.0;
    for (int m = 1; m <= order + 1; ++m) {
        cplx acc = 0.0;
        for (int k = 1; k <= m; ++k) acc += static_cast<double>(k) * L[k] * Fp[m - k];
        Fp[m] = acc / static_cast<double>(m);
    }
    if (std::abs(Fp[1]) > 1e-7)
        throw accuracy_error("map is not single-valued: 1/z term in F' is " +
                             std::to_string(std::abs(Fp[1])));

    LaurentSeries s;
    s.b.assign(order + 1, 0.0);
    for (int k = 1; k <= order; ++k) s.b[k] = Fp[k + 1] / static_cast<double>(-k);

    // constant term from one map evaluation at a generic exterior point
    cplx zs = std::polar(3.7, 0.31);
    cplx tail = 0.0;
    for (int k = order; k >= 1; --k) tail = (tail + s.b[k]) / zs;
    s.b[0] = eval_map(M, zs) / M.d1 - zs - tail;
    s.sourceRadius = std::abs(zs);
    return s;
}

}  // namespace qclab

#endif

#ifndef QCLAB_VERIFY_HPP
#define QCLAB_VERIFY_HPP

// Named verification suites tying the pipelines together: closed-form ellipse
// checks, the homotopy scaling law, the affine/Beltrami composition family,
// the two-pipeline quadrilateral sweep, the square spectrum, and the
// Schwarzian quantities. Each suite returns pass/fail results with numeric
// details; tolerances are data (overridable via a key -> value map).

#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qclab/errors.hpp"
#include "qclab/families.hpp"
#include "qclab/fredholm.hpp"
#include "qclab/grunsky.hpp"
#include "qclab/laurent.hpp"
#include "qclab/polygon.hpp"
#include "qclab/scmap.hpp"
#include "qclab/schwarzian.hpp"

namespace qclab {

struct CriterionResult {
    std::string name;
    bool pass = false;
    double value = 0.0;      // measured quantity (defect, residual, ...)
    double tolerance = 0.0;  // the bound it was held to
    std::string detail;
};

using Tolerances = std::map<std::string, double>;

inline double tol_of(const Tolerances& t, const std::string& key, double fallback) {
    auto it = t.find(key);
    return it == t.end() ? fallback : it->second;
}

namespace detail {

inline CriterionResult bound_check(const std::string& name, double value, double tolerance,
                                   std::string detail = "") {
    return {name, value <= tolerance, value, tolerance, std::move(detail)};
}

// Exact truncated series of the ellipse map z + c/z, padded with zeros so the
// Grunsky extraction's truncation precondition is met.
inline LaurentSeries ellipse_series(double c, int order = 80) {
    LaurentSeries S;
    S.b.assign(order + 1, 0.0);
    S.b[1] = c;
    S.sourceRadius = 1.0;
    return S;
}

struct SolvedPolygon {
    ScExteriorMap map;
    LaurentSeries series;
    GrunskyMatrix grunsky;
    double kappa = 0.0;
};

inline SolvedPolygon solve_pipeline(const Polygon& P, int order = 1536, int N = 768) {
    SolvedPolygon sp;
    sp.map = normalize_sigma0(solve_parameters(P));
    sp.series = sc_series(sp.map, order);
    sp.grunsky = grunsky_from_series(sp.series, N);
    sp.kappa = kappa_accelerated(grunsky_norm(sp.grunsky));
    return sp;
}

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace detail

// Ellipse closed forms: kappa = c from the series z + c/z, 1/rho = c from the
// double-layer spectrum of the ellipse with semiaxes 1 +- c, their residual,
// the circle calibration, and the +- symmetry of the stabilized ellipse
// spectrum.
inline std::vector<CriterionResult> suite_ellipse(const Tolerances& tols = {}) {
    std::vector<CriterionResult> out;
    const double kTol = tol_of(tols, "ellipse.kappa", 1e-9);
    const double rTol = tol_of(tols, "ellipse.invrho", 1e-3);
    const double ksTol = tol_of(tols, "ellipse.ks", 1.5e-3);
    double worstK = 0.0, worstR = 0.0, worstKs = 0.0;
    for (double c : {0.1, 0.3, 0.5, 0.7}) {
        GrunskyMatrix G = grunsky_from_series(detail::ellipse_series(c), 32);
        double kappa = grunsky_norm(G).kappa;
        FredholmSpectrum S = np_spectrum(BoundaryCurve(ellipse_curve(c)));
        worstK = std::max(worstK, std::abs(kappa - c));
        worstR = std::max(worstR, std::abs(S.invRho - c));
        worstKs = std::max(worstKs, kuhnau_schiffer_residual(kappa, S.invRho).absolute);
    }
    out.push_back(detail::bound_check("ellipse/kappa-closed-form", worstK, kTol));
    out.push_back(detail::bound_check("ellipse/invrho-closed-form", worstR, rTol));
    out.push_back(detail::bound_check("ellipse/ks-residual", worstKs, ksTol));

    // circle: spectrum {1, 0, 0, ...}
    FredholmSpectrum circ = np_spectrum(BoundaryCurve(circle_curve()));
    double nonunit = 0.0;
    for (double l : circ.eigenvalues) nonunit = std::max(nonunit, std::abs(l));
    const double cTol = tol_of(tols, "circle.spectrum", 1e-8);
    out.push_back(detail::bound_check("circle/nonunit-eigenvalues", nonunit, cTol));
    out.push_back(
        detail::bound_check("circle/unit-eigenvalue", std::abs(circ.dropped - 1.0), cTol));

    // +- symmetry of the stabilized ellipse spectrum across trapezoid refinements
    const double mTol = tol_of(tols, "spectrum.symmetry", 1e-4);
    MeshOptions mo;
    mo.meshTol = mTol;
    auto at = [&](int panels) {
        MeshOptions o = mo;
        o.panels = panels;
        return np_spectrum(BoundaryCurve(ellipse_curve(0.5)), o);
    };
    FredholmSpectrum fine = at(256), mid = at(192), coarse = at(128);
    auto stab = stabilized_spectrum(fine, mid, coarse);
    out.push_back(detail::bound_check("ellipse/spectrum-symmetry",
                                      symmetry_defect(stab, fine), mTol,
                                      std::to_string(stab.size()) + " stabilized"));
    return out;
}

// Homotopy scaling law alpha_mn(F_t) = alpha_mn(F) t^{m+n} on the square's
// exterior map, plus monotonicity of kappa(F_t) in t.
inline std::vector<CriterionResult> suite_homotopy(const Tolerances& tols = {}) {
    std::vector<CriterionResult> out;
    const double eTol = tol_of(tols, "homotopy.entrywise", 1e-8);
    Polygon sq = make_polygon({cplx(1, 1), cplx(-1, 1), cplx(-1, -1), cplx(1, -1)});
    ScExteriorMap M = normalize_sigma0(solve_parameters(sq));
    LaurentSeries S = sc_series(M, 96);
    const int N = 24;
    GrunskyMatrix G = grunsky_from_series(S, N);
    double worst = 0.0, prevKappa = -1.0;
    bool monotone = true;
    for (double t : {0.3, 0.6, 0.9}) {
        GrunskyMatrix Gt = grunsky_from_series(series_homotopy(S, t), N);
        GrunskyMatrix Gs = homotopy_scale(G, t);
        worst = std::max(worst, (Gt.beta - Gs.beta).cwiseAbs().maxCoeff());
        double k = grunsky_norm(Gt).kappa;
        if (k < prevKappa) monotone = false;
        prevKappa = k;
    }
    out.push_back(detail::bound_check("homotopy/scaling-law", worst, eTol));
    out.push_back({"homotopy/kappa-nondecreasing", monotone, prevKappa, 0.0,
                   "kappa at t=0.9: " + detail::fmt(prevKappa)});
    return out;
}

// Affine family: composing two real stretches gives an ellipse whose kappa
// and 1/rho equal the composed dilatation tau = (c1+c2)/(1+c1 c2); plus the
// quadratic-differential micro-suite (A1 normalization, the pairing identity,
// and the alpha-functional of a constant coefficient).
inline std::vector<CriterionResult> suite_affine(const Tolerances& tols = {}) {
    std::vector<CriterionResult> out;
    const double tTol = tol_of(tols, "affine.tau", 2e-3);
    double worst = 0.0;
    std::string detail_s;
    for (double c1 : {0.2, 0.4})
        for (double c2 : {0.2, 0.4}) {
            double tau =
                beltrami_compose(BeltramiConst(c1), BeltramiConst(c2)).value.real();
            double kappa =
                grunsky_norm(grunsky_from_series(detail::ellipse_series(tau), 32)).kappa;
            double invRho = np_spectrum(BoundaryCurve(ellipse_curve(tau))).invRho;
            worst = std::max({worst, std::abs(kappa - tau), std::abs(invRho - tau)});
            if (detail_s.empty())
                detail_s = "tau(0.2,0.2)=" + detail::fmt(tau);
        }
    out.push_back(detail::bound_check("affine/tau-composition", worst, tTol, detail_s));

    const double aTol = tol_of(tols, "pairing.identity", 1e-8);
    double worstNorm = 0.0;
    for (int n = 1; n <= 6; ++n) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(6);
        e[n - 1] = 1.0;
        worstNorm = std::max(worstNorm, std::abs(a1_norm(quad_differential(e)) - 1.0));
    }
    out.push_back(detail::bound_check("affine/a1-normalization", worstNorm, aTol));

    std::mt19937 rng(123);
    std::normal_distribution<double> nd;
    const cplx c(0.37, -0.21);
    BeltramiField mu = beltrami_const_field(c);
    double worstPair = 0.0;
    for (int s = 0; s < 10; ++s) {
        Eigen::VectorXcd x(6);
        for (int i = 0; i < 6; ++i) x[i] = cplx(nd(rng), nd(rng));
        x.normalize();
        cplx expected = c * x[0] * x[0];
        worstPair = std::max(worstPair,
                             std::abs(pairing(mu, quad_differential(x)) - expected));
    }
    out.push_back(detail::bound_check("affine/pairing-identity", worstPair, aTol));

    const double fTol = tol_of(tols, "alpha.constant", 1e-6);
    double worstAlpha = 0.0;
    for (cplx cc : {cplx(0.3, 0.0), cplx(0.2, 0.35)}) {
        double a = alpha_functional(beltrami_const_field(cc), 6);
        worstAlpha = std::max(worstAlpha, std::abs(a - std::abs(cc)));
    }
    out.push_back(detail::bound_check("affine/alpha-constant", worstAlpha, fTol));
    return out;
}

// Two-pipeline consistency on seeded random convex quadrilaterals, with the
// area-theorem invariant on every extracted series and the theorem-licensed
// reflection readout.
inline std::vector<CriterionResult> suite_quad(const Tolerances& tols = {},
                                               int samples = 20) {
    std::vector<CriterionResult> out;
    const double ksTol = tol_of(tols, "quad.ks", 5e-3);
    const double areaTol = tol_of(tols, "area.slack", 1e-6);
    double worstKs = 0.0, worstArea = 0.0, worstRow = 0.0;
    bool reflectOk = true;
    for (int seed = 0; seed < samples; ++seed) {
        detail::SolvedPolygon sp = detail::solve_pipeline(random_convex_quad(seed));
        double invRho = invrho_accelerated(BoundaryCurve(sp.map.target)).value;
        worstKs = std::max(worstKs,
                           kuhnau_schiffer_residual(sp.kappa, invRho).absolute);
        worstArea = std::max(worstArea, area_sum(sp.series) - 1.0);
        for (int m = 0; m < sp.grunsky.N; ++m)
            worstRow = std::max(worstRow, sp.grunsky.beta.row(m).norm() - 1.0);
        ReflectionReport rep = reflection_report(sp.kappa, TheoremTag::T4);
        if (!rep.kappaEqualsK || rep.q != sp.kappa ||
            std::abs(rep.rho * sp.kappa - 1.0) > 1e-14)
            reflectOk = false;
    }
    out.push_back(detail::bound_check("quad/two-pipeline-ks", worstKs, ksTol,
                                      std::to_string(samples) + " seeds"));
    out.push_back(detail::bound_check("quad/area-theorem", worstArea, areaTol));
    out.push_back(detail::bound_check("quad/grunsky-row-norms", worstRow, areaTol));
    out.push_back({"quad/reflection-readout", reflectOk, 0.0, 0.0, "tagged q=kappa, rho=1/kappa"});
    return out;
}

// Square: two-pipeline consistency, +- spectrum symmetry across graded
// refinements, and the area-theorem invariant.
inline std::vector<CriterionResult> suite_square(const Tolerances& tols = {}) {
    std::vector<CriterionResult> out;
    Polygon sq = make_polygon({cplx(1, 1), cplx(-1, 1), cplx(-1, -1), cplx(1, -1)});
    detail::SolvedPolygon sp = detail::solve_pipeline(sq);
    double invRho = invrho_accelerated(BoundaryCurve(sq)).value;
    const double ksTol = tol_of(tols, "quad.ks", 5e-3);
    out.push_back(detail::bound_check(
        "square/two-pipeline-ks", kuhnau_schiffer_residual(sp.kappa, invRho).absolute,
        ksTol, "kappa=" + detail::fmt(sp.kappa) + " invrho=" + detail::fmt(invRho)));

    const double areaTol = tol_of(tols, "area.slack", 1e-6);
    out.push_back(
        detail::bound_check("square/area-theorem", area_sum(sp.series) - 1.0, areaTol));

    const double mTol = tol_of(tols, "spectrum.symmetry", 1e-4);
    auto at = [&](int depth) {
        MeshOptions o;
        o.grading = depth;
        o.meshTol = mTol;
        o.unitTol = 1e-2;  // the stabilization filter is the refinement gate here
        return np_spectrum(BoundaryCurve(sq), o);
    };
    FredholmSpectrum fine = at(18), mid = at(16), coarse = at(14);
    auto stab = stabilized_spectrum(fine, mid, coarse);
    out.push_back(detail::bound_check("square/spectrum-symmetry",
                                      symmetry_defect(stab, fine), mTol,
                                      std::to_string(stab.size()) + " stabilized"));
    return out;
}

// Schwarzian quantities of the square and related closed forms.
inline std::vector<CriterionResult> suite_schwarzian(const Tolerances& tols = {}) {
    std::vector<CriterionResult> out;
    const double k = 3.0 - 2.0 * std::sqrt(2.0);  // square half-plane prevertices
    std::vector<double> a = {-1.0 / k, -1.0, 1.0, 1.0 / k};
    std::vector<double> al(4, 0.5);
    SchwarzianData d = halfplane_schwarzian(a, al);

    double cErr = 0.0;
    for (double cj : d.C) cErr = std::max(cErr, std::abs(cj + 0.625));
    for (const auto& row : d.Cpair)
        for (double cl : row) cErr = std::max(cErr, std::abs(cl - 0.25));
    out.push_back(detail::bound_check("schwarzian/square-constants", cErr, 0.0));

    const double rTol = tol_of(tols, "r0.square", 1e-12);
    double r0sq = r0_root(al).inclusive;
    double exact = (-2.0 + 2.0 * std::sqrt(6.0)) / 5.0;
    out.push_back(detail::bound_check("schwarzian/r0-square", std::abs(r0sq - exact), rTol));
    double r0tri = r0_root({1.0 / 3, 1.0 / 3, 1.0 / 3}).inclusive;
    out.push_back(detail::bound_check("schwarzian/r0-equilateral",
                                      std::abs(r0tri - 0.5687),
                                      tol_of(tols, "r0.equilateral", 1e-4)));

    const double bTol = tol_of(tols, "bnorm.closed-form", 1e-6);
    auto phi4 = [](cplx z) {
        cplx w = z + cplx(0, 1);
        cplx w2 = w * w;
        return 1.0 / (w2 * w2);
    };
    double b4 = bnorm(phi4);
    out.push_back(detail::bound_check("schwarzian/bnorm-closed-form",
                                      std::abs(b4 - 0.25), bTol));
    out.push_back(detail::bound_check("schwarzian/mu-sup-identity",
                                      std::abs(mu_sup(phi4, -2.0) - 0.5 * b4), bTol));

    // harmonic coefficient at r = r0/2: sup of |scale| y^2 |phi| equals
    // |scale|/4 times the B-norm (the metric carries 4y^2)
    double r0v = r0sq;
    auto phiR0 = s_fn_t(d, r0v);
    double bR0 = bnorm(phiR0);
    double r = r0v / 2.0;
    double nu = mu_sup(phiR0, -0.5 * r);
    double predicted = (0.5 * r) / 4.0 * bR0;
    out.push_back(detail::bound_check("schwarzian/nu-r-identity",
                                      std::abs(nu - predicted),
                                      tol_of(tols, "nu.identity", 1e-4) *
                                          std::max(1.0, bR0)));

    // decay |S| |z|^4 stable along a ray between |z| = 1e3 and 1e4
    cplx dir = std::polar(1.0, 0.7);
    double d3 = std::abs(d.schwarzian(1e3 * dir)) * 1e12;
    double d4 = std::abs(d.schwarzian(1e4 * dir)) * 1e16;
    out.push_back(detail::bound_check("schwarzian/quartic-decay",
                                      std::abs(d4 / d3 - 1.0), 0.1,
                                      "limit coeff ~ " + detail::fmt(d4)));
    return out;
}

inline std::vector<CriterionResult> run_suite(const std::string& name,
                                              const Tolerances& tols = {}) {
    if (name == "ellipse") return suite_ellipse(tols);
    if (name == "homotopy") return suite_homotopy(tols);
    if (name == "affine") return suite_affine(tols);
    if (name == "quad") return suite_quad(tols);
    if (name == "square") return suite_square(tols);
    if (name == "schwarzian") return suite_schwarzian(tols);
    throw domain_error("unknown suite: " + name);
}

}  // namespace qclab

#endif

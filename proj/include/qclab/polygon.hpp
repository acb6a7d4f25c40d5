#ifndef QCLAB_POLYGON_HPP
#define QCLAB_POLYGON_HPP

// Polygon representation with interior/exterior angle parameters, affine
// deformations g(w) = c1*w + c2*conj(w) + c3, and the chain-rule algebra of
// constant Beltrami coefficients.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qclab/errors.hpp"

namespace qclab {

using cplx = std::complex<double>;

inline constexpr double kDegenerateTol = 1e-12;

struct Polygon {
    std::vector<cplx> vertices;    // counterclockwise
    std::vector<double> beta;      // interior angle = pi*beta[j], 0 < beta < 2
    std::vector<double> alpha_ext; // exterior-domain parameter, alpha = 2 - beta

    std::size_t size() const { return vertices.size(); }

    double diameter() const {
        double d = 0.0;
        for (std::size_t i = 0; i < vertices.size(); ++i)
            for (std::size_t j = i + 1; j < vertices.size(); ++j)
                d = std::max(d, std::abs(vertices[i] - vertices[j]));
        return d;
    }
};

struct AffineDeformation {
    cplx c1, c2, c3;

    AffineDeformation(cplx c1_, cplx c2_, cplx c3_) : c1(c1_), c2(c2_), c3(c3_) {
        if (std::abs(c2) >= std::abs(c1))
            throw domain_error("affine deformation must be sense-preserving: |c2| < |c1|");
    }

    // complex dilatation
    cplx c() const { return c2 / c1; }

    cplx operator()(cplx w) const { return c1 * w + c2 * std::conj(w) + c3; }

    AffineDeformation inverse() const {
        // solve c1*w + c2*conj(w) = u - c3
        double det = std::norm(c1) - std::norm(c2);
        cplx d1 = std::conj(c1) / det;
        cplx d2 = -c2 / det;
        return AffineDeformation(d1, d2, -(d1 * c3 + d2 * std::conj(c3)));
    }
};

struct BeltramiConst {
    cplx value;

    explicit BeltramiConst(cplx v) : value(v) {
        if (std::abs(v) >= 1.0)
            throw domain_error("Beltrami coefficient must satisfy |value| < 1");
    }
};

namespace detail {

inline double signed_area(const std::vector<cplx>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const cplx& p = v[i];
        const cplx& q = v[(i + 1) % v.size()];
        a += p.real() * q.imag() - q.real() * p.imag();
    }
    return 0.5 * a;
}

inline bool segments_intersect(cplx a, cplx b, cplx c, cplx d) {
    auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
    double d1 = cross(b - a, c - a);
    double d2 = cross(b - a, d - a);
    double d3 = cross(d - c, a - c);
    double d4 = cross(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace detail

// Builds a Polygon from vertices given in either orientation. Angle
// parameters are computed from turn angles and renormalized so that
// sum(beta) = n - 2 holds exactly.
inline Polygon make_polygon(std::vector<cplx> vertices) {
    const std::size_t n = vertices.size();
    if (n < 3) throw degenerate_error("polygon needs at least 3 vertices");

    double scale = 0.0;
    for (const auto& v : vertices) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(vertices[i] - vertices[j]) < 1e-14 * scale)
                throw degenerate_error("repeated vertices");

    if (detail::signed_area(vertices) < 0.0)
        std::reverse(vertices.begin(), vertices.end());

    // simplicity: no two non-adjacent edges may cross
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            if (detail::segments_intersect(vertices[i], vertices[(i + 1) % n],
                                           vertices[j], vertices[(j + 1) % n]))
                throw degenerate_error("self-intersecting polyline");
        }
    }

    Polygon p;
    p.vertices = std::move(vertices);
    p.beta.resize(n);
    p.alpha_ext.resize(n);

    double beta_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        cplx in = p.vertices[j] - p.vertices[(j + n - 1) % n];
        cplx out = p.vertices[(j + 1) % n] - p.vertices[j];
        double turn = std::arg(out / in);  // in (-pi, pi]
        double bj = 1.0 - turn / std::numbers::pi;
        if (std::abs(bj - 1.0) < kDegenerateTol || bj < kDegenerateTol ||
            bj > 2.0 - kDegenerateTol)
            throw degenerate_error("degenerate vertex: angle parameter at 0, 1 or 2");
        p.beta[j] = bj;
        beta_sum += bj;
    }

    // distribute the closure residual proportionally so the sum is exact
    double factor = (static_cast<double>(n) - 2.0) / beta_sum;
    for (std::size_t j = 0; j < n; ++j) {
        p.beta[j] *= factor;
        p.alpha_ext[j] = 2.0 - p.beta[j];
    }
    return p;
}

inline bool is_convex(const Polygon& p) {
    return std::all_of(p.beta.begin(), p.beta.end(), [](double b) { return b < 1.0; });
}

// Image polygon under the real-linear map; angle parameters are recomputed
// from the image vertices.
inline Polygon affine_apply(const AffineDeformation& a, const Polygon& p) {
    std::vector<cplx> image(p.size());
    std::transform(p.vertices.begin(), p.vertices.end(), image.begin(),
                   [&a](cplx v) { return a(v); });
    return make_polygon(std::move(image));
}

// tau = (nu + mu~) / (1 + conj(nu) * mu~); the caller supplies mu~ already
// transported. For an affine stretch w = z + nu*conj(z), mu~ = mu.
inline BeltramiConst beltrami_compose(const BeltramiConst& nu, const BeltramiConst& mu_t) {
    return BeltramiConst((nu.value + mu_t.value) / (1.0 + std::conj(nu.value) * mu_t.value));
}

}  // namespace qclab

#endif

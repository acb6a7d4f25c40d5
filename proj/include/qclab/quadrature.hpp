#ifndef QCLAB_QUADRATURE_HPP
#define QCLAB_QUADRATURE_HPP

// Gauss-Legendre and Gauss-Jacobi rules via Golub-Welsch on the Jacobi
// recurrence matrix. Jacobi rules absorb endpoint factors (1-x)^a (1+x)^b
// into the weight, which is what the SC integrand needs at prevertices.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace qclab {

struct QuadRule {
    std::vector<double> nodes;    // in (-1, 1)
    std::vector<double> weights;
};

// Weight (1-x)^a (1+x)^b on [-1,1]; a, b > -1.
inline QuadRule gauss_jacobi(int n, double a, double b) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    auto diag = [a, b](int k) {
        if (k == 0) return (b - a) / (a + b + 2.0);
        double s = 2.0 * k + a + b;
        return (b * b - a * a) / (s * (s + 2.0));
    };
    auto offdiag2 = [a, b](int k) {  // beta_k, k >= 1
        if (k == 1)
            return 4.0 * (a + 1.0) * (b + 1.0) /
                   ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
        double s = 2.0 * k + a + b;
        return 4.0 * k * (k + a) * (k + b) * (k + a + b) /
               (s * s * (s + 1.0) * (s - 1.0));
    };
    for (int k = 0; k < n; ++k) J(k, k) = diag(k);
    for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = std::sqrt(offdiag2(k));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    double mu0 = std::exp((a + b + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) +
                          std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int k = 0; k < n; ++k) {
        r.nodes[k] = es.eigenvalues()(k);
        double v0 = es.eigenvectors()(0, k);
        r.weights[k] = mu0 * v0 * v0;
    }
    return r;
}

inline QuadRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

// Integrate f over [lo, hi] with a rule given on [-1,1].
template <typename F>
auto apply_rule(const QuadRule& r, double lo, double hi, F&& f) {
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    decltype(f(mid) * 0.0) acc{};
    for (std::size_t k = 0; k < r.nodes.size(); ++k)
        acc += r.weights[k] * f(mid + half * r.nodes[k]);
    return acc * half;
}

}  // namespace qclab

#endif

#ifndef QCLAB_ERRORS_HPP
#define QCLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qclab {

// Invalid geometric input: self-intersection, repeated vertices, angle
// parameters hitting {0,1,2}.
struct degenerate_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// A cross-check between two independent computation routes disagreed, or a
// requested tolerance cannot be met at the current sampling density.
struct accuracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iterative solver failed to converge; carries the best residual seen.
struct nonconvergence_error : std::runtime_error {
    nonconvergence_error(const std::string& msg, double best_residual)
        : std::runtime_error(msg), residual(best_residual) {}
    double residual;
};

// Discretization too coarse to certify the result.
struct resolution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qclab

#endif

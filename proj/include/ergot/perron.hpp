#pragma once

#include <cmath>
#include <sstream>

#include "ergot/errors.hpp"
#include "ergot/types.hpp"

namespace ergot {

struct PerronOptions {
    double tolerance = 1e-12;
    long max_iterations = 100000;
};

/// Perron root and left Perron vector: h M = lambda h, h > 0, |h|_2 = 1.
template <typename Scalar>
struct Eigenpair {
    Scalar lambda;
    VectorX<Scalar> h;
    Scalar residual;  ///< |h M - lambda h|_inf / |h|_inf
    long iterations;
};

namespace detail {

template <typename Derived>
typename Derived::Scalar left_residual(const Eigen::MatrixBase<Derived>& m,
                                       const VectorX<typename Derived::Scalar>& h,
                                       typename Derived::Scalar lambda) {
    return (m.transpose() * h - lambda * h).cwiseAbs().maxCoeff() / h.cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Dominant eigenpair of a nonnegative primitive matrix, acting from the left.
///
/// The 2x2 case uses the closed-form root of the characteristic quadratic;
/// larger matrices use power iteration with a Rayleigh-quotient estimate.
/// Either way the result must meet `options.tolerance` on the residual.
template <typename Derived>
Eigenpair<typename Derived::Scalar> dominant_eigenpair(const Eigen::MatrixBase<Derived>& m,
                                                      const PerronOptions& options = {}) {
    using Scalar = typename Derived::Scalar;
    using std::abs;
    using std::sqrt;

    if (m.rows() != m.cols() || m.rows() == 0) throw DomainError("Perron eigenproblem needs a nonempty square matrix");
    if (!m.allFinite() || (m.array() < Scalar(0)).any())
        throw DomainError("Perron eigenproblem needs a finite nonnegative matrix");

    const Eigen::Index n = m.rows();
    if (n == 2 && (m.array() > Scalar(0)).all()) {
        // h (M - lambda I) = 0  =>  h ~ (M10, lambda - M00)
        const Scalar gap = m(0, 0) - m(1, 1);
        const Scalar root = sqrt(gap * gap + Scalar(4) * m(0, 1) * m(1, 0));
        const Scalar lambda = (m(0, 0) + m(1, 1) + root) / Scalar(2);
        VectorX<Scalar> h(2);
        h << m(1, 0), (root - gap) / Scalar(2);
        h /= h.norm();
        const Scalar residual = detail::left_residual(m, h, lambda);
        if (residual <= Scalar(options.tolerance)) return {lambda, h, residual, 0};
    }

    VectorX<Scalar> h = VectorX<Scalar>::Constant(n, Scalar(1) / sqrt(Scalar(n)));
    Scalar lambda = Scalar(0);
    Scalar residual = Scalar(0);
    for (long it = 1; it <= options.max_iterations; ++it) {
        VectorX<Scalar> next = m.transpose() * h;
        lambda = h.dot(next) / h.squaredNorm();
        residual = (next - lambda * h).cwiseAbs().maxCoeff() / h.cwiseAbs().maxCoeff();
        const Scalar norm = next.norm();
        if (!(norm > Scalar(0))) throw NumericalError("power iteration collapsed to the zero vector");
        h = next / norm;
        if (residual <= Scalar(options.tolerance)) {
            residual = detail::left_residual(m, h, lambda);
            if (residual <= Scalar(options.tolerance)) return {lambda, h, residual, it};
        }
    }
    std::ostringstream msg;
    msg << "power iteration did not converge in " << options.max_iterations << " iterations (residual " << residual
        << ")";
    throw NumericalError(msg.str(), static_cast<double>(residual));
}

}  // namespace ergot

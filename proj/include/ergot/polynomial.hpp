#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ergot/types.hpp"

namespace ergot::poly {

// Polynomials are coefficient vectors in ascending order: c(0) + c(1) x + ...

template <typename Scalar>
VectorX<Scalar> constant(Scalar c) {
    return VectorX<Scalar>::Constant(1, c);
}

/// c0 + c1 x
template <typename Scalar>
VectorX<Scalar> linear(Scalar c0, Scalar c1) {
    VectorX<Scalar> p(2);
    p << c0, c1;
    return p;
}

/// c0 + c1 x + c2 x^2
template <typename Scalar>
VectorX<Scalar> quadratic(Scalar c0, Scalar c1, Scalar c2) {
    VectorX<Scalar> p(3);
    p << c0, c1, c2;
    return p;
}

template <typename DerivedA, typename DerivedB>
VectorX<typename DerivedA::Scalar> add(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = typename DerivedA::Scalar;
    VectorX<Scalar> out = VectorX<Scalar>::Zero(std::max(a.size(), b.size()));
    out.head(a.size()) += a;
    out.head(b.size()) += b;
    return out;
}

template <typename DerivedA, typename DerivedB>
VectorX<typename DerivedA::Scalar> sub(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    return add(a, -b);
}

template <typename DerivedA, typename DerivedB>
VectorX<typename DerivedA::Scalar> mul(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = typename DerivedA::Scalar;
    VectorX<Scalar> out = VectorX<Scalar>::Zero(a.size() + b.size() - 1);
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i, b.size()) += a(i) * b;
    return out;
}

template <typename Derived>
typename Derived::Scalar eval(const Eigen::MatrixBase<Derived>& p, typename Derived::Scalar x) {
    typename Derived::Scalar acc(0);
    for (Eigen::Index i = p.size() - 1; i >= 0; --i) acc = acc * x + p(i);
    return acc;
}

template <typename Derived>
VectorX<typename Derived::Scalar> derivative(const Eigen::MatrixBase<Derived>& p) {
    using Scalar = typename Derived::Scalar;
    if (p.size() <= 1) return VectorX<Scalar>::Zero(1);
    VectorX<Scalar> out(p.size() - 1);
    for (Eigen::Index i = 1; i < p.size(); ++i) out(i - 1) = Scalar(i) * p(i);
    return out;
}

/// Drops leading coefficients below `relative` times the largest magnitude.
template <typename Derived>
VectorX<typename Derived::Scalar> trimmed(const Eigen::MatrixBase<Derived>& p, typename Derived::Scalar relative) {
    using std::abs;
    const auto scale = p.cwiseAbs().maxCoeff();
    Eigen::Index n = p.size();
    while (n > 1 && abs(p(n - 1)) <= relative * scale) --n;
    return p.head(n);
}

/// sum_k |c_k| |x|^k, the natural scale for judging |p(x)|.
template <typename Derived>
typename Derived::Scalar magnitude(const Eigen::MatrixBase<Derived>& p, typename Derived::Scalar x) {
    using std::abs;
    return eval(p.cwiseAbs(), abs(x));
}

/// Real roots of p: eigenvalues of the companion matrix, real parts polished
/// by Newton, kept when |p(x)| <= residual * magnitude(p, x). Sorted, with
/// coincident roots merged. An identically zero polynomial has no isolated roots.
template <typename Derived>
std::vector<typename Derived::Scalar> real_roots(const Eigen::MatrixBase<Derived>& coefficients,
                                                 typename Derived::Scalar residual = 1e-10) {
    using Scalar = typename Derived::Scalar;
    using std::abs;
    const VectorX<Scalar> p = trimmed(coefficients, Scalar(1e-14));
    const Eigen::Index degree = p.size() - 1;
    std::vector<Scalar> roots;
    if (degree < 1) return roots;

    MatrixX<Scalar> companion = MatrixX<Scalar>::Zero(degree, degree);
    for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = Scalar(1);
    for (Eigen::Index i = 0; i < degree; ++i) companion(i, degree - 1) = -p(i) / p(degree);
    Eigen::EigenSolver<MatrixX<Scalar>> solver(companion, false);
    const VectorX<Scalar> dp = derivative(p);

    for (Eigen::Index k = 0; k < degree; ++k) {
        Scalar x = solver.eigenvalues()(k).real();
        for (int it = 0; it < 8; ++it) {
            const Scalar slope = eval(dp, x);
            if (slope == Scalar(0)) break;
            const Scalar next = x - eval(p, x) / slope;
            if (!(abs(eval(p, next)) < abs(eval(p, x)))) break;
            x = next;
        }
        if (abs(eval(p, x)) <= residual * magnitude(p, x)) roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    std::vector<Scalar> unique;
    for (Scalar r : roots)
        if (unique.empty() || abs(r - unique.back()) > Scalar(1e-12) * std::max(Scalar(1), abs(r))) unique.push_back(r);
    return unique;
}

}  // namespace ergot::poly

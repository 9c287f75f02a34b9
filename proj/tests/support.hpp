#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "ergot/transport.hpp"

namespace ergot::testing {

inline CostPair example_costs() {
    Matrix2 c1, c2;
    c1 << 3, 5, 2, 4;
    c2 << 2, 1, 4, 3;
    return CostPair(c1, c2, 0.7);
}

inline Matrix exp_1234() {
    Matrix e(2, 2);
    e << 1, 2, 3, 4;
    return e;
}

/// Spectral radius plus left and right Perron vectors from a general
/// eigensolver, independent of the library's closed form and power iteration.
struct PerronTriple {
    double rho;
    Eigen::Vector2d left;
    Eigen::Vector2d right;
};

inline Eigen::Vector2d positive_eigenvector(const Eigen::Matrix2d& m) {
    Eigen::EigenSolver<Eigen::Matrix2d> es(m);
    int k = es.eigenvalues()(0).real() >= es.eigenvalues()(1).real() ? 0 : 1;
    Eigen::Vector2d v = es.eigenvectors().col(k).real();
    if (v.sum() < 0) v = -v;
    return v / v.norm();
}

inline PerronTriple perron_triple(const Eigen::Matrix2d& m) {
    Eigen::EigenSolver<Eigen::Matrix2d> es(m);
    const double rho = std::max(es.eigenvalues()(0).real(), es.eigenvalues()(1).real());
    return {rho, positive_eigenvector(m.transpose()), positive_eigenvector(m)};
}

/// d/ds log rho(e^s C1 + C2) = h e^s C1 r / (h B r).
inline double log_rho_slope(const CostPair& costs, double s) {
    const Eigen::Matrix2d b = std::exp(s) * costs.c1() + costs.c2();
    const PerronTriple t = perron_triple(b);
    return t.left.dot(std::exp(s) * costs.c1() * t.right) / t.left.dot(b * t.right);
}

/// The dual minimizer by a separate route. On z = t (e^s, 1) the pressure
/// constraint fixes t = 1 / rho(B(e^s, 1)), leaving the convex objective
/// log rho(B(e^s, 1)) - p s in one variable; its stationary point solves
/// slope(s) = p, found by bisection on the increasing slope.
inline Eigen::Vector2d brute_force_dual(const CostPair& costs) {
    double lo = -60.0, hi = 60.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (log_rho_slope(costs, mid) < costs.p() ? lo : hi) = mid;
    }
    const double s = 0.5 * (lo + hi);
    const double rho = perron_triple(std::exp(s) * costs.c1() + costs.c2()).rho;
    return Eigen::Vector2d(std::exp(s), 1.0) / rho;
}

/// The p for which a point z on the pressure-zero set is the dual minimizer.
inline double recover_p(const Eigen::Matrix2d& c1, const Eigen::Matrix2d& c2, const Eigen::Vector2d& z) {
    const Eigen::Matrix2d b = z(0) * c1 + z(1) * c2;
    const PerronTriple t = perron_triple(b);
    return t.left.dot(z(0) * c1 * t.right) / t.left.dot(b * t.right);
}

/// Stationary law of the 8-state plan chain on (x, y1, y2), built directly
/// from the normalized kernel and taken from the eigenvector at 1.
inline Eigen::VectorXd plan_stationary_8(const Matrix2& cbar1, const Matrix2& cbar2) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(8, 8);
    auto idx = [](int x, int i, int j) { return x * 4 + i * 2 + j; };
    for (int x = 0; x < 2; ++x)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int a = 0; a < 2; ++a)
                    for (int k = 0; k < 2; ++k)
                        p(idx(a, k, i), idx(x, i, j)) += (a == 0 ? cbar1 : cbar2)(k, i);
    Eigen::EigenSolver<Eigen::MatrixXd> es(p);
    int best = 0;
    for (int k = 1; k < 8; ++k)
        if (std::abs(es.eigenvalues()(k) - 1.0) < std::abs(es.eigenvalues()(best) - 1.0)) best = k;
    Eigen::VectorXd v = es.eigenvectors().col(best).real();
    return v / v.sum();
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline CostPair random_costs(std::mt19937_64& rng) {
    Matrix2 c1, c2;
    for (int k = 0; k < 4; ++k) {
        c1(k / 2, k % 2) = uniform(rng, 0.2, 5.0);
        c2(k / 2, k % 2) = uniform(rng, 0.2, 5.0);
    }
    return CostPair(c1, c2, uniform(rng, 0.05, 0.95));
}

inline Matrix2 random_column_stochastic(std::mt19937_64& rng) {
    Matrix2 m;
    for (int j = 0; j < 2; ++j) {
        const double u = uniform(rng, 0.05, 0.95);
        m(0, j) = u;
        m(1, j) = 1.0 - u;
    }
    return m;
}

}  // namespace ergot::testing

#include "ergot/transport.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "ergot/errors.hpp"
#include "ergot/perron.hpp"
#include "ergot/polynomial.hpp"

namespace ergot {

CostPair::CostPair(Matrix2 c1, Matrix2 c2, double p) : c1_(std::move(c1)), c2_(std::move(c2)), p_(p) {
    if (!c1_.allFinite() || !c2_.allFinite() || !(c1_.array() > 0.0).all() || !(c2_.array() > 0.0).all())
        throw DomainError("cost matrices must have finite, strictly positive entries");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("mu = (p, 1-p) needs 0 < p < 1");
}

CostPair CostPair::from_log(const Matrix2& c1, const Matrix2& c2, double p) {
    if (!c1.allFinite() || !c2.allFinite()) throw DomainError("log-scale costs must be finite");
    return CostPair(c1.array().exp().matrix(), c2.array().exp().matrix(), p);
}

Matrix2 CostPair::c12() const {
    Matrix2 m;
    m << c1_(0, 0), c1_(0, 1), c2_(1, 0), c2_(1, 1);
    return m;
}

Matrix2 CostPair::c21() const {
    Matrix2 m;
    m << c2_(0, 0), c2_(0, 1), c1_(1, 0), c1_(1, 1);
    return m;
}

double ConicCoefficients::g(const Vector2& z) const {
    return qA * z(0) * z(0) + qB * z(1) * z(1) + qC * z(0) * z(1) + qD * z(0) + qE * z(1) + 1.0;
}

Vector2 ConicCoefficients::g_gradient(const Vector2& z) const {
    return {2.0 * qA * z(0) + qC * z(1) + qD, 2.0 * qB * z(1) + qC * z(0) + qE};
}

double ConicCoefficients::lagrange(const Vector2& z, double p) const {
    return 2.0 * qB * p * z(1) * z(1) - 2.0 * qA * (1.0 - p) * z(0) * z(0) + qC * (2.0 * p - 1.0) * z(0) * z(1) +
           qE * p * z(1) - qD * (1.0 - p) * z(0);
}

Vector2 ConicCoefficients::lagrange_gradient(const Vector2& z, double p) const {
    return {-4.0 * qA * (1.0 - p) * z(0) + qC * (2.0 * p - 1.0) * z(1) - qD * (1.0 - p),
            4.0 * qB * p * z(1) + qC * (2.0 * p - 1.0) * z(0) + qE * p};
}

ConicCoefficients conic_coefficients(const CostPair& costs) {
    return {costs.c1().determinant(), costs.c2().determinant(),
            costs.c12().determinant() + costs.c21().determinant(), -costs.c1().trace(), -costs.c2().trace()};
}

namespace {

double objective_at(const Vector2& z, double p) {
    if (!(z(0) > 0.0 && z(1) > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return -p * std::log(z(0)) - (1.0 - p) * std::log(z(1));
}

double g_magnitude(const ConicCoefficients& q, const Vector2& z) {
    const double a = std::abs(z(0)), b = std::abs(z(1));
    return std::abs(q.qA) * a * a + std::abs(q.qB) * b * b + std::abs(q.qC) * a * b + std::abs(q.qD) * a +
           std::abs(q.qE) * b + 1.0;
}

double lagrange_magnitude(const ConicCoefficients& q, const Vector2& z, double p) {
    const double a = std::abs(z(0)), b = std::abs(z(1));
    return 2.0 * std::abs(q.qB) * p * b * b + 2.0 * std::abs(q.qA) * (1.0 - p) * a * a +
           std::abs(q.qC * (2.0 * p - 1.0)) * a * b + std::abs(q.qE) * p * b + std::abs(q.qD) * (1.0 - p) * a;
}

/// 2-D Newton on (g, Lagrange); returns the best point seen.
Vector2 polish(const ConicCoefficients& q, double p, Vector2 z, double tolerance) {
    const auto residual = [&](const Vector2& v) { return std::max(std::abs(q.g(v)), std::abs(q.lagrange(v, p))); };
    Vector2 best = z;
    double best_residual = residual(z);
    for (int it = 0; it < 60 && best_residual > tolerance; ++it) {
        Matrix2 jacobian;
        jacobian.row(0) = q.g_gradient(z).transpose();
        jacobian.row(1) = q.lagrange_gradient(z, p).transpose();
        const double det = jacobian.determinant();
        if (!(std::abs(det) > 1e-300) || !std::isfinite(det)) break;
        const Vector2 f(q.g(z), q.lagrange(z, p));
        z -= jacobian.inverse() * f;
        if (!z.allFinite()) break;
        const double r = residual(z);
        if (r < best_residual) {
            best = z;
            best_residual = r;
        } else if (it > 5) {
            break;
        }
    }
    return best;
}

}  // namespace

std::vector<DualCandidate> dual_candidates(const CostPair& costs, const DualOptions& options) {
    const ConicCoefficients q = conic_coefficients(costs);
    const double p = costs.p();

    // Both conics as quadratics in z2 with coefficients polynomial in z1:
    //   g = a2 z2^2 + a1 z2 + a0,   L = b2 z2^2 + b1 z2 + b0,   b2 = 2 p a2.
    const Vector a2 = poly::constant(q.qB);
    const Vector a1 = poly::linear(q.qE, q.qC);
    const Vector a0 = poly::quadratic(1.0, q.qD, q.qA);
    const Vector b1 = poly::linear(q.qE * p, q.qC * (2.0 * p - 1.0));
    const Vector b0 = poly::quadratic(0.0, -q.qD * (1.0 - p), -2.0 * q.qA * (1.0 - p));

    // Sylvester resultant in z2 divided by qB; stays valid when qB = 0,
    // where it picks up the extraneous factor (b1 - 2 p a1).
    const Vector u = poly::sub(b0, (2.0 * p) * a0);
    const Vector v = poly::sub(b1, (2.0 * p) * a1);
    const Vector linear_resultant = poly::sub(poly::mul(a1, b0), poly::mul(a0, b1));
    const Vector resultant = poly::sub(poly::mul(a2, poly::mul(u, u)), poly::mul(v, linear_resultant));

    double scale = 1.0;
    for (double c : {q.qA, q.qB, q.qC, q.qD, q.qE}) scale = std::max(scale, std::abs(c));
    if (resultant.cwiseAbs().maxCoeff() <= 1e-13 * std::pow(scale, 4))
        throw NumericalError("the two conics share a common component; intersection is not isolated");

    std::vector<Vector2> points;
    for (double z1 : poly::real_roots(resultant, options.root_residual)) {
        std::vector<double> z2s;
        const Vector g_in_z2 = poly::quadratic(poly::eval(a0, z1), poly::eval(a1, z1), q.qB);
        const Vector l_in_z2 = poly::quadratic(poly::eval(b0, z1), poly::eval(b1, z1), 2.0 * p * q.qB);
        for (const Vector* c : {&g_in_z2, &l_in_z2})
            for (double z2 : poly::real_roots(*c, 1e-8)) z2s.push_back(z2);
        for (double z2 : z2s) {
            const Vector2 z(z1, z2);
            if (std::abs(q.g(z)) > 1e-6 * g_magnitude(q, z) || std::abs(q.lagrange(z, p)) > 1e-6 * std::max(1.0, lagrange_magnitude(q, z, p)))
                continue;
            const Vector2 polished = polish(q, p, z, options.newton_tolerance);
            const bool duplicate = std::any_of(points.begin(), points.end(), [&](const Vector2& other) {
                return (other - polished).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + polished.cwiseAbs().maxCoeff());
            });
            if (!duplicate) points.push_back(polished);
        }
    }
    std::sort(points.begin(), points.end(),
              [](const Vector2& a, const Vector2& b) { return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1)); });

    std::vector<DualCandidate> out;
    for (const Vector2& z : points) {
        DualCandidate c;
        c.z = z;
        c.conic_residual = std::abs(q.g(z));
        c.lagrange_residual = std::abs(q.lagrange(z, p));
        c.other_eigenvalue = costs.combined(z).trace() - 1.0;
        c.objective = objective_at(z, p);
        c.positive = z(0) > 0.0 && z(1) > 0.0;
        c.on_conic = c.conic_residual <= options.conic_residual &&
                     c.lagrange_residual <= options.conic_residual * std::max(1.0, lagrange_magnitude(q, z, p));
        c.ambiguous = std::abs(c.other_eigenvalue - 1.0) <= options.spectral_margin;
        c.spectral = c.other_eigenvalue < 1.0 - options.spectral_margin;
        c.accepted = c.positive && c.on_conic && c.spectral;
        if (c.accepted) {
            c.verdict = "admissible";
        } else {
            std::string failed;
            if (!c.positive) failed += "not-positive ";
            if (!c.on_conic) failed += "off-conic ";
            if (!c.spectral) failed += c.ambiguous ? "spectral-ambiguous " : "spectral ";
            failed.pop_back();
            c.verdict = "rejected: " + failed;
        }
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

std::string describe(const std::vector<DualCandidate>& candidates) {
    std::ostringstream msg;
    msg << std::setprecision(9);
    for (const DualCandidate& c : candidates)
        msg << "\n  z = (" << c.z(0) << ", " << c.z(1) << ")  |g| = " << c.conic_residual
            << "  other eigenvalue = " << c.other_eigenvalue << "  " << c.verdict;
    return msg.str();
}

DualSolution make_solution(const CostPair& costs, const Vector2& z) {
    const ConicCoefficients q = conic_coefficients(costs);
    const double p = costs.p();
    const double phi1 = -std::log(z(0));
    const double phi2 = -std::log(z(1));
    return DualSolution{z(0), z(1), phi1, phi2, p * phi1 + (1.0 - p) * phi2, std::abs(q.g(z)),
                        costs.combined(z).trace() - 1.0};
}

}  // namespace

DualReport solve_dual(const CostPair& costs, const DualOptions& options) {
    std::vector<DualCandidate> candidates = dual_candidates(costs, options);
    std::vector<const DualCandidate*> admissible;
    for (const DualCandidate& c : candidates)
        if (c.accepted) admissible.push_back(&c);
    if (admissible.empty())
        throw InfeasibleError("no conic intersection is admissible:" + describe(candidates));

    std::sort(admissible.begin(), admissible.end(),
              [](const DualCandidate* a, const DualCandidate* b) { return a->objective < b->objective; });
    if (admissible.size() > 1 && admissible[1]->objective - admissible[0]->objective <= options.tie_tolerance)
        throw NumericalError("two admissible candidates tie on the dual objective:" + describe(candidates));

    DualSolution solution = make_solution(costs, admissible.front()->z);
    return DualReport{solution, std::move(candidates)};
}

bool is_column_stochastic(const Matrix2& m, double tolerance) {
    return (m.array() >= 0.0).all() && ((m.colwise().sum().array() - 1.0).abs() <= tolerance).all();
}

DualSolution solve_dual_stochastic(const CostPair& costs, double tolerance) {
    if (!is_column_stochastic(costs.c1(), tolerance) || !is_column_stochastic(costs.c2(), tolerance))
        throw DomainError("stochastic fast path needs column-stochastic C^1 and C^2");
    return make_solution(costs, Vector2(costs.p(), 1.0 - costs.p()));
}

double PlanKernel::normalization_deviation() const {
    return ((cbar1 + cbar2).colwise().sum().array() - 1.0).abs().maxCoeff();
}

BranchKernel PlanKernel::branch_kernel() const {
    Matrix weights(4, 2);
    weights.topRows(2) = cbar1;
    weights.bottomRows(2) = cbar2;
    return BranchKernel(Alphabet(2), 2, 1, std::move(weights));
}

PlanKernel build_plan_kernel(const CostPair& costs, const DualSolution& solution, double eigen_tolerance) {
    const Vector2 z(solution.z1, solution.z2);
    if (!(z(0) > 0.0 && z(1) > 0.0)) throw DomainError("dual solution must be positive");
    const Matrix2 b = costs.combined(z);
    const Eigenpair<double> eigen = dominant_eigenpair(b);
    if (std::abs(eigen.lambda - 1.0) > eigen_tolerance) {
        std::ostringstream msg;
        msg << "Perron root of B(z) is " << std::setprecision(15) << eigen.lambda
            << ", not 1: the dual solution is inconsistent with the costs";
        throw NumericalError(msg.str(), std::abs(eigen.lambda - 1.0));
    }
    const Vector2 h = eigen.h;
    const Matrix2 ratio = h * h.cwiseInverse().transpose();  // h(i) / h(j)
    PlanKernel kernel{(z(0) * costs.c1()).cwiseProduct(ratio),
                      (z(1) * costs.c2()).cwiseProduct(ratio),
                      h,
                      b,
                      eigen.lambda,
                      solution};
    return kernel;
}

double plan_pressure(const CostPair& costs, const PlanKernel& kernel, const StationaryDistribution& stationary) {
    const StateSpace& space = stationary.space;
    if (space.alphabet.size() != 2 || space.x_count != 2 || space.window < 2)
        throw DomainError("plan pressure needs the plan chain over (x, y1, y2)");
    const Vector& rho = stationary.probabilities;
    if (rho.size() != space.size() || !rho.allFinite() || (rho.array() < 0.0).any() ||
        std::abs(rho.sum() - 1.0) > 1e-9)
        throw DomainError("stationary input is not a probability vector");

    const std::uint64_t divisor = space.alphabet.word_count(space.window - 2);
    double total = 0.0;
    for (Eigen::Index s = 0; s < rho.size(); ++s) {
        const int x = space.x_of(s);
        const std::uint64_t pair = space.word_code_of(s) / divisor;
        const auto i = static_cast<Eigen::Index>(pair / 2);
        const auto j = static_cast<Eigen::Index>(pair % 2);
        total += rho(s) * (std::log(costs.c(x)(i, j)) - std::log(kernel.cbar(x)(i, j)));
    }
    return total;
}

}  // namespace ergot

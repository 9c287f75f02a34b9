#pragma once

#include <string>
#include <vector>

#include "ergot/kernel.hpp"
#include "ergot/oracle.hpp"
#include "ergot/types.hpp"

namespace ergot {

/// Cost c(x, y1, y2) for X = {1, 2} and d = 2, stored on the exponential
/// scale C^x(i, j) = e^{c(x,i,j)}, together with mu = (p, 1 - p).
class CostPair {
public:
    CostPair(Matrix2 c1, Matrix2 c2, double p);

    /// Costs given on the log scale c(x,i,j).
    static CostPair from_log(const Matrix2& c1, const Matrix2& c2, double p);

    const Matrix2& c1() const noexcept { return c1_; }
    const Matrix2& c2() const noexcept { return c2_; }
    const Matrix2& c(int x) const { return x == 1 ? c1_ : c2_; }
    double p() const noexcept { return p_; }
    Vector2 mu() const { return {p_, 1.0 - p_}; }

    /// Rows of C^1 over the second row of C^2, and vice versa.
    Matrix2 c12() const;
    Matrix2 c21() const;

    /// B(z) = z1 C^1 + z2 C^2
    Matrix2 combined(const Vector2& z) const { return z(0) * c1_ + z(1) * c2_; }

private:
    Matrix2 c1_;
    Matrix2 c2_;
    double p_;
};

/// g(z) = qA z1^2 + qB z2^2 + qC z1 z2 + qD z1 + qE z2 + 1 = det(B(z) - I).
struct ConicCoefficients {
    double qA, qB, qC, qD, qE;

    double g(const Vector2& z) const;
    Vector2 g_gradient(const Vector2& z) const;
    /// Lagrange condition for minimizing -p log z1 - (1-p) log z2 on g = 0.
    double lagrange(const Vector2& z, double p) const;
    Vector2 lagrange_gradient(const Vector2& z, double p) const;
};

ConicCoefficients conic_coefficients(const CostPair& costs);

struct DualOptions {
    double root_residual = 1e-10;    ///< relative residual for real roots of the resultant
    double newton_tolerance = 1e-12; ///< polish target for (g, Lagrange)
    double conic_residual = 1e-9;    ///< |g| after polishing
    double spectral_margin = 1e-9;   ///< other eigenvalue must stay below 1 - margin
    double tie_tolerance = 1e-12;
};

/// One intersection of the two conics and its admissibility verdict.
struct DualCandidate {
    Vector2 z;
    double conic_residual;     ///< |g(z)|
    double lagrange_residual;  ///< |Lagrange(z)|
    double other_eigenvalue;   ///< trace B(z) - 1, the eigenvalue other than 1
    double objective;          ///< -p log z1 - (1-p) log z2 (NaN unless z > 0)
    bool positive;             ///< z1, z2 > 0
    bool on_conic;             ///< both conic residuals small
    bool spectral;             ///< other eigenvalue below 1
    bool ambiguous;            ///< other eigenvalue within the margin band around 1
    bool accepted;
    std::string verdict;
};

struct DualSolution {
    double z1, z2;
    double phi1, phi2;  ///< -log z
    double objective;   ///< p phi1 + (1-p) phi2
    double conic_residual;
    double subdominant;  ///< eigenvalue of B(z) other than the Perron root 1
};

struct DualReport {
    DualSolution solution;
    std::vector<DualCandidate> candidates;
};

/// Every real intersection of g = 0 and the Lagrange conic, polished and
/// classified as admissible or not.
std::vector<DualCandidate> dual_candidates(const CostPair& costs, const DualOptions& options = {});

/// Minimizer of p phi1 + (1-p) phi2 subject to zero pressure. Throws
/// InfeasibleError when no candidate survives and NumericalError on a tie.
DualReport solve_dual(const CostPair& costs, const DualOptions& options = {});

/// Closed form z = (p, 1 - p) for column-stochastic C^1, C^2.
DualSolution solve_dual_stochastic(const CostPair& costs, double tolerance = 1e-10);

bool is_column_stochastic(const Matrix2& m, double tolerance = 1e-10);

/// Normalized plan kernel Cbar^x(i, j) = z_x C^x(i, j) h(i) / h(j), where h
/// is the left Perron vector of B(z) at eigenvalue 1.
struct PlanKernel {
    Matrix2 cbar1;
    Matrix2 cbar2;
    Vector2 h;
    Matrix2 b;
    double perron_root;
    DualSolution origin;

    const Matrix2& cbar(int x) const { return x == 1 ? cbar1 : cbar2; }
    /// max_j |sum_{x,i} Cbar^x(i, j) - 1|
    double normalization_deviation() const;
    /// Branch (alpha, i) with context y1 = j has weight Cbar^alpha(i, j).
    BranchKernel branch_kernel() const;
};

PlanKernel build_plan_kernel(const CostPair& costs, const DualSolution& solution, double eigen_tolerance = 1e-8);

/// int c dpi + H(pi) for the Markov plan with Jacobian J(x, i j ...) = Cbar^x(i, j),
/// evaluated against an exact stationary distribution of the plan chain.
double plan_pressure(const CostPair& costs, const PlanKernel& kernel, const StationaryDistribution& stationary);

}  // namespace ergot

#pragma once

#include <vector>

#include "ergot/kernel.hpp"
#include "ergot/perron.hpp"
#include "ergot/potential.hpp"

namespace ergot {

/// Matrix of the transfer operator L_A on functions of the first m-1 symbols.
///
/// Row index is the prefix of the preimage i y, column index the prefix of
/// y, so that L_A v = v M for row vectors v. For m = 2 this is
/// M(i, j) = e^{A(ij)}; for m > 2 each column has d nonzero entries.
class TransferMatrix {
public:
    TransferMatrix(Alphabet alphabet, int potential_depth, Matrix entries);

    Alphabet alphabet() const noexcept { return alphabet_; }
    int potential_depth() const noexcept { return potential_depth_; }
    int state_depth() const noexcept { return potential_depth_ - 1; }
    const Matrix& entries() const noexcept { return entries_; }

private:
    Alphabet alphabet_;
    int potential_depth_;
    Matrix entries_;
};

/// Depth-0 and depth-1 potentials are first padded to depth 2.
TransferMatrix build_transfer_matrix(const LocallyConstantPotential& potential);

Eigenpair<double> dominant_eigenpair(const TransferMatrix& matrix, const PerronOptions& options = {});

struct Normalization {
    LocallyConstantPotential potential;  ///< A + log h - log h o sigma - log lambda
    Eigenpair<double> eigen;
    double deviation;  ///< normalization_deviation(potential)
};

Normalization normalize_potential(const LocallyConstantPotential& potential, const PerronOptions& options = {});

/// Kernel of the classical Elton chain, weights e^{A(i w)}. Throws
/// DomainError when the potential is not normalized within `tolerance`.
BranchKernel gibbs_kernel(const LocallyConstantPotential& normalized, double tolerance = 1e-10);

/// One application of L_A to u (depth of u at most depth of A); the result
/// has depth max(depth A, 2) - 1.
LocallyConstantPotential transfer_apply(const LocallyConstantPotential& potential, const LocallyConstantPotential& u);

struct TransferIterate {
    LocallyConstantPotential table;  ///< L_A^n(u) / lambda^n
    double lambda;
    /// phi_A * nu_A(u) with int phi_A dnu_A = 1; nu_A(u) = int (u / phi_A) dmu_A.
    LocallyConstantPotential limit;
    /// distances[k-1] = sup |L_A^k(u)/lambda^k - limit| for k = 1..n.
    std::vector<double> distances;
};

/// The Gibbs measure used for the limit comes from the exact stationary
/// distribution of the classical chain (oracle module).
TransferIterate transfer_iterate(const LocallyConstantPotential& potential, const LocallyConstantPotential& u, int n,
                                 const PerronOptions& options = {});

}  // namespace ergot

#pragma once

#include "ergot/symbolic.hpp"
#include "ergot/types.hpp"

namespace ergot {

/// Locally constant transition kernel of an Elton chain on X x Omega.
///
/// Branches are the pairs (alpha, i) with alpha in 1..x_count and i in
/// 1..d, ordered x ascending then i ascending (branch index
/// (alpha-1)*d + (i-1)). Taking branch (alpha, i) from state (x, y) moves
/// to (alpha, i y). The branch probability depends only on the first
/// `context_depth` symbols of y:
///
///     weights(branch, context_code)
///
/// so every column of `weights` is a probability vector. The classical
/// Gibbs sampler is the case x_count == 1.
class BranchKernel {
public:
    BranchKernel(Alphabet alphabet, int x_count, int context_depth, Matrix weights);

    Alphabet alphabet() const noexcept { return alphabet_; }
    int x_count() const noexcept { return x_count_; }
    int context_depth() const noexcept { return context_depth_; }
    int branch_count() const noexcept { return x_count_ * alphabet_.size(); }
    const Matrix& weights() const noexcept { return weights_; }

    double weight(int alpha, int symbol, std::uint64_t context) const {
        return weights_((alpha - 1) * alphabet_.size() + (symbol - 1), static_cast<Eigen::Index>(context));
    }

    /// max over contexts of |column sum - 1|.
    double normalization_deviation() const;

private:
    Alphabet alphabet_;
    int x_count_;
    int context_depth_;
    Matrix weights_;
};

/// Throws DomainError unless every column sums to 1 within `tolerance`.
void require_normalized(const BranchKernel& kernel, double tolerance = 1e-10);

}  // namespace ergot

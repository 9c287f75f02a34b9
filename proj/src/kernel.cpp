#include "ergot/kernel.hpp"

#include <cmath>
#include <sstream>

#include "ergot/errors.hpp"

namespace ergot {

BranchKernel::BranchKernel(Alphabet alphabet, int x_count, int context_depth, Matrix weights)
    : alphabet_(alphabet), x_count_(x_count), context_depth_(context_depth), weights_(std::move(weights)) {
    if (x_count < 1) throw DomainError("kernel needs at least one x value");
    if (context_depth < 0) throw DomainError("kernel context depth must be nonnegative");
    if (weights_.rows() != branch_count() ||
        static_cast<std::uint64_t>(weights_.cols()) != alphabet.word_count(context_depth))
        throw DomainError("kernel weight table has the wrong shape");
    if (!weights_.allFinite() || (weights_.array() < 0.0).any())
        throw DomainError("kernel weights must be finite and nonnegative");
}

double BranchKernel::normalization_deviation() const {
    return (weights_.colwise().sum().array() - 1.0).abs().maxCoeff();
}

void require_normalized(const BranchKernel& kernel, double tolerance) {
    const double deviation = kernel.normalization_deviation();
    if (!(deviation <= tolerance)) {
        std::ostringstream msg;
        msg << "kernel is not normalized: max column-sum deviation " << deviation << " exceeds " << tolerance;
        throw DomainError(msg.str());
    }
}

}  // namespace ergot

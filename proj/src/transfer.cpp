#include "ergot/transfer.hpp"

#include <cmath>

#include "ergot/errors.hpp"
#include "ergot/oracle.hpp"

namespace ergot {

namespace {

LocallyConstantPotential at_least_depth_two(const LocallyConstantPotential& potential) {
    return potential.depth() < 2 ? potential.padded(2) : potential;
}

}  // namespace

TransferMatrix::TransferMatrix(Alphabet alphabet, int potential_depth, Matrix entries)
    : alphabet_(alphabet), potential_depth_(potential_depth), entries_(std::move(entries)) {
    if (potential_depth < 2) throw DomainError("transfer matrix needs a potential of depth at least 2");
    const auto n = static_cast<Eigen::Index>(alphabet.word_count(potential_depth - 1));
    if (entries_.rows() != n || entries_.cols() != n) throw DomainError("transfer matrix has the wrong size");
    if (!entries_.allFinite() || (entries_.array() < 0.0).any())
        throw DomainError("transfer matrix entries must be finite and nonnegative");
}

TransferMatrix build_transfer_matrix(const LocallyConstantPotential& potential) {
    const LocallyConstantPotential a = at_least_depth_two(potential);
    const Alphabet alphabet = a.alphabet();
    const auto d = static_cast<std::uint64_t>(alphabet.size());
    const std::uint64_t states = alphabet.word_count(a.depth() - 1);
    const std::uint64_t lead = states / d;

    Matrix entries = Matrix::Zero(static_cast<Eigen::Index>(states), static_cast<Eigen::Index>(states));
    for (std::uint64_t s = 0; s < states; ++s)
        for (std::uint64_t i = 0; i < d; ++i) {
            const std::uint64_t row = i * lead + s / d;
            entries(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(s)) = std::exp(a.at(i * states + s));
        }
    return TransferMatrix(alphabet, a.depth(), std::move(entries));
}

Eigenpair<double> dominant_eigenpair(const TransferMatrix& matrix, const PerronOptions& options) {
    return dominant_eigenpair(matrix.entries(), options);
}

Normalization normalize_potential(const LocallyConstantPotential& potential, const PerronOptions& options) {
    const LocallyConstantPotential a = at_least_depth_two(potential);
    const TransferMatrix matrix = build_transfer_matrix(a);
    Eigenpair<double> eigen = dominant_eigenpair(matrix, options);

    const auto d = static_cast<std::uint64_t>(a.alphabet().size());
    const std::uint64_t states = a.alphabet().word_count(a.depth() - 1);
    const std::uint64_t lead = states / d;
    const double log_lambda = std::log(eigen.lambda);

    Vector table(a.table().size());
    for (std::uint64_t i = 0; i < d; ++i)
        for (std::uint64_t s = 0; s < states; ++s) {
            const std::uint64_t code = i * states + s;
            const auto preimage = static_cast<Eigen::Index>(i * lead + s / d);
            table(static_cast<Eigen::Index>(code)) = a.at(code) + std::log(eigen.h(preimage)) -
                                                     std::log(eigen.h(static_cast<Eigen::Index>(s))) - log_lambda;
        }
    LocallyConstantPotential normalized(a.alphabet(), a.depth(), std::move(table));
    const double deviation = normalization_deviation(normalized);
    return Normalization{std::move(normalized), std::move(eigen), deviation};
}

BranchKernel gibbs_kernel(const LocallyConstantPotential& normalized, double tolerance) {
    const LocallyConstantPotential a = normalized.depth() < 1 ? normalized.padded(1) : normalized;
    const auto d = static_cast<Eigen::Index>(a.alphabet().size());
    const Eigen::Index contexts = a.table().size() / d;
    Matrix weights(d, contexts);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index w = 0; w < contexts; ++w) weights(i, w) = std::exp(a.table()(i * contexts + w));
    BranchKernel kernel(a.alphabet(), 1, a.depth() - 1, std::move(weights));
    require_normalized(kernel, tolerance);
    return kernel;
}

LocallyConstantPotential transfer_apply(const LocallyConstantPotential& potential, const LocallyConstantPotential& u) {
    const LocallyConstantPotential a = at_least_depth_two(potential);
    if (u.alphabet() != a.alphabet()) throw DomainError("u and A use different alphabets");
    if (u.depth() > a.depth())
        throw DomainError("u has depth " + std::to_string(u.depth()) + ", deeper than the potential depth " +
                          std::to_string(a.depth()));
    const LocallyConstantPotential lifted = u.padded(a.depth());
    const auto d = static_cast<std::uint64_t>(a.alphabet().size());
    const std::uint64_t states = a.alphabet().word_count(a.depth() - 1);

    Vector out = Vector::Zero(static_cast<Eigen::Index>(states));
    for (std::uint64_t s = 0; s < states; ++s)
        for (std::uint64_t i = 0; i < d; ++i) {
            const std::uint64_t code = i * states + s;
            out(static_cast<Eigen::Index>(s)) += std::exp(a.at(code)) * lifted.at(code);
        }
    return LocallyConstantPotential(a.alphabet(), a.depth() - 1, std::move(out));
}

TransferIterate transfer_iterate(const LocallyConstantPotential& potential, const LocallyConstantPotential& u, int n,
                                 const PerronOptions& options) {
    if (n < 1) throw DomainError("transfer_iterate needs n >= 1");
    const LocallyConstantPotential a = at_least_depth_two(potential);
    if (u.alphabet() != a.alphabet() || u.depth() > a.depth())
        throw DomainError("u does not fit the potential (alphabet or depth mismatch)");

    const TransferMatrix matrix = build_transfer_matrix(a);
    const Normalization norm = normalize_potential(a, options);
    const double lambda = norm.eigen.lambda;
    const int state_depth = a.depth() - 1;

    // Exact Gibbs measure mu_A on windows deep enough for both u and phi_A.
    const int window = std::max(state_depth, u.depth());
    const StationaryDistribution mu = stationary(finite_chain(gibbs_kernel(norm.potential), window));
    const std::uint64_t phi_divisor = a.alphabet().word_count(window - state_depth);
    const std::uint64_t u_divisor = a.alphabet().word_count(window - u.depth());

    // Rescale h so that nu_A = mu_A / phi_A is a probability.
    double kappa = 0.0;
    for (Eigen::Index s = 0; s < mu.probabilities.size(); ++s)
        kappa += mu.probabilities(s) / norm.eigen.h(static_cast<Eigen::Index>(static_cast<std::uint64_t>(s) / phi_divisor));
    const Vector phi = norm.eigen.h * kappa;
    double nu_u = 0.0;
    for (Eigen::Index s = 0; s < mu.probabilities.size(); ++s) {
        const auto code = static_cast<std::uint64_t>(s);
        nu_u += mu.probabilities(s) * u.at(code / u_divisor) / phi(static_cast<Eigen::Index>(code / phi_divisor));
    }
    const Vector limit = phi * nu_u;

    TransferIterate result{transfer_apply(a, u), lambda, LocallyConstantPotential(a.alphabet(), state_depth, limit), {}};
    Vector v = result.table.table() / lambda;
    result.distances.reserve(static_cast<std::size_t>(n));
    result.distances.push_back((v - limit).cwiseAbs().maxCoeff());
    for (int k = 2; k <= n; ++k) {
        v = (matrix.entries().transpose() * v) / lambda;
        result.distances.push_back((v - limit).cwiseAbs().maxCoeff());
    }
    result.table = LocallyConstantPotential(a.alphabet(), state_depth, std::move(v));
    return result;
}

}  // namespace ergot

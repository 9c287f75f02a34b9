#include "ergot/oracle.hpp"

#include <cmath>
#include <sstream>

#include "ergot/errors.hpp"

namespace ergot {

Eigen::Index StateSpace::size() const {
    return static_cast<Eigen::Index>(alphabet.word_count(window) * static_cast<std::uint64_t>(x_count));
}

Eigen::Index StateSpace::index(int x, std::uint64_t word_code) const {
    return static_cast<Eigen::Index>(static_cast<std::uint64_t>(x - 1) * alphabet.word_count(window) + word_code);
}

int StateSpace::x_of(Eigen::Index state) const {
    return static_cast<int>(static_cast<std::uint64_t>(state) / alphabet.word_count(window)) + 1;
}

std::uint64_t StateSpace::word_code_of(Eigen::Index state) const {
    return static_cast<std::uint64_t>(state) % alphabet.word_count(window);
}

FiniteChain::FiniteChain(StateSpace space, Matrix transition) : space_(space), transition_(std::move(transition)) {
    const Eigen::Index n = space_.size();
    if (transition_.rows() != n || transition_.cols() != n) throw DomainError("transition matrix has the wrong shape");
    if (!transition_.allFinite() || (transition_.array() < 0.0).any())
        throw DomainError("transition matrix must be finite and nonnegative");
    const double deviation = (transition_.colwise().sum().array() - 1.0).abs().maxCoeff();
    if (deviation > 1e-10) {
        std::ostringstream msg;
        msg << "transition matrix columns deviate from 1 by " << deviation;
        throw DomainError(msg.str());
    }
}

FiniteChain finite_chain(const BranchKernel& kernel, int window) {
    if (window < std::max(1, kernel.context_depth()))
        throw DomainError("window shorter than the kernel context depth");
    const StateSpace space{kernel.alphabet(), kernel.x_count(), window};
    const auto d = static_cast<std::uint64_t>(kernel.alphabet().size());
    const std::uint64_t lead = kernel.alphabet().word_count(window - 1);
    const std::uint64_t context_divisor = kernel.alphabet().word_count(window - kernel.context_depth());

    Matrix transition = Matrix::Zero(space.size(), space.size());
    for (Eigen::Index from = 0; from < space.size(); ++from) {
        const std::uint64_t y = space.word_code_of(from);
        const std::uint64_t context = y / context_divisor;
        for (int alpha = 1; alpha <= kernel.x_count(); ++alpha)
            for (int i = 1; i <= kernel.alphabet().size(); ++i) {
                const std::uint64_t next = static_cast<std::uint64_t>(i - 1) * lead + y / d;
                transition(space.index(alpha, next), from) += kernel.weight(alpha, i, context);
            }
    }
    return FiniteChain(space, std::move(transition));
}

StationaryDistribution stationary(const FiniteChain& chain, const StationaryOptions& options) {
    const Matrix& p = chain.transition();
    const Eigen::Index n = p.rows();

    Matrix system = p - Matrix::Identity(n, n);
    Eigen::FullPivLU<Matrix> kernel_check(system);
    kernel_check.setThreshold(1e-10);
    if (kernel_check.rank() != n - 1) {
        std::ostringstream msg;
        msg << "chain is reducible: P - I has a " << n - kernel_check.rank() << "-dimensional kernel";
        throw StructuralError(msg.str());
    }

    system.row(n - 1).setOnes();
    Vector rhs = Vector::Zero(n);
    rhs(n - 1) = 1.0;
    Eigen::FullPivLU<Matrix> lu(system);
    Vector pi = lu.solve(rhs);
    // One step of iterative refinement.
    pi += lu.solve(rhs - system * pi);

    if ((pi.array() < -1e-12).any()) throw StructuralError("stationary solve produced negative mass");
    pi = pi.cwiseMax(0.0);
    pi /= pi.sum();

    const double residual = (p * pi - pi).cwiseAbs().maxCoeff();
    if (residual > options.residual) throw NumericalError("stationary residual above tolerance", residual);

    // Lazy chain is aperiodic with the same invariant vector.
    Vector power = Vector::Constant(n, 1.0 / static_cast<double>(n));
    bool converged = false;
    for (long it = 0; it < options.power_iterations; ++it) {
        Vector next = 0.5 * (p * power + power);
        next /= next.sum();
        const double step = (next - power).cwiseAbs().maxCoeff();
        power = std::move(next);
        if (step <= 1e-15) {
            converged = true;
            break;
        }
    }
    const double gap = (power - pi).cwiseAbs().maxCoeff();
    if (!converged || gap > options.consistency) {
        std::ostringstream msg;
        msg << "stationary cross-check failed: power iteration " << (converged ? "differs by " : "stalled at gap ")
            << gap;
        throw NumericalError(msg.str(), gap);
    }
    return StationaryDistribution{chain.space(), std::move(pi), residual, gap};
}

double exact_integral(const StationaryDistribution& dist, const TestFunction& f) {
    const StateSpace& space = dist.space;
    if (f.alphabet() != space.alphabet) throw DomainError("test function alphabet does not match the chain");
    if (f.depth() > space.window)
        throw DomainError("test function '" + f.id() + "' is deeper than the oracle window");
    if (f.x_count() != 1 && f.x_count() != space.x_count)
        throw DomainError("test function '" + f.id() + "' has the wrong x range");
    double total = 0.0;
    for (Eigen::Index s = 0; s < space.size(); ++s)
        total += dist.probabilities(s) * f(space.x_of(s), space.word_code_of(s), space.window);
    return total;
}

Vector x_marginal(const StationaryDistribution& dist) {
    Vector out = Vector::Zero(dist.space.x_count);
    for (Eigen::Index s = 0; s < dist.space.size(); ++s) out(dist.space.x_of(s) - 1) += dist.probabilities(s);
    return out;
}

Vector prefix_marginal(const StationaryDistribution& dist, int k) {
    if (k < 0 || k > dist.space.window) throw DomainError("marginal depth exceeds the oracle window");
    const std::uint64_t divisor = dist.space.alphabet.word_count(dist.space.window - k);
    Vector out = Vector::Zero(static_cast<Eigen::Index>(dist.space.alphabet.word_count(k)));
    for (Eigen::Index s = 0; s < dist.space.size(); ++s)
        out(static_cast<Eigen::Index>(dist.space.word_code_of(s) / divisor)) += dist.probabilities(s);
    return out;
}

double naive_transfer_power(const LocallyConstantPotential& potential, const LocallyConstantPotential& u, int n,
                            const Word& y, std::uint64_t cap) {
    const Alphabet alphabet = potential.alphabet();
    if (u.alphabet() != alphabet) throw DomainError("u and A use different alphabets");
    if (n < 0) throw DomainError("transfer power must be nonnegative");
    const std::uint64_t preimages = alphabet.word_count(n);
    if (preimages > cap)
        throw ResourceError("naive enumeration needs " + std::to_string(preimages) + " preimages, cap is " +
                            std::to_string(cap));
    if (y.length() < potential.depth() - 1 || y.length() + n < u.depth() || y.length() + n < potential.depth())
        throw DomainError("point y is too short for the requested enumeration");

    std::vector<int> point(static_cast<std::size_t>(n + y.length()));
    std::copy(y.symbols().begin(), y.symbols().end(), point.begin() + n);
    const auto window_value = [&](const LocallyConstantPotential& f, int start) {
        std::uint64_t code = 0;
        for (int k = 0; k < f.depth(); ++k)
            code = code * static_cast<std::uint64_t>(alphabet.size()) +
                   static_cast<std::uint64_t>(point[static_cast<std::size_t>(start + k)] - 1);
        return f.at(code);
    };

    double total = 0.0;
    for (std::uint64_t w = 0; w < preimages; ++w) {
        std::uint64_t rest = w;
        for (int k = n - 1; k >= 0; --k) {
            point[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::uint64_t>(alphabet.size())) + 1;
            rest /= static_cast<std::uint64_t>(alphabet.size());
        }
        double birkhoff = 0.0;
        for (int k = 0; k < n; ++k) birkhoff += window_value(potential, k);
        total += std::exp(birkhoff) * window_value(u, 0);
    }
    return total;
}

}  // namespace ergot

#pragma once

#include "ergot/kernel.hpp"
#include "ergot/potential.hpp"
#include "ergot/test_function.hpp"
#include "ergot/types.hpp"

namespace ergot {

/// States (x, y_1..y_window), enumerated lexicographically: index
/// (x-1) * d^window + code(y).
struct StateSpace {
    Alphabet alphabet;
    int x_count;
    int window;

    Eigen::Index size() const;
    Eigen::Index index(int x, std::uint64_t word_code) const;
    int x_of(Eigen::Index state) const;
    std::uint64_t word_code_of(Eigen::Index state) const;
};

/// Column-stochastic transition matrix; column = from-state.
class FiniteChain {
public:
    FiniteChain(StateSpace space, Matrix transition);

    const StateSpace& space() const noexcept { return space_; }
    const Matrix& transition() const noexcept { return transition_; }

private:
    StateSpace space_;
    Matrix transition_;
};

/// Exact transition matrix of the Elton chain driven by `kernel` on windows
/// of length `window` (window >= context depth).
FiniteChain finite_chain(const BranchKernel& kernel, int window);

struct StationaryOptions {
    double residual = 1e-12;     ///< |P pi - pi|_inf
    double consistency = 1e-10;  ///< linear solve vs power iteration
    long power_iterations = 1000000;
};

struct StationaryDistribution {
    StateSpace space;
    Vector probabilities;
    double residual;  ///< |P pi - pi|_inf
    double cross_check_gap;  ///< |pi_solve - pi_power|_inf
};

/// Direct solve of (P - I) pi = 0, sum pi = 1, cross-checked by power
/// iteration on the lazy chain (P + I) / 2.
StationaryDistribution stationary(const FiniteChain& chain, const StationaryOptions& options = {});

double exact_integral(const StationaryDistribution& dist, const TestFunction& f);

/// Mass of {x} for each x.
Vector x_marginal(const StationaryDistribution& dist);
/// Mass of each cylinder [y_1..y_k] (x summed out), indexed by word code.
Vector prefix_marginal(const StationaryDistribution& dist, int k);

/// L_A^n(u)(y) by summing over all d^n preimage words w of y, with the
/// Birkhoff sum S_n A(w y) accumulated term by term. `y` must carry at
/// least depth(A) - 1 symbols and enough symbols for u. Throws
/// ResourceError when d^n exceeds `cap`.
double naive_transfer_power(const LocallyConstantPotential& potential, const LocallyConstantPotential& u, int n,
                            const Word& y, std::uint64_t cap = 1000000);

}  // namespace ergot

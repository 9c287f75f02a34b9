#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ergot/kernel.hpp"
#include "ergot/potential.hpp"
#include "ergot/symbolic.hpp"
#include "ergot/test_function.hpp"

namespace ergot {

/// Seeded Elton chain: from (x, y) take branch (alpha, i) with probability
/// kernel.weight(alpha, i, context(y)) and move to (alpha, i y).
struct ChainSpec {
    BranchKernel kernel;
    int x0;  ///< 1-based; always 1 for classical chains
    WindowState y0;
    std::uint64_t seed;
    std::int64_t steps;
    std::int64_t burn_in = 0;
};

/// Classical Gibbs sampler z_{k+1} = i z_k with probability e^{A(i z_k)}.
/// The window length of `z0` fixes the chain window.
ChainSpec classical_chain(const LocallyConstantPotential& normalized, const WindowState& z0, std::uint64_t seed,
                          std::int64_t steps, std::int64_t burn_in = 0);

/// Transport plan sampler on X x Omega.
ChainSpec plan_chain(const BranchKernel& kernel, int x0, const WindowState& y0, std::uint64_t seed,
                     std::int64_t steps, std::int64_t burn_in = 0);

/// Uniform double in [0, 1) from the top 53 bits of one 64-bit draw.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Step-by-step simulation of a ChainSpec. The generator is std::mt19937_64
/// seeded with `spec.seed`; each step consumes one draw and selects the
/// branch by inverse CDF over the ordered branch list.
class Sampler {
public:
    explicit Sampler(const ChainSpec& spec);

    int x() const noexcept { return x_; }
    std::uint64_t window_code() const noexcept { return y_; }
    int window_length() const noexcept { return window_; }
    WindowState window() const { return WindowState(alphabet_, window_, y_); }

    /// Advances one transition; returns the branch index taken.
    int step();

private:
    Alphabet alphabet_;
    int window_;
    int branches_;
    std::uint64_t lead_;
    std::uint64_t context_divisor_;
    Matrix cumulative_;  ///< running sums of weights down each column
    std::mt19937_64 rng_;
    int x_;
    std::uint64_t y_;
};

struct Estimate {
    double mean = 0.0;
    std::int64_t count = 0;
    std::int64_t batch_count = 0;
    double batch_variance = 0.0;  ///< sample variance of the batch means
    double ci_halfwidth = 0.0;    ///< 95%, batch means
};

/// Streaming batch-means accumulator. Merging is an associative reduction
/// over (count, sum) and Chan's pooled (batches, mean, M2) of batch means;
/// accumulators with different batch sizes cannot be merged.
class BatchMeans {
public:
    explicit BatchMeans(std::int64_t batch_size);

    void add(double value);
    void merge(const BatchMeans& other);
    Estimate estimate() const;

    std::int64_t batch_size() const noexcept { return batch_size_; }

private:
    std::int64_t batch_size_;
    std::int64_t count_ = 0;
    double sum_ = 0.0;
    std::int64_t batches_ = 0;
    double batch_mean_ = 0.0;
    double batch_m2_ = 0.0;
    double partial_sum_ = 0.0;
    std::int64_t partial_count_ = 0;
};

/// ceil(sqrt(n)) batches of floor(n / batches) samples each.
std::int64_t batch_size_for(std::int64_t n);

/// Birkhoff averages (1/N) sum_{k<N} f(state_k) after `burn_in` discarded
/// transitions; all functions share one trajectory.
std::vector<BatchMeans> accumulate_birkhoff(const ChainSpec& spec, std::span<const TestFunction> functions);
std::vector<Estimate> run_birkhoff(const ChainSpec& spec, std::span<const TestFunction> functions);
Estimate run_birkhoff(const ChainSpec& spec, const TestFunction& f);

/// Independent replicas with seeds spec.seed + r, r = 0..replicas-1, run on
/// up to `workers` threads. Results are ordered by replica.
std::vector<std::vector<Estimate>> run_replicas(const ChainSpec& spec, std::span<const TestFunction> functions,
                                                int replicas, int workers = 0);

}  // namespace ergot

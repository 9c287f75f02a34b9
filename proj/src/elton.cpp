#include "ergot/elton.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <thread>

#include "ergot/errors.hpp"
#include "ergot/transfer.hpp"

namespace ergot {

namespace {

constexpr double kZ95 = 1.959963984540054;

void validate(const ChainSpec& spec) {
    require_normalized(spec.kernel);
    if (spec.y0.alphabet() != spec.kernel.alphabet()) throw DomainError("initial window uses the wrong alphabet");
    if (spec.y0.length() < spec.kernel.context_depth())
        throw DomainError("window length " + std::to_string(spec.y0.length()) + " is below the kernel context depth " +
                          std::to_string(spec.kernel.context_depth()));
    if (spec.x0 < 1 || spec.x0 > spec.kernel.x_count()) throw DomainError("initial x outside X");
    if (spec.steps < 1) throw DomainError("Birkhoff averages need N >= 1 steps");
    if (spec.burn_in < 0) throw DomainError("burn-in must be nonnegative");
}

}  // namespace

ChainSpec classical_chain(const LocallyConstantPotential& normalized, const WindowState& z0, std::uint64_t seed,
                          std::int64_t steps, std::int64_t burn_in) {
    ChainSpec spec{gibbs_kernel(normalized), 1, z0, seed, steps, burn_in};
    validate(spec);
    return spec;
}

ChainSpec plan_chain(const BranchKernel& kernel, int x0, const WindowState& y0, std::uint64_t seed,
                     std::int64_t steps, std::int64_t burn_in) {
    ChainSpec spec{kernel, x0, y0, seed, steps, burn_in};
    validate(spec);
    return spec;
}

Sampler::Sampler(const ChainSpec& spec)
    : alphabet_(spec.kernel.alphabet()),
      window_(spec.y0.length()),
      branches_(spec.kernel.branch_count()),
      lead_(alphabet_.word_count(window_ - 1)),
      context_divisor_(alphabet_.word_count(window_ - spec.kernel.context_depth())),
      rng_(spec.seed),
      x_(spec.x0),
      y_(spec.y0.code()) {
    validate(spec);
    cumulative_ = spec.kernel.weights();
    for (Eigen::Index b = 1; b < cumulative_.rows(); ++b) cumulative_.row(b) += cumulative_.row(b - 1);
}

int Sampler::step() {
    const auto context = static_cast<Eigen::Index>(y_ / context_divisor_);
    const double* column = cumulative_.col(context).data();
    assert(std::abs(column[branches_ - 1] - 1.0) <= 1e-10);
    const double u = uniform01(rng_);
    int branch = 0;
    while (branch < branches_ - 1 && !(u < column[branch])) ++branch;
    // Rounding can leave u above the last partial sum; never land on a zero-weight branch.
    while (branch > 0 && column[branch] == column[branch - 1]) --branch;

    const int d = alphabet_.size();
    x_ = branch / d + 1;
    y_ = static_cast<std::uint64_t>(branch % d) * lead_ + y_ / static_cast<std::uint64_t>(d);
    return branch;
}

BatchMeans::BatchMeans(std::int64_t batch_size) : batch_size_(batch_size) {
    if (batch_size < 1) throw DomainError("batch size must be positive");
}

void BatchMeans::add(double value) {
    ++count_;
    sum_ += value;
    partial_sum_ += value;
    if (++partial_count_ == batch_size_) {
        const double mean = partial_sum_ / static_cast<double>(batch_size_);
        ++batches_;
        const double delta = mean - batch_mean_;
        batch_mean_ += delta / static_cast<double>(batches_);
        batch_m2_ += delta * (mean - batch_mean_);
        partial_sum_ = 0.0;
        partial_count_ = 0;
    }
}

void BatchMeans::merge(const BatchMeans& other) {
    if (other.batch_size_ != batch_size_) throw DomainError("cannot merge batch means with different batch sizes");
    count_ += other.count_;
    sum_ += other.sum_;
    const std::int64_t total = batches_ + other.batches_;
    if (total > 0) {
        const double delta = other.batch_mean_ - batch_mean_;
        const double na = static_cast<double>(batches_);
        const double nb = static_cast<double>(other.batches_);
        batch_m2_ += other.batch_m2_ + delta * delta * na * nb / static_cast<double>(total);
        batch_mean_ += delta * nb / static_cast<double>(total);
    }
    batches_ = total;
    // The other accumulator's trailing partial batch only counts toward the mean.
}

Estimate BatchMeans::estimate() const {
    Estimate e;
    e.count = count_;
    e.mean = count_ > 0 ? sum_ / static_cast<double>(count_) : 0.0;
    e.batch_count = batches_;
    if (batches_ >= 2) {
        e.batch_variance = std::max(0.0, batch_m2_ / static_cast<double>(batches_ - 1));
        e.ci_halfwidth = kZ95 * std::sqrt(e.batch_variance / static_cast<double>(batches_));
    }
    return e;
}

std::int64_t batch_size_for(std::int64_t n) {
    if (n < 1) throw DomainError("batch means need at least one sample");
    auto batches = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    while (batches * batches < n) ++batches;
    while (batches > 1 && (batches - 1) * (batches - 1) >= n) --batches;
    return std::max<std::int64_t>(1, n / batches);
}

std::vector<BatchMeans> accumulate_birkhoff(const ChainSpec& spec, std::span<const TestFunction> functions) {
    Sampler sampler(spec);
    const int window = sampler.window_length();
    const auto d = static_cast<std::uint64_t>(spec.kernel.alphabet().size());

    struct Lookup {
        const double* values;
        std::uint64_t divisor;
        std::uint64_t block;
        bool uses_x;
    };
    std::vector<Lookup> lookups;
    lookups.reserve(functions.size());
    for (const TestFunction& f : functions) {
        if (f.alphabet() != spec.kernel.alphabet())
            throw DomainError("test function '" + f.id() + "' uses the wrong alphabet");
        if (f.depth() > window)
            throw DomainError("test function '" + f.id() + "' has depth " + std::to_string(f.depth()) +
                              " but the chain window is " + std::to_string(window));
        if (f.x_count() != 1 && f.x_count() != spec.kernel.x_count())
            throw DomainError("test function '" + f.id() + "' has the wrong x range");
        lookups.push_back({f.values().data(), checked_pow(d, window - f.depth()), checked_pow(d, f.depth()),
                           f.x_count() != 1});
    }

    for (std::int64_t k = 0; k < spec.burn_in; ++k) sampler.step();

    std::vector<BatchMeans> acc(functions.size(), BatchMeans(batch_size_for(spec.steps)));
    for (std::int64_t k = 0; k < spec.steps; ++k) {
        const std::uint64_t y = sampler.window_code();
        const auto x = static_cast<std::uint64_t>(sampler.x() - 1);
        for (std::size_t f = 0; f < lookups.size(); ++f) {
            const Lookup& l = lookups[f];
            acc[f].add(l.values[(l.uses_x ? x * l.block : 0) + y / l.divisor]);
        }
        sampler.step();
    }
    return acc;
}

std::vector<Estimate> run_birkhoff(const ChainSpec& spec, std::span<const TestFunction> functions) {
    std::vector<Estimate> out;
    for (const BatchMeans& b : accumulate_birkhoff(spec, functions)) out.push_back(b.estimate());
    return out;
}

Estimate run_birkhoff(const ChainSpec& spec, const TestFunction& f) {
    return run_birkhoff(spec, std::span<const TestFunction>(&f, 1)).front();
}

std::vector<std::vector<Estimate>> run_replicas(const ChainSpec& spec, std::span<const TestFunction> functions,
                                                int replicas, int workers) {
    if (replicas < 1) throw DomainError("need at least one chain");
    validate(spec);
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min(workers, replicas);

    std::vector<std::vector<Estimate>> results(static_cast<std::size_t>(replicas));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(replicas));
    std::atomic<int> next{0};
    const auto work = [&] {
        for (int r = next++; r < replicas; r = next++) {
            try {
                ChainSpec replica = spec;
                replica.seed = spec.seed + static_cast<std::uint64_t>(r);
                results[static_cast<std::size_t>(r)] = run_birkhoff(replica, functions);
            } catch (...) {
                errors[static_cast<std::size_t>(r)] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

}  // namespace ergot

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "ergot/elton.hpp"
#include "ergot/errors.hpp"
#include "ergot/oracle.hpp"
#include "ergot/transfer.hpp"
#include "ergot/transport.hpp"
#include "support.hpp"

using namespace ergot;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed < seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s  %2d  %-42s %s [%.2f s of %.0f s]\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
                elapsed, seconds);
    std::fflush(stdout);
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

Matrix2 m2(double a, double b, double c, double d) {
    Matrix2 m;
    m << a, b, c, d;
    return m;
}

double max_abs(const Matrix2& a, const Matrix2& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// The randomized positive instances shared by criteria 5 and 6.
std::vector<CostPair> random_instances(int count, int& skipped) {
    std::mt19937_64 rng(20240607);
    std::vector<CostPair> out;
    skipped = 0;
    while (static_cast<int>(out.size()) < count) {
        CostPair c = testing::random_costs(rng);
        try {
            solve_dual(c);
            out.push_back(c);
        } catch (const InfeasibleError&) {
            ++skipped;
        }
    }
    return out;
}

/// How many of `replicas` pass |mean - exact| <= 3 ci, per function.
std::vector<int> ci_passes(const std::vector<std::vector<Estimate>>& replicas, const std::vector<double>& exact) {
    std::vector<int> passes(exact.size(), 0);
    for (const auto& rep : replicas)
        for (std::size_t f = 0; f < exact.size(); ++f)
            if (std::abs(rep[f].mean - exact[f]) <= 3.0 * rep[f].ci_halfwidth) ++passes[f];
    return passes;
}

}  // namespace

int main() {
    const CostPair example = testing::example_costs();
    const Alphabet binary(2);

    criterion(1, "Example Step 1: dual minimizer z", 1.0, [&] {
        // mu is not given with the example; the printed z fixes it
        const double p = testing::recover_p(example.c1(), example.c2(), Eigen::Vector2d(0.101972, 0.0568922));
        const double rounded = std::round(p * 1e4) / 1e4;
        const DualReport r = solve_dual(CostPair(example.c1(), example.c2(), rounded));
        const double e1 = std::abs(r.solution.z1 - 0.101972), e2 = std::abs(r.solution.z2 - 0.0568922);
        return Outcome{e1 <= 1e-5 && e2 <= 1e-5 && rounded == example.p(),
                       fmt("p = %.7f -> %.4g, ", p, rounded) +
                           fmt("z = (%.7g, %.7g), max error %.2e", r.solution.z1, r.solution.z2, std::max(e1, e2))};
    });

    criterion(2, "Example Step 2: B, h, Cbar", 1.0, [&] {
        const PlanKernel k = build_plan_kernel(example, solve_dual(example).solution);
        const double eb = max_abs(k.b, m2(0.4197, 0.566751, 0.431512, 0.578563));
        const double eh = std::max(std::abs(k.h(0) - 0.596709), std::abs(k.h(1) - 0.802458));
        const double e1 = max_abs(k.cbar1, m2(0.3059, 0.379132, 0.274264, 0.407887));
        const double e2 = max_abs(k.cbar2, m2(0.113784, 0.0423052, 0.306036, 0.170677));
        return Outcome{eb <= 1e-4 && eh <= 1e-5 && e1 <= 1e-4 && e2 <= 1e-4,
                       fmt("errors B %.1e, h %.1e, ", eb, eh) + fmt("Cbar1 %.1e, Cbar2 %.1e", e1, e2)};
    });

    criterion(3, "Stochastic closed form", 1.0, [&] {
        std::mt19937_64 rng(7);
        double worst_z = 0.0, worst_obj = 0.0;
        int solved = 0;
        for (int pair = 0; pair < 10; ++pair) {
            const Matrix2 c1 = testing::random_column_stochastic(rng), c2 = testing::random_column_stochastic(rng);
            for (double p : {0.1, 0.3, 0.5, 0.9}) {
                const DualSolution s = solve_dual(CostPair(c1, c2, p)).solution;
                worst_z = std::max({worst_z, std::abs(s.z1 - p), std::abs(s.z2 - (1 - p))});
                const double entropy = -p * std::log(p) - (1 - p) * std::log(1 - p);
                worst_obj = std::max(worst_obj, std::abs(s.objective - entropy));
                ++solved;
            }
        }
        return Outcome{solved == 40 && worst_z <= 1e-9 && worst_obj <= 1e-9,
                       fmt("%.0f solves, max |z - (p,1-p)| %.1e, max objective error %.1e", solved, worst_z,
                           worst_obj)};
    });

    criterion(4, "Duality equality on the example", 1.0, [&] {
        const DualSolution sol = solve_dual(example).solution;
        const PlanKernel k = build_plan_kernel(example, sol);
        const auto dist = stationary(finite_chain(k.branch_kernel(), 2));
        const double lhs = plan_pressure(example, k, dist);
        const double gap = std::abs(lhs - sol.objective);
        return Outcome{gap <= 1e-9 && std::abs(lhs - 2.45812) < 1e-5,
                       fmt("int c dpi + H(pi) = %.12f, dual = %.12f, gap %.1e", lhs, sol.objective, gap)};
    });

    int skipped = 0;
    std::vector<CostPair> instances;
    criterion(5, "Normalization on 100 random cost pairs", 10.0, [&] {
        instances = random_instances(100, skipped);
        double worst = 0.0;
        for (const CostPair& c : instances)
            worst = std::max(worst, build_plan_kernel(c, solve_dual(c).solution).normalization_deviation());
        return Outcome{worst <= 1e-9, fmt("max column-sum deviation %.1e (%.0f infeasible skipped)", worst,
                                          static_cast<double>(skipped))};
    });

    criterion(6, "Marginals on the same instances", 10.0, [&] {
        if (instances.empty()) instances = random_instances(100, skipped);
        double worst_x = 0.0, worst_shift = 0.0;
        for (const CostPair& c : instances) {
            const PlanKernel k = build_plan_kernel(c, solve_dual(c).solution);
            const auto dist = stationary(finite_chain(k.branch_kernel(), 2));
            const Vector x = x_marginal(dist);
            worst_x = std::max({worst_x, std::abs(x(0) - c.p()), std::abs(x(1) - (1 - c.p()))});
            const Vector pair = prefix_marginal(dist, 2);
            for (int j = 0; j < 2; ++j) {
                const double as_second = pair(j) + pair(2 + j);
                const double as_first = pair(2 * j) + pair(2 * j + 1);
                worst_shift = std::max(worst_shift, std::abs(as_second - as_first));
            }
        }
        return Outcome{worst_x <= 1e-9 && worst_shift <= 1e-9,
                       fmt("max x-marginal error %.1e, max shift inconsistency %.1e", worst_x, worst_shift)};
    });

    criterion(7, "Classical Elton LLN, 20 seeds", 30.0, [&] {
        const auto norm = normalize_potential(LocallyConstantPotential::from_exp_matrix(testing::exp_1234()));
        const auto dist = stationary(finite_chain(gibbs_kernel(norm.potential), 1));
        const std::vector<TestFunction> fs{TestFunction::cylinder(Word::parse("1", binary), binary),
                                           TestFunction::cylinder(Word::parse("2", binary), binary)};
        const std::vector<double> exact{exact_integral(dist, fs[0]), exact_integral(dist, fs[1])};
        const auto spec = classical_chain(norm.potential, WindowState(binary, 1), 1, 1000000, 1000);
        const auto passes = ci_passes(run_replicas(spec, fs, 20), exact);
        return Outcome{passes[0] >= 19 && passes[1] >= 19,
                       fmt("[1]: %.0f/20, [2]: %.0f/20 within 3 CI", passes[0], passes[1])};
    });

    criterion(8, "Plan Elton LLN on the example, 20 seeds", 60.0, [&] {
        const PlanKernel k = build_plan_kernel(example, solve_dual(example).solution);
        const auto dist = stationary(finite_chain(k.branch_kernel(), 2));
        const std::vector<TestFunction> fs{TestFunction::x_indicator(1, 2, binary),
                                           TestFunction::cylinder(Word::parse("1", binary), binary),
                                           TestFunction::cylinder(Word::parse("12", binary), binary)};
        std::vector<double> exact;
        for (const auto& f : fs) exact.push_back(exact_integral(dist, f));
        const auto spec = plan_chain(k.branch_kernel(), 1, WindowState(binary, 2), 1, 1000000, 1000);
        const auto replicas = run_replicas(spec, fs, 20);
        const auto passes = ci_passes(replicas, exact);
        const auto against_07 = ci_passes(replicas, {0.7, exact[1], exact[2]});
        return Outcome{passes[0] >= 19 && passes[1] >= 19 && passes[2] >= 19 && against_07[0] >= 19,
                       fmt("{x=1}: %.0f/20, [1]: %.0f/20, [12]: %.0f/20", passes[0], passes[1], passes[2]) +
                           fmt(", {x=1} vs 0.7: %.0f/20", against_07[0])};
    });

    criterion(9, "Transfer operator convergence", 1.0, [&] {
        const auto raw = LocallyConstantPotential::from_exp_matrix(testing::exp_1234());
        bool monotone = true;
        double final_distance = 0.0;
        for (int s = 1; s <= 2; ++s) {
            const auto u = LocallyConstantPotential::cylinder(binary, Word({s}, binary));
            const TransferIterate it = transfer_iterate(raw, u, 20);
            // allowance for roundoff once the distance reaches machine precision
            const double floor = 64.0 * std::numeric_limits<double>::epsilon() * it.limit.table().cwiseAbs().maxCoeff();
            for (int n = 3; n < 20; ++n)
                if (it.distances[static_cast<std::size_t>(n)] > it.distances[static_cast<std::size_t>(n - 1)] + floor)
                    monotone = false;
            final_distance = std::max(final_distance, it.distances.back());
        }
        return Outcome{monotone && final_distance < 1e-6,
                       std::string(monotone ? "monotone" : "NOT monotone") + fmt(" for n = 3..20, d_20 = %.1e",
                                                                                  final_distance)};
    });

    criterion(10, "Preimage enumeration vs matrix power", 10.0, [&] {
        std::mt19937_64 rng(99);
        double worst = 0.0;
        int comparisons = 0;
        for (int m : {2, 3}) {
            for (int trial = 0; trial < 10; ++trial) {
                Vector a(static_cast<Eigen::Index>(binary.word_count(m)));
                for (Eigen::Index k = 0; k < a.size(); ++k) a(k) = testing::uniform(rng, -1.0, 1.0);
                const LocallyConstantPotential pot(binary, m, a);
                Vector ut(static_cast<Eigen::Index>(binary.word_count(m)));
                for (Eigen::Index k = 0; k < ut.size(); ++k) ut(k) = testing::uniform(rng, 0.0, 1.0);
                const std::vector<LocallyConstantPotential> us{
                    LocallyConstantPotential::cylinder(binary, Word::parse("1", binary)),
                    LocallyConstantPotential(binary, m, ut)};
                for (const auto& u : us)
                    for (int n = 1; n <= 6; ++n) {
                        const TransferIterate it = transfer_iterate(pot, u, n);
                        const int len = it.table.depth();
                        const double scale = std::pow(it.lambda, n);
                        for (std::uint64_t y = 0; y < binary.word_count(len); ++y) {
                            const double naive = naive_transfer_power(pot, u, n, Word::decode(y, len, binary));
                            worst = std::max(worst, std::abs(naive / scale - it.table.at(y)));
                            ++comparisons;
                        }
                    }
            }
        }
        return Outcome{worst <= 1e-10, fmt("%.0f comparisons, max |difference| %.1e", comparisons, worst)};
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}

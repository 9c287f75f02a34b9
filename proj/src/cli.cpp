#include "ergot/cli.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ergot/elton.hpp"
#include "ergot/errors.hpp"
#include "ergot/oracle.hpp"
#include "ergot/transfer.hpp"
#include "ergot/transport.hpp"

namespace ergot::cli {

namespace {

std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) parts.push_back(field);
    if (!line.empty() && line.back() == sep) parts.emplace_back();
    return parts;
}

class Report {
public:
    Report(const RunConfig& config, Json input_document) : mode_(mode_name(config.mode)) {
        Json resolved;
        resolved["run"] = config.to_json();
        resolved["input_document"] = std::move(input_document);
        config_line_ = resolved.dump();
        run_id_ = hex64(fnv1a(config_line_));
    }

    const std::string& config_line() const { return config_line_; }

    void add(std::string function_id, double value, std::optional<double> ci = {}, std::optional<std::int64_t> n = {},
             std::optional<std::uint64_t> seed = {}, std::optional<double> residual = {}) {
        rows_.push_back({run_id_, mode_, std::move(function_id), value, ci, n, seed, residual});
    }

    void write(const std::string& path) const {
        if (path.empty()) return;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot write '" + path + "'");
        out << "# config: " << config_line_ << "\n" << kCsvHeader << "\n";
        for (const CsvRow& row : rows_) out << format_csv_row(row) << "\n";
    }

private:
    std::string mode_;
    std::string config_line_;
    std::string run_id_;
    std::vector<CsvRow> rows_;
};

std::string resolve_output(const RunConfig& config) {
    const char* dir = std::getenv("ERGOT_OUTPUT_DIR");
    if (dir != nullptr && *dir != '\0') {
        const std::string name =
            config.output.empty() ? mode_name(config.mode) + ".csv"
                                  : std::filesystem::path(config.output).filename().string();
        std::filesystem::create_directories(dir);
        return (std::filesystem::path(dir) / name).string();
    }
    return config.output;
}

PerronOptions perron_options(const RunConfig& config) {
    PerronOptions o;
    o.tolerance = config.tolerance("eigen", o.tolerance);
    o.max_iterations = static_cast<long>(config.tolerance("eigen_max_iter", static_cast<double>(o.max_iterations)));
    return o;
}

DualOptions dual_options(const RunConfig& config) {
    DualOptions o;
    o.root_residual = config.tolerance("root_residual", o.root_residual);
    o.newton_tolerance = config.tolerance("newton", o.newton_tolerance);
    o.conic_residual = config.tolerance("conic_residual", o.conic_residual);
    o.spectral_margin = config.tolerance("spectral_margin", o.spectral_margin);
    o.tie_tolerance = config.tolerance("tie", o.tie_tolerance);
    return o;
}

StationaryOptions stationary_options(const RunConfig& config) {
    StationaryOptions o;
    o.residual = config.tolerance("stationary_residual", o.residual);
    o.consistency = config.tolerance("stationary_consistency", o.consistency);
    return o;
}

std::vector<TestFunction> parse_functions(const RunConfig& config, Alphabet alphabet, int x_count) {
    std::vector<TestFunction> out;
    for (const std::string& spec : config.functions) out.push_back(TestFunction::parse(spec, alphabet, x_count));
    return out;
}

int deepest(const std::vector<TestFunction>& functions) {
    int depth = 0;
    for (const TestFunction& f : functions) depth = std::max(depth, f.depth());
    return depth;
}

WindowState initial_window(const RunConfig& config, Alphabet alphabet, int window) {
    if (config.y0.empty()) return WindowState(alphabet, window, 0);
    const Word y0 = Word::parse(config.y0, alphabet);
    if (y0.length() < window)
        throw DomainError("--y0 has " + std::to_string(y0.length()) + " symbols but the chain window needs " +
                          std::to_string(window));
    return WindowState(y0, alphabet);
}

void print_matrix(std::ostream& out, const std::string& name, const Matrix& m) {
    out << name << " =\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << "  [";
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << std::setw(12) << m(i, j);
        out << " ]\n";
    }
}

struct Transport {
    CostPair costs;
    DualReport dual;
    PlanKernel kernel;
};

DualReport solve(const RunConfig& config, const CostPair& costs) { return solve_dual(costs, dual_options(config)); }

Transport transport_pipeline(const RunConfig& config, const CostPair& costs) {
    DualReport dual = solve(config, costs);
    PlanKernel kernel = build_plan_kernel(costs, dual.solution, config.tolerance("kernel_eigen", 1e-8));
    return Transport{costs, std::move(dual), std::move(kernel)};
}

void print_estimates(std::ostream& out, Report& report, const std::vector<TestFunction>& functions,
                     const std::vector<std::vector<Estimate>>& replicas, const RunConfig& config) {
    out << std::left << std::setw(14) << "function" << std::setw(22) << "seed" << std::setw(22) << "mean"
        << "ci95" << std::right << "\n";
    for (std::size_t r = 0; r < replicas.size(); ++r) {
        const std::uint64_t seed = config.seed + r;
        for (std::size_t f = 0; f < functions.size(); ++f) {
            const Estimate& e = replicas[r][f];
            out << std::left << std::setw(14) << functions[f].id() << std::setw(22) << seed << std::setw(22)
                << number(e.mean) << number(e.ci_halfwidth) << std::right << "\n";
            report.add(functions[f].id(), e.mean, e.ci_halfwidth, e.count, seed);
        }
    }
}

int tf_normalize(const RunConfig& config, Report& report, std::ostream& out) {
    const LocallyConstantPotential a = parse_potential(load_json(config.input));
    const Normalization norm = normalize_potential(a, perron_options(config));
    const Alphabet alphabet = a.alphabet();
    out << "lambda = " << number(norm.eigen.lambda) << "   (log lambda = " << number(std::log(norm.eigen.lambda))
        << ")\n";
    out << "eigen residual = " << norm.eigen.residual << "\n";
    report.add("lambda", norm.eigen.lambda, {}, {}, {}, norm.eigen.residual);
    out << "h (left Perron vector, |h|_2 = 1):\n";
    const int state_depth = norm.potential.depth() - 1;
    for (Eigen::Index s = 0; s < norm.eigen.h.size(); ++s) {
        const std::string w = Word::decode(static_cast<std::uint64_t>(s), state_depth, alphabet).str();
        out << "  h(" << w << ") = " << number(norm.eigen.h(s)) << "\n";
        report.add("h:" + w, norm.eigen.h(s));
    }
    out << "normalized potential:\n";
    for (Eigen::Index c = 0; c < norm.potential.table().size(); ++c) {
        const std::string w = Word::decode(static_cast<std::uint64_t>(c), norm.potential.depth(), alphabet).str();
        out << "  Abar(" << w << ") = " << std::setw(24) << number(norm.potential.table()(c))
            << "  exp = " << number(std::exp(norm.potential.table()(c))) << "\n";
        report.add("Abar:" + w, norm.potential.table()(c), {}, {}, {}, norm.deviation);
    }
    out << "normalization residual = " << norm.deviation << "\n";
    return 0;
}

int tf_sample(const RunConfig& config, Report& report, std::ostream& out) {
    const LocallyConstantPotential a = parse_potential(load_json(config.input));
    const Normalization norm = normalize_potential(a, perron_options(config));
    const std::vector<TestFunction> functions = parse_functions(config, a.alphabet(), 1);
    const int window = std::max({1, norm.potential.depth() - 1, deepest(functions)});
    const ChainSpec spec = classical_chain(norm.potential, initial_window(config, a.alphabet(), window), config.seed,
                                           config.steps, config.burn_in);
    const auto replicas = run_replicas(spec, functions, config.chains, config.workers);
    out << "classical Elton chain: window " << spec.y0.length() << ", N = " << config.steps << ", burn-in "
        << config.burn_in << ", chains " << config.chains << "\n";
    print_estimates(out, report, functions, replicas, config);
    return 0;
}

int tf_oracle(const RunConfig& config, Report& report, std::ostream& out) {
    const LocallyConstantPotential a = parse_potential(load_json(config.input));
    const Normalization norm = normalize_potential(a, perron_options(config));
    const std::vector<TestFunction> functions = parse_functions(config, a.alphabet(), 1);
    const int window = std::max({1, norm.potential.depth() - 1, deepest(functions)});
    const StationaryDistribution dist = stationary(
        finite_chain(gibbs_kernel(norm.potential, config.tolerance("kernel_normalization", 1e-10)), window),
        stationary_options(config));
    out << "Gibbs measure on cylinders of length " << window << " (residual " << dist.residual << "):\n";
    for (Eigen::Index s = 0; s < dist.probabilities.size(); ++s) {
        const std::string w = Word::decode(dist.space.word_code_of(s), window, a.alphabet()).str();
        out << "  mu[" << w << "] = " << number(dist.probabilities(s)) << "\n";
        report.add("pi:" + w, dist.probabilities(s), 0.0, {}, {}, dist.residual);
    }
    out << "exact integrals:\n";
    for (const TestFunction& f : functions) {
        const double value = exact_integral(dist, f);
        out << "  " << std::left << std::setw(12) << f.id() << std::right << number(value) << "\n";
        report.add(f.id(), value, 0.0, {}, {}, dist.residual);
    }
    return 0;
}

void print_candidates(std::ostream& out, const DualReport& dual) {
    out << "candidates (conic intersections):\n";
    out << "  " << std::left << std::setw(24) << "z1" << std::setw(24) << "z2" << std::setw(14) << "|g|"
        << std::setw(24) << "other eigenvalue" << std::setw(24) << "objective"
        << "verdict" << std::right << "\n";
    for (const DualCandidate& c : dual.candidates) {
        std::ostringstream residual;
        residual << std::setprecision(3) << c.conic_residual;
        out << "  " << std::left << std::setw(24) << number(c.z(0)) << std::setw(24) << number(c.z(1))
            << std::setw(14) << residual.str() << std::setw(24) << number(c.other_eigenvalue) << std::setw(24)
            << (std::isnan(c.objective) ? std::string("-") : number(c.objective)) << c.verdict << std::right << "\n";
    }
}

int et_solve(const RunConfig& config, Report& report, std::ostream& out) {
    const CostPair costs = parse_costs(load_json(config.input));
    const ConicCoefficients q = conic_coefficients(costs);
    out << "conic coefficients: qA = " << number(q.qA) << ", qB = " << number(q.qB) << ", qC = " << number(q.qC)
        << ", qD = " << number(q.qD) << ", qE = " << number(q.qE) << "\n";
    const DualReport dual = solve(config, costs);
    print_candidates(out, dual);
    const DualSolution& s = dual.solution;
    out << "dual solution:\n"
        << "  z   = (" << number(s.z1) << ", " << number(s.z2) << ")\n"
        << "  phi = (" << number(s.phi1) << ", " << number(s.phi2) << ")\n"
        << "  objective p*phi1 + (1-p)*phi2 = " << number(s.objective) << "\n"
        << "  conic residual = " << s.conic_residual << ", subdominant eigenvalue = " << number(s.subdominant)
        << "\n";
    if (is_column_stochastic(costs.c1()) && is_column_stochastic(costs.c2())) {
        const DualSolution fast = solve_dual_stochastic(costs);
        out << "stochastic closed form: z = (" << number(fast.z1) << ", " << number(fast.z2)
            << "), |difference| = " << std::max(std::abs(fast.z1 - s.z1), std::abs(fast.z2 - s.z2)) << "\n";
    }
    for (const auto& [id, value] : std::vector<std::pair<std::string, double>>{{"z1", s.z1},
                                                                               {"z2", s.z2},
                                                                               {"phi1", s.phi1},
                                                                               {"phi2", s.phi2},
                                                                               {"objective", s.objective},
                                                                               {"subdominant", s.subdominant}})
        report.add(id, value, {}, {}, {}, s.conic_residual);
    return 0;
}

int et_kernel(const RunConfig& config, Report& report, std::ostream& out) {
    const Transport t = transport_pipeline(config, parse_costs(load_json(config.input)));
    const PlanKernel& k = t.kernel;
    const double deviation = k.normalization_deviation();
    out << "z = (" << number(k.origin.z1) << ", " << number(k.origin.z2) << ")\n";
    out << std::setprecision(9);
    print_matrix(out, "B", k.b);
    out << "Perron root of B = " << number(k.perron_root) << "\n";
    out << "h = (" << number(k.h(0)) << ", " << number(k.h(1)) << ")\n";
    print_matrix(out, "Cbar1", k.cbar1);
    print_matrix(out, "Cbar2", k.cbar2);
    out << "normalization residual = " << deviation << "\n";
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) report.add("B:" + std::to_string(i + 1) + std::to_string(j + 1), k.b(i, j));
    for (int i = 0; i < 2; ++i) report.add("h:" + std::to_string(i + 1), k.h(i));
    for (int x = 1; x <= 2; ++x)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                report.add("Cbar" + std::to_string(x) + ":" + std::to_string(i + 1) + std::to_string(j + 1),
                           k.cbar(x)(i, j), {}, {}, {}, deviation);
    return 0;
}

int et_sample(const RunConfig& config, Report& report, std::ostream& out) {
    const Transport t = transport_pipeline(config, parse_costs(load_json(config.input)));
    const Alphabet alphabet(2);
    const std::vector<TestFunction> functions = parse_functions(config, alphabet, 2);
    const int window = std::max(1, deepest(functions));
    const ChainSpec spec = plan_chain(t.kernel.branch_kernel(), config.x0, initial_window(config, alphabet, window),
                                      config.seed, config.steps, config.burn_in);
    const auto replicas = run_replicas(spec, functions, config.chains, config.workers);
    out << "plan Elton chain: window " << spec.y0.length() << ", N = " << config.steps << ", burn-in "
        << config.burn_in << ", chains " << config.chains << "\n";
    print_estimates(out, report, functions, replicas, config);
    return 0;
}

int et_oracle(const RunConfig& config, Report& report, std::ostream& out) {
    const Transport t = transport_pipeline(config, parse_costs(load_json(config.input)));
    const Alphabet alphabet(2);
    const std::vector<TestFunction> functions = parse_functions(config, alphabet, 2);
    const int window = std::max(2, deepest(functions));
    const StationaryDistribution dist =
        stationary(finite_chain(t.kernel.branch_kernel(), window), stationary_options(config));
    out << "Gibbs plan on (x, y1..y" << window << ") (residual " << dist.residual << "):\n";
    for (Eigen::Index s = 0; s < dist.probabilities.size(); ++s) {
        const std::string id = "pi:" + std::to_string(dist.space.x_of(s)) + ":" +
                               Word::decode(dist.space.word_code_of(s), window, alphabet).str();
        out << "  " << id << " = " << number(dist.probabilities(s)) << "\n";
        report.add(id, dist.probabilities(s), 0.0, {}, {}, dist.residual);
    }
    const double pressure = plan_pressure(t.costs, t.kernel, dist);
    out << "int c dpi + H(pi) = " << number(pressure) << "\n"
        << "dual objective    = " << number(t.dual.solution.objective) << "\n";
    report.add("pressure", pressure, 0.0, {}, {}, std::abs(pressure - t.dual.solution.objective));
    report.add("dual_objective", t.dual.solution.objective, 0.0, {}, {}, t.dual.solution.conic_residual);
    out << "exact integrals:\n";
    for (const TestFunction& f : functions) {
        const double value = exact_integral(dist, f);
        out << "  " << std::left << std::setw(12) << f.id() << std::right << number(value) << "\n";
        report.add(f.id(), value, 0.0, {}, {}, dist.residual);
    }
    return 0;
}

int compare(const RunConfig& config, Report& report, std::ostream& out) {
    const std::vector<CsvRow> samples = read_csv(config.sample_csv);
    const std::vector<CsvRow> exact = read_csv(config.oracle_csv);
    const double sigma = config.tolerance("sigma", 3.0);
    const double required = std::min(1.0, config.tolerance("pass_fraction", 0.95));

    std::size_t compared = 0, passed = 0;
    out << std::left << std::setw(14) << "function" << std::setw(22) << "seed" << std::setw(24) << "mean - exact"
        << std::setw(24) << "ratio" << "verdict" << std::right << "\n";
    for (const CsvRow& row : samples) {
        if (row.mode != "tf-sample" && row.mode != "et-sample") continue;
        const auto match = std::find_if(exact.begin(), exact.end(),
                                        [&](const CsvRow& e) { return e.function_id == row.function_id; });
        if (match == exact.end()) throw ConfigError("no oracle value for function '" + row.function_id + "'");
        const double diff = row.value - match->value;
        const double ci = row.ci_halfwidth.value_or(0.0);
        double ratio = 0.0;
        if (ci > 0.0) ratio = diff / ci;
        else if (std::abs(diff) > 1e-12) ratio = diff > 0 ? INFINITY : -INFINITY;
        const bool pass = std::abs(ratio) <= sigma;
        ++compared;
        passed += pass ? 1 : 0;
        out << std::left << std::setw(14) << row.function_id << std::setw(22)
            << (row.seed ? std::to_string(*row.seed) : std::string("-")) << std::setw(24) << number(diff)
            << std::setw(24) << number(ratio) << (pass ? "pass" : "FAIL") << std::right << "\n";
        report.add(row.function_id, ratio, ci, row.n, row.seed, std::abs(diff));
    }
    if (compared == 0) throw ConfigError("sample CSV has no sampler rows");
    const double fraction = static_cast<double>(passed) / static_cast<double>(compared);
    const bool ok = fraction >= required;
    out << passed << "/" << compared << " within " << sigma << " CI halfwidths; verdict: " << (ok ? "PASS" : "FAIL")
        << "\n";
    report.add("verdict", fraction, {}, static_cast<std::int64_t>(compared));
    return ok ? 0 : kVerdictFailed;
}

}  // namespace

std::string format_csv_row(const CsvRow& row) {
    std::string line = row.run_id + "," + row.mode + "," + row.function_id + "," + number(row.value) + ",";
    if (row.ci_halfwidth) line += number(*row.ci_halfwidth);
    line += ",";
    if (row.n) line += std::to_string(*row.n);
    line += ",";
    if (row.seed) line += std::to_string(*row.seed);
    line += ",";
    if (row.residuals) line += number(*row.residuals);
    return line;
}

std::vector<CsvRow> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::vector<CsvRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line == kCsvHeader) continue;
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 8) throw ConfigError("'" + path + "': malformed CSV line: " + line);
        try {
            CsvRow row;
            row.run_id = f[0];
            row.mode = f[1];
            row.function_id = f[2];
            row.value = std::stod(f[3]);
            if (!f[4].empty()) row.ci_halfwidth = std::stod(f[4]);
            if (!f[5].empty()) row.n = std::stoll(f[5]);
            if (!f[6].empty()) row.seed = std::stoull(f[6]);
            if (!f[7].empty()) row.residuals = std::stod(f[7]);
            rows.push_back(std::move(row));
        } catch (const std::logic_error&) {
            throw ConfigError("'" + path + "': bad number in CSV line: " + line);
        }
    }
    return rows;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        Json input_document = nullptr;
        if (config.mode != Mode::compare) input_document = load_json(config.input);
        Report report(config, input_document);
        out << "# config: " << report.config_line() << "\n";
        int status = 0;
        switch (config.mode) {
            case Mode::tf_normalize: status = tf_normalize(config, report, out); break;
            case Mode::tf_sample: status = tf_sample(config, report, out); break;
            case Mode::tf_oracle: status = tf_oracle(config, report, out); break;
            case Mode::et_solve: status = et_solve(config, report, out); break;
            case Mode::et_kernel: status = et_kernel(config, report, out); break;
            case Mode::et_sample: status = et_sample(config, report, out); break;
            case Mode::et_oracle: status = et_oracle(config, report, out); break;
            case Mode::compare: status = compare(config, report, out); break;
        }
        report.write(resolve_output(config));
        return status;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(e.error_class());
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return static_cast<int>(ErrorClass::config);
    }
}

int main(int argc, char** argv) {
    CLI::App app{"ergot: Gibbs measures, Gibbs transport plans and Elton Monte Carlo on Bernoulli shifts"};
    app.require_subcommand(1);

    RunConfig config;
    std::vector<std::string> tolerance_args;

    const auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input) sub->add_option("-c,--config", config.input, "problem document (JSON)")->required();
        sub->add_option("-o,--output", config.output, "CSV report path");
        sub->add_option("--tol", tolerance_args, "tolerance override name=value (repeatable)");
    };
    const auto add_functions = [&](CLI::App* sub) {
        sub->add_option("-f,--function", config.functions, "test function: one, <word>, x=<x>, x=<x>:<word>")
            ->required();
    };
    const auto add_sampling = [&](CLI::App* sub) {
        sub->add_option("--seed", config.seed, "base seed; chain r uses seed + r");
        sub->add_option("--steps", config.steps, "N, number of Birkhoff terms")->check(CLI::PositiveNumber);
        sub->add_option("--burn-in", config.burn_in, "transitions discarded before averaging")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--chains", config.chains, "independent replicas")->check(CLI::PositiveNumber);
        sub->add_option("--workers", config.workers, "threads (0 = hardware concurrency)");
        sub->add_option("--y0", config.y0, "initial window as a digit string (default 1...1)");
    };

    std::vector<std::pair<CLI::App*, Mode>> subs;
    auto* tf_norm = app.add_subcommand("tf-normalize", "eigenpair and normalized potential");
    add_common(tf_norm, true);
    subs.emplace_back(tf_norm, Mode::tf_normalize);

    auto* tf_smp = app.add_subcommand("tf-sample", "Birkhoff averages along the classical Elton chain");
    add_common(tf_smp, true);
    add_functions(tf_smp);
    add_sampling(tf_smp);
    subs.emplace_back(tf_smp, Mode::tf_sample);

    auto* tf_orc = app.add_subcommand("tf-oracle", "exact Gibbs-measure integrals");
    add_common(tf_orc, true);
    add_functions(tf_orc);
    subs.emplace_back(tf_orc, Mode::tf_oracle);

    auto* et_slv = app.add_subcommand("et-solve", "dual minimizer via conic intersection");
    add_common(et_slv, true);
    subs.emplace_back(et_slv, Mode::et_solve);

    auto* et_ker = app.add_subcommand("et-kernel", "B, h and the normalized plan kernel");
    add_common(et_ker, true);
    subs.emplace_back(et_ker, Mode::et_kernel);

    auto* et_smp = app.add_subcommand("et-sample", "Birkhoff averages along the plan Elton chain");
    add_common(et_smp, true);
    add_functions(et_smp);
    add_sampling(et_smp);
    et_smp->add_option("--x0", config.x0, "initial x in {1, 2}");
    subs.emplace_back(et_smp, Mode::et_sample);

    auto* et_orc = app.add_subcommand("et-oracle", "exact Gibbs-plan distribution and integrals");
    add_common(et_orc, true);
    add_functions(et_orc);
    subs.emplace_back(et_orc, Mode::et_oracle);

    auto* cmp = app.add_subcommand("compare", "join sampler and oracle CSVs under the 3-CI rule");
    add_common(cmp, false);
    cmp->add_option("--sample", config.sample_csv, "sampler CSV")->required();
    cmp->add_option("--oracle", config.oracle_csv, "oracle CSV")->required();
    subs.emplace_back(cmp, Mode::compare);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorClass::config);
    }
    for (const auto& [sub, mode] : subs)
        if (sub->parsed()) config.mode = mode;
    for (const std::string& arg : tolerance_args) {
        const auto eq = arg.find('=');
        try {
            if (eq == std::string::npos) throw std::invalid_argument(arg);
            config.tolerances[arg.substr(0, eq)] = std::stod(arg.substr(eq + 1));
        } catch (const std::logic_error&) {
            std::cerr << "error: --tol expects name=value, got '" << arg << "'\n";
            return static_cast<int>(ErrorClass::config);
        }
    }
    return run(config, std::cout, std::cerr);
}

}  // namespace ergot::cli

#include "ergot/config.hpp"

#include <algorithm>
#include <fstream>

#include "ergot/errors.hpp"

namespace ergot {

namespace {

Matrix read_matrix(const Json& node, const std::string& name) {
    if (!node.is_array() || node.empty()) throw ConfigError("'" + name + "' must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(node.size());
    const auto cols = static_cast<Eigen::Index>(node.front().is_array() ? node.front().size() : 0);
    if (cols == 0) throw ConfigError("'" + name + "' rows must be non-empty arrays");
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json& row = node[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw ConfigError("'" + name + "' is not rectangular");
        for (Eigen::Index j = 0; j < cols; ++j) {
            const Json& v = row[static_cast<std::size_t>(j)];
            if (!v.is_number()) throw ConfigError("'" + name + "' has a non-numeric entry");
            m(i, j) = v.get<double>();
        }
    }
    return m;
}

std::string read_scale(const Json& doc) {
    if (!doc.contains("scale")) throw ConfigError("missing 'scale' (\"exp\" or \"log\")");
    const Json& s = doc["scale"];
    if (!s.is_string() || (s != "exp" && s != "log")) throw ConfigError("'scale' must be \"exp\" or \"log\"");
    return s.get<std::string>();
}

}  // namespace

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("'" + path + "': " + e.what());
    }
}

LocallyConstantPotential parse_potential(const Json& doc) {
    if (!doc.is_object()) throw ConfigError("potential document must be a JSON object");
    const std::string scale = read_scale(doc);
    if (scale == "exp") {
        if (!doc.contains("matrix")) throw ConfigError("exp-scale potential needs 'matrix'");
        const Matrix m = read_matrix(doc["matrix"], "matrix");
        if (m.rows() != m.cols()) throw ConfigError("'matrix' must be square");
        if (doc.contains("alphabet") && doc["alphabet"] != m.rows())
            throw ConfigError("'alphabet' does not match the matrix size");
        return LocallyConstantPotential::from_exp_matrix(m);
    }
    if (!doc.contains("table") || !doc["table"].is_object()) throw ConfigError("log-scale potential needs 'table'");
    if (!doc.contains("alphabet") || !doc["alphabet"].is_number_integer())
        throw ConfigError("log-scale potential needs an integer 'alphabet'");
    std::map<std::string, double> values;
    for (const auto& [word, value] : doc["table"].items()) {
        if (!value.is_number()) throw ConfigError("table entry '" + word + "' is not a number");
        values[word] = value.get<double>();
    }
    return LocallyConstantPotential::from_word_map(Alphabet(doc["alphabet"].get<int>()), values);
}

CostPair parse_costs(const Json& doc) {
    if (!doc.is_object()) throw ConfigError("cost document must be a JSON object");
    for (const char* key : {"C1", "C2", "p"})
        if (!doc.contains(key)) throw ConfigError(std::string("cost document is missing '") + key + "'");
    const std::string scale = read_scale(doc);
    const Matrix c1 = read_matrix(doc["C1"], "C1");
    const Matrix c2 = read_matrix(doc["C2"], "C2");
    if (c1.rows() != 2 || c1.cols() != 2 || c2.rows() != 2 || c2.cols() != 2)
        throw ConfigError("C1 and C2 must be 2x2 (|X| = 2, d = 2)");
    if (!doc["p"].is_number()) throw ConfigError("'p' must be a number");
    const double p = doc["p"].get<double>();
    return scale == "exp" ? CostPair(c1, c2, p) : CostPair::from_log(c1, c2, p);
}

namespace {

const std::vector<std::pair<Mode, std::string>>& mode_table() {
    static const std::vector<std::pair<Mode, std::string>> table = {
        {Mode::tf_normalize, "tf-normalize"}, {Mode::tf_sample, "tf-sample"}, {Mode::tf_oracle, "tf-oracle"},
        {Mode::et_solve, "et-solve"},         {Mode::et_kernel, "et-kernel"}, {Mode::et_sample, "et-sample"},
        {Mode::et_oracle, "et-oracle"},       {Mode::compare, "compare"},
    };
    return table;
}

}  // namespace

Mode parse_mode(const std::string& name) {
    for (const auto& [mode, text] : mode_table())
        if (text == name) return mode;
    throw ConfigError("unknown mode '" + name + "'");
}

std::string mode_name(Mode mode) {
    for (const auto& [m, text] : mode_table())
        if (m == mode) return text;
    return "?";
}

const std::vector<std::string>& tolerance_keys() {
    static const std::vector<std::string> keys = {
        "eigen",          "eigen_max_iter",         "kernel_normalization", "kernel_eigen",
        "root_residual",  "newton",                 "conic_residual",       "spectral_margin",
        "tie",            "stationary_residual",    "stationary_consistency", "sigma",
        "pass_fraction",
    };
    return keys;
}

double RunConfig::tolerance(const std::string& key, double fallback) const {
    const auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
}

void RunConfig::validate() const {
    const bool sampling = mode == Mode::tf_sample || mode == Mode::et_sample;
    if (mode == Mode::compare) {
        if (sample_csv.empty() || oracle_csv.empty()) throw ConfigError("compare needs --sample and --oracle CSV files");
    } else if (input.empty()) {
        throw ConfigError(mode_name(mode) + " needs an input document (--config)");
    }
    if (sampling) {
        if (steps < 1) throw ConfigError("sampling needs --steps >= 1");
        if (burn_in < 0) throw ConfigError("--burn-in must be nonnegative");
        if (chains < 1) throw ConfigError("--chains must be at least 1");
    }
    if ((sampling || mode == Mode::tf_oracle || mode == Mode::et_oracle) && functions.empty())
        throw ConfigError(mode_name(mode) + " needs at least one --function");
    for (const auto& [key, value] : tolerances) {
        const auto& keys = tolerance_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError("unknown tolerance '" + key + "'");
        if (!(value > 0.0)) throw ConfigError("tolerance '" + key + "' must be positive");
    }
}

Json RunConfig::to_json() const {
    Json j;
    j["mode"] = mode_name(mode);
    j["input"] = input;
    j["seed"] = seed;
    j["steps"] = steps;
    j["burn_in"] = burn_in;
    j["chains"] = chains;
    j["functions"] = functions;
    j["x0"] = x0;
    j["y0"] = y0;
    j["sample"] = sample_csv;
    j["oracle"] = oracle_csv;
    Json tol = Json::object();
    for (const auto& [key, value] : tolerances) tol[key] = value;
    j["tolerances"] = tol;
    return j;
}

}  // namespace ergot

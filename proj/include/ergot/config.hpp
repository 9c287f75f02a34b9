#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ergot/potential.hpp"
#include "ergot/transport.hpp"

namespace ergot {

using Json = nlohmann::ordered_json;

/// Potential document:
///   { "scale": "log", "alphabet": 2, "table": { "11": 0.0, "12": 0.69, ... } }
///   { "scale": "exp", "matrix": [[1, 2], [3, 4]] }
/// "exp" matrices give e^{A(ij)} of a depth-2 potential.
LocallyConstantPotential parse_potential(const Json& doc);

/// Cost document: { "C1": [[..]], "C2": [[..]], "p": 0.7, "scale": "exp" | "log" }.
CostPair parse_costs(const Json& doc);

/// Reads and parses a JSON file; throws ConfigError on I/O or syntax errors.
Json load_json(const std::string& path);

enum class Mode { tf_normalize, tf_sample, tf_oracle, et_solve, et_kernel, et_sample, et_oracle, compare };

Mode parse_mode(const std::string& name);
std::string mode_name(Mode mode);

struct RunConfig {
    Mode mode = Mode::et_solve;
    std::string input;         ///< problem document (potential or costs)
    std::uint64_t seed = 1;
    std::int64_t steps = 1000000;
    std::int64_t burn_in = 0;
    int chains = 1;
    int workers = 0;           ///< 0 = hardware concurrency
    std::vector<std::string> functions;
    int x0 = 1;
    std::string y0;            ///< initial window as a digit string; default all 1s
    std::string output;        ///< CSV path; empty = none
    std::string sample_csv;    ///< compare: sampler CSV
    std::string oracle_csv;    ///< compare: oracle CSV
    std::map<std::string, double> tolerances;

    /// Fails with ConfigError when mode-specific fields are missing or invalid.
    void validate() const;
    double tolerance(const std::string& key, double fallback) const;
    Json to_json() const;
};

/// Tolerance names accepted by --tol.
const std::vector<std::string>& tolerance_keys();

}  // namespace ergot

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tmdist {

// ordered key -> value map; order is part of the serialization contract
using ParamMap = std::vector<std::pair<std::string, std::string>>;

const std::string* find_param(const ParamMap& params, const std::string& key);
std::string param_or(const ParamMap& params, const std::string& key, const std::string& fallback);

struct ExperimentRecord {
    std::string experiment;
    ParamMap params;
    std::string value;
    bool exact = false;
    std::int64_t wall_time_ms = 0;
    std::optional<std::uint64_t> seed;
};

std::string records_to_csv(std::span<const ExperimentRecord> records);
std::string records_to_json(std::span<const ExperimentRecord> records);
std::vector<ExperimentRecord> records_from_csv(const std::string& text);

struct RunOutput {
    std::string value;
    bool exact = false;
};

using Runner = std::function<RunOutput(const ParamMap&)>;

// experiment name -> runner over string params; shared by sweep, replay and the CLI
const std::map<std::string, Runner>& experiment_registry();
RunOutput run_experiment(const std::string& name, const ParamMap& params);

struct SweepConfig {
    std::string experiment;
    std::vector<std::pair<std::string, std::vector<std::string>>> grids;  // first key outermost
    std::string out_path;
    std::string format = "csv";
    unsigned threads = 0;
    std::uint64_t budget = std::uint64_t(1) << 36;
    std::uint64_t seed = 20120624;  // default seed, printed by the CLI
    bool record_timing = false;
};

// key=value lines; grid values are comma lists, tokens may use "2^k",
// and "geom:first:last:factor" expands to a geometric range
SweepConfig parse_sweep_config(const std::string& text);

// cartesian grid, parallel evaluation, deterministic output order; points
// whose runner reports a budget overrun are marked skipped
std::vector<ExperimentRecord> run_sweep(const SweepConfig& config);

}  // namespace tmdist

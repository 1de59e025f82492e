#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "netsync/integrate.hpp"
#include "netsync/models.hpp"

namespace netsync {

struct AnalysisConfig {
    int hub = 0;
    double sync_tolerance = 1e-2;
};

/// A fully resolved run: model + parameters, integrator settings, analysis
/// tolerances, and a concrete initial state (seeded jitter already applied).
/// `resolved` is the canonical JSON form embedded into every artifact, so a
/// run can be reproduced from its own output.
struct RunConfig {
    SystemSpec spec;
    IntegratorConfig integrator;
    AnalysisConfig analysis;
    Vec initial_state;
    std::uint64_t seed = 0;
    std::string output_dir; // empty = not set in the config
    nlohmann::json resolved;
};

/// Parse and validate a config document. The schema is strict: unknown keys
/// anywhere are rejected with a ConfigError naming the key, as are missing
/// required fields and out-of-range values. See README for the schema.
RunConfig parse_run_config(const nlohmann::json& doc);

/// Read + parse a config file; wraps JSON syntax errors in ConfigError.
RunConfig load_run_config(const std::filesystem::path& path);

} // namespace netsync

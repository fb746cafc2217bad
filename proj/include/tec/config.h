#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tec/module.h"
#include "tec/optimize.h"
#include "tec/simulate.h"
#include "tec/steady_state.h"

namespace tec {

// Varied parameter and its value list for an environment sweep.
struct VarySpec {
    EnvParameter parameter;
    std::vector<double> values;
};

struct SimulationConfig {
    PlantModel plant;
    ControllerConfig controller;
    PlantState initial; // t = 0
    double duration;    // s
    double dt;          // s
};

// One loaded run configuration. All quantities are SI (K, W/K, ohm, V/K, A,
// s, J/K); JSON field names match the struct field names. The module block
// gives either the lumped constants {A, R, K} or per-leg materials
// {p, n, geometry}; exactly one of the two.
struct RunConfig {
    ModuleParams module;
    std::optional<Environment> environment;
    std::optional<CurrentBounds> bounds;
    std::optional<double> I;                 // solve current
    std::optional<std::vector<double>> grid; // current-sweep grid
    std::optional<VarySpec> vary;            // environment-sweep section
    std::optional<SimulationConfig> simulation;

    // Bounds to use when none were given: [0, module I_max].
    CurrentBounds effective_bounds() const;
};

// Parse a configuration from JSON text. Unknown keys are rejected unless they
// start with '_' (reserved for comments); offending fields are named in the
// error. Throws ValidationError.
RunConfig parse_config(const std::string& json_text);

// Load and parse a configuration file.
RunConfig load_config(const std::string& path);

} // namespace tec

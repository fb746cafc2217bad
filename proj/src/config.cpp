#include "tec/config.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tec/csv.h"
#include "tec/errors.h"

namespace tec {
namespace {

using nlohmann::json;

// Reject keys the loader does not understand so typos fail loudly. Keys
// starting with '_' are ignored and usable as comments.
void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        const std::string& key = item.key();
        if (!key.empty() && key[0] == '_') {
            continue;
        }
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ValidationError(where + ": unknown field \"" + key + "\"");
        }
    }
}

const json& require(const json& obj, const std::string& where, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ValidationError(where + ": missing required field \"" + std::string(key) + "\"");
    }
    return *it;
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) {
        throw ValidationError(where + ": expected a number");
    }
    return v.get<double>();
}

double number_field(const json& obj, const std::string& where, const char* key) {
    return as_number(require(obj, where, key), where + "." + key);
}

std::optional<double> optional_number(const json& obj, const std::string& where,
                                      const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        return std::nullopt;
    }
    return as_number(*it, where + "." + key);
}

std::vector<double> number_array(const json& v, const std::string& where) {
    if (!v.is_array()) {
        throw ValidationError(where + ": expected an array of numbers");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(as_number(v[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

LegMaterial parse_leg(const json& obj, const std::string& where) {
    if (!obj.is_object()) {
        throw ValidationError(where + ": expected an object");
    }
    check_keys(obj, where, {"rho", "alpha", "kappa"});
    LegMaterial leg;
    leg.rho = number_field(obj, where, "rho");
    leg.alpha = number_field(obj, where, "alpha");
    leg.kappa = number_field(obj, where, "kappa");
    return leg;
}

ModuleGeometry parse_geometry(const json& obj, const std::string& where) {
    if (!obj.is_object()) {
        throw ValidationError(where + ": expected an object");
    }
    check_keys(obj, where, {"l", "S", "N"});
    ModuleGeometry g;
    g.l = number_field(obj, where, "l");
    g.S = number_field(obj, where, "S");
    const json& n = require(obj, where, "N");
    if (!n.is_number_integer() || n.get<long long>() <= 0) {
        throw ValidationError(where + ".N: expected a positive integer");
    }
    g.N = static_cast<int>(n.get<long long>());
    return g;
}

ModuleParams parse_module(const json& obj) {
    const std::string where = "module";
    if (!obj.is_object()) {
        throw ValidationError(where + ": expected an object");
    }
    const bool lumped = obj.contains("A") || obj.contains("R") || obj.contains("K");
    const bool materials =
        obj.contains("p") || obj.contains("n") || obj.contains("geometry");
    if (lumped && materials) {
        throw ValidationError(
            where + ": give either lumped constants {A, R, K} or materials "
                    "{p, n, geometry}, not both");
    }
    if (!lumped && !materials) {
        throw ValidationError(
            where + ": give lumped constants {A, R, K} or materials {p, n, geometry}");
    }

    Ratings ratings;
    ratings.I_max = number_field(obj, where, "I_max");
    ratings.V_max = number_field(obj, where, "V_max");

    ModuleParams m;
    if (lumped) {
        check_keys(obj, where, {"A", "R", "K", "I_max", "V_max"});
        m.A = number_field(obj, where, "A");
        m.R = number_field(obj, where, "R");
        m.K = number_field(obj, where, "K");
        m.I_max = ratings.I_max;
        m.V_max = ratings.V_max;
    } else {
        check_keys(obj, where, {"p", "n", "geometry", "I_max", "V_max"});
        const LegMaterial p = parse_leg(require(obj, where, "p"), where + ".p");
        const LegMaterial n = parse_leg(require(obj, where, "n"), where + ".n");
        const ModuleGeometry g =
            parse_geometry(require(obj, where, "geometry"), where + ".geometry");
        m = lump_from_materials(p, n, g, ratings);
    }
    m.validate();
    return m;
}

Environment parse_environment(const json& obj) {
    const std::string where = "environment";
    if (!obj.is_object()) {
        throw ValidationError(where + ": expected an object");
    }
    check_keys(obj, where, {"T_C", "T_H", "L_C", "L_H"});
    Environment env;
    env.T_C = number_field(obj, where, "T_C");
    env.T_H = number_field(obj, where, "T_H");
    env.L_C = number_field(obj, where, "L_C");
    env.L_H = number_field(obj, where, "L_H");
    env.validate();
    return env;
}

CurrentBounds parse_bounds(const json& obj) {
    const std::string where = "bounds";
    if (!obj.is_object()) {
        throw ValidationError(where + ": expected an object");
    }
    check_keys(obj, where, {"I_min", "I_max"});
    CurrentBounds b;
    b.I_min = number_field(obj, where, "I_min");
    b.I_max = number_field(obj, where, "I_max");
    b.validate();
    return b;
}

VarySpec parse_vary(const json& obj) {
    const std::string where = "vary";
    if (!obj.is_object()) {
        throw ValidationError(where + ": expected an object");
    }
    check_keys(obj, where, {"parameter", "values"});
    const json& name = require(obj, where, "parameter");
    if (!name.is_string()) {
        throw ValidationError(where + ".parameter: expected a string");
    }
    VarySpec vary;
    vary.parameter = parse_env_parameter(name.get<std::string>());
    vary.values = number_array(require(obj, where, "values"), where + ".values");
    if (vary.values.empty()) {
        throw ValidationError(where + ".values: must not be empty");
    }
    return vary;
}

PlantModel parse_plant(const json& obj) {
    const std::string where = "simulation.plant";
    if (!obj.is_object()) {
        throw ValidationError(where + ": expected an object");
    }
    check_keys(obj, where,
               {"C_c", "C_h", "U_c_amb", "U_h_amb", "Q_int", "T_amb", "L_C", "L_H"});
    PlantModel plant;
    plant.C_c = number_field(obj, where, "C_c");
    plant.C_h = number_field(obj, where, "C_h");
    plant.U_c_amb = number_field(obj, where, "U_c_amb");
    plant.U_h_amb = number_field(obj, where, "U_h_amb");
    plant.Q_int = number_field(obj, where, "Q_int");
    plant.T_amb = number_field(obj, where, "T_amb");
    plant.L_C = number_field(obj, where, "L_C");
    plant.L_H = number_field(obj, where, "L_H");
    plant.validate();
    return plant;
}

ControllerConfig parse_controller(const json& obj) {
    const std::string where = "simulation.controller";
    if (!obj.is_object()) {
        throw ValidationError(where + ": expected an object");
    }
    check_keys(obj, where,
               {"update_period", "bounds", "sensor_noise_std", "hold_on_infeasible",
                "tol", "noise_seed"});
    ControllerConfig ctrl;
    if (auto v = optional_number(obj, where, "update_period")) {
        ctrl.update_period = *v;
    }
    if (obj.contains("bounds")) {
        ctrl.bounds = parse_bounds(obj.at("bounds"));
    }
    if (auto v = optional_number(obj, where, "sensor_noise_std")) {
        ctrl.sensor_noise_std = *v;
    }
    if (auto v = optional_number(obj, where, "hold_on_infeasible")) {
        ctrl.hold_on_infeasible = *v;
    }
    if (auto v = optional_number(obj, where, "tol")) {
        ctrl.tol = *v;
    }
    if (obj.contains("noise_seed")) {
        const json& seed = obj.at("noise_seed");
        if (!seed.is_number_integer() || seed.get<long long>() < 0) {
            throw ValidationError(where + ".noise_seed: expected a non-negative integer");
        }
        ctrl.noise_seed = static_cast<std::uint64_t>(seed.get<long long>());
    }
    return ctrl;
}

SimulationConfig parse_simulation(const json& obj) {
    const std::string where = "simulation";
    if (!obj.is_object()) {
        throw ValidationError(where + ": expected an object");
    }
    check_keys(obj, where,
               {"plant", "controller", "initial_T_C", "initial_T_H", "duration", "dt"});
    SimulationConfig sim;
    sim.plant = parse_plant(require(obj, where, "plant"));
    if (obj.contains("controller")) {
        sim.controller = parse_controller(obj.at("controller"));
    }
    sim.initial.t = 0.0;
    sim.initial.T_C = number_field(obj, where, "initial_T_C");
    sim.initial.T_H = number_field(obj, where, "initial_T_H");
    sim.duration = number_field(obj, where, "duration");
    sim.dt = number_field(obj, where, "dt");
    if (!(sim.duration > 0.0) || !std::isfinite(sim.duration)) {
        throw ValidationError(where + ".duration: must be finite and > 0");
    }
    if (!(sim.dt > 0.0) || !std::isfinite(sim.dt)) {
        throw ValidationError(where + ".dt: must be finite and > 0");
    }
    return sim;
}

} // namespace

CurrentBounds RunConfig::effective_bounds() const {
    if (bounds) {
        return *bounds;
    }
    CurrentBounds b;
    b.I_min = 0.0;
    b.I_max = module.I_max;
    b.validate();
    return b;
}

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ValidationError("config: top level must be an object");
    }
    check_keys(root, "config",
               {"module", "environment", "bounds", "I", "grid", "vary", "simulation"});

    RunConfig cfg;
    cfg.module = parse_module(require(root, "config", "module"));
    if (root.contains("environment")) {
        cfg.environment = parse_environment(root.at("environment"));
    }
    if (root.contains("bounds")) {
        cfg.bounds = parse_bounds(root.at("bounds"));
    }
    if (root.contains("I")) {
        cfg.I = as_number(root.at("I"), "config.I");
    }
    if (root.contains("grid")) {
        const json& g = root.at("grid");
        if (g.is_string()) {
            cfg.grid = csv::parse_grid(g.get<std::string>());
        } else {
            cfg.grid = number_array(g, "config.grid");
        }
    }
    if (root.contains("vary")) {
        cfg.vary = parse_vary(root.at("vary"));
    }
    if (root.contains("simulation")) {
        cfg.simulation = parse_simulation(root.at("simulation"));
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("config: cannot open \"" + path + "\"");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

} // namespace tec

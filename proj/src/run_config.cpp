#include "qubath/run_config.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qubath {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw std::invalid_argument(field + ": " + what);
}

Coupling parse_coupling(const std::string& s) {
    if (s == "jc") return Coupling::JaynesCummings;
    if (s == "dephasing") return Coupling::Dephasing;
    field_error("coupling", "expected \"jc\" or \"dephasing\", got \"" + s + "\"");
}

DissipatorKind parse_dissipator(const std::string& s) {
    if (s == "qo") return DissipatorKind::QuantumOptical;
    if (s == "cl") return DissipatorKind::CaldeiraLeggett;
    if (s == "dh") return DissipatorKind::DepolarizingHeatBath;
    field_error("dissipator", "expected \"qo\", \"cl\" or \"dh\", got \"" + s + "\"");
}

InitialQubit parse_initial_qubit(const std::string& s) {
    if (s == "excited") return InitialQubit::Excited;
    if (s == "sigma_x") return InitialQubit::SigmaXEigen;
    field_error("initial_qubit", "expected \"excited\" or \"sigma_x\", got \"" + s + "\"");
}

Method parse_method(const std::string& s) {
    if (s == "rk45") return Method::RK45Adaptive;
    if (s == "rk4") return Method::RK4Fixed;
    if (s == "expm") return Method::ExpmOracle;
    field_error("method", "expected \"rk45\", \"rk4\" or \"expm\", got \"" + s + "\"");
}

double parse_double(const std::string& field, const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') field_error(field, "not a number: \"" + s + "\"");
    return v;
}

}  // namespace

void RunConfig::validate() const {
    model.validate();
    if (!(t_max > 0.0)) field_error("t_max", "must be > 0");
    if (n_samples < 2) field_error("n_samples", "must be >= 2");
    if (!(rtol > 0.0)) field_error("rtol", "must be > 0");
    if (!(atol > 0.0)) field_error("atol", "must be > 0");
    if (!(dt > 0.0)) field_error("dt", "must be > 0");
}

Scenario RunConfig::scenario() const {
    Scenario s;
    s.name = name;
    s.cfg = model;
    s.initial_qubit = initial_qubit;
    s.t_max = t_max;
    s.n_samples = n_samples;
    s.method = method;
    s.rtol = rtol;
    s.atol = atol;
    s.dt = dt;
    return s;
}

std::vector<std::pair<std::string, std::string>> RunConfig::to_key_values() const {
    return {
        {"name", name},
        {"coupling", to_string(model.coupling)},
        {"dissipator", to_string(model.dissipator)},
        {"delta", format_double(model.delta)},
        {"g", format_double(model.g)},
        {"kappa", format_double(model.kappa)},
        {"nbar", format_double(model.nbar)},
        {"n_max", std::to_string(model.n_max)},
        {"dh_half_rate", model.dh_half_rate ? "true" : "false"},
        {"initial_qubit", to_string(initial_qubit)},
        {"t_max", format_double(t_max)},
        {"n_samples", std::to_string(n_samples)},
        {"method", to_string(method)},
        {"rtol", format_double(rtol)},
        {"atol", format_double(atol)},
        {"dt", format_double(dt)},
    };
}

RunConfig RunConfig::from_key_values(
    const std::vector<std::pair<std::string, std::string>>& kvs) {
    RunConfig c;
    for (const auto& [key, value] : kvs) {
        if (key == "name") c.name = value;
        else if (key == "coupling") c.model.coupling = parse_coupling(value);
        else if (key == "dissipator") c.model.dissipator = parse_dissipator(value);
        else if (key == "delta") c.model.delta = parse_double(key, value);
        else if (key == "g") c.model.g = parse_double(key, value);
        else if (key == "kappa") c.model.kappa = parse_double(key, value);
        else if (key == "nbar") c.model.nbar = parse_double(key, value);
        else if (key == "n_max") c.model.n_max = int(parse_double(key, value));
        else if (key == "dh_half_rate") c.model.dh_half_rate = (value == "true");
        else if (key == "initial_qubit") c.initial_qubit = parse_initial_qubit(value);
        else if (key == "t_max") c.t_max = parse_double(key, value);
        else if (key == "n_samples") c.n_samples = int(parse_double(key, value));
        else if (key == "method") c.method = parse_method(value);
        else if (key == "rtol") c.rtol = parse_double(key, value);
        else if (key == "atol") c.atol = parse_double(key, value);
        else if (key == "dt") c.dt = parse_double(key, value);
        else field_error(key, "unknown key");
    }
    c.validate();
    return c;
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");

    auto str = [&](const char* field, const json& v) -> std::string {
        if (!v.is_string()) field_error(field, "must be a string");
        return v.get<std::string>();
    };
    auto num = [&](const char* field, const json& v) -> double {
        if (!v.is_number()) field_error(field, "must be a number");
        return v.get<double>();
    };

    RunConfig c;
    for (const auto& [key, value] : j.items()) {
        if (key == "name") c.name = str("name", value);
        else if (key == "coupling") c.model.coupling = parse_coupling(str("coupling", value));
        else if (key == "dissipator")
            c.model.dissipator = parse_dissipator(str("dissipator", value));
        else if (key == "delta") c.model.delta = num("delta", value);
        else if (key == "g") c.model.g = num("g", value);
        else if (key == "kappa") c.model.kappa = num("kappa", value);
        else if (key == "nbar") c.model.nbar = num("nbar", value);
        else if (key == "n_max") {
            if (!value.is_number_integer()) field_error("n_max", "must be an integer");
            c.model.n_max = value.get<int>();
        } else if (key == "dh_half_rate") {
            if (!value.is_boolean()) field_error("dh_half_rate", "must be a boolean");
            c.model.dh_half_rate = value.get<bool>();
        } else if (key == "initial_qubit")
            c.initial_qubit = parse_initial_qubit(str("initial_qubit", value));
        else if (key == "t_max") c.t_max = num("t_max", value);
        else if (key == "n_samples") {
            if (!value.is_number_integer()) field_error("n_samples", "must be an integer");
            c.n_samples = value.get<int>();
        } else if (key == "method") c.method = parse_method(str("method", value));
        else if (key == "rtol") c.rtol = num("rtol", value);
        else if (key == "atol") c.atol = num("atol", value);
        else if (key == "dt") c.dt = num("dt", value);
        else field_error(key, "unknown key");
    }
    c.validate();
    return c;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

}  // namespace qubath

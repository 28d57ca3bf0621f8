#pragma once

#include "qubath/experiments.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qubath {

/// File-facing mirror of ModelConfig + Scenario + integrator settings.
/// Parsed strictly: unknown keys are an error, every violation names its
/// field.
struct RunConfig {
    std::string name = "run";
    ModelConfig model;
    InitialQubit initial_qubit = InitialQubit::Excited;
    double t_max = 300.0;
    int n_samples = 601;
    Method method = Method::RK45Adaptive;
    double rtol = 1e-8;
    double atol = 1e-10;
    double dt = 1e-2;

    void validate() const;
    Scenario scenario() const;

    /// Every parameter as ordered key=value pairs, full double precision;
    /// the CSV comment block and the round-trip parser speak this format.
    std::vector<std::pair<std::string, std::string>> to_key_values() const;
    static RunConfig from_key_values(
        const std::vector<std::pair<std::string, std::string>>& kvs);

    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_json_file(const std::string& path);
};

std::string format_double(double v);  // %.17g, round-trip exact

}  // namespace qubath

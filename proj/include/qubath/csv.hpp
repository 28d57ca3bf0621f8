#pragma once

#include "qubath/observables.hpp"
#include "qubath/run_config.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qubath {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Trajectory CSV: a `# key=value` comment block echoing the full RunConfig
/// (plus optional reference values under a `ref_` prefix), then the fixed
/// header and one full-precision row per sample.
void write_trajectory_csv(const Trajectory& traj, const RunConfig& cfg,
                          const std::string& path, const KeyValues& extra_refs = {});

/// Reads the comment block back; `ref_`-prefixed entries are skipped.
RunConfig read_csv_config(const std::string& path);

void write_equilibration_csv(const std::vector<double>& times, double kappa,
                             const std::vector<double>& theory, const std::string& path);

void write_divergence_csv(const std::vector<DivergenceReport>& reports,
                          const KeyValues& metadata, const std::string& path);

}  // namespace qubath

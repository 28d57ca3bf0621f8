#include "qubath/csv.hpp"

#include <fstream>
#include <stdexcept>

namespace qubath {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

void write_trajectory_csv(const Trajectory& traj, const RunConfig& cfg,
                          const std::string& path, const KeyValues& extra_refs) {
    if (traj.records.empty())
        throw std::invalid_argument("write_trajectory_csv: empty trajectory");
    std::ofstream out = open_out(path);
    for (const auto& [k, v] : cfg.to_key_values()) out << "# " << k << "=" << v << "\n";
    for (const auto& [k, v] : extra_refs) out << "# ref_" << k << "=" << v << "\n";
    out << "t,gt,pop_excited,coherence,nbar_t,purity,trace_error,min_eigenvalue,"
           "top_fock_population\n";
    for (const auto& r : traj.records) {
        out << format_double(r.t) << ',' << format_double(r.gt) << ','
            << format_double(r.pop_excited) << ',' << format_double(r.coherence) << ','
            << format_double(r.nbar_t) << ',' << format_double(r.purity) << ','
            << format_double(r.trace_error) << ',' << format_double(r.min_eigenvalue) << ','
            << format_double(r.top_fock_population) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

RunConfig read_csv_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    KeyValues kvs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) != 0) break;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(2, eq - 2);
        if (key.rfind("ref_", 0) == 0) continue;
        kvs.emplace_back(std::move(key), line.substr(eq + 1));
    }
    return RunConfig::from_key_values(kvs);
}

void write_equilibration_csv(const std::vector<double>& times, double kappa,
                             const std::vector<double>& theory, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "t,kappa_t,nbar_theory\n";
    for (size_t i = 0; i < times.size(); ++i)
        out << format_double(times[i]) << ',' << format_double(kappa * times[i]) << ','
            << format_double(theory[i]) << '\n';
}

void write_divergence_csv(const std::vector<DivergenceReport>& reports,
                          const KeyValues& metadata, const std::string& path) {
    std::ofstream out = open_out(path);
    for (const auto& [k, v] : metadata) out << "# " << k << "=" << v << "\n";
    out << "kappa_over_g,sup_norm,observable\n";
    for (const auto& r : reports)
        out << format_double(r.kappa_over_g) << ',' << format_double(r.sup_norm) << ','
            << to_string(r.observable) << '\n';
}

}  // namespace qubath

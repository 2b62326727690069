#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ghcp/analysis.hpp"
#include "ghcp/network_config.hpp"
#include "ghcp/protocol.hpp"

namespace ghcp {

// Friis-model ratio of maximum decode ranges between band 1 and band 2:
// sqrt(p1/p2 * g1/g2) * f2/f1.
double range_scale(double p1, double p2, double g1, double g2, double f1, double f2);

// Analysis knobs that ride along with a network configuration.
struct AnalysisOptions {
    GainNormalization gain_normalization = GainNormalization::signal_normalized;
    InterfererGainModel g_model = InterfererGainModel::cosine_fading;
};

struct LoadedConfig {
    NetworkConfig network;
    AnalysisOptions analysis;
};

// Parses a JSON network configuration; omitted fields fall back to the
// default parameter set (los_radius 300 m, d 20 m, 16/8 elements, -5 dB
// threshold, alpha 2.1, 20 mW per antenna). Unknown keys and out-of-domain
// values raise std::invalid_argument naming the offending field.
LoadedConfig parse_config(const std::string& json_text);
LoadedConfig load_config(const std::string& path);

enum class ExperimentKind { intensity, mean_interference, sir_ccdf, hidden_nodes, throughput };

struct ExperimentPlan {
    ExperimentKind kind = ExperimentKind::intensity;
    LoadedConfig config;
    std::vector<double> grid;     // lambda_p values; thresholds in dB for sir_ccdf
    int replications = 2000;
    std::uint64_t seed = 1;
    double window_m = 2000.0;     // intensity observation window side
    double averaging_side_m = 400.0;
    bool with_montecarlo = true;
    std::string output;           // csv path; empty writes to stdout
};

ExperimentPlan parse_plan(const std::string& json_text);
ExperimentPlan load_plan(const std::string& path);

struct SweepTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

SweepTable run_experiment(const ExperimentPlan& plan, int threads = 0);
std::string to_csv(const SweepTable& table);

// Stable hash of the canonical textual form of a configuration.
std::uint64_t config_hash(const NetworkConfig& cfg);
std::string describe(const NetworkConfig& cfg);

// Handshake scenario files (JSON).
proto::Scenario parse_scenario(const std::string& json_text);
proto::Scenario load_scenario(const std::string& path);

// Builds one KernelContext wired with the analysis options.
KernelContext make_context(const LoadedConfig& cfg);
KernelContext make_context(const LoadedConfig& cfg,
                           std::shared_ptr<const ExclusionGeometry> geometry);

}  // namespace ghcp

#pragma once

#include <cstdint>
#include <vector>

#include "ghcp/network_config.hpp"
#include "ghcp/point_process.hpp"

namespace ghcp::mc {

struct Options {
    int replications = 1000;
    std::uint64_t seed = 1;
    int threads = 0;               // 0: use the hardware count
    double averaging_side = 400.0; // side of the region whose pairs are averaged [m]
};

struct Estimate {
    double mean = 0.0;
    double std_err = 0.0;
    long samples = 0;
};

// Empirical retained intensity over an observation window.
Estimate estimate_intensity(const NetworkConfig& cfg, const Rect& window,
                            const Options& opts);

struct PalmOptions : Options {
    std::vector<double> sir_thresholds;  // linear ratios
    bool with_hidden = true;
};

struct PalmEstimate {
    Estimate mean_interference;          // [W]
    Estimate hidden_count;
    std::vector<Estimate> sir_ccdf;      // P(SIR > threshold), per threshold
    long pairs_observed = 0;
};

// Stationary-average estimators: every retained pair inside the averaging
// region plays the role of the typical pair once, so one realization yields
// many (correlated) Palm samples. Standard errors come from
// replication-level batching, which absorbs the within-realization
// correlation.
PalmEstimate estimate_palm(const NetworkConfig& cfg, const PalmOptions& opts);

// Mean interference at the conditioned typical receiver (exact reduced-Palm
// sampling); slower than estimate_palm but independent of it.
Estimate estimate_mean_interference_typical(const NetworkConfig& cfg, const Options& opts);

}  // namespace ghcp::mc

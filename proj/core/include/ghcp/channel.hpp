#pragma once

#include <limits>
#include <optional>

#include "ghcp/network_config.hpp"
#include "ghcp/point_process.hpp"
#include "ghcp/rng.hpp"

namespace ghcp {

// Bounded path loss (1 + r^alpha)^-1.
double path_loss(double r, double alpha);

struct FadingSample {
    double power_gain = 1.0;  // Gamma(M, 1/M), unit mean
};

FadingSample sample_fading(int m, Rng& rng);

// Transmit gain of an interferer toward a victim: the data-plane beam points
// at the interferer's own receiver.
double interferer_gain(const PairGeometry& interferer, Vec2 victim,
                       const AntennaConfig& antenna);

// Sum of p0 n_t |rho|^2 G_t l(.) over retained transmitters within the LOS
// ball around the victim; fresh fading per interferer. `exclude` skips one
// pair index (the victim's own).
double aggregate_interference(const Realization& real, Vec2 victim,
                              const NetworkConfig& cfg, Rng& rng,
                              std::optional<std::size_t> exclude = std::nullopt);

// SIR at the typical receiver of a conditioned realization (pairs[0] is the
// typical pair). Zero interference yields +infinity.
double sir_sample(const Realization& real, const NetworkConfig& cfg, Rng& rng);

}  // namespace ghcp

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "ghcp/geometry.hpp"

namespace ghcp {

enum class Thinning { type1, type2 };

// Which handshake shapes the exclusion regions. Data transmission is always
// a directional mm-wave beam; cross_link clears isotropic (sub-7 GHz) regions
// around the pair while directional clears beam-shaped ones.
enum class Mechanism { directional, cross_link };

struct NetworkConfig {
    double lambda_p = 4e-4;       // parent intensity [1/m^2]
    double d = 20.0;              // link distance [m]
    double los_radius = 300.0;    // LOS ball radius [m]
    double alpha = 2.1;           // path-loss exponent (> 2)
    int m_nakagami = 3;           // fading shape (integer >= 1)
    double p0 = 0.02;             // per-antenna transmit power [W]
    double sir_threshold = std::pow(10.0, -0.5);  // linear (-5 dB)
    Thinning thinning = Thinning::type1;
    Mechanism mechanism = Mechanism::directional;

    ExclusionSpec exclusion;      // control-plane regions (disks when cross_link)
    AntennaConfig data_antenna;   // mm-wave array used by the data plane

    void validate() const {
        if (!(lambda_p > 0.0)) throw std::invalid_argument("lambda_p must be > 0");
        if (!(d > 0.0)) throw std::invalid_argument("d must be > 0");
        if (!(alpha > 2.0)) throw std::invalid_argument("alpha must exceed 2");
        if (m_nakagami < 1) throw std::invalid_argument("m_nakagami must be >= 1");
        if (!(p0 > 0.0)) throw std::invalid_argument("p0 must be > 0");
        if (!(sir_threshold > 0.0)) throw std::invalid_argument("sir_threshold must be > 0");
        if (!(exclusion.r_t > 0.0) || !(exclusion.r_r > 0.0))
            throw std::invalid_argument("exclusion ranges must be > 0");
        if (!(los_radius > d)) throw std::invalid_argument("los_radius must exceed d");
    }

    // A parent farther than this from a pair's transmitter can never sit in
    // its exclusion region.
    double dependency_radius() const {
        return std::max(exclusion.r_t, d + exclusion.r_r);
    }
};

inline SCriteria s_criteria(double r, double beta, double theta, const NetworkConfig& cfg) {
    return s_criteria(r, beta, theta, cfg.d, cfg.exclusion);
}

}  // namespace ghcp

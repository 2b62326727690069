#include "ghcp/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ghcp {

double path_loss(double r, double alpha) {
    if (r < 0.0) throw std::domain_error("path_loss: r must be >= 0");
    return 1.0 / (1.0 + std::pow(r, alpha));
}

FadingSample sample_fading(int m, Rng& rng) {
    if (m < 1) throw std::domain_error("sample_fading: m must be >= 1");
    std::gamma_distribution<double> g(static_cast<double>(m), 1.0 / m);
    return FadingSample{g(rng)};
}

double interferer_gain(const PairGeometry& interferer, Vec2 victim,
                       const AntennaConfig& antenna) {
    if (antenna.omni()) return 1.0;
    Vec2 v = victim - interferer.tx;
    if (v.norm2() == 0.0) return 1.0;  // on top of the transmitter: main lobe
    double phi = wrap_angle(std::atan2(v.y, v.x) - interferer.orientation);
    return gain_physical(phi, antenna.n_t, antenna);
}

double aggregate_interference(const Realization& real, Vec2 victim,
                              const NetworkConfig& cfg, Rng& rng,
                              std::optional<std::size_t> exclude) {
    const double r2max = cfg.los_radius * cfg.los_radius;
    double sum = 0.0;
    for (std::size_t i = 0; i < real.pairs.size(); ++i) {
        if (exclude && *exclude == i) continue;
        const MarkedPair& p = real.pairs[i];
        if (!p.retained) continue;
        Vec2 diff = p.geometry.tx - victim;
        double r2 = diff.norm2();
        if (r2 > r2max) continue;
        double g = interferer_gain(p.geometry, victim, cfg.data_antenna);
        if (g == 0.0) continue;
        double fade = sample_fading(cfg.m_nakagami, rng).power_gain;
        sum += cfg.p0 * cfg.data_antenna.n_t * fade * g * path_loss(std::sqrt(r2), cfg.alpha);
    }
    return sum;
}

double sir_sample(const Realization& real, const NetworkConfig& cfg, Rng& rng) {
    if (real.pairs.empty() || !real.pairs[0].retained)
        throw std::invalid_argument("sir_sample: typical pair missing or not retained");
    Vec2 victim = real.pairs[0].geometry.rx();
    double fade = sample_fading(cfg.m_nakagami, rng).power_gain;
    double signal = cfg.p0 * cfg.data_antenna.n_t * fade * path_loss(cfg.d, cfg.alpha);
    double interference = aggregate_interference(real, victim, cfg, rng, 0);
    if (interference == 0.0) return std::numeric_limits<double>::infinity();
    return signal / interference;
}

}  // namespace ghcp

#include "ghcp/point_process.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ghcp {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool in_pair_region(Vec2 z, const PairGeometry& pair, const ExclusionSpec& spec) {
    return in_tx_exclusion(z, pair, spec) || in_rx_exclusion(z, pair, spec);
}
}  // namespace

SpatialGrid::SpatialGrid(const std::vector<MarkedPair>& pairs, double cell_size) {
    double xmin = 0.0, ymin = 0.0, xmax = 1.0, ymax = 1.0;
    if (!pairs.empty()) {
        xmin = xmax = pairs[0].geometry.tx.x;
        ymin = ymax = pairs[0].geometry.tx.y;
        for (const MarkedPair& p : pairs) {
            xmin = std::min(xmin, p.geometry.tx.x);
            xmax = std::max(xmax, p.geometry.tx.x);
            ymin = std::min(ymin, p.geometry.tx.y);
            ymax = std::max(ymax, p.geometry.tx.y);
        }
    }
    x0_ = xmin;
    y0_ = ymin;
    inv_ = 1.0 / cell_size;
    nx_ = std::max(1, static_cast<int>(std::floor((xmax - xmin) * inv_)) + 1);
    ny_ = std::max(1, static_cast<int>(std::floor((ymax - ymin) * inv_)) + 1);
    cells_.resize(static_cast<std::size_t>(nx_) * ny_);
    for (std::uint32_t i = 0; i < pairs.size(); ++i) {
        int cx = cell_x(pairs[i].geometry.tx.x);
        int cy = cell_y(pairs[i].geometry.tx.y);
        cx = std::clamp(cx, 0, nx_ - 1);
        cy = std::clamp(cy, 0, ny_ - 1);
        cells_[static_cast<std::size_t>(cy) * nx_ + cx].push_back(i);
    }
}

Realization sample_bipolar(const NetworkConfig& cfg, const Rect& window, Rng& rng) {
    if (!(cfg.lambda_p > 0.0))
        throw std::invalid_argument("sample_bipolar: lambda_p must be > 0");
    if (!(window.area() > 0.0))
        throw std::invalid_argument("sample_bipolar: window must have positive area");

    Rect sampling = window.expanded(std::max(cfg.exclusion.r_t, cfg.exclusion.r_r) + cfg.d);
    std::poisson_distribution<long> count_dist(cfg.lambda_p * sampling.area());
    std::uniform_real_distribution<double> ux(sampling.xmin, sampling.xmax);
    std::uniform_real_distribution<double> uy(sampling.ymin, sampling.ymax);
    std::uniform_real_distribution<double> uang(0.0, kTwoPi);
    std::uniform_real_distribution<double> umark(0.0, 1.0);

    Realization real;
    real.window = window;
    real.thinning = cfg.thinning;
    long n = count_dist(rng);
    real.pairs.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        MarkedPair p;
        p.geometry.tx = {ux(rng), uy(rng)};
        p.geometry.orientation = uang(rng);
        p.geometry.link_distance = cfg.d;
        p.time_mark = umark(rng);
        real.pairs.push_back(p);
    }
    return real;
}

Realization sample_bipolar(const NetworkConfig& cfg, const Rect& window, std::uint64_t seed) {
    Rng rng = make_stream(seed, 0);
    Realization real = sample_bipolar(cfg, window, rng);
    real.seed = seed;
    return real;
}

namespace {

template <typename Keep>
Realization thin_impl(const Realization& real, const NetworkConfig& cfg, Keep&& keep) {
    Realization out = real;
    if (out.pairs.empty()) return out;
    const double radius = cfg.dependency_radius();
    SpatialGrid grid(out.pairs, radius);
    for (std::uint32_t i = 0; i < out.pairs.size(); ++i) {
        const MarkedPair& me = out.pairs[i];
        bool retained = true;
        grid.for_neighbors(me.geometry.tx, radius, [&](std::uint32_t j) {
            if (!retained || j == i) return;
            const MarkedPair& other = out.pairs[j];
            if (!keep(me, other) &&
                in_pair_region(other.geometry.tx, me.geometry, cfg.exclusion))
                retained = false;
        });
        out.pairs[i].retained = retained;
    }
    return out;
}

}  // namespace

Realization thin_type1(const Realization& real, const NetworkConfig& cfg) {
    return thin_impl(real, cfg, [](const MarkedPair&, const MarkedPair&) { return false; });
}

Realization thin_type2(const Realization& real, const NetworkConfig& cfg) {
    return thin_impl(real, cfg, [](const MarkedPair& me, const MarkedPair& other) {
        return other.time_mark >= me.time_mark;  // only smaller marks suppress
    });
}

Realization thin(const Realization& real, const NetworkConfig& cfg) {
    return cfg.thinning == Thinning::type1 ? thin_type1(real, cfg) : thin_type2(real, cfg);
}

double intensity_type1(double lambda_p, double v_o) {
    if (v_o < 0.0) throw std::invalid_argument("intensity_type1: v_o must be >= 0");
    return lambda_p * std::exp(-lambda_p * v_o);
}

double intensity_type2(double lambda_p, double v_o) {
    if (v_o < 0.0) throw std::invalid_argument("intensity_type2: v_o must be >= 0");
    double l = lambda_p * v_o;
    if (l < 1e-8) return lambda_p * (1.0 - 0.5 * l);  // series around the removable point
    return -std::expm1(-l) / v_o;
}

double intensity(const NetworkConfig& cfg, double v_o) {
    return cfg.thinning == Thinning::type1 ? intensity_type1(cfg.lambda_p, v_o)
                                           : intensity_type2(cfg.lambda_p, v_o);
}

Realization typical_pair_conditioning(const Realization& real, const NetworkConfig& cfg) {
    Realization with = real;
    MarkedPair typical;
    typical.geometry = typical_pair(cfg.d);
    Rng rng = make_stream(real.seed, 0x7970); // mark stream independent of sampling
    typical.time_mark = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    with.pairs.insert(with.pairs.begin(), typical);
    return thin(with, cfg);
}

Realization sample_palm_conditioned(const NetworkConfig& cfg, const Rect& window, Rng& rng) {
    Realization real = sample_bipolar(cfg, window, rng);

    MarkedPair typical;
    typical.geometry = typical_pair(cfg.d);

    if (cfg.thinning == Thinning::type1) {
        // Conditioning on an empty typical region restricts the parent process
        // to its complement.
        std::erase_if(real.pairs, [&](const MarkedPair& p) {
            return in_pair_region(p.geometry.tx, typical.geometry, cfg.exclusion);
        });
        typical.time_mark = 0.0;
    } else {
        double v_o = union_area(typical.geometry, typical.geometry, cfg.exclusion);
        double big_l = cfg.lambda_p * v_o;
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        // mark density proportional to exp(-lambda_p t v_o)
        double u = u01(rng);
        double t = big_l > 1e-12 ? -std::log1p(u * std::expm1(-big_l)) / big_l : u;
        typical.time_mark = t;
        // parents inside the region survive the conditioning with probability
        // (1 - t) and carry marks uniform on (t, 1]
        std::vector<MarkedPair> kept;
        kept.reserve(real.pairs.size());
        for (MarkedPair& p : real.pairs) {
            if (in_pair_region(p.geometry.tx, typical.geometry, cfg.exclusion)) {
                if (u01(rng) >= 1.0 - t) continue;
                p.time_mark = t + (1.0 - t) * u01(rng);
            }
            kept.push_back(p);
        }
        real.pairs = std::move(kept);
    }

    real.pairs.insert(real.pairs.begin(), typical);
    Realization thinned = thin(real, cfg);
    assert(thinned.pairs[0].retained);
    return thinned;
}

void write_csv(std::ostream& os, const Realization& real) {
    os << "x,y,orientation,mark,retained\n";
    char buf[160];
    for (const MarkedPair& p : real.pairs) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%d\n", p.geometry.tx.x,
                      p.geometry.tx.y, p.geometry.orientation, p.time_mark,
                      p.retained ? 1 : 0);
        os << buf;
    }
}

Realization read_csv(std::istream& is) {
    Realization real;
    std::string line;
    if (!std::getline(is, line)) return real;  // header
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        MarkedPair p;
        std::getline(ss, field, ',');
        p.geometry.tx.x = std::stod(field);
        std::getline(ss, field, ',');
        p.geometry.tx.y = std::stod(field);
        std::getline(ss, field, ',');
        p.geometry.orientation = std::stod(field);
        std::getline(ss, field, ',');
        p.time_mark = std::stod(field);
        std::getline(ss, field, ',');
        p.retained = std::stoi(field) != 0;
        real.pairs.push_back(p);
    }
    return real;
}

}  // namespace ghcp

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ghcp/geometry.hpp"
#include "ghcp/network_config.hpp"
#include "ghcp/rng.hpp"

namespace ghcp {

struct MarkedPair {
    PairGeometry geometry;
    double time_mark = 0.0;  // uniform [0,1]; only consulted by type-2 thinning
    bool retained = true;
};

struct Rect {
    double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double area() const { return width() * height(); }
    bool contains(Vec2 p) const {
        return p.x >= xmin && p.x < xmax && p.y >= ymin && p.y < ymax;
    }
    Rect expanded(double margin) const {
        return {xmin - margin, ymin - margin, xmax + margin, ymax + margin};
    }
    static Rect centered(double width, double height) {
        return {-0.5 * width, -0.5 * height, 0.5 * width, 0.5 * height};
    }
};

// One sampled slot. `window` is the observation window; pairs are sampled on
// the window expanded by a guard margin so that statistics collected inside
// the observation window are free of edge bias.
struct Realization {
    Rect window;
    std::uint64_t seed = 0;
    Thinning thinning = Thinning::type1;
    std::vector<MarkedPair> pairs;
};

// Homogeneous bipolar process: transmitter positions Poisson on the expanded
// window, orientations uniform [0, 2pi), marks uniform [0, 1].
Realization sample_bipolar(const NetworkConfig& cfg, const Rect& window, std::uint64_t seed);
Realization sample_bipolar(const NetworkConfig& cfg, const Rect& window, Rng& rng);

// Pair i keeps transmitting iff no other parent transmitter lies in
// S_t(y_i) u S_r(x_i); independent of the neighbours' own outcomes.
Realization thin_type1(const Realization& real, const NetworkConfig& cfg);

// Pair i keeps transmitting iff every parent transmitter inside its region
// carries a larger time mark.
Realization thin_type2(const Realization& real, const NetworkConfig& cfg);

Realization thin(const Realization& real, const NetworkConfig& cfg);  // dispatch on cfg.thinning

// Retained intensity lambda_p e^{-lambda_p v_o}.
double intensity_type1(double lambda_p, double v_o);

// Retained intensity (1 - e^{-lambda_p v_o}) / v_o; series for tiny exponents.
double intensity_type2(double lambda_p, double v_o);

double intensity(const NetworkConfig& cfg, double v_o);

// Inserts the typical pair (origin, orientation 0) into the parent set, thins,
// and returns the realization with the typical pair at index 0. Whether the
// replication contributes to conditional averages is pairs[0].retained.
Realization typical_pair_conditioning(const Realization& real, const NetworkConfig& cfg);

// Exact reduced-Palm sampler: draws a parent configuration conditioned on the
// typical pair being retained (type 1: empty typical region; type 2: no
// smaller mark inside it), thins, and returns it with the typical pair at
// index 0 (always retained).
Realization sample_palm_conditioned(const NetworkConfig& cfg, const Rect& window, Rng& rng);

// Columnar export: x,y,orientation,mark,retained.
void write_csv(std::ostream& os, const Realization& real);
Realization read_csv(std::istream& is);

// Uniform cell grid over the transmitter positions for range queries.
class SpatialGrid {
  public:
    SpatialGrid(const std::vector<MarkedPair>& pairs, double cell_size);

    // Invokes fn(index) for every pair whose transmitter lies within
    // `radius` of `center` (plus grid slack).
    template <typename Fn>
    void for_neighbors(Vec2 center, double radius, Fn&& fn) const {
        int cx0 = cell_x(center.x - radius), cx1 = cell_x(center.x + radius);
        int cy0 = cell_y(center.y - radius), cy1 = cell_y(center.y + radius);
        for (int cy = cy0; cy <= cy1; ++cy)
            for (int cx = cx0; cx <= cx1; ++cx) {
                if (cx < 0 || cx >= nx_ || cy < 0 || cy >= ny_) continue;
                const auto& bucket = cells_[static_cast<std::size_t>(cy) * nx_ + cx];
                for (std::uint32_t idx : bucket) fn(idx);
            }
    }

  private:
    int cell_x(double x) const { return static_cast<int>(std::floor((x - x0_) * inv_)); }
    int cell_y(double y) const { return static_cast<int>(std::floor((y - y0_) * inv_)); }

    double x0_ = 0.0, y0_ = 0.0, inv_ = 1.0;
    int nx_ = 1, ny_ = 1;
    std::vector<std::vector<std::uint32_t>> cells_;
};

}  // namespace ghcp

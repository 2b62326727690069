#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace ghcp {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Wraps an angle to [-pi, pi].
double wrap_angle(double a);

// Uniform linear array on the data plane and/or the control plane.
// d0 == 0 encodes the omnidirectional case: every gain is 1.
struct AntennaConfig {
    int n_t = 16;               // transmit elements
    int n_r = 8;                // receive elements
    double d0 = 0.0;            // element spacing [m]
    double wavelength = 0.0;    // carrier wavelength [m]

    bool omni() const { return d0 <= 0.0; }
    // Half-width of the gain support in physical angle [rad] for an n-element array.
    double half_beamwidth(int n) const;
};

// Array factor of an n-element uniform array at normalized spatial angle
// vartheta = d0 sin(phi) / wavelength.  Peaks at 1 for integer vartheta.
double gain_actual(double vartheta, int n);

// cos^2 main-lobe model in normalized angle; zero outside |vartheta| <= 1/n.
double gain_cosine(double vartheta, int n);

// Small-angle directional gain in physical angle phi; 1 everywhere when d0 = 0.
double gain_physical(double phi, int n, const AntennaConfig& antenna);

// One transmitter-receiver pair. The receiver sits at
// tx + link_distance * (cos orientation, sin orientation).
struct PairGeometry {
    Vec2 tx;
    double orientation = 0.0;       // [rad], in [0, 2pi)
    double link_distance = 0.0;     // [m]

    Vec2 rx() const { return tx + unit_vector(orientation) * link_distance; }
};

// Ranges and array shaping the silenced regions around a pair.
struct ExclusionSpec {
    double r_t = 0.0;   // transmitter-side range [m]
    double r_r = 0.0;   // receiver-side range [m]
    AntennaConfig antenna;
};

// z inside the transmitter-side region: ||z - tx|| <= r_t sqrt(G_t(phi)),
// phi measured from the boresight tx->rx.
bool in_tx_exclusion(Vec2 z, const PairGeometry& pair, const ExclusionSpec& spec);

// Mirror image around the receiver with boresight rx->tx and n_r elements.
bool in_rx_exclusion(Vec2 z, const PairGeometry& pair, const ExclusionSpec& spec);

enum class RegionSide { tx, rx };

// Closed-form area of a single region (disk when d0 = 0, petal otherwise).
double region_area_single(const ExclusionSpec& spec, RegionSide side);

// Area of the union of both pairs' regions. pair_a == pair_b gives the area
// of one pair's region (tx petal united with rx petal).
double union_area(const PairGeometry& pair_a, const PairGeometry& pair_b,
                  const ExclusionSpec& spec);

struct SCriteria {
    bool s1 = false;  // typical transmitter inside the other pair's tx region
    bool s2 = false;  // typical transmitter inside the other pair's rx region
    bool s3 = false;  // other transmitter inside the typical pair's tx region
    bool s4 = false;  // other transmitter inside the typical pair's rx region

    bool any12() const { return s1 || s2; }
    bool any34() const { return s3 || s4; }
};

// Membership tests for a pair at polar position (r, beta) with orientation
// theta, relative to the typical pair (tx at origin, rx at (d, 0)).
SCriteria s_criteria(double r, double beta, double theta, double link_distance,
                     const ExclusionSpec& spec);

// Builds the two pairs used by s_criteria / union-area kernels.
PairGeometry typical_pair(double link_distance);
PairGeometry interferer_pair(double r, double beta, double theta, double link_distance);

// Exact area of a union of disks (arc decomposition, Green's theorem).
struct Disk {
    Vec2 center;
    double radius = 0.0;
};
double disk_union_area(std::span<const Disk> disks);

// Closed-form area of the union of two disks at center distance dist.
double two_disk_union_area(double r1, double r2, double dist);

namespace detail {

// Convex polygon helpers used by the directional union-area path; exposed
// for tests and benchmarks.
struct ConvexPolygon {
    std::vector<Vec2> pts;  // counter-clockwise
    double signed_area() const;
    void bounding_box(Vec2& lo, Vec2& hi) const;
};

// Polygonizes one petal; vertices are scaled so the polygon area matches the
// closed-form petal area.
ConvexPolygon petal_polygon(Vec2 anchor, double boresight, double range, int n_elems,
                            const AntennaConfig& antenna, int vertices);

// Sutherland-Hodgman intersection of two convex polygons.
ConvexPolygon clip_convex(const ConvexPolygon& subject, const ConvexPolygon& clip);

// Union area of up to four convex polygons by inclusion-exclusion.
double convex_union_area(std::span<const ConvexPolygon> polys);

}  // namespace detail

}  // namespace ghcp

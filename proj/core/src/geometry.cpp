#include "ghcp/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace ghcp {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kPetalVertices = 128;
}  // namespace

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a > kPi) a -= 2.0 * kPi;
    if (a < -kPi) a += 2.0 * kPi;
    return a;
}

double AntennaConfig::half_beamwidth(int n) const {
    return wavelength / (d0 * static_cast<double>(n));
}

double gain_actual(double vartheta, int n) {
    // sin^2(pi n t) / (n^2 sin^2(pi t)); removable singularities at integer t.
    double u = vartheta - std::round(vartheta);
    if (std::abs(u) < 1e-14) return 1.0;
    double num = std::sin(kPi * n * u);
    double den = static_cast<double>(n) * std::sin(kPi * u);
    double g = (num * num) / (den * den);
    return std::min(g, 1.0);
}

double gain_cosine(double vartheta, int n) {
    if (std::abs(vartheta) > 1.0 / static_cast<double>(n)) return 0.0;
    double c = std::cos(0.5 * kPi * n * vartheta);
    return c * c;
}

double gain_physical(double phi, int n, const AntennaConfig& antenna) {
    if (antenna.omni()) return 1.0;
    double w = antenna.half_beamwidth(n);
    if (std::abs(phi) > w) return 0.0;
    double c = std::cos(0.5 * kPi * n * antenna.d0 / antenna.wavelength * phi);
    return c * c;
}

namespace {

bool in_petal(Vec2 z, Vec2 anchor, double boresight, double range, int n,
              const AntennaConfig& antenna) {
    Vec2 v = z - anchor;
    double r2 = v.norm2();
    if (r2 == 0.0) return true;
    if (r2 > range * range) return false;
    if (antenna.omni()) return true;
    double phi = wrap_angle(std::atan2(v.y, v.x) - boresight);
    double g = gain_physical(phi, n, antenna);
    return r2 <= range * range * g;
}

}  // namespace

bool in_tx_exclusion(Vec2 z, const PairGeometry& pair, const ExclusionSpec& spec) {
    double bore = pair.orientation;
    return in_petal(z, pair.tx, bore, spec.r_t, spec.antenna.n_t, spec.antenna);
}

bool in_rx_exclusion(Vec2 z, const PairGeometry& pair, const ExclusionSpec& spec) {
    double bore = pair.orientation + kPi;  // rx boresight points back at tx
    return in_petal(z, pair.rx(), bore, spec.r_r, spec.antenna.n_r, spec.antenna);
}

double region_area_single(const ExclusionSpec& spec, RegionSide side) {
    double range = (side == RegionSide::tx) ? spec.r_t : spec.r_r;
    int n = (side == RegionSide::tx) ? spec.antenna.n_t : spec.antenna.n_r;
    if (spec.antenna.omni()) return kPi * range * range;
    double w = std::min(spec.antenna.half_beamwidth(n), kPi);
    double c = 0.5 * kPi * n * spec.antenna.d0 / spec.antenna.wavelength;
    // area = 1/2 int_{-w}^{w} range^2 cos^2(c phi) dphi
    return 0.5 * range * range * (w + std::sin(2.0 * c * w) / (2.0 * c));
}

PairGeometry typical_pair(double link_distance) {
    return PairGeometry{{0.0, 0.0}, 0.0, link_distance};
}

PairGeometry interferer_pair(double r, double beta, double theta, double link_distance) {
    return PairGeometry{{r * std::cos(beta), r * std::sin(beta)}, theta, link_distance};
}

SCriteria s_criteria(double r, double beta, double theta, double link_distance,
                     const ExclusionSpec& spec) {
    PairGeometry typical = typical_pair(link_distance);
    PairGeometry other = interferer_pair(r, beta, theta, link_distance);
    SCriteria s;
    s.s1 = in_tx_exclusion({0.0, 0.0}, other, spec);
    s.s2 = in_rx_exclusion({0.0, 0.0}, other, spec);
    s.s3 = in_tx_exclusion(other.tx, typical, spec);
    s.s4 = in_rx_exclusion(other.tx, typical, spec);
    return s;
}

// ---------------------------------------------------------------------------
// Exact disk-union area. The boundary of the union decomposes into arcs; each
// arc of circle i not covered by another disk contributes
// 1/2 int (x dy - y dx) along its counter-clockwise parameterization.
// ---------------------------------------------------------------------------

double two_disk_union_area(double r1, double r2, double dist) {
    double a1 = kPi * r1 * r1;
    double a2 = kPi * r2 * r2;
    if (dist >= r1 + r2) return a1 + a2;
    if (dist <= std::abs(r1 - r2)) return std::max(a1, a2);
    double c1 = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist * r1);
    double c2 = (dist * dist + r2 * r2 - r1 * r1) / (2.0 * dist * r2);
    c1 = std::clamp(c1, -1.0, 1.0);
    c2 = std::clamp(c2, -1.0, 1.0);
    double t = (-dist + r1 + r2) * (dist + r1 - r2) * (dist - r1 + r2) * (dist + r1 + r2);
    double lens = r1 * r1 * std::acos(c1) + r2 * r2 * std::acos(c2) -
                  0.5 * std::sqrt(std::max(t, 0.0));
    return a1 + a2 - lens;
}

double disk_union_area(std::span<const Disk> input) {
    std::vector<Disk> disks;
    disks.reserve(input.size());
    for (const Disk& d : input) {
        if (d.radius <= 0.0) continue;
        bool contained = false;
        for (std::size_t j = 0; j < disks.size() && !contained; ++j) {
            double dist = (d.center - disks[j].center).norm();
            if (dist + d.radius <= disks[j].radius + 1e-12 * disks[j].radius)
                contained = true;
        }
        if (contained) continue;
        // drop previously kept disks now contained in d
        std::erase_if(disks, [&](const Disk& k) {
            double dist = (d.center - k.center).norm();
            return dist + k.radius <= d.radius + 1e-12 * d.radius;
        });
        disks.push_back(d);
    }
    if (disks.empty()) return 0.0;

    double area = 0.0;
    std::vector<std::pair<double, double>> covered;  // angular intervals on [-pi, pi]
    for (std::size_t i = 0; i < disks.size(); ++i) {
        const Disk& di = disks[i];
        covered.clear();
        bool swallowed = false;
        for (std::size_t j = 0; j < disks.size(); ++j) {
            if (j == i) continue;
            const Disk& dj = disks[j];
            double dist = (dj.center - di.center).norm();
            if (dist >= di.radius + dj.radius) continue;
            if (dist + di.radius <= dj.radius) { swallowed = true; break; }
            if (dist + dj.radius <= di.radius) continue;  // dj inside di
            double cosg = (dist * dist + di.radius * di.radius - dj.radius * dj.radius) /
                          (2.0 * dist * di.radius);
            double gamma = std::acos(std::clamp(cosg, -1.0, 1.0));
            Vec2 dir = dj.center - di.center;
            double mid = std::atan2(dir.y, dir.x);
            double lo = mid - gamma;
            double hi = mid + gamma;
            if (lo < -kPi) {
                covered.emplace_back(lo + 2.0 * kPi, kPi);
                covered.emplace_back(-kPi, hi);
            } else if (hi > kPi) {
                covered.emplace_back(lo, kPi);
                covered.emplace_back(-kPi, hi - 2.0 * kPi);
            } else {
                covered.emplace_back(lo, hi);
            }
        }
        if (swallowed) continue;

        std::sort(covered.begin(), covered.end());
        // walk the complement of the covered intervals
        auto arc_contribution = [&](double a, double b) {
            double r = di.radius;
            Vec2 c = di.center;
            area += 0.5 * (r * r * (b - a) +
                           r * (c.x * (std::sin(b) - std::sin(a)) -
                                c.y * (std::cos(b) - std::cos(a))));
        };
        double cursor = -kPi;
        for (auto [lo, hi] : covered) {
            if (lo > cursor) arc_contribution(cursor, lo);
            cursor = std::max(cursor, hi);
        }
        if (cursor < kPi) arc_contribution(cursor, kPi);
    }
    return area;
}

// ---------------------------------------------------------------------------
// Directional union areas via convex polygon clipping. A petal with boundary
// rho(phi) = R cos(c phi), c >= 1, is convex, so pairwise/triple/quadruple
// intersections stay convex and inclusion-exclusion applies.
// ---------------------------------------------------------------------------

namespace detail {

double ConvexPolygon::signed_area() const {
    double a = 0.0;
    for (std::size_t i = 0, n = pts.size(); i < n; ++i) {
        const Vec2& p = pts[i];
        const Vec2& q = pts[(i + 1) % n];
        a += p.cross(q);
    }
    return 0.5 * a;
}

void ConvexPolygon::bounding_box(Vec2& lo, Vec2& hi) const {
    lo = {1e300, 1e300};
    hi = {-1e300, -1e300};
    for (const Vec2& p : pts) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
}

ConvexPolygon petal_polygon(Vec2 anchor, double boresight, double range, int n_elems,
                            const AntennaConfig& antenna, int vertices) {
    ConvexPolygon poly;
    double w = std::min(antenna.half_beamwidth(n_elems), kPi);
    double c = 0.5 * kPi * n_elems * antenna.d0 / antenna.wavelength;
    poly.pts.reserve(static_cast<std::size_t>(vertices) + 1);
    poly.pts.push_back(anchor);
    for (int i = 1; i < vertices; ++i) {
        double phi = -w + 2.0 * w * static_cast<double>(i) / vertices;
        double rho = range * std::cos(c * phi);
        if (rho <= 0.0) continue;
        poly.pts.push_back(anchor + unit_vector(boresight + phi) * rho);
    }
    if (poly.signed_area() < 0.0) std::reverse(poly.pts.begin(), poly.pts.end());
    // rescale radially about the anchor so the polygon area equals the exact one
    double exact = 0.5 * range * range * (w + std::sin(2.0 * c * w) / (2.0 * c));
    double s = std::sqrt(exact / poly.signed_area());
    for (Vec2& p : poly.pts) p = anchor + (p - anchor) * s;
    return poly;
}

ConvexPolygon clip_convex(const ConvexPolygon& subject, const ConvexPolygon& clip) {
    ConvexPolygon out = subject;
    thread_local std::vector<Vec2> next;
    next.reserve(subject.pts.size() + clip.pts.size() + 4);
    for (std::size_t i = 0, n = clip.pts.size(); i < n && !out.pts.empty(); ++i) {
        Vec2 a = clip.pts[i];
        Vec2 b = clip.pts[(i + 1) % n];
        Vec2 edge = b - a;
        next.clear();
        std::size_t m = out.pts.size();
        for (std::size_t j = 0; j < m; ++j) {
            Vec2 p = out.pts[j];
            Vec2 q = out.pts[(j + 1) % m];
            double sp = edge.cross(p - a);
            double sq = edge.cross(q - a);
            if (sp >= 0.0) next.push_back(p);
            if ((sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0)) {
                double t = sp / (sp - sq);
                next.push_back(p + (q - p) * t);
            }
        }
        out.pts.swap(next);
    }
    return out;
}

namespace {

bool boxes_overlap(const Vec2& lo1, const Vec2& hi1, const Vec2& lo2, const Vec2& hi2) {
    return lo1.x <= hi2.x && lo2.x <= hi1.x && lo1.y <= hi2.y && lo2.y <= hi1.y;
}

}  // namespace

double convex_union_area(std::span<const ConvexPolygon> polys) {
    std::size_t n = polys.size();
    double area = 0.0;
    std::vector<Vec2> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        area += polys[i].signed_area();
        polys[i].bounding_box(lo[i], hi[i]);
    }
    // inclusion-exclusion over all subsets of size >= 2 (n <= 4 in practice)
    std::vector<std::pair<ConvexPolygon, unsigned>> stack;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!boxes_overlap(lo[i], hi[i], lo[j], hi[j])) continue;
            ConvexPolygon inter = clip_convex(polys[i], polys[j]);
            if (inter.pts.size() < 3) continue;
            double a = inter.signed_area();
            if (a <= 0.0) continue;
            area -= a;
            stack.emplace_back(std::move(inter), (1u << i) | (1u << j));
        }
    // triples: extend each pair intersection by one more polygon
    std::vector<std::pair<ConvexPolygon, unsigned>> triples;
    for (auto& [poly, mask] : stack) {
        unsigned top = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) top = static_cast<unsigned>(i);
        for (std::size_t k = top + 1; k < n; ++k) {
            if (mask & (1u << k)) continue;
            ConvexPolygon inter = clip_convex(poly, polys[k]);
            if (inter.pts.size() < 3) continue;
            double a = inter.signed_area();
            if (a <= 0.0) continue;
            area += a;
            triples.emplace_back(std::move(inter), mask | (1u << k));
        }
    }
    for (auto& [poly, mask] : triples) {
        unsigned top = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) top = static_cast<unsigned>(i);
        for (std::size_t k = top + 1; k < n; ++k) {
            if (mask & (1u << k)) continue;
            ConvexPolygon inter = clip_convex(poly, polys[k]);
            if (inter.pts.size() < 3) continue;
            double a = inter.signed_area();
            if (a > 0.0) area -= a;
        }
    }
    return area;
}

}  // namespace detail

double union_area(const PairGeometry& pair_a, const PairGeometry& pair_b,
                  const ExclusionSpec& spec) {
    bool same = (pair_a.tx.x == pair_b.tx.x && pair_a.tx.y == pair_b.tx.y &&
                 pair_a.orientation == pair_b.orientation &&
                 pair_a.link_distance == pair_b.link_distance);

    if (spec.antenna.omni()) {
        std::vector<Disk> disks;
        disks.push_back({pair_a.tx, spec.r_t});
        disks.push_back({pair_a.rx(), spec.r_r});
        if (!same) {
            disks.push_back({pair_b.tx, spec.r_t});
            disks.push_back({pair_b.rx(), spec.r_r});
        }
        return disk_union_area(disks);
    }

    std::vector<detail::ConvexPolygon> polys;
    auto add_pair = [&](const PairGeometry& p) {
        polys.push_back(detail::petal_polygon(p.tx, p.orientation, spec.r_t,
                                              spec.antenna.n_t, spec.antenna,
                                              kPetalVertices));
        polys.push_back(detail::petal_polygon(p.rx(), p.orientation + kPi, spec.r_r,
                                              spec.antenna.n_r, spec.antenna,
                                              kPetalVertices));
    };
    add_pair(pair_a);
    if (!same) add_pair(pair_b);
    return detail::convex_union_area(polys);
}

}  // namespace ghcp

#include "ghcp/analysis.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ghcp/channel.hpp"

namespace ghcp {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double pair_prob_p(double v, double v_o, double lambda_p) {
    if (!(v > 0.0) || !(v_o > 0.0))
        throw std::domain_error("pair_prob_p: areas must be positive");
    if (!(lambda_p > 0.0)) throw std::domain_error("pair_prob_p: lambda_p must be > 0");
    double eps = v - v_o;
    double l_o = lambda_p * v_o;
    double e_o = std::exp(-l_o);
    if (std::abs(eps) < 1e-4 * v_o) {
        // second-order expansion across the removable singularity at v = v_o
        double head = 1.0 - e_o * (1.0 + l_o);
        double corr = e_o * v_o * lambda_p * lambda_p * eps * (0.5 - lambda_p * eps / 6.0);
        return (head + corr) / (lambda_p * lambda_p * v * v_o);
    }
    // v expm1(-l_o) - v_o expm1(-l_v) form avoids the large-term cancellation
    double num = v_o * (-std::expm1(-lambda_p * v)) - v * (-std::expm1(-l_o));
    return -num / (lambda_p * lambda_p * eps * v * v_o);
}

double misr_finite(double lambda_p, double los_radius, double alpha) {
    if (!(alpha > 2.0)) throw std::domain_error("misr_finite: alpha must exceed 2");
    if (los_radius < 0.0) throw std::domain_error("misr_finite: negative radius");
    double n = lambda_p * kPi * los_radius * los_radius;
    if (n == 0.0) return 0.0;
    double a = 0.5 * alpha;
    double f1 = kummer_1f1(a, 1.0 + a, -n);
    double f2 = kummer_1f1(a, 2.0 + a, -n);
    return 2.0 / (alpha - 2.0) - alpha / (alpha - 2.0) * f1 -
           4.0 * n / (alpha * alpha - 4.0) * f2 + std::exp(-n);
}

// ---------------------------------------------------------------------------
// ExclusionGeometry
// ---------------------------------------------------------------------------

namespace {
constexpr int kPetalVertices = 72;

struct BoundingDisk {
    Vec2 center;
    double radius;
};

// A petal with boundary rho = R cos(c phi), c >= 1, fits in the disk of
// radius R/2 centered half-way along the boresight.
BoundingDisk petal_bound(Vec2 anchor, double boresight, double range) {
    return {anchor + unit_vector(boresight) * (0.5 * range), 0.5 * range};
}

bool disks_touch(const BoundingDisk& a, const BoundingDisk& b) {
    double rr = a.radius + b.radius;
    return (a.center - b.center).norm2() < rr * rr;
}
}  // namespace

struct GeometryKeyHelper {
    static std::pair<int, long long> key(int kind, double los_radius) {
        return {kind, static_cast<long long>(std::llround(los_radius * 1e6))};
    }
};

ExclusionGeometry::ExclusionGeometry(const NetworkConfig& cfg)
    : d_(cfg.d), spec_(cfg.exclusion), data_antenna_(cfg.data_antenna) {
    alpha_ = cfg.alpha;
    PairGeometry typical = typical_pair(d_);
    if (spec_.antenna.omni()) {
        v_o_ = union_area(typical, typical, spec_);
        return;
    }
    typical_polys_.push_back(detail::petal_polygon(
        typical.tx, 0.0, spec_.r_t, spec_.antenna.n_t, spec_.antenna, kPetalVertices));
    typical_polys_.push_back(detail::petal_polygon(
        typical.rx(), kPi, spec_.r_r, spec_.antenna.n_r, spec_.antenna, kPetalVertices));
    tx_outline_ = detail::petal_polygon({0.0, 0.0}, 0.0, spec_.r_t, spec_.antenna.n_t,
                                        spec_.antenna, kPetalVertices)
                      .pts;
    rx_outline_ = detail::petal_polygon({0.0, 0.0}, 0.0, spec_.r_r, spec_.antenna.n_r,
                                        spec_.antenna, kPetalVertices)
                      .pts;
    // the same petal models define v_o so that V - v_o cancels exactly for
    // coincident pairs
    v_o_ = detail::convex_union_area(typical_polys_);
}

namespace {

void place_outline(const std::vector<Vec2>& outline, Vec2 anchor, double boresight,
                   detail::ConvexPolygon& out) {
    double c = std::cos(boresight), s = std::sin(boresight);
    out.pts.resize(outline.size());
    for (std::size_t i = 0; i < outline.size(); ++i) {
        const Vec2& p = outline[i];
        out.pts[i] = {anchor.x + c * p.x - s * p.y, anchor.y + s * p.x + c * p.y};
    }
}

}  // namespace

double ExclusionGeometry::union_volume(double r, double beta, double theta) const {
    PairGeometry other = interferer_pair(r, beta, theta, d_);

    if (spec_.antenna.omni()) {
        PairGeometry typical = typical_pair(d_);
        Disk disks[4] = {{typical.tx, spec_.r_t},
                         {typical.rx(), spec_.r_r},
                         {other.tx, spec_.r_t},
                         {other.rx(), spec_.r_r}};
        return disk_union_area(disks);
    }

    // V = 2 v_o - |(A u B) n (C u D)|; only cross-pair intersections matter,
    // and the bounding disks reject almost all of them
    BoundingDisk mine[2] = {petal_bound({0.0, 0.0}, 0.0, spec_.r_t),
                            petal_bound({d_, 0.0}, kPi, spec_.r_r)};
    BoundingDisk theirs[2] = {petal_bound(other.tx, theta, spec_.r_t),
                              petal_bound(other.rx(), theta + kPi, spec_.r_r)};
    bool touch[2][2];
    bool touching = false;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            touch[i][j] = disks_touch(mine[i], theirs[j]);
            touching |= touch[i][j];
        }
    if (!touching) return 2.0 * v_o_;

    thread_local detail::ConvexPolygon placed[2];
    bool have[2] = {false, false};
    thread_local std::vector<detail::ConvexPolygon> cross;
    cross.clear();
    for (int j = 0; j < 2; ++j) {
        if (!touch[0][j] && !touch[1][j]) continue;
        if (!have[j]) {
            if (j == 0)
                place_outline(tx_outline_, other.tx, theta, placed[0]);
            else
                place_outline(rx_outline_, other.rx(), theta + kPi, placed[1]);
            have[j] = true;
        }
        for (int i = 0; i < 2; ++i) {
            if (!touch[i][j]) continue;
            detail::ConvexPolygon inter = detail::clip_convex(placed[j], typical_polys_[i]);
            if (inter.pts.size() >= 3 && inter.signed_area() > 0.0)
                cross.push_back(std::move(inter));
        }
    }
    if (cross.empty()) return 2.0 * v_o_;
    double overlap = detail::convex_union_area(cross);
    return 2.0 * v_o_ - overlap;
}

KernelSample ExclusionGeometry::make_sample(Kind kind, double los_radius,
                                            std::size_t index) const {
    double u1 = halton(index, 2);
    double u2 = halton(index, 3);
    double u3 = halton(index, 5);

    double beta = kPi * u2;
    double cb = std::cos(beta);
    double sb = std::sin(beta);

    double r = 0.0, theta = 0.0, weight = 0.0;
    if (kind == Kind::interference) {
        // polar coordinates around the victim with a quadratic radial map:
        // the path-loss weight and the exclusion structure live near rho = 0
        double phi = beta;  // angle around the victim; mirror symmetry in u2
        double rho = los_radius * u1 * u1;
        double jac_rho = 2.0 * u1 * los_radius;
        Vec2 y{d_ + rho * std::cos(phi), rho * std::sin(phi)};
        r = y.norm();
        double beta_pos = std::atan2(y.y, y.x);
        double gain, width;
        if (data_antenna_.omni()) {
            theta = kTwoPi * u3;
            gain = 1.0;
            width = kTwoPi;
        } else {
            double w = data_antenna_.half_beamwidth(data_antenna_.n_t);
            double xi = 2.0 * u3 - 1.0;
            double chi = phi + kPi;  // boresight pointing back at the victim
            theta = chi + w * xi;
            double c = std::cos(0.5 * kPi * xi);
            gain = c * c;
            width = 2.0 * w;
        }
        weight = 2.0 * kPi * jac_rho * width * gain * rho / (1.0 + std::pow(rho, alpha_));
        KernelSample s;
        SCriteria crit = s_criteria(r, beta_pos, theta, d_, spec_);
        s.flags =
            static_cast<std::uint8_t>((crit.any12() ? 1 : 0) | (crit.any34() ? 2 : 0));
        s.weight = weight;
        s.v = (crit.any12() && crit.any34()) ? 0.0 : union_volume(r, beta_pos, theta);
        return s;
    } else {
        // domain: transmitters whose distance to the typical receiver is <= r_t
        double disc = spec_.r_t * spec_.r_t - d_ * d_ * sb * sb;
        if (disc <= 0.0) return {};
        double sq = std::sqrt(disc);
        double rhi = d_ * cb + sq;
        double rlo = std::max(0.0, d_ * cb - sq);
        if (rhi <= rlo) return {};
        r = rlo + u1 * (rhi - rlo);
        double ry = std::sqrt(std::max(r * r + d_ * d_ - 2.0 * r * d_ * cb, 0.0));
        if (spec_.antenna.omni()) {
            theta = kTwoPi * u3;
            weight = 2.0 * kPi * (rhi - rlo) * kTwoPi * r;
        } else {
            double c_excl = 0.5 * kPi * spec_.antenna.n_t * spec_.antenna.d0 /
                            spec_.antenna.wavelength;
            double f = std::acos(std::clamp(ry / spec_.r_t, 0.0, 1.0)) / c_excl;
            double shift;
            double arg = std::clamp((r * cb - d_) / std::max(ry, 1e-300), -1.0, 1.0);
            switch (kind) {
                case Kind::hidden_arcsin: shift = std::asin(arg); break;
                case Kind::hidden_arccos: shift = -std::acos(arg); break;
                default: shift = std::atan2(-r * sb, d_ - r * cb); break;
            }
            theta = shift + f * (2.0 * u3 - 1.0);
            weight = 2.0 * kPi * (rhi - rlo) * 2.0 * f * r;
        }
    }

    KernelSample s;
    SCriteria crit = s_criteria(r, beta, theta, d_, spec_);
    s.flags = static_cast<std::uint8_t>((crit.any12() ? 1 : 0) | (crit.any34() ? 2 : 0));
    s.weight = weight;
    s.v = (crit.any12() && crit.any34()) ? 0.0 : union_volume(r, beta, theta);
    return s;
}

std::span<const KernelSample> ExclusionGeometry::samples(Kind kind, double los_radius,
                                                         std::size_t n) const {
    n = std::min(n, kMaxSamples);
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = GeometryKeyHelper::key(static_cast<int>(kind), los_radius);
    auto it = sets_.find(key);
    if (it == sets_.end()) {
        auto set = std::make_unique<SampleSet>();
        set->data.reserve(kMaxSamples);
        it = sets_.emplace(key, std::move(set)).first;
    }
    SampleSet& set = *it->second;
    while (set.built < n) {
        set.data.push_back(make_sample(kind, los_radius, set.built));
        ++set.built;
    }
    return {set.data.data(), n};
}

// ---------------------------------------------------------------------------
// KernelContext
// ---------------------------------------------------------------------------

KernelContext::KernelContext(const NetworkConfig& cfg)
    : cfg_(cfg), geom_(std::make_shared<ExclusionGeometry>(cfg)) {
    cfg_.validate();
}

KernelContext::KernelContext(const NetworkConfig& cfg,
                             std::shared_ptr<const ExclusionGeometry> geometry)
    : cfg_(cfg), geom_(std::move(geometry)) {
    cfg_.validate();
    if (!geom_) throw std::invalid_argument("KernelContext: null geometry");
}

double KernelContext::lambda_b() const { return intensity(cfg_, v_o()); }

double KernelContext::kernel(double r, double beta, double theta) const {
    SCriteria s = s_criteria(r, beta, theta, cfg_);
    if (cfg_.thinning == Thinning::type1) {
        if (s.any12() || s.any34()) return 0.0;
        return std::exp(-cfg_.lambda_p * union_volume(r, beta, theta));
    }
    if (s.any12() && s.any34()) return 0.0;
    double p = pair_prob_p(std::max(union_volume(r, beta, theta), v_o()), v_o(),
                           cfg_.lambda_p);
    return (s.any12() || s.any34()) ? p : 2.0 * p;
}

double KernelContext::integrate_kernel(ExclusionGeometry::Kind kind,
                                       double los_radius) const {
    const double lambda_p = cfg_.lambda_p;
    const double vo = v_o();
    const bool type1 = cfg_.thinning == Thinning::type1;

    std::size_t n = 1 << 14;
    const std::size_t cap =
        std::min<std::size_t>(static_cast<std::size_t>(quad.max_evals),
                              ExclusionGeometry::kMaxSamples);
    double sum = 0.0;
    double weight_sum = 0.0;  // integral scale when the kernel saturates at 1
    std::size_t done = 0;
    double prev = 0.0;
    bool have_prev = false;
    while (true) {
        auto span = geom_->samples(kind, los_radius, n);
        for (; done < n; ++done) {
            const KernelSample& s = span[done];
            if (s.weight == 0.0) continue;
            weight_sum += s.weight;
            bool s12 = s.flags & 1, s34 = s.flags & 2;
            double k;
            if (type1) {
                if (s12 || s34) continue;
                // exp(+lambda_p v_o) from the intensity prefactor folded in
                k = std::exp(-lambda_p * (s.v - vo));
            } else {
                if (s12 && s34) continue;
                double p = pair_prob_p(std::max(s.v, vo), vo, lambda_p);
                k = (s12 || s34) ? p : 2.0 * p;
            }
            sum += s.weight * k;
        }
        double est = sum / static_cast<double>(n);
        // integrals that vanish relative to their weight scale count as zero
        double floor = 1e-9 * weight_sum / static_cast<double>(n) + quad.abs_tol;
        if (have_prev && std::abs(est - prev) <= quad.rel_tol * std::abs(est) + floor)
            return est;
        if (n >= cap) {
            // a residual sub-percent wobble at the sample cap is acceptable
            // for every consumer; anything worse is a real failure
            if (have_prev &&
                std::abs(est - prev) > std::max(0.02 * std::abs(est), 10.0 * floor))
                throw std::runtime_error("kernel integral did not converge");
            return est;
        }
        prev = est;
        have_prev = true;
        n = std::min(cap, n * 2);
    }
}

double KernelContext::mean_interference_normalized(double los_radius) const {
    double radius = los_radius < 0.0 ? cfg_.los_radius : los_radius;
    const double lambda_p = cfg_.lambda_p;
    const bool type1 = cfg_.thinning == Thinning::type1;

    double tail = 0.0;
    if (std::isinf(radius)) {
        // beyond r0 the two regions cannot interact: kernel constant, gain
        // integral separable; finite part handled like a LOS ball of radius r0
        double r0 = 2.0 * cfg_.dependency_radius() + cfg_.d + 1.0;
        double vol_far = 2.0 * v_o();
        double k_far = type1 ? std::exp(-lambda_p * (vol_far - v_o()))
                             : 2.0 * pair_prob_p(vol_far, v_o(), lambda_p);
        double gain_width = cfg_.data_antenna.omni()
                                ? kTwoPi
                                : cfg_.data_antenna.half_beamwidth(cfg_.data_antenna.n_t);
        // int_{r0}^inf rho l(rho) drho via v = rho^{2-alpha}
        double vmax = std::pow(r0, 2.0 - cfg_.alpha);
        Quadrature1D gl = gauss_legendre(64);
        double t1d = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            double v = 0.5 * (gl.nodes[i] + 1.0) * vmax;
            double f = 1.0 / (1.0 + std::pow(v, cfg_.alpha / (cfg_.alpha - 2.0)));
            t1d += 0.5 * vmax * gl.weights[i] * f;
        }
        t1d /= (cfg_.alpha - 2.0);
        tail = k_far * gain_width * 2.0 * kPi * t1d / kTwoPi;
        radius = r0;
    }

    double s = integrate_kernel(ExclusionGeometry::Kind::interference, radius);
    double base;
    if (type1)
        base = lambda_p / kTwoPi * s + lambda_p * tail;
    else {
        double lb = lambda_b();
        base = lambda_p * lambda_p / (kTwoPi * lb) * s +
               lambda_p * lambda_p / lb * tail;
    }
    return base;
}

double KernelContext::mean_interference(double los_radius) const {
    return cfg_.p0 * cfg_.data_antenna.n_t * mean_interference_normalized(los_radius);
}

double KernelContext::asymptotic_gain() const {
    if (gain_) return *gain_;
    double misr = misr_finite(cfg_.lambda_p, cfg_.los_radius, cfg_.alpha);
    double ld = path_loss(cfg_.d, cfg_.alpha);
    double inorm = mean_interference_normalized(cfg_.los_radius);
    double g = misr * ld / inorm;
    if (gain_normalization == GainNormalization::path_loss_only)
        g /= cfg_.p0 * cfg_.data_antenna.n_t;
    gain_ = g;
    return g;
}

// ---------------------------------------------------------------------------
// Reference-network success probability machinery.
// ---------------------------------------------------------------------------

const KernelContext::GAtoms& KernelContext::g_atoms() const {
    if (g_atoms_) return *g_atoms_;
    GAtoms atoms;
    int m = cfg_.m_nakagami;
    Quadrature1D lag = gauss_laguerre(64, m - 1.0);
    double inv_gamma = 1.0 / std::tgamma(static_cast<double>(m));
    bool with_beam = g_model == InterfererGainModel::cosine_fading &&
                     !cfg_.data_antenna.omni();
    if (!with_beam) {
        for (std::size_t i = 0; i < lag.nodes.size(); ++i) {
            atoms.value.push_back(lag.nodes[i] / m);
            atoms.weight.push_back(lag.weights[i] * inv_gamma);
        }
    } else {
        double w = cfg_.data_antenna.half_beamwidth(cfg_.data_antenna.n_t);
        double p_beam = std::min(w / kPi, 1.0);
        atoms.value.push_back(0.0);
        atoms.weight.push_back(1.0 - p_beam);
        Quadrature1D gl = gauss_legendre(24);
        for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
            double u = 0.5 * (gl.nodes[j] + 1.0);
            double wu = 0.5 * gl.weights[j];
            double cg = std::cos(0.5 * kPi * u);
            double gain = cg * cg;
            for (std::size_t i = 0; i < lag.nodes.size(); ++i) {
                atoms.value.push_back(lag.nodes[i] / m * gain);
                atoms.weight.push_back(lag.weights[i] * inv_gamma * wu * p_beam);
            }
        }
    }
    g_atoms_ = std::move(atoms);
    return *g_atoms_;
}

namespace {

// E_{1+delta}(z) with its constant and z^delta singular parts removed.
double ereg0(double z, double delta) {
    double term = 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 60; ++j) {
        term *= -z / j;
        double del = -term / (j - delta);
        sum += del;
        if (std::abs(del) < 1e-17 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

// E_{1+delta-k}(z) with its z^{delta-k} singular part removed (k >= 1).
double eregk(double z, double delta, int k) {
    double term = 1.0;
    double sum = -1.0 / (k - delta);
    for (int j = 1; j <= 60; ++j) {
        term *= -z / j;
        double del = -term / (j + k - delta);
        sum += del;
        if (std::abs(del) < 1e-17 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

}  // namespace

double KernelContext::psi0(double x, const GAtoms& g) const {
    double delta = 2.0 / cfg_.alpha;
    double sum = 0.0;
    for (std::size_t i = 0; i < g.value.size(); ++i) {
        double z = x * g.value[i];
        sum += g.weight[i] * (z < 1e-290 ? 1.0 / delta : gen_exp_integral(1.0 + delta, z));
    }
    return sum;
}

double KernelContext::psik(double x, int k, const GAtoms& g) const {
    double delta = 2.0 / cfg_.alpha;
    double sum = 0.0;
    for (std::size_t i = 0; i < g.value.size(); ++i) {
        double gv = g.value[i];
        if (gv == 0.0) continue;
        double z = x * gv;
        if (z < 1e-290) continue;  // g^k E_p(z) -> 0 with z for k >= 1
        sum += g.weight[i] * std::pow(gv, k) * gen_exp_integral(1.0 + delta - k, z);
    }
    return sum;
}

double KernelContext::psi0_reg(double x, const GAtoms& g) const {
    double delta = 2.0 / cfg_.alpha;
    double sum = 0.0;
    for (std::size_t i = 0; i < g.value.size(); ++i)
        sum += g.weight[i] * ereg0(x * g.value[i], delta);
    return sum;
}

double KernelContext::psik_reg(double x, int k, const GAtoms& g) const {
    double delta = 2.0 / cfg_.alpha;
    double sum = 0.0;
    for (std::size_t i = 0; i < g.value.size(); ++i) {
        double gv = g.value[i];
        if (gv == 0.0) continue;
        sum += g.weight[i] * std::pow(gv, k) * eregk(x * gv, delta, k);
    }
    return sum;
}

void KernelContext::ck_column(double r, double sir_threshold, double gain,
                              std::vector<double>& out) const {
    const int m = cfg_.m_nakagami;
    const double alpha = cfg_.alpha;
    const double delta = 2.0 / alpha;
    const double big_r = cfg_.los_radius;
    const double lambda_p = cfg_.lambda_p;
    const GAtoms& g = g_atoms();

    double x0 = m * sir_threshold / gain;                  // s r^{-alpha}
    double x_r = x0 * std::pow(r / big_r, alpha);          // s R^{-alpha}
    out.assign(static_cast<std::size_t>(m), 0.0);

    double r2 = r * r;
    double big_r2 = big_r * big_r;
    if (x0 < 1e-4) {
        // singular parts of the two terms cancel exactly; use regularized series
        out[0] = kPi * lambda_p * delta *
                 (big_r2 * psi0_reg(x_r, g) - r2 * psi0_reg(x0, g));
        double xr_pow = 1.0, x0_pow = 1.0;
        double kfact = 1.0;
        for (int k = 1; k < m; ++k) {
            xr_pow *= x_r;
            x0_pow *= x0;
            kfact *= k;
            out[static_cast<std::size_t>(k)] =
                kPi * delta * lambda_p / kfact *
                (big_r2 * xr_pow * psik_reg(x_r, k, g) - r2 * x0_pow * psik_reg(x0, k, g));
        }
        return;
    }

    out[0] = kPi * lambda_p *
             (r2 - big_r2 + delta * big_r2 * psi0(x_r, g) - delta * r2 * psi0(x0, g));
    double xr_pow = 1.0, x0_pow = 1.0;
    double kfact = 1.0;
    for (int k = 1; k < m; ++k) {
        xr_pow *= x_r;
        x0_pow *= x0;
        kfact *= k;
        out[static_cast<std::size_t>(k)] =
            kPi * delta * lambda_p / kfact *
            (big_r2 * xr_pow * psik(x_r, k, g) - r2 * x0_pow * psik(x0, k, g));
    }
}

double KernelContext::ck(int k, double r, double sir_threshold) const {
    if (k < 0 || k >= cfg_.m_nakagami)
        throw std::domain_error("ck: k must lie in [0, m_nakagami)");
    if (!(r > 0.0) || r > cfg_.los_radius)
        throw std::domain_error("ck: r must lie in (0, los_radius]");
    std::vector<double> col;
    ck_column(r, sir_threshold, asymptotic_gain(), col);
    return col[static_cast<std::size_t>(k)];
}

double KernelContext::success_prob(double sir_threshold) const {
    if (!(sir_threshold > 0.0))
        throw std::domain_error("success_prob: threshold must be > 0");
    double gain = asymptotic_gain();
    double lambda_p = cfg_.lambda_p;
    double big_b = kPi * lambda_p * cfg_.los_radius * cfg_.los_radius;
    double cap = std::min(big_b, 45.0);  // e^{-rho} tail below 3e-20
    Quadrature1D gl = gauss_legendre(128);
    std::vector<double> col;
    double sum = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        double rho = 0.5 * (gl.nodes[i] + 1.0) * cap;
        double w = 0.5 * cap * gl.weights[i];
        double r = std::sqrt(rho / (kPi * lambda_p));
        ck_column(r, sir_threshold, gain, col);
        sum += w * std::exp(-rho) * lt_toeplitz_expm_colsum(col);
    }
    return std::clamp(sum, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// Hidden nodes.
// ---------------------------------------------------------------------------

double KernelContext::hidden_expected(HiddenShift shift) const {
    ExclusionGeometry::Kind kind;
    switch (shift) {
        case HiddenShift::arcsin_form: kind = ExclusionGeometry::Kind::hidden_arcsin; break;
        case HiddenShift::arccos_form: kind = ExclusionGeometry::Kind::hidden_arccos; break;
        default: kind = ExclusionGeometry::Kind::hidden_exact; break;
    }
    double s = integrate_kernel(kind, 0.0);
    if (cfg_.thinning == Thinning::type1) return cfg_.lambda_p / kTwoPi * s;
    return cfg_.lambda_p * cfg_.lambda_p / (kTwoPi * lambda_b()) * s;
}

int hidden_count_sim(const Realization& real, const NetworkConfig& cfg) {
    if (real.pairs.empty()) return 0;
    Vec2 victim = real.pairs[0].geometry.rx();
    int count = 0;
    for (std::size_t i = 1; i < real.pairs.size(); ++i) {
        const MarkedPair& p = real.pairs[i];
        if (!p.retained) continue;
        if (in_tx_exclusion(victim, p.geometry, cfg.exclusion)) ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------
// Spec-level wrappers.
// ---------------------------------------------------------------------------

double kernel_type1(double r, double beta, double theta, const KernelContext& ctx) {
    SCriteria s = s_criteria(r, beta, theta, ctx.config());
    if (s.any12() || s.any34()) return 0.0;
    return std::exp(-ctx.config().lambda_p * ctx.union_volume(r, beta, theta));
}

double kernel_type2(double r, double beta, double theta, const KernelContext& ctx) {
    SCriteria s = s_criteria(r, beta, theta, ctx.config());
    if (s.any12() && s.any34()) return 0.0;
    double v = std::max(ctx.union_volume(r, beta, theta), ctx.v_o());
    double p = pair_prob_p(v, ctx.v_o(), ctx.config().lambda_p);
    return (s.any12() || s.any34()) ? p : 2.0 * p;
}

double mean_interference(const KernelContext& ctx, double los_radius) {
    return ctx.mean_interference(los_radius);
}

double asymptotic_gain(const KernelContext& ctx) { return ctx.asymptotic_gain(); }

double ck_coeff(int k, double r, const KernelContext& ctx, double sir_threshold) {
    return ctx.ck(k, r, sir_threshold);
}

double success_prob_asappp(double sir_threshold, const KernelContext& ctx) {
    return ctx.success_prob(sir_threshold);
}

double hidden_expected(const KernelContext& ctx, HiddenShift shift) {
    return ctx.hidden_expected(shift);
}

}  // namespace ghcp

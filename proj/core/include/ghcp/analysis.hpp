#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "ghcp/network_config.hpp"
#include "ghcp/point_process.hpp"
#include "ghcp/specfun.hpp"

namespace ghcp {

// Joint retention probability factor p(V) of the type-2 process for a pair
// configuration with union region area v (v >= v_o > 0).
double pair_prob_p(double v, double v_o, double lambda_p);

// Mean interference-to-average-signal ratio of the nearest-transmitter
// reference network restricted to a LOS ball of radius R.
double misr_finite(double lambda_p, double los_radius, double alpha);

// How the SIR-shift gain normalizes the mean interference: against the mean
// signal power (dimensionless, default) or against path loss alone.
enum class GainNormalization { signal_normalized, path_loss_only };

// Distribution of the interferer factor g in the reference-network
// coefficients: Nakagami power fading times the cosine beam gain at a
// uniform angle, or fading alone.
enum class InterfererGainModel { cosine_fading, fading_only };

// Orientation shift used inside the hidden-node integral.
enum class HiddenShift { exact, arcsin_form, arccos_form };

struct KernelSample {
    double v = 0.0;       // union area (valid unless both exclusion sides hit)
    double weight = 0.0;  // integrand factors independent of lambda_p and thinning
    std::uint8_t flags = 0;  // bit0: s1|s2, bit1: s3|s4
};

// Geometry shared across intensities/thinning types: typical-pair region
// area, union-area evaluation, and cached low-discrepancy integration
// samples (union areas are independent of lambda_p, so one sample set serves
// whole sweeps).
class ExclusionGeometry {
  public:
    enum class Kind { interference, hidden_exact, hidden_arcsin, hidden_arccos };

    explicit ExclusionGeometry(const NetworkConfig& cfg);

    double v_o() const { return v_o_; }
    double link_distance() const { return d_; }
    const ExclusionSpec& spec() const { return spec_; }
    const AntennaConfig& data_antenna() const { return data_antenna_; }

    // Area of the union of the typical pair's region and the region of a
    // pair at (r, beta) with orientation theta.
    double union_volume(double r, double beta, double theta) const;

    std::span<const KernelSample> samples(Kind kind, double los_radius, std::size_t n) const;

    static constexpr std::size_t kMaxSamples = std::size_t(1) << 19;

  private:
    struct SampleSet {
        std::vector<KernelSample> data;
        std::size_t built = 0;
    };

    KernelSample make_sample(Kind kind, double los_radius, std::size_t index) const;

    double d_ = 0.0;
    double v_o_ = 0.0;
    double alpha_ = 2.1;  // folded into the interference sample weights
    ExclusionSpec spec_;
    AntennaConfig data_antenna_;
    std::vector<detail::ConvexPolygon> typical_polys_;  // directional case
    std::vector<Vec2> tx_outline_;  // local-frame petal outlines (boresight +x)
    std::vector<Vec2> rx_outline_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<int, long long>, std::unique_ptr<SampleSet>> sets_;
};

// Everything needed to evaluate the analytical results at one configuration.
// Construction precomputes the typical-pair region; integral sample caches
// fill lazily and are shared when contexts reuse an ExclusionGeometry.
class KernelContext {
  public:
    explicit KernelContext(const NetworkConfig& cfg);
    KernelContext(const NetworkConfig& cfg, std::shared_ptr<const ExclusionGeometry> geometry);

    const NetworkConfig& config() const { return cfg_; }
    const ExclusionGeometry& geometry() const { return *geom_; }
    std::shared_ptr<const ExclusionGeometry> geometry_ptr() const { return geom_; }

    double v_o() const { return geom_->v_o(); }
    double union_volume(double r, double beta, double theta) const {
        return geom_->union_volume(r, beta, theta);
    }
    double lambda_b() const;

    // Two-branch / three-branch joint-retention kernels.
    double kernel(double r, double beta, double theta) const;

    // Mean interference at the typical receiver [W]; los_radius < 0 uses the
    // configured LOS ball; +infinity integrates over the whole plane.
    double mean_interference(double los_radius = -1.0) const;
    // Same without the p0 n_t power scale.
    double mean_interference_normalized(double los_radius = -1.0) const;

    double asymptotic_gain() const;
    double success_prob(double sir_threshold) const;
    double hidden_expected(HiddenShift shift = HiddenShift::exact) const;

    double ck(int k, double r, double sir_threshold) const;

    QuadratureSpec quad{1e-3, 0.0, long(ExclusionGeometry::kMaxSamples),
                        QuadratureSpec::Scheme::quasi_random};
    GainNormalization gain_normalization = GainNormalization::signal_normalized;
    InterfererGainModel g_model = InterfererGainModel::cosine_fading;

  private:
    struct GAtoms {  // discretized distribution of g
        std::vector<double> value;
        std::vector<double> weight;
    };
    const GAtoms& g_atoms() const;
    double psi0(double x, const GAtoms& g) const;
    double psik(double x, int k, const GAtoms& g) const;
    double psi0_reg(double x, const GAtoms& g) const;
    double psik_reg(double x, int k, const GAtoms& g) const;
    void ck_column(double r, double sir_threshold, double gain,
                   std::vector<double>& out) const;
    double integrate_kernel(ExclusionGeometry::Kind kind, double los_radius) const;

    NetworkConfig cfg_;
    std::shared_ptr<const ExclusionGeometry> geom_;
    mutable std::optional<double> gain_;
    mutable std::optional<GAtoms> g_atoms_;
};

// Spec-level kernel entry points.
double kernel_type1(double r, double beta, double theta, const KernelContext& ctx);
double kernel_type2(double r, double beta, double theta, const KernelContext& ctx);

double mean_interference(const KernelContext& ctx, double los_radius = -1.0);
double asymptotic_gain(const KernelContext& ctx);
double ck_coeff(int k, double r, const KernelContext& ctx, double sir_threshold);
double success_prob_asappp(double sir_threshold, const KernelContext& ctx);
double hidden_expected(const KernelContext& ctx, HiddenShift shift = HiddenShift::exact);

// Retained non-typical transmitters whose tx-side region covers the typical
// receiver (pairs[0] must be the typical pair).
int hidden_count_sim(const Realization& real, const NetworkConfig& cfg);

}  // namespace ghcp

#include "ghcp/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "ghcp/channel.hpp"

namespace ghcp::mc {

namespace {

int thread_count(const Options& opts) {
    if (opts.threads > 0) return opts.threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

template <typename Fn>
void parallel_reps(int reps, int threads, Fn&& fn) {
    if (threads <= 1) {
        for (int r = 0; r < reps; ++r) fn(r);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) fn(r);
        });
    for (auto& th : pool) th.join();
}

Estimate mean_of(const std::vector<double>& xs) {
    Estimate e;
    e.samples = static_cast<long>(xs.size());
    if (xs.empty()) return e;
    double sum = 0.0;
    for (double x : xs) sum += x;
    e.mean = sum / xs.size();
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - e.mean) * (x - e.mean);
        e.std_err = std::sqrt(ss / (xs.size() * (xs.size() - 1.0)));
    }
    return e;
}

// Ratio estimator sum(x_k)/sum(n_k) with replication-batched standard error.
Estimate ratio_of(const std::vector<double>& xs, const std::vector<double>& ns) {
    Estimate e;
    double sx = 0.0, sn = 0.0;
    for (double x : xs) sx += x;
    for (double n : ns) sn += n;
    e.samples = static_cast<long>(sn);
    if (sn <= 0.0) return e;
    double ratio = sx / sn;
    e.mean = ratio;
    std::size_t k = xs.size();
    if (k > 1) {
        double nbar = sn / k;
        double ss = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double d = xs[i] - ratio * ns[i];
            ss += d * d;
        }
        e.std_err = std::sqrt(ss / (k * (k - 1.0))) / nbar;
    }
    return e;
}

}  // namespace

Estimate estimate_intensity(const NetworkConfig& cfg, const Rect& window,
                            const Options& opts) {
    std::vector<double> counts(static_cast<std::size_t>(opts.replications), 0.0);
    parallel_reps(opts.replications, thread_count(opts), [&](int rep) {
        Rng rng = make_stream(opts.seed, static_cast<std::uint64_t>(rep));
        Realization real = thin(sample_bipolar(cfg, window, rng), cfg);
        long n = 0;
        for (const MarkedPair& p : real.pairs)
            if (p.retained && window.contains(p.geometry.tx)) ++n;
        counts[static_cast<std::size_t>(rep)] = static_cast<double>(n);
    });
    Estimate e = mean_of(counts);
    e.mean /= window.area();
    e.std_err /= window.area();
    e.samples = opts.replications;
    return e;
}

PalmEstimate estimate_palm(const NetworkConfig& cfg, const PalmOptions& opts) {
    const double half_obs = 0.5 * opts.averaging_side;
    const double reach = cfg.los_radius + cfg.d;
    const Rect window = Rect::centered(opts.averaging_side + 2.0 * reach,
                                       opts.averaging_side + 2.0 * reach);
    const std::size_t reps = static_cast<std::size_t>(opts.replications);
    const std::size_t nthr = opts.sir_thresholds.size();

    // Mean interference: fading carries unit mean, so it is integrated out
    // exactly, and the heavy-tailed near-victim band is estimated on every
    // pair the window can serve (not just the central region) to tame its
    // rare-event variance. SIR samples keep fresh fading draws.
    const double r_split = std::min(15.0, 0.5 * cfg.los_radius);
    const double half_near = 0.5 * window.width() - r_split - cfg.d - 1.0;
    const double half_hidden =
        0.5 * window.width() - cfg.exclusion.r_t - cfg.d - 1.0;

    std::vector<double> counts(reps, 0.0);
    std::vector<double> far_sum(reps, 0.0);
    std::vector<double> near_count(reps, 0.0), near_sum(reps, 0.0);
    std::vector<double> hidden_count_v(reps, 0.0), hidden_sum(reps, 0.0);
    std::vector<std::vector<double>> ccdf(nthr, std::vector<double>(reps, 0.0));

    parallel_reps(opts.replications, thread_count(opts), [&](int rep) {
        Rng rng = make_stream(opts.seed, static_cast<std::uint64_t>(rep));
        Realization real = thin(sample_bipolar(cfg, window, rng), cfg);

        std::vector<MarkedPair> active;
        for (const MarkedPair& p : real.pairs)
            if (p.retained) active.push_back(p);
        SpatialGrid grid(active, std::max(cfg.los_radius / 4.0, 1.0));

        const double r2max = cfg.los_radius * cfg.los_radius;
        const double r2split = r_split * r_split;
        const double signal_scale = cfg.p0 * cfg.data_antenna.n_t;
        const double l_d = path_loss(cfg.d, cfg.alpha);

        double rep_count = 0.0, rep_far = 0.0;
        double rep_near_n = 0.0, rep_near = 0.0;
        double rep_hidden_n = 0.0, rep_hidden = 0.0;
        std::vector<double> rep_ccdf(nthr, 0.0);

        for (std::uint32_t vi = 0; vi < active.size(); ++vi) {
            const MarkedPair& me = active[vi];
            Vec2 rx = me.geometry.rx();
            bool central = std::abs(me.geometry.tx.x) <= half_obs &&
                           std::abs(me.geometry.tx.y) <= half_obs;
            bool near_ok = std::abs(me.geometry.tx.x) <= half_near &&
                           std::abs(me.geometry.tx.y) <= half_near;
            bool hidden_ok = opts.with_hidden &&
                             std::abs(me.geometry.tx.x) <= half_hidden &&
                             std::abs(me.geometry.tx.y) <= half_hidden;
            if (!central && !near_ok && !hidden_ok) continue;

            double far_mean = 0.0, near_mean = 0.0, interf_drawn = 0.0;
            if (central || near_ok) {
                grid.for_neighbors(rx, cfg.los_radius, [&](std::uint32_t j) {
                    if (j == vi) return;
                    const MarkedPair& p = active[j];
                    Vec2 diff = p.geometry.tx - rx;
                    double r2 = diff.norm2();
                    if (r2 > r2max) return;
                    double g = interferer_gain(p.geometry, rx, cfg.data_antenna);
                    if (g == 0.0) return;
                    double term = signal_scale * g * path_loss(std::sqrt(r2), cfg.alpha);
                    if (r2 < r2split)
                        near_mean += term;
                    else
                        far_mean += term;
                    if (central && !opts.sir_thresholds.empty())
                        interf_drawn +=
                            term * sample_fading(cfg.m_nakagami, rng).power_gain;
                });
            }

            if (hidden_ok) {
                rep_hidden_n += 1.0;
                grid.for_neighbors(rx, cfg.exclusion.r_t, [&](std::uint32_t j) {
                    if (j == vi) return;
                    if (in_tx_exclusion(rx, active[j].geometry, cfg.exclusion))
                        rep_hidden += 1.0;
                });
            }
            if (near_ok) {
                rep_near_n += 1.0;
                rep_near += near_mean;
            }
            if (central) {
                rep_count += 1.0;
                rep_far += far_mean;
                double fade0 = sample_fading(cfg.m_nakagami, rng).power_gain;
                double sir = interf_drawn > 0.0
                                 ? signal_scale * fade0 * l_d / interf_drawn
                                 : std::numeric_limits<double>::infinity();
                for (std::size_t t = 0; t < nthr; ++t)
                    if (sir > opts.sir_thresholds[t]) rep_ccdf[t] += 1.0;
            }
        }

        std::size_t r = static_cast<std::size_t>(rep);
        counts[r] = rep_count;
        far_sum[r] = rep_far;
        near_count[r] = rep_near_n;
        near_sum[r] = rep_near;
        hidden_count_v[r] = rep_hidden_n;
        hidden_sum[r] = rep_hidden;
        for (std::size_t t = 0; t < nthr; ++t) ccdf[t][r] = rep_ccdf[t];
    });

    PalmEstimate out;
    Estimate far = ratio_of(far_sum, counts);
    Estimate near = ratio_of(near_sum, near_count);
    out.mean_interference.mean = far.mean + near.mean;
    out.mean_interference.std_err =
        std::sqrt(far.std_err * far.std_err + near.std_err * near.std_err);
    out.mean_interference.samples = far.samples;
    out.hidden_count = ratio_of(hidden_sum, hidden_count_v);
    out.sir_ccdf.reserve(nthr);
    for (std::size_t t = 0; t < nthr; ++t) out.sir_ccdf.push_back(ratio_of(ccdf[t], counts));
    double total = 0.0;
    for (double c : counts) total += c;
    out.pairs_observed = static_cast<long>(total);
    return out;
}

Estimate estimate_mean_interference_typical(const NetworkConfig& cfg, const Options& opts) {
    const double reach = cfg.los_radius + cfg.d;
    const Rect window = Rect::centered(2.0 * reach, 2.0 * reach);
    std::vector<double> values(static_cast<std::size_t>(opts.replications), 0.0);
    parallel_reps(opts.replications, thread_count(opts), [&](int rep) {
        Rng rng = make_stream(opts.seed, static_cast<std::uint64_t>(rep));
        Realization real = sample_palm_conditioned(cfg, window, rng);
        Vec2 victim = real.pairs[0].geometry.rx();
        values[static_cast<std::size_t>(rep)] =
            aggregate_interference(real, victim, cfg, rng, 0);
    });
    return mean_of(values);
}

}  // namespace ghcp::mc

#include "ghcp/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "ghcp/montecarlo.hpp"
#include "ghcp/point_process.hpp"

namespace ghcp {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
constexpr double kReferenceSub7PowerW = 0.02;  // anchor for the range scaling

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}
}  // namespace

double range_scale(double p1, double p2, double g1, double g2, double f1, double f2) {
    if (p1 <= 0.0 || p2 <= 0.0 || g1 <= 0.0 || g2 <= 0.0 || f1 <= 0.0 || f2 <= 0.0)
        throw std::domain_error("range_scale: all arguments must be positive");
    return std::sqrt(p1 / p2 * g1 / g2) * f2 / f1;
}

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
}

double get_num(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
        throw std::invalid_argument("config: field '" + key + "' must be a number");
    return j[key].get<double>();
}

int get_int(const json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer())
        throw std::invalid_argument("config: field '" + key + "' must be an integer");
    return j[key].get<int>();
}

std::string get_str(const json& j, const std::string& key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string())
        throw std::invalid_argument("config: field '" + key + "' must be a string");
    return j[key].get<std::string>();
}

}  // namespace

LoadedConfig parse_config(const std::string& json_text) {
    json j = json::object();
    std::string trimmed = json_text;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    if (!trimmed.empty()) j = json::parse(json_text);
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");

    static const std::set<std::string> allowed = {
        "lambda_p",       "d",           "los_radius",     "alpha",
        "m_nakagami",     "p0_w",        "sir_threshold_db", "thinning",
        "mechanism",      "n_t",         "n_r",            "mmwave_freq_ghz",
        "sub7_freq_ghz",  "sub7_power_w", "element_spacing_m", "r_t",
        "r_r",            "gain_normalization", "g_model"};
    reject_unknown_keys(j, allowed, "config");

    LoadedConfig out;
    NetworkConfig& cfg = out.network;
    cfg.lambda_p = get_num(j, "lambda_p", 4e-4);
    cfg.d = get_num(j, "d", 20.0);
    cfg.los_radius = get_num(j, "los_radius", 300.0);
    cfg.alpha = get_num(j, "alpha", 2.1);
    cfg.m_nakagami = get_int(j, "m_nakagami", 3);
    cfg.p0 = get_num(j, "p0_w", 0.02);
    double thr_db = get_num(j, "sir_threshold_db", -5.0);
    cfg.sir_threshold = std::pow(10.0, thr_db / 10.0);

    std::string thinning = get_str(j, "thinning", "type1");
    if (thinning == "type1") cfg.thinning = Thinning::type1;
    else if (thinning == "type2") cfg.thinning = Thinning::type2;
    else throw std::invalid_argument("config: thinning must be 'type1' or 'type2'");

    std::string mech = get_str(j, "mechanism", "directional");
    if (mech == "directional") cfg.mechanism = Mechanism::directional;
    else if (mech == "cross_link") cfg.mechanism = Mechanism::cross_link;
    else throw std::invalid_argument("config: mechanism must be 'directional' or 'cross_link'");

    int n_t = get_int(j, "n_t", 16);
    int n_r = get_int(j, "n_r", 8);
    if (n_t < 1 || n_r < 1)
        throw std::invalid_argument("config: element counts must be >= 1");
    double f_mm = get_num(j, "mmwave_freq_ghz", 35.0) * 1e9;
    double f_sub7 = get_num(j, "sub7_freq_ghz", 6.0) * 1e9;
    double sub7_power = get_num(j, "sub7_power_w", 0.02);
    if (f_mm <= 0.0 || f_sub7 <= 0.0)
        throw std::invalid_argument("config: frequencies must be positive");

    double lambda_mm = kSpeedOfLight / f_mm;
    double lambda_sub7 = kSpeedOfLight / f_sub7;
    cfg.data_antenna.n_t = n_t;
    cfg.data_antenna.n_r = n_r;
    cfg.data_antenna.wavelength = lambda_mm;
    cfg.data_antenna.d0 = get_num(j, "element_spacing_m", 0.5 * lambda_mm);

    // reference decode ranges: isotropic handshake at 20 mW
    double r_t_ref = 4.8 * cfg.d;
    double r_r_ref = 4.0 * cfg.d;
    if (cfg.mechanism == Mechanism::cross_link) {
        double s = range_scale(sub7_power, kReferenceSub7PowerW, 1.0, 1.0, f_sub7, f_sub7);
        cfg.exclusion.r_t = r_t_ref * s;
        cfg.exclusion.r_r = r_r_ref * s;
        cfg.exclusion.antenna = AntennaConfig{n_t, n_r, 0.0, lambda_sub7};
    } else {
        cfg.exclusion.r_t =
            r_t_ref * range_scale(cfg.p0, kReferenceSub7PowerW, n_t, 1.0, f_mm, f_sub7);
        cfg.exclusion.r_r =
            r_r_ref * range_scale(cfg.p0, kReferenceSub7PowerW, n_r, 1.0, f_mm, f_sub7);
        cfg.exclusion.antenna = cfg.data_antenna;
    }
    if (j.contains("r_t")) cfg.exclusion.r_t = get_num(j, "r_t", 0.0);
    if (j.contains("r_r")) cfg.exclusion.r_r = get_num(j, "r_r", 0.0);

    std::string gn = get_str(j, "gain_normalization", "signal");
    if (gn == "signal") out.analysis.gain_normalization = GainNormalization::signal_normalized;
    else if (gn == "path_loss") out.analysis.gain_normalization = GainNormalization::path_loss_only;
    else throw std::invalid_argument("config: gain_normalization must be 'signal' or 'path_loss'");

    std::string gm = get_str(j, "g_model", "cosine_fading");
    if (gm == "cosine_fading") out.analysis.g_model = InterfererGainModel::cosine_fading;
    else if (gm == "fading_only") out.analysis.g_model = InterfererGainModel::fading_only;
    else throw std::invalid_argument("config: g_model must be 'cosine_fading' or 'fading_only'");

    cfg.validate();
    return out;
}

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

ExperimentPlan parse_plan(const std::string& json_text) {
    json j = json::parse(json_text);
    static const std::set<std::string> allowed = {
        "experiment", "config",        "grid",   "log10_range", "replications",
        "seed",       "window_m",      "output", "averaging_side_m", "with_montecarlo"};
    reject_unknown_keys(j, allowed, "plan");

    ExperimentPlan plan;
    std::string kind = get_str(j, "experiment", "intensity");
    if (kind == "intensity") plan.kind = ExperimentKind::intensity;
    else if (kind == "mean_interference") plan.kind = ExperimentKind::mean_interference;
    else if (kind == "sir_ccdf") plan.kind = ExperimentKind::sir_ccdf;
    else if (kind == "hidden_nodes") plan.kind = ExperimentKind::hidden_nodes;
    else if (kind == "throughput") plan.kind = ExperimentKind::throughput;
    else throw std::invalid_argument("plan: unknown experiment '" + kind + "'");

    plan.config = parse_config(j.contains("config") ? j["config"].dump() : "{}");

    if (j.contains("grid")) {
        for (const auto& v : j["grid"]) plan.grid.push_back(v.get<double>());
    } else if (j.contains("log10_range")) {
        auto lr = j["log10_range"];
        if (!lr.is_array() || lr.size() != 3)
            throw std::invalid_argument("plan: log10_range must be [lo, hi, points]");
        double lo = lr[0].get<double>(), hi = lr[1].get<double>();
        int pts = lr[2].get<int>();
        if (pts < 1) throw std::invalid_argument("plan: log10_range needs >= 1 points");
        for (int i = 0; i < pts; ++i)
            plan.grid.push_back(std::pow(
                10.0, lo + (pts == 1 ? 0.0 : (hi - lo) * i / (pts - 1.0))));
    } else if (plan.kind == ExperimentKind::sir_ccdf) {
        for (double db = -10.0; db <= 5.01; db += 2.5) plan.grid.push_back(db);
    } else {
        for (int i = 0; i < 25; ++i)
            plan.grid.push_back(std::pow(10.0, -5.0 + 3.0 * i / 24.0));
    }
    if (plan.grid.empty()) throw std::invalid_argument("plan: grid must be nonempty");

    plan.replications = get_int(j, "replications", 2000);
    if (plan.replications < 1) throw std::invalid_argument("plan: replications must be >= 1");
    plan.seed = static_cast<std::uint64_t>(get_num(j, "seed", 1.0));
    plan.window_m = get_num(j, "window_m", 2000.0);
    plan.averaging_side_m = get_num(j, "averaging_side_m", 400.0);
    if (j.contains("with_montecarlo")) {
        if (!j["with_montecarlo"].is_boolean())
            throw std::invalid_argument("plan: with_montecarlo must be a boolean");
        plan.with_montecarlo = j["with_montecarlo"].get<bool>();
    }
    plan.output = get_str(j, "output", "");
    return plan;
}

ExperimentPlan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_plan: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_plan(ss.str());
}

std::string describe(const NetworkConfig& cfg) {
    std::string s;
    s += "lambda_p=" + fmt(cfg.lambda_p);
    s += ";d=" + fmt(cfg.d);
    s += ";R=" + fmt(cfg.los_radius);
    s += ";alpha=" + fmt(cfg.alpha);
    s += ";m=" + std::to_string(cfg.m_nakagami);
    s += ";p0=" + fmt(cfg.p0);
    s += ";theta=" + fmt(cfg.sir_threshold);
    s += ";thin=" + std::string(cfg.thinning == Thinning::type1 ? "1" : "2");
    s += ";mech=" + std::string(cfg.mechanism == Mechanism::directional ? "d" : "c");
    s += ";r_t=" + fmt(cfg.exclusion.r_t);
    s += ";r_r=" + fmt(cfg.exclusion.r_r);
    s += ";ex_d0=" + fmt(cfg.exclusion.antenna.d0);
    s += ";ex_wl=" + fmt(cfg.exclusion.antenna.wavelength);
    s += ";nt=" + std::to_string(cfg.data_antenna.n_t);
    s += ";nr=" + std::to_string(cfg.data_antenna.n_r);
    s += ";d0=" + fmt(cfg.data_antenna.d0);
    s += ";wl=" + fmt(cfg.data_antenna.wavelength);
    return s;
}

std::uint64_t config_hash(const NetworkConfig& cfg) {
    std::string s = describe(cfg);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

KernelContext make_context(const LoadedConfig& cfg) {
    KernelContext ctx(cfg.network);
    ctx.gain_normalization = cfg.analysis.gain_normalization;
    ctx.g_model = cfg.analysis.g_model;
    return ctx;
}

KernelContext make_context(const LoadedConfig& cfg,
                           std::shared_ptr<const ExclusionGeometry> geometry) {
    KernelContext ctx(cfg.network, std::move(geometry));
    ctx.gain_normalization = cfg.analysis.gain_normalization;
    ctx.g_model = cfg.analysis.g_model;
    return ctx;
}

namespace {

// Expected Palm samples across the whole run; below a floor the Monte Carlo
// column would be noise, so it is skipped and flagged.
double expected_palm_samples(const NetworkConfig& cfg, double v_o,
                             const ExperimentPlan& plan) {
    double lb = intensity(cfg, v_o);
    return lb * plan.averaging_side_m * plan.averaging_side_m * plan.replications;
}

}  // namespace

SweepTable run_experiment(const ExperimentPlan& plan, int threads) {
    SweepTable table;
    const LoadedConfig& base = plan.config;
    auto geometry = std::make_shared<ExclusionGeometry>(base.network);
    std::uint64_t hash = config_hash(base.network);

    auto status_cell = [](const std::string& s) { return s.empty() ? "ok" : s; };

    if (plan.kind == ExperimentKind::sir_ccdf) {
        table.header = {"threshold_db", "lambda_p", "success_analytic", "success_mc",
                        "success_mc_se", "gain", "replications", "seed", "config_hash",
                        "status"};
        KernelContext ctx = make_context(base, geometry);
        std::vector<double> linear;
        for (double db : plan.grid) linear.push_back(std::pow(10.0, db / 10.0));
        mc::PalmEstimate palm;
        bool have_mc = false;
        std::string note;
        if (plan.with_montecarlo) {
            mc::PalmOptions opts;
            opts.replications = plan.replications;
            opts.seed = plan.seed;
            opts.threads = threads;
            opts.averaging_side = plan.averaging_side_m;
            opts.sir_thresholds = linear;
            opts.with_hidden = false;
            if (expected_palm_samples(base.network, ctx.v_o(), plan) >= 200.0) {
                palm = mc::estimate_palm(base.network, opts);
                have_mc = true;
            } else {
                note = "mc_skipped_low_density";
            }
        }
        for (std::size_t i = 0; i < plan.grid.size(); ++i) {
            std::vector<std::string> row;
            std::string status = note;
            double analytic = 0.0;
            try {
                analytic = ctx.success_prob(linear[i]);
            } catch (const std::exception& e) {
                status = e.what();
            }
            row.push_back(fmt(plan.grid[i]));
            row.push_back(fmt(base.network.lambda_p));
            row.push_back(fmt(analytic));
            row.push_back(have_mc ? fmt(palm.sir_ccdf[i].mean) : "");
            row.push_back(have_mc ? fmt(palm.sir_ccdf[i].std_err) : "");
            row.push_back(fmt(ctx.asymptotic_gain()));
            row.push_back(std::to_string(plan.replications));
            row.push_back(std::to_string(plan.seed));
            row.push_back(fmt(static_cast<double>(hash)));
            row.push_back(status_cell(status));
            table.rows.push_back(std::move(row));
        }
        return table;
    }

    table.header = {"lambda_p",      "v_o",        "lambda_b",   "lambda_b_mc",
                    "lambda_b_mc_se", "mean_if_w", "mean_if_mc_w", "mean_if_mc_se",
                    "misr_r",        "gain",       "success_prob", "throughput",
                    "hidden",        "hidden_mc",  "hidden_mc_se", "replications",
                    "seed",          "config_hash", "status"};

    for (double lambda : plan.grid) {
        LoadedConfig point = base;
        point.network.lambda_p = lambda;
        KernelContext ctx = make_context(point, geometry);
        std::vector<std::string> row;
        std::string status;

        double v_o = ctx.v_o();
        double lb = ctx.lambda_b();
        double mean_if = 0.0, misr = 0.0, gain = 0.0, succ = 0.0, hidden = 0.0;
        try {
            if (plan.kind != ExperimentKind::intensity) {
                mean_if = ctx.mean_interference();
                misr = misr_finite(lambda, point.network.los_radius, point.network.alpha);
                gain = ctx.asymptotic_gain();
                succ = ctx.success_prob(point.network.sir_threshold);
                if (plan.kind == ExperimentKind::hidden_nodes) hidden = ctx.hidden_expected();
            }
        } catch (const std::exception& e) {
            status = e.what();
        }

        std::string lb_mc, lb_mc_se, if_mc, if_mc_se, hid_mc, hid_mc_se;
        if (plan.with_montecarlo && status.empty()) {
            try {
                if (plan.kind == ExperimentKind::intensity) {
                    mc::Options opts;
                    opts.replications = plan.replications;
                    opts.seed = plan.seed;
                    opts.threads = threads;
                    Rect window = Rect::centered(plan.window_m, plan.window_m);
                    mc::Estimate est = mc::estimate_intensity(point.network, window, opts);
                    lb_mc = fmt(est.mean);
                    lb_mc_se = fmt(est.std_err);
                } else if (plan.kind == ExperimentKind::mean_interference ||
                           plan.kind == ExperimentKind::hidden_nodes) {
                    if (expected_palm_samples(point.network, v_o, plan) >= 200.0) {
                        mc::PalmOptions opts;
                        opts.replications = plan.replications;
                        opts.seed = plan.seed;
                        opts.threads = threads;
                        opts.averaging_side = plan.averaging_side_m;
                        mc::PalmEstimate palm = mc::estimate_palm(point.network, opts);
                        if_mc = fmt(palm.mean_interference.mean);
                        if_mc_se = fmt(palm.mean_interference.std_err);
                        hid_mc = fmt(palm.hidden_count.mean);
                        hid_mc_se = fmt(palm.hidden_count.std_err);
                    } else {
                        status = "mc_skipped_low_density";
                    }
                }
            } catch (const std::exception& e) {
                status = e.what();
            }
        }

        row.push_back(fmt(lambda));
        row.push_back(fmt(v_o));
        row.push_back(fmt(lb));
        row.push_back(lb_mc);
        row.push_back(lb_mc_se);
        row.push_back(fmt(mean_if));
        row.push_back(if_mc);
        row.push_back(if_mc_se);
        row.push_back(fmt(misr));
        row.push_back(fmt(gain));
        row.push_back(fmt(succ));
        row.push_back(fmt(succ * lb));
        row.push_back(fmt(hidden));
        row.push_back(hid_mc);
        row.push_back(hid_mc_se);
        row.push_back(std::to_string(plan.replications));
        row.push_back(std::to_string(plan.seed));
        row.push_back(fmt(static_cast<double>(hash)));
        row.push_back(status_cell(status));
        table.rows.push_back(std::move(row));
    }
    return table;
}

proto::Scenario parse_scenario(const std::string& json_text) {
    json j = json::parse(json_text);
    static const std::set<std::string> allowed = {
        "devices",        "sub7_rate_mbps", "mmwave_rate_mbps", "sub7_range_m",
        "mmwave_range_m", "slot_us",        "sifs_us",          "difs_us",
        "ifs_us",         "backoff_slots",  "timeout_us",       "data_bytes",
        "block_mmwave_data", "seed"};
    reject_unknown_keys(j, allowed, "scenario");

    proto::Scenario s;
    if (!j.contains("devices") || !j["devices"].is_array() || j["devices"].empty())
        throw std::invalid_argument("scenario: 'devices' must be a nonempty array");
    for (const auto& dj : j["devices"]) {
        proto::DeviceSpec dev;
        if (!dj.contains("id") || !dj["id"].is_string())
            throw std::invalid_argument("scenario: device entry needs a string 'id'");
        dev.id = dj["id"].get<std::string>();
        std::string role = dj.value("role", std::string("neighbor"));
        if (role == "ap") dev.role = proto::Role::ap;
        else if (role == "sta") dev.role = proto::Role::sta;
        else if (role == "neighbor") dev.role = proto::Role::neighbor;
        else throw std::invalid_argument("scenario: role must be ap, sta or neighbor");
        if (dj.contains("position")) {
            auto p = dj["position"];
            if (!p.is_array() || p.size() != 2)
                throw std::invalid_argument("scenario: position must be [x, y]");
            dev.x = p[0].get<double>();
            dev.y = p[1].get<double>();
        }
        s.devices.push_back(dev);
    }
    s.sub7_rate_mbps = get_num(j, "sub7_rate_mbps", s.sub7_rate_mbps);
    s.mmwave_rate_mbps = get_num(j, "mmwave_rate_mbps", s.mmwave_rate_mbps);
    s.sub7_range_m = get_num(j, "sub7_range_m", s.sub7_range_m);
    s.mmwave_range_m = get_num(j, "mmwave_range_m", s.mmwave_range_m);
    s.slot_us = get_int(j, "slot_us", static_cast<int>(s.slot_us));
    s.sifs_us = get_int(j, "sifs_us", static_cast<int>(s.sifs_us));
    s.difs_us = get_int(j, "difs_us", static_cast<int>(s.difs_us));
    s.ifs_us = get_int(j, "ifs_us", static_cast<int>(s.ifs_us));
    s.backoff_slots = get_int(j, "backoff_slots", s.backoff_slots);
    s.timeout_us = get_int(j, "timeout_us", static_cast<int>(s.timeout_us));
    s.data_bytes = get_int(j, "data_bytes", static_cast<int>(s.data_bytes));
    if (j.contains("block_mmwave_data")) {
        if (!j["block_mmwave_data"].is_boolean())
            throw std::invalid_argument("scenario: block_mmwave_data must be a boolean");
        s.block_mmwave_data = j["block_mmwave_data"].get<bool>();
    }
    s.seed = static_cast<std::uint64_t>(get_num(j, "seed", 1.0));
    if (s.backoff_slots < 1)
        throw std::invalid_argument("scenario: backoff_slots must be >= 1");
    return s;
}

proto::Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_scenario: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string to_csv(const SweepTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

}  // namespace ghcp

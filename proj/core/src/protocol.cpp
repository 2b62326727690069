#include "ghcp/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "ghcp/rng.hpp"

namespace ghcp::proto {

std::string to_string(const MacAddress& mac) {
    char buf[18];
    std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x", mac[0], mac[1],
                  mac[2], mac[3], mac[4], mac[5]);
    return buf;
}

std::optional<MacAddress> parse_mac(const std::string& text) {
    MacAddress mac{};
    unsigned v[6];
    if (std::sscanf(text.c_str(), "%x:%x:%x:%x:%x:%x", &v[0], &v[1], &v[2], &v[3], &v[4],
                    &v[5]) != 6)
        return std::nullopt;
    for (int i = 0; i < 6; ++i) {
        if (v[i] > 0xff) return std::nullopt;
        mac[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v[i]);
    }
    return mac;
}

std::uint32_t crc32(const std::uint8_t* data, std::size_t len) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < len; ++i)
        crc = table[(crc ^ data[i]) & 0xFFu] ^ (crc >> 8);
    return crc ^ 0xFFFFFFFFu;
}

namespace {

std::size_t frame_length(FrameKind kind) {
    switch (kind) {
        case FrameKind::rts: return 1 + 2 + 2 + 6 + 6 + 4;
        case FrameKind::cts: return 1 + 2 + 2 + 6 + 4;
        case FrameKind::dts: return 1 + 2 + 2 + 6 + 12 + 4;
    }
    return 0;
}

void push_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

}  // namespace

std::vector<std::uint8_t> encode(const ControlFrame& frame) {
    std::vector<std::uint8_t> out;
    out.reserve(frame_length(frame.kind));
    out.push_back(static_cast<std::uint8_t>(frame.kind));
    push_u16(out, frame.duration1);
    push_u16(out, frame.duration2);
    out.insert(out.end(), frame.ra.begin(), frame.ra.end());
    if (frame.kind == FrameKind::rts) out.insert(out.end(), frame.ta.begin(), frame.ta.end());
    if (frame.kind == FrameKind::dts) {
        out.insert(out.end(), frame.nav_sa.begin(), frame.nav_sa.end());
        out.insert(out.end(), frame.nav_da.begin(), frame.nav_da.end());
    }
    std::uint32_t fcs = crc32(out.data(), out.size());
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<std::uint8_t>((fcs >> (8 * i)) & 0xFF));
    return out;
}

DecodeResult decode(const std::uint8_t* data, std::size_t len) {
    DecodeResult res;
    if (len < 1) {
        res.status = DecodeStatus::truncated;
        return res;
    }
    std::uint8_t kind_byte = data[0];
    if (kind_byte != static_cast<std::uint8_t>(FrameKind::rts) &&
        kind_byte != static_cast<std::uint8_t>(FrameKind::cts) &&
        kind_byte != static_cast<std::uint8_t>(FrameKind::dts)) {
        res.status = DecodeStatus::unknown_kind;
        return res;
    }
    FrameKind kind = static_cast<FrameKind>(kind_byte);
    if (len != frame_length(kind)) {
        res.status = DecodeStatus::truncated;
        return res;
    }
    std::uint32_t stored = 0;
    for (int i = 0; i < 4; ++i)
        stored |= static_cast<std::uint32_t>(data[len - 4 + static_cast<std::size_t>(i)])
                  << (8 * i);
    if (crc32(data, len - 4) != stored) {
        res.status = DecodeStatus::bad_fcs;
        return res;
    }
    ControlFrame f;
    f.kind = kind;
    f.duration1 = static_cast<std::uint16_t>(data[1] | (data[2] << 8));
    f.duration2 = static_cast<std::uint16_t>(data[3] | (data[4] << 8));
    std::copy(data + 5, data + 11, f.ra.begin());
    if (kind == FrameKind::rts) std::copy(data + 11, data + 17, f.ta.begin());
    if (kind == FrameKind::dts) {
        std::copy(data + 11, data + 17, f.nav_sa.begin());
        std::copy(data + 17, data + 23, f.nav_da.begin());
    }
    res.frame = f;
    return res;
}

DecodeResult decode(const std::vector<std::uint8_t>& bytes) {
    return decode(bytes.data(), bytes.size());
}

// ---------------------------------------------------------------------------
// Handshake simulation.
// ---------------------------------------------------------------------------

std::string to_string(EventKind k) {
    switch (k) {
        case EventKind::backoff_start: return "backoff_start";
        case EventKind::tx_start: return "tx_start";
        case EventKind::tx_end: return "tx_end";
        case EventKind::rx: return "rx";
        case EventKind::nav_set: return "nav_set";
        case EventKind::nav_reset: return "nav_reset";
        case EventKind::data_start: return "data_start";
        case EventKind::data_end: return "data_end";
        case EventKind::timeout_dts: return "timeout_dts";
    }
    return "?";
}

namespace {

struct Device {
    DeviceSpec spec;
    MacAddress mac{};
    long nav_sub7 = 0;
    long nav_mmwave = 0;
};

long tx_time_us(std::size_t bytes, double rate_mbps) {
    return static_cast<long>(std::ceil(static_cast<double>(bytes) * 8.0 / rate_mbps));
}

double dist(const DeviceSpec& a, const DeviceSpec& b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

EventLog run_handshake(const Scenario& scenario, std::uint64_t seed) {
    Scenario s = scenario;
    s.seed = seed;
    return run_handshake(s);
}

EventLog run_handshake(const Scenario& scenario) {
    std::vector<Device> devices;
    int ap_idx = -1, sta_idx = -1;
    for (const DeviceSpec& spec : scenario.devices) {
        Device dev;
        dev.spec = spec;
        auto mac = parse_mac(spec.id);
        if (!mac) throw std::invalid_argument("run_handshake: bad MAC '" + spec.id + "'");
        dev.mac = *mac;
        if (spec.role == Role::ap) ap_idx = static_cast<int>(devices.size());
        if (spec.role == Role::sta) sta_idx = static_cast<int>(devices.size());
        devices.push_back(dev);
    }
    if (ap_idx < 0 || sta_idx < 0)
        throw std::invalid_argument("run_handshake: scenario needs one ap and one sta");
    for (std::size_t i = 0; i < devices.size(); ++i)
        for (std::size_t j = i + 1; j < devices.size(); ++j)
            if (devices[i].mac == devices[j].mac)
                throw std::invalid_argument("run_handshake: duplicate MAC");
    if (scenario.sub7_rate_mbps <= 0.0 || scenario.mmwave_rate_mbps <= 0.0)
        throw std::invalid_argument("run_handshake: rates must be positive");

    Device& ap = devices[static_cast<std::size_t>(ap_idx)];
    Device& sta = devices[static_cast<std::size_t>(sta_idx)];

    EventLog log;
    auto emit = [&](long t, const std::string& dev, EventKind kind, Link link,
                    std::optional<ControlFrame> frame = std::nullopt) {
        log.events.push_back({t, dev, kind, link, std::move(frame)});
    };

    Rng rng = make_stream(scenario.seed, 0);
    std::uniform_int_distribution<int> backoff(0, scenario.backoff_slots - 1);

    const long rts_us = tx_time_us(frame_length(FrameKind::rts), scenario.sub7_rate_mbps);
    const long cts_us = tx_time_us(frame_length(FrameKind::cts), scenario.sub7_rate_mbps);
    const long dts_us = tx_time_us(frame_length(FrameKind::dts), scenario.sub7_rate_mbps);
    const long data_us = tx_time_us(static_cast<std::size_t>(scenario.data_bytes),
                                    scenario.mmwave_rate_mbps);
    const long max_backoff_us = static_cast<long>(scenario.backoff_slots - 1) * scenario.slot_us;

    // deliver a frame to everything in range; returns per-device receive flag
    auto deliver = [&](const Device& from, Link link, double range, long t,
                       const ControlFrame& frame) {
        for (Device& dev : devices) {
            if (&dev == &from) continue;
            if (dist(dev.spec, from.spec) > range) continue;
            emit(t, dev.spec.id, EventKind::rx, link, frame);
            bool addressed = dev.mac == frame.ra;
            if (frame.kind == FrameKind::dts) {
                // release: both reservations for this session are dropped
                if (dev.nav_sub7 > t || dev.nav_mmwave > t) {
                    dev.nav_sub7 = std::min(dev.nav_sub7, t);
                    dev.nav_mmwave = std::min(dev.nav_mmwave, t);
                    emit(t, dev.spec.id, EventKind::nav_reset, Link::sub7);
                    emit(t, dev.spec.id, EventKind::nav_reset, Link::mmwave);
                }
            } else if (!addressed) {
                long ns = t + frame.duration1;
                long nm = t + frame.duration2;
                if (ns > dev.nav_sub7 || nm > dev.nav_mmwave) {
                    dev.nav_sub7 = std::max(dev.nav_sub7, ns);
                    dev.nav_mmwave = std::max(dev.nav_mmwave, nm);
                    if (frame.duration1 > 0) emit(t, dev.spec.id, EventKind::nav_set, Link::sub7);
                    if (frame.duration2 > 0) emit(t, dev.spec.id, EventKind::nav_set, Link::mmwave);
                }
            }
        }
    };

    // sub-7 contention
    long t = scenario.difs_us;
    emit(t, ap.spec.id, EventKind::backoff_start, Link::sub7);
    t += static_cast<long>(backoff(rng)) * scenario.slot_us;

    // cross-link request
    ControlFrame rts;
    rts.kind = FrameKind::rts;
    rts.ra = sta.mac;
    rts.ta = ap.mac;
    rts.duration1 = static_cast<std::uint16_t>(scenario.sifs_us + cts_us);
    rts.duration2 = static_cast<std::uint16_t>(scenario.sifs_us + cts_us + scenario.ifs_us +
                                               max_backoff_us + data_us);
    emit(t, ap.spec.id, EventKind::tx_start, Link::sub7, rts);
    long rts_end = t + rts_us;
    emit(rts_end, ap.spec.id, EventKind::tx_end, Link::sub7, rts);
    deliver(ap, Link::sub7, scenario.sub7_range_m, rts_end, rts);

    // mm-wave availability check at the recipient
    if (sta.nav_mmwave > rts_end) return log;  // busy: no response in this slot

    // cross-link clear
    ControlFrame cts;
    cts.kind = FrameKind::cts;
    cts.ra = rts.ta;
    long elapsed = scenario.sifs_us + cts_us;
    cts.duration1 = static_cast<std::uint16_t>(std::max<long>(rts.duration1 - elapsed, 0));
    cts.duration2 = static_cast<std::uint16_t>(std::max<long>(rts.duration2 - elapsed, 0));
    long cts_start = rts_end + scenario.sifs_us;
    long cts_end = cts_start + cts_us;
    emit(cts_start, sta.spec.id, EventKind::tx_start, Link::sub7, cts);
    emit(cts_end, sta.spec.id, EventKind::tx_end, Link::sub7, cts);
    deliver(sta, Link::sub7, scenario.sub7_range_m, cts_end, cts);

    // mm-wave data after a short gap and a fresh backoff draw
    long data_start = cts_end + scenario.ifs_us +
                      static_cast<long>(backoff(rng)) * scenario.slot_us;
    long dts_deadline = cts_end + scenario.timeout_us;

    if (!scenario.block_mmwave_data && data_start <= dts_deadline) {
        emit(data_start, ap.spec.id, EventKind::data_start, Link::mmwave);
        emit(data_start + data_us, ap.spec.id, EventKind::data_end, Link::mmwave);
    } else {
        // recipient never sees the data frame: broadcast the release
        emit(dts_deadline, sta.spec.id, EventKind::timeout_dts, Link::sub7);
        ControlFrame dts;
        dts.kind = FrameKind::dts;
        dts.ra = rts.ta;
        dts.nav_sa = rts.ta;
        dts.nav_da = rts.ra;
        dts.duration1 = 0;
        dts.duration2 = 0;
        emit(dts_deadline, sta.spec.id, EventKind::tx_start, Link::sub7, dts);
        long dts_end = dts_deadline + dts_us;
        emit(dts_end, sta.spec.id, EventKind::tx_end, Link::sub7, dts);
        deliver(sta, Link::sub7, scenario.sub7_range_m, dts_end, dts);
    }

    std::stable_sort(log.events.begin(), log.events.end(),
                     [](const Event& a, const Event& b) { return a.time_us < b.time_us; });
    return log;
}

std::string to_csv(const EventLog& log) {
    std::string out = "time_us,device,event,link,frame_kind,dur1,dur2\n";
    char buf[256];
    for (const Event& e : log.events) {
        const char* kind = "";
        long d1 = -1, d2 = -1;
        if (e.frame) {
            switch (e.frame->kind) {
                case FrameKind::rts: kind = "rts"; break;
                case FrameKind::cts: kind = "cts"; break;
                case FrameKind::dts: kind = "dts"; break;
            }
            d1 = e.frame->duration1;
            d2 = e.frame->duration2;
        }
        std::snprintf(buf, sizeof(buf), "%ld,%s,%s,%s,%s,%ld,%ld\n", e.time_us,
                      e.device.c_str(), to_string(e.kind).c_str(),
                      e.link == Link::sub7 ? "sub7" : "mmwave", kind, d1, d2);
        out += buf;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Log predicates.
// ---------------------------------------------------------------------------

namespace {

struct NavState {
    long sub7 = 0;
    long mmwave = 0;
};

}  // namespace

LogCheck check_safety(const EventLog& log, const Scenario& scenario) {
    std::map<std::string, NavState> nav;
    std::map<std::string, MacAddress> macs;
    for (const DeviceSpec& d : scenario.devices)
        if (auto m = parse_mac(d.id)) macs[d.id] = *m;

    for (const Event& e : log.events) {
        if (e.kind == EventKind::rx && e.frame) {
            bool addressed = macs.count(e.device) && macs[e.device] == e.frame->ra;
            NavState& st = nav[e.device];
            if (e.frame->kind == FrameKind::dts) {
                st.sub7 = std::min(st.sub7, e.time_us);
                st.mmwave = std::min(st.mmwave, e.time_us);
            } else if (!addressed) {
                st.sub7 = std::max(st.sub7, e.time_us + e.frame->duration1);
                st.mmwave = std::max(st.mmwave, e.time_us + e.frame->duration2);
            }
        }
        bool is_tx = e.kind == EventKind::tx_start || e.kind == EventKind::data_start;
        if (is_tx) {
            const NavState& st = nav[e.device];
            long until = e.link == Link::sub7 ? st.sub7 : st.mmwave;
            if (e.time_us < until)
                return {false, e.device + " transmitted at " + std::to_string(e.time_us) +
                                   "us during an overheard reservation"};
        }
    }
    return {};
}

LogCheck check_liveness(const EventLog& log, const Scenario& scenario) {
    long data_end = -1;
    for (const Event& e : log.events)
        if (e.kind == EventKind::data_end) data_end = e.time_us;
    if (data_end < 0) return {false, "data transfer never completed"};
    long cts_us = tx_time_us(frame_length(FrameKind::cts), scenario.sub7_rate_mbps);
    long rts_us = tx_time_us(frame_length(FrameKind::rts), scenario.sub7_rate_mbps);
    long data_us = tx_time_us(static_cast<std::size_t>(scenario.data_bytes),
                              scenario.mmwave_rate_mbps);
    long max_backoff_us = static_cast<long>(scenario.backoff_slots - 1) * scenario.slot_us;
    long bound = scenario.difs_us + max_backoff_us + rts_us + scenario.sifs_us + cts_us +
                 scenario.ifs_us + max_backoff_us + data_us;
    if (data_end > bound)
        return {false, "handshake exceeded its completion bound of " +
                           std::to_string(bound) + "us"};
    return {};
}

LogCheck check_dts_recovery(const EventLog& log, const Scenario& scenario) {
    bool timeout_seen = false, dts_sent = false;
    std::map<std::string, bool> reset_pending;
    for (const Event& e : log.events) {
        if (e.kind == EventKind::timeout_dts) timeout_seen = true;
        if (e.kind == EventKind::tx_start && e.frame && e.frame->kind == FrameKind::dts)
            dts_sent = true;
        if (e.kind == EventKind::data_start) return {false, "data started despite blocking"};
        if (e.kind == EventKind::nav_set) reset_pending[e.device] = true;
        if (e.kind == EventKind::nav_reset) reset_pending[e.device] = false;
    }
    if (!timeout_seen) return {false, "timeout never fired"};
    if (!dts_sent) return {false, "release frame never sent"};
    for (const auto& [dev, pending] : reset_pending)
        if (pending) return {false, dev + " kept a reservation after the release"};
    (void)scenario;
    return {};
}

}  // namespace ghcp::proto

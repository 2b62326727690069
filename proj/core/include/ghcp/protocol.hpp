#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ghcp::proto {

using MacAddress = std::array<std::uint8_t, 6>;

std::string to_string(const MacAddress& mac);
std::optional<MacAddress> parse_mac(const std::string& text);

enum class FrameKind : std::uint8_t { rts = 0x01, cts = 0x02, dts = 0x03 };

// Dual-band control frame. duration1 reserves the sub-7 GHz link and
// duration2 the mm-wave link, both in microseconds.
struct ControlFrame {
    FrameKind kind = FrameKind::rts;
    std::uint16_t duration1 = 0;
    std::uint16_t duration2 = 0;
    MacAddress ra{};                 // receiver address
    MacAddress ta{};                 // transmitter address (rts only)
    MacAddress nav_sa{};             // reservation source (dts only)
    MacAddress nav_da{};             // reservation destination (dts only)

    bool operator==(const ControlFrame&) const = default;
};

std::uint32_t crc32(const std::uint8_t* data, std::size_t len);

// Wire layout: kind(1) dur1(2,le) dur2(2,le) ra(6) [ta(6)] [nav_sa(6) nav_da(6)] fcs(4,le).
std::vector<std::uint8_t> encode(const ControlFrame& frame);

enum class DecodeStatus { ok, truncated, bad_fcs, unknown_kind };

struct DecodeResult {
    DecodeStatus status = DecodeStatus::ok;
    ControlFrame frame;
};

DecodeResult decode(const std::uint8_t* data, std::size_t len);
DecodeResult decode(const std::vector<std::uint8_t>& bytes);

// ---------------------------------------------------------------------------
// Discrete-event simulation of the dual-band handshake.
// ---------------------------------------------------------------------------

enum class Role { ap, sta, neighbor };

struct DeviceSpec {
    std::string id;        // textual MAC, e.g. "02:00:00:00:00:01"
    Role role = Role::neighbor;
    double x = 0.0, y = 0.0;
};

struct Scenario {
    std::vector<DeviceSpec> devices;          // exactly one ap and one sta
    double sub7_rate_mbps = 6.0;
    double mmwave_rate_mbps = 1000.0;
    double sub7_range_m = 200.0;
    double mmwave_range_m = 100.0;
    long slot_us = 9;
    long sifs_us = 16;
    long difs_us = 34;
    long ifs_us = 16;                          // gap before seizing the mm-wave link
    int backoff_slots = 16;                    // contention window (uniform)
    long timeout_us = 216;                     // DTS timer after the CTS (3x mean backoff)
    long data_bytes = 100000;
    bool block_mmwave_data = false;            // fault injection: data never starts
    std::uint64_t seed = 1;
};

enum class Link { sub7, mmwave };

enum class EventKind {
    backoff_start,
    tx_start,
    tx_end,
    rx,
    nav_set,
    nav_reset,
    data_start,
    data_end,
    timeout_dts
};

struct Event {
    long time_us = 0;
    std::string device;
    EventKind kind = EventKind::tx_start;
    Link link = Link::sub7;
    std::optional<ControlFrame> frame;
};

struct EventLog {
    std::vector<Event> events;  // nondecreasing timestamps
};

std::string to_string(EventKind k);

// Runs the handshake: sub-7 contention, dual-duration reservation, mm-wave
// data, and the broadcast release frame if the data never appears.
EventLog run_handshake(const Scenario& scenario);
EventLog run_handshake(const Scenario& scenario, std::uint64_t seed);

// CSV export: time_us,device,event,frame_kind,dur1,dur2.
std::string to_csv(const EventLog& log);

// Log predicates used by the test suites.
struct LogCheck {
    bool ok = true;
    std::string reason;
};

// No third device transmits on a link while a reservation it overheard is
// still running.
LogCheck check_safety(const EventLog& log, const Scenario& scenario);
// The data transfer completes when nothing is blocked.
LogCheck check_liveness(const EventLog& log, const Scenario& scenario);
// A blocked transfer triggers the release frame and every overhearing
// neighbor drops its reservations.
LogCheck check_dts_recovery(const EventLog& log, const Scenario& scenario);

}  // namespace ghcp::proto

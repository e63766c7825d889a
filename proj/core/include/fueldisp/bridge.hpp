#pragma once

#include <array>
#include <chrono>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "fueldisp/keys.hpp"
#include "fueldisp/simulation.hpp"

namespace fueldisp::bridge {

inline constexpr double kMinTimescale = 0.1;
inline constexpr double kMaxTimescale = 100.0;

struct KeyDown {
    Key key = Key::Reserved;
    bool operator==(const KeyDown&) const = default;
};
struct KeyUp {
    Key key = Key::Reserved;
    bool operator==(const KeyUp&) const = default;
};
struct SetTimescale {
    double factor = 1.0;
    bool operator==(const SetTimescale&) const = default;
};
struct Reset {
    bool operator==(const Reset&) const = default;
};

using ClientMessage = std::variant<KeyDown, KeyUp, SetTimescale, Reset>;

/// A client frame that is not valid JSON or not a known message.
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"type":"key_down","key":"1"} and friends. Throws ProtocolError.
ClientMessage parse_client_message(std::string_view frame);
std::string encode_client_message(const ClientMessage& msg);

struct StateSnapshot {
    SimTimeMs t_ms{};
    std::string mode;
    std::array<std::string, kLcdRows> lcd;
    bool motor = false;
    VolumeMicroliters dispensed{};
    std::optional<VolumeMicroliters> target;
    VolumeMicroliters tank{};
    double timescale = 1.0;

    /// Everything except t_ms matches.
    bool same_state(const StateSnapshot& other) const;

    bool operator==(const StateSnapshot&) const = default;
};

std::string encode_snapshot(const StateSnapshot& s);
/// Inverse of encode_snapshot. Throws ProtocolError.
StateSnapshot decode_snapshot(std::string_view frame);
std::string encode_error(std::string_view message);

struct DriverConfig {
    SimConfig sim;
    double timescale = 1.0;
    /// A key_down never followed by key_up is released after this much sim time.
    DurationMs auto_release{5000};
};

/// Owns the simulation for the live bridge. Not thread-safe: exactly one
/// driver context calls apply() and tick(); everyone else sees snapshots.
class Driver {
public:
    explicit Driver(DriverConfig config);

    /// Takes effect on the next tick.
    void apply(const ClientMessage& msg);

    /// Advances one tick and returns the state at that tick.
    StateSnapshot tick();

    /// State as of the last tick (or boot).
    const StateSnapshot& snapshot() const { return snapshot_; }

    double timescale() const { return timescale_; }
    /// Wall time per tick at the current timescale.
    std::chrono::nanoseconds wall_period() const;

    const Simulation& simulation() const { return sim_; }

private:
    StateSnapshot make_snapshot(const TickReport& report) const;

    DriverConfig config_;
    Simulation sim_;
    double timescale_;
    std::map<Contact, SimTimeMs> held_;
    StateSnapshot snapshot_;
};

/// Broadcast on change, and at least every `heartbeat` of wall time.
class BroadcastPolicy {
public:
    using Clock = std::chrono::steady_clock;

    explicit BroadcastPolicy(std::chrono::milliseconds heartbeat = std::chrono::milliseconds(250))
        : heartbeat_(heartbeat) {}

    bool should_send(const StateSnapshot& snap, Clock::time_point now);

private:
    std::chrono::milliseconds heartbeat_;
    std::optional<StateSnapshot> last_;
    Clock::time_point last_sent_{};
};

}  // namespace fueldisp::bridge

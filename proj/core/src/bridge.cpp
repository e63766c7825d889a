#include "fueldisp/bridge.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

namespace fueldisp::bridge {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Key key_field(const json& j) {
    if (!j.contains("key") || !j["key"].is_string()) {
        throw ProtocolError("missing string field 'key'");
    }
    const auto label = j["key"].get<std::string>();
    const auto key = key_from_label(label);
    if (!key) {
        throw ProtocolError(fmt::format("unknown key label '{}'", label));
    }
    return *key;
}

}  // namespace

ClientMessage parse_client_message(std::string_view frame) {
    const json j = json::parse(frame, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ProtocolError("message is not a JSON object");
    }
    if (!j.contains("type") || !j["type"].is_string()) {
        throw ProtocolError("missing string field 'type'");
    }
    const auto type = j["type"].get<std::string>();
    if (type == "key_down") return KeyDown{key_field(j)};
    if (type == "key_up") return KeyUp{key_field(j)};
    if (type == "reset") return Reset{};
    if (type == "set_timescale") {
        if (!j.contains("factor") || !j["factor"].is_number()) {
            throw ProtocolError("missing numeric field 'factor'");
        }
        const double factor = j["factor"].get<double>();
        if (!std::isfinite(factor) || factor < kMinTimescale || factor > kMaxTimescale) {
            throw ProtocolError(fmt::format("timescale {} outside [{}, {}]", factor, kMinTimescale, kMaxTimescale));
        }
        return SetTimescale{factor};
    }
    throw ProtocolError(fmt::format("unknown message type '{}'", type));
}

std::string encode_client_message(const ClientMessage& msg) {
    ordered_json j;
    if (const auto* d = std::get_if<KeyDown>(&msg)) {
        j["type"] = "key_down";
        j["key"] = key_label(d->key);
    } else if (const auto* u = std::get_if<KeyUp>(&msg)) {
        j["type"] = "key_up";
        j["key"] = key_label(u->key);
    } else if (const auto* s = std::get_if<SetTimescale>(&msg)) {
        j["type"] = "set_timescale";
        j["factor"] = s->factor;
    } else {
        j["type"] = "reset";
    }
    return j.dump();
}

bool StateSnapshot::same_state(const StateSnapshot& other) const {
    return mode == other.mode && lcd == other.lcd && motor == other.motor && dispensed == other.dispensed &&
           target == other.target && tank == other.tank && timescale == other.timescale;
}

std::string encode_snapshot(const StateSnapshot& s) {
    ordered_json j;
    j["type"] = "snapshot";
    j["t_ms"] = s.t_ms.value;
    j["mode"] = s.mode;
    j["lcd"] = s.lcd;
    j["motor"] = s.motor;
    j["dispensed_ul"] = s.dispensed.value;
    j["target_ul"] = s.target ? ordered_json(s.target->value) : ordered_json(nullptr);
    j["tank_ul"] = s.tank.value;
    j["timescale"] = s.timescale;
    return j.dump();
}

StateSnapshot decode_snapshot(std::string_view frame) {
    const json j = json::parse(frame, nullptr, false);
    if (j.is_discarded() || !j.is_object() || j.value("type", "") != "snapshot") {
        throw ProtocolError("not a snapshot message");
    }
    try {
        StateSnapshot s;
        s.t_ms = SimTimeMs{j.at("t_ms").get<std::int64_t>()};
        s.mode = j.at("mode").get<std::string>();
        s.lcd = j.at("lcd").get<std::array<std::string, kLcdRows>>();
        s.motor = j.at("motor").get<bool>();
        s.dispensed = VolumeMicroliters{j.at("dispensed_ul").get<std::int64_t>()};
        if (!j.at("target_ul").is_null()) {
            s.target = VolumeMicroliters{j.at("target_ul").get<std::int64_t>()};
        }
        s.tank = VolumeMicroliters{j.at("tank_ul").get<std::int64_t>()};
        s.timescale = j.at("timescale").get<double>();
        return s;
    } catch (const json::exception& e) {
        throw ProtocolError(fmt::format("bad snapshot: {}", e.what()));
    }
}

std::string encode_error(std::string_view message) {
    ordered_json j;
    j["type"] = "error";
    j["message"] = message;
    return j.dump();
}

Driver::Driver(DriverConfig config) : config_(config), sim_(config.sim), timescale_(config.timescale) {
    if (timescale_ < kMinTimescale || timescale_ > kMaxTimescale) {
        throw std::invalid_argument("timescale outside [0.1, 100]");
    }
    snapshot_ = make_snapshot(TickReport{sim_.now(), {}, {}, {}, {}, false, sim_.plant().dispensed(),
                                         sim_.plant().tank()});
}

void Driver::apply(const ClientMessage& msg) {
    if (const auto* d = std::get_if<KeyDown>(&msg)) {
        const Contact c = contact_for(d->key);
        sim_.matrix().press(c);
        held_[c] = sim_.now();
    } else if (const auto* u = std::get_if<KeyUp>(&msg)) {
        const Contact c = contact_for(u->key);
        sim_.matrix().release(c);
        held_.erase(c);
    } else if (const auto* s = std::get_if<SetTimescale>(&msg)) {
        timescale_ = s->factor;
    } else {
        sim_.reset();
        held_.clear();
    }
}

StateSnapshot Driver::tick() {
    for (auto it = held_.begin(); it != held_.end();) {
        if (sim_.now() - it->second >= config_.auto_release) {
            sim_.matrix().release(it->first);
            it = held_.erase(it);
        } else {
            ++it;
        }
    }
    snapshot_ = make_snapshot(sim_.step());
    return snapshot_;
}

std::chrono::nanoseconds Driver::wall_period() const {
    const double ns = static_cast<double>(config_.sim.tick.value) * 1e6 / timescale_;
    return std::chrono::nanoseconds(static_cast<std::int64_t>(std::llround(ns)));
}

StateSnapshot Driver::make_snapshot(const TickReport& report) const {
    StateSnapshot s;
    s.t_ms = report.at;
    const auto& state = sim_.controller_state();
    s.mode = state.dispensing() ? "DISPENSING" : "AWAITING_INPUT";
    for (int r = 0; r < kLcdRows; ++r) {
        s.lcd[r] = std::string(sim_.lcd().row(r));
    }
    s.motor = report.motor_running;
    s.dispensed = report.dispensed;
    if (const auto* run = std::get_if<Dispensing>(&state.mode)) {
        s.target = run->target;
    }
    s.tank = report.tank;
    s.timescale = timescale_;
    return s;
}

bool BroadcastPolicy::should_send(const StateSnapshot& snap, Clock::time_point now) {
    const bool changed = !last_ || !last_->same_state(snap);
    if (!changed && now - last_sent_ < heartbeat_) {
        return false;
    }
    last_ = snap;
    last_sent_ = now;
    return true;
}

}  // namespace fueldisp::bridge

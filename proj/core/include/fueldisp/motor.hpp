#pragma once

#include <cstdint>
#include <string_view>

namespace fueldisp {

/// Logic levels on the L298N direction inputs IN3/IN4 (PA8/PA9).
/// ENB is assumed tied high; speed control is not modeled.
struct MotorCommand {
    bool in3 = false;
    bool in4 = false;

    static constexpr MotorCommand forward() { return {true, false}; }
    static constexpr MotorCommand stop() { return {false, false}; }

    constexpr bool operator==(const MotorCommand&) const = default;
};

enum class MotorMode : std::uint8_t { Forward, Stop, Reverse, BrakeInvalid };

constexpr MotorMode motor_decode(MotorCommand cmd) {
    if (cmd.in3 && !cmd.in4) return MotorMode::Forward;
    if (!cmd.in3 && !cmd.in4) return MotorMode::Stop;
    if (!cmd.in3 && cmd.in4) return MotorMode::Reverse;
    return MotorMode::BrakeInvalid;
}

constexpr std::string_view motor_mode_name(MotorMode m) {
    switch (m) {
        case MotorMode::Forward: return "FORWARD";
        case MotorMode::Stop: return "STOP";
        case MotorMode::Reverse: return "REVERSE";
        case MotorMode::BrakeInvalid: return "BRAKE";
    }
    return "?";
}

}  // namespace fueldisp

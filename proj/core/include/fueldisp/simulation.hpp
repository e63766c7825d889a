#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fueldisp/controller.hpp"
#include "fueldisp/keypad.hpp"
#include "fueldisp/lcd.hpp"
#include "fueldisp/motor.hpp"
#include "fueldisp/plant.hpp"

namespace fueldisp {

/// Firmware drove the H-bridge into a state it must never produce.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SimConfig {
    DurationMs tick{kDefaultScanPeriodMs};
    FlowConstant flow;
    VolumeMicroliters tank = kDefaultTank;
};

/// What happened during one tick, stamped with the tick's time.
struct TickReport {
    SimTimeMs at{};
    std::optional<Key> key_accepted;
    std::vector<MotorCommand> motor_commands;
    std::vector<MotorMode> motor_edges;
    /// Frame after this tick, present only when its text changed.
    std::optional<LcdFrame> lcd_changed;
    /// Physical state at `at`, after the firmware reacted.
    bool motor_running = false;
    VolumeMicroliters dispensed{};
    VolumeMicroliters tank{};
};

/// Firmware, peripherals and plant wired together and advanced on one clock.
///
/// Each step handles the tick at now():
///   1. scan the matrix as the caller left it and debounce,
///   2. deliver any key event to the controller, then poll it,
///   3. apply the effects to the LCD and the motor pins,
///   4. integrate the plant over the tick under the resulting motor mode.
class Simulation {
public:
    explicit Simulation(SimConfig config = {});

    /// Contacts to be seen by the next scan.
    MatrixState& matrix() { return matrix_; }

    TickReport step();

    /// Reboots the firmware and refills the plant; time keeps running.
    void reset();

    SimTimeMs now() const { return now_; }
    const SimConfig& config() const { return config_; }
    const Controller& controller() const { return controller_; }
    const ControllerState& controller_state() const { return state_; }
    const LcdFrame& lcd() const { return lcd_; }
    MotorMode motor() const { return motor_; }
    const PlantState& plant() const { return plant_; }
    const Debouncer& debouncer() const { return debouncer_; }

private:
    void apply(ControllerStep step, TickReport& report);

    SimConfig config_;
    Controller controller_;
    SimTimeMs now_{0};
    MatrixState matrix_;
    Debouncer debouncer_;
    ControllerState state_;
    LcdFrame lcd_;
    LcdFrame last_reported_lcd_;
    MotorMode motor_ = MotorMode::Stop;
    PlantState plant_;
    TickReport pending_;
};

}  // namespace fueldisp

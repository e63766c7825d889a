#include "fueldisp/simulation.hpp"

#include <utility>

#include <fmt/format.h>

namespace fueldisp {

Simulation::Simulation(SimConfig config)
    : config_(config), controller_(config.flow), plant_(config.tank, config.flow) {
    if (config_.tick.value <= 0) {
        throw std::invalid_argument("tick must be positive");
    }
    reset();
}

void Simulation::reset() {
    matrix_.release_all();
    debouncer_ = Debouncer{};
    plant_ = PlantState(config_.tank, config_.flow);
    lcd_ = LcdFrame{};
    // Boot effects are reported with the next tick.
    pending_ = TickReport{};
    apply(controller_.init(), pending_);
}

void Simulation::apply(ControllerStep step, TickReport& report) {
    state_ = std::move(step.state);
    if (step.effects.motor) {
        const MotorCommand cmd = *step.effects.motor;
        report.motor_commands.push_back(cmd);
        const MotorMode mode = motor_decode(cmd);
        if (mode == MotorMode::Reverse || mode == MotorMode::BrakeInvalid) {
            throw InvariantViolation(fmt::format("firmware drove IN3={} IN4={} ({}) at t={} ms", cmd.in3 ? 1 : 0,
                                                 cmd.in4 ? 1 : 0, motor_mode_name(mode), now_.value));
        }
        if (mode != motor_) {
            motor_ = mode;
            report.motor_edges.push_back(mode);
        }
    }
    lcd_ = lcd_apply_all(std::move(lcd_), step.effects.lcd);
}

TickReport Simulation::step() {
    TickReport report = std::exchange(pending_, TickReport{});
    report.at = now_;

    if (const auto event = debouncer_.feed(keypad_scan(matrix_), now_)) {
        report.key_accepted = event->key;
        apply(controller_.handle_key(state_, now_, event->key), report);
    }
    apply(controller_.tick(state_, now_), report);

    if (!lcd_.same_text(last_reported_lcd_)) {
        report.lcd_changed = lcd_;
        last_reported_lcd_ = lcd_;
    }
    report.motor_running = motor_ == MotorMode::Forward;
    report.dispensed = plant_.dispensed();
    report.tank = plant_.tank();

    plant_ = step_plant(plant_, config_.tick, motor_);
    now_ = now_ + config_.tick;
    return report;
}

}  // namespace fueldisp

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fueldisp/flow.hpp"
#include "fueldisp/input_buffer.hpp"
#include "fueldisp/keys.hpp"
#include "fueldisp/lcd.hpp"
#include "fueldisp/motor.hpp"
#include "fueldisp/types.hpp"

namespace fueldisp {

/// Waiting for the operator to type and confirm a volume.
struct AwaitingInput {
    InputBuffer buffer;
    /// Set by a rejected Confirm; shown on the bottom row until the next edit.
    bool invalid_amount = false;

    bool operator==(const AwaitingInput&) const = default;
};

/// Pump running toward `target`.
struct Dispensing {
    VolumeMicroliters target{};
    SimTimeMs started_at{};
    DurationMs duration{};
    /// Run time as of the latest tick; drives the progress row.
    DurationMs elapsed{};

    bool operator==(const Dispensing&) const = default;
};

struct ControllerState {
    std::variant<AwaitingInput, Dispensing> mode;
    bool motor_running = false;

    bool dispensing() const { return std::holds_alternative<Dispensing>(mode); }

    bool operator==(const ControllerState&) const = default;
};

/// Pin and display commands produced by one controller call.
struct Effects {
    std::optional<MotorCommand> motor;
    std::vector<LcdOp> lcd;

    bool empty() const { return !motor && lcd.empty(); }

    bool operator==(const Effects&) const = default;
};

struct ControllerStep {
    ControllerState state;
    Effects effects;
};

inline constexpr std::string_view kPromptText = "Enter Amount";
inline constexpr std::string_view kDispensingText = "Dispensing";
inline constexpr std::string_view kInvalidText = "Invalid amount";

/// Dispenser firmware as a pure state machine. Owns no clock and no
/// peripherals: every call maps (state, time, input) to (state, effects).
///
/// Display layout (16x4):
///   row 0  prompt or status
///   row 1  entry buffer, or the confirmed target while dispensing
///   row 2  progress "<dispensed> L / <target> L"
///   row 3  error line
class Controller {
public:
    explicit Controller(FlowConstant flow = FlowConstant{}) : flow_(flow) {}

    FlowConstant flow() const { return flow_; }

    /// Boot: empty buffer, motor stopped, prompt on the top row.
    ControllerStep init() const;

    ControllerStep handle_key(const ControllerState& state, SimTimeMs now, Key key) const;

    /// Periodic poll: ends a run whose duration has elapsed, otherwise refreshes
    /// the progress row. No-op while awaiting input.
    ControllerStep tick(const ControllerState& state, SimTimeMs now) const;

    /// Canonical frame for a state. Applying a step's LCD effects to the
    /// previous state's frame always yields the new state's frame.
    LcdFrame render_lcd(const ControllerState& state) const;

    DurationMs compute_runtime_ms(VolumeMicroliters target) const { return motor_runtime(target, flow_); }

private:
    ControllerStep transition(const ControllerState& from, ControllerState to,
                              std::optional<MotorCommand> motor) const;
    ControllerStep handle_entry_key(const ControllerState& state, const AwaitingInput& entry, SimTimeMs now,
                                    Key key) const;

    FlowConstant flow_;
};

/// Progress row text, e.g. "0.50 L / 1.00 L". Falls back to a tighter
/// "<d> L/<t> L" form when the spaced one would overflow 16 columns.
std::string progress_text(VolumeMicroliters dispensed, VolumeMicroliters target);

}  // namespace fueldisp

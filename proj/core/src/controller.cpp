#include "fueldisp/controller.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace fueldisp {

namespace {

ControllerState awaiting(AwaitingInput entry = {}) { return {std::move(entry), false}; }

/// Rewrites only the rows whose text differs.
std::vector<LcdOp> row_updates(const LcdFrame& before, const LcdFrame& after) {
    std::vector<LcdOp> ops;
    for (int r = 0; r < kLcdRows; ++r) {
        if (before.row(r) != after.row(r)) {
            ops.push_back({LcdSetCursor{static_cast<std::uint8_t>(r), 0}});
            ops.push_back({LcdPrint{std::string(after.row(r))}});
        }
    }
    return ops;
}

}  // namespace

std::string progress_text(VolumeMicroliters dispensed, VolumeMicroliters target) {
    const std::string d = format_liters(dispensed);
    const std::string t = format_liters(target);
    std::string spaced = fmt::format("{} L / {} L", d, t);
    if (spaced.size() <= static_cast<std::size_t>(kLcdCols)) {
        return spaced;
    }
    return fmt::format("{} L/{} L", d, t);
}

ControllerStep Controller::init() const {
    ControllerState state = awaiting();
    Effects fx;
    fx.motor = MotorCommand::stop();
    fx.lcd.push_back({LcdClear{}});
    const LcdFrame frame = render_lcd(state);
    auto rows = row_updates(LcdFrame{}, frame);
    fx.lcd.insert(fx.lcd.end(), rows.begin(), rows.end());
    return {std::move(state), std::move(fx)};
}

ControllerStep Controller::transition(const ControllerState& from, ControllerState to,
                                      std::optional<MotorCommand> motor) const {
    Effects fx;
    fx.motor = motor;
    fx.lcd = row_updates(render_lcd(from), render_lcd(to));
    return {std::move(to), std::move(fx)};
}

ControllerStep Controller::handle_key(const ControllerState& state, SimTimeMs now, Key key) const {
    if (state.dispensing()) {
        // Only Stop is honored while the pump runs.
        if (key == Key::Stop) {
            return transition(state, awaiting(), MotorCommand::stop());
        }
        return {state, {}};
    }
    return handle_entry_key(state, std::get<AwaitingInput>(state.mode), now, key);
}

ControllerStep Controller::handle_entry_key(const ControllerState& state, const AwaitingInput& entry,
                                            SimTimeMs now, Key key) const {
    AwaitingInput next = entry;
    if (is_digit(key) || key == Key::Dot) {
        const bool accepted = key == Key::Dot ? next.buffer.append_dot() : next.buffer.append_digit(digit_char(key));
        if (!accepted) {
            return {state, {}};
        }
        next.invalid_amount = false;
        return transition(state, awaiting(std::move(next)), std::nullopt);
    }

    switch (key) {
        case Key::Backspace:
            next.buffer.backspace();
            next.invalid_amount = false;
            return transition(state, awaiting(std::move(next)), std::nullopt);
        case Key::Clear:
            return transition(state, awaiting(), std::nullopt);
        case Key::Confirm: {
            const VolumeParse parsed = parse_volume(entry.buffer);
            if (const auto* target = std::get_if<VolumeMicroliters>(&parsed)) {
                ControllerState run{Dispensing{*target, now, compute_runtime_ms(*target), DurationMs{0}}, true};
                return transition(state, std::move(run), MotorCommand::forward());
            }
            next.invalid_amount = true;
            return transition(state, awaiting(std::move(next)), std::nullopt);
        }
        default:
            // Stop with nothing running, and the unassigned key.
            return {state, {}};
    }
}

ControllerStep Controller::tick(const ControllerState& state, SimTimeMs now) const {
    const auto* run = std::get_if<Dispensing>(&state.mode);
    if (run == nullptr) {
        return {state, {}};
    }
    const DurationMs elapsed = now - run->started_at;
    if (elapsed >= run->duration) {
        return transition(state, awaiting(), MotorCommand::stop());
    }
    Dispensing progressed = *run;
    progressed.elapsed = elapsed;
    return transition(state, ControllerState{progressed, true}, std::nullopt);
}

LcdFrame Controller::render_lcd(const ControllerState& state) const {
    if (const auto* run = std::get_if<Dispensing>(&state.mode)) {
        const VolumeMicroliters so_far = std::min(volume_dispensed(run->elapsed, flow_), run->target);
        const std::string target_row = fmt::format("Target: {} L", format_liters(run->target));
        const std::string progress = progress_text(so_far, run->target);
        return LcdFrame::from_rows({kDispensingText, target_row, progress, ""});
    }
    const auto& entry = std::get<AwaitingInput>(state.mode);
    return LcdFrame::from_rows({kPromptText, entry.buffer.text(), "", entry.invalid_amount ? kInvalidText : ""});
}

}  // namespace fueldisp

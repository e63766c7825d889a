#pragma once

#include <cstdint>

#include "fueldisp/flow.hpp"
#include "fueldisp/motor.hpp"
#include "fueldisp/types.hpp"

namespace fueldisp {

inline constexpr VolumeMicroliters kDefaultTank{10 * kMicrolitersPerLiter};

/// Pump and reservoir as a pure integrator: while the motor runs forward the
/// dispensed volume grows at 1/k liters per millisecond, otherwise it holds.
///
/// The only integrated quantity is forward motor time in whole milliseconds.
/// Volume is derived from it on demand, so step size never changes the
/// result and no rounding error accumulates.
class PlantState {
public:
    PlantState() = default;
    PlantState(VolumeMicroliters tank, FlowConstant k);

    DurationMs motor_on() const { return motor_on_; }
    VolumeMicroliters tank() const { return tank_; }
    VolumeMicroliters initial_tank() const { return initial_tank_; }
    FlowConstant flow() const { return k_; }
    /// Raised once the reservoir ran dry under a forward command.
    bool tank_empty() const { return tank_empty_; }

    VolumeMicroliters dispensed() const { return volume_dispensed(motor_on_, k_); }

    bool operator==(const PlantState&) const = default;

private:
    friend PlantState step_plant(PlantState plant, DurationMs dt, MotorMode mode);

    DurationMs motor_on_{0};
    VolumeMicroliters tank_ = kDefaultTank;
    VolumeMicroliters initial_tank_ = kDefaultTank;
    FlowConstant k_;
    bool tank_empty_ = false;
};

/// Advances the plant by `dt` (> 0) under `mode`. Only Forward moves fluid.
/// When the tank cannot cover the whole step, motor time stops at the last
/// millisecond whose derived volume still fits, the tank is clamped to zero,
/// and the empty flag is raised.
PlantState step_plant(PlantState plant, DurationMs dt, MotorMode mode);

inline VolumeMicroliters dispensed_uL(const PlantState& plant) { return plant.dispensed(); }

}  // namespace fueldisp

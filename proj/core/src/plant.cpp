#include "fueldisp/plant.hpp"

#include <stdexcept>

namespace fueldisp {

PlantState::PlantState(VolumeMicroliters tank, FlowConstant k)
    : tank_(tank), initial_tank_(tank), k_(k) {
    if (tank.value < 0) {
        throw std::invalid_argument("tank volume must be non-negative");
    }
}

PlantState step_plant(PlantState plant, DurationMs dt, MotorMode mode) {
    if (dt.value <= 0) {
        throw std::invalid_argument("plant step must be a positive duration");
    }
    if (mode != MotorMode::Forward || plant.tank_empty_) {
        return plant;
    }

    const VolumeMicroliters before = plant.dispensed();
    const VolumeMicroliters limit{before.value + plant.tank_.value};
    DurationMs on{plant.motor_on_.value + dt.value};

    if (volume_dispensed(on, plant.k_) > limit) {
        // Largest on-time in (motor_on, motor_on + dt) whose volume still fits.
        std::int64_t lo = plant.motor_on_.value;
        std::int64_t hi = on.value;
        while (hi - lo > 1) {
            const std::int64_t mid = lo + (hi - lo) / 2;
            if (volume_dispensed(DurationMs{mid}, plant.k_) <= limit) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        plant.motor_on_ = DurationMs{lo};
        plant.tank_ = VolumeMicroliters{0};
        plant.tank_empty_ = true;
        return plant;
    }

    plant.motor_on_ = on;
    plant.tank_.value -= volume_dispensed(on, plant.k_).value - before.value;
    if (plant.tank_.value == 0) {
        plant.tank_empty_ = true;
    }
    return plant;
}

}  // namespace fueldisp

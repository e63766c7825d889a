#pragma once

#include <cstdint>
#include <stdexcept>

#include "fueldisp/types.hpp"

namespace fueldisp {

/// Calibrated pump constant: motor-on milliseconds needed to move one liter.
/// The flow rate is its reciprocal and is never stored on its own.
class FlowConstant {
public:
    static constexpr std::int64_t kDefaultMsPerLiter = 26'000;

    constexpr FlowConstant() = default;
    explicit constexpr FlowConstant(std::int64_t ms_per_liter) : ms_per_liter_(ms_per_liter) {
        if (ms_per_liter <= 0) {
            throw std::invalid_argument("flow constant must be a positive number of ms per liter");
        }
    }

    constexpr std::int64_t ms_per_liter() const { return ms_per_liter_; }

    constexpr bool operator==(const FlowConstant&) const = default;

private:
    std::int64_t ms_per_liter_ = kDefaultMsPerLiter;
};

/// Motor-on time for a volume: V * k / 1e6 ms, remainder rounded half up.
constexpr DurationMs motor_runtime(VolumeMicroliters volume, FlowConstant k) {
    return {(volume.value * k.ms_per_liter() + kMicrolitersPerLiter / 2) / kMicrolitersPerLiter};
}

/// Volume moved by `on_time` of forward running: on_time * 1e6 / k uL, rounded half up.
/// Evaluated as floor((2 * t * 1e6 + k) / 2k) so odd k rounds exactly.
constexpr VolumeMicroliters volume_dispensed(DurationMs on_time, FlowConstant k) {
    const std::int64_t den = 2 * k.ms_per_liter();
    return {(2 * on_time.value * kMicrolitersPerLiter + k.ms_per_liter()) / den};
}

}  // namespace fueldisp

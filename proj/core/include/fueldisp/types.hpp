#pragma once

#include <compare>
#include <cstdint>

namespace fueldisp {

/// Milliseconds since simulated boot. Never derived from a wall clock.
struct SimTimeMs {
    std::int64_t value = 0;

    constexpr auto operator<=>(const SimTimeMs&) const = default;
};

struct DurationMs {
    std::int64_t value = 0;

    constexpr auto operator<=>(const DurationMs&) const = default;
};

struct VolumeMicroliters {
    std::int64_t value = 0;

    constexpr auto operator<=>(const VolumeMicroliters&) const = default;
};

constexpr DurationMs operator-(SimTimeMs a, SimTimeMs b) { return {a.value - b.value}; }
constexpr SimTimeMs operator+(SimTimeMs t, DurationMs d) { return {t.value + d.value}; }

inline constexpr std::int64_t kMicrolitersPerLiter = 1'000'000;

}  // namespace fueldisp

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fueldisp/flow.hpp"
#include "fueldisp/keys.hpp"
#include "fueldisp/simulation.hpp"
#include "fueldisp/transcript.hpp"
#include "fueldisp/types.hpp"

namespace fueldisp {

inline constexpr std::int64_t kDefaultHoldMs = 50;

struct PressHold {
    Key key = Key::Reserved;
    DurationMs hold{kDefaultHoldMs};
    bool operator==(const PressHold&) const = default;
};

struct SetTank {
    VolumeMicroliters volume{};
    bool operator==(const SetTank&) const = default;
};

struct SetFlowK {
    FlowConstant k;
    bool operator==(const SetFlowK&) const = default;
};

struct ScenarioEvent {
    SimTimeMs at{};
    std::variant<PressHold, SetTank, SetFlowK> action;
    bool operator==(const ScenarioEvent&) const = default;
};

struct Scenario {
    std::vector<ScenarioEvent> events;
    bool operator==(const Scenario&) const = default;
};

class ScenarioError : public std::runtime_error {
public:
    enum class Kind { MalformedLine, UnsortedEvents, UnknownKeyLabel };

    ScenarioError(Kind kind, std::size_t line, const std::string& detail);

    Kind kind() const { return kind_; }
    std::size_t line() const { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

/// Parses the timed key script. One directive per line:
///
///   @<ms> press <key> [hold <ms>]
///   @0 tank <liters>
///   @0 flowk <ms_per_liter>
///
/// Keys are 0-9 . A B C D * #. Blank lines are skipped, and so are lines
/// starting with "# " (a lone '#' is the Stop key label, not a comment).
/// Timestamps must be non-decreasing; tank and flowk only at @0.
Scenario parse_scenario(std::string_view text);

struct RunConfig {
    DurationMs tick{kDefaultScanPeriodMs};
    std::optional<SimTimeMs> until;
    /// Override the scenario's own tank/flowk directives when set.
    std::optional<FlowConstant> flow;
    std::optional<VolumeMicroliters> tank;
    /// Sees every tick report, including pin writes the transcript omits.
    std::function<void(const TickReport&)> observer;
};

/// Runs the scenario on a fresh Simulation. A press is closed for every
/// scan at times t with at <= t < at + hold. Stops at `until`, or once the
/// dispenser has been idle with no pending presses for one second.
///
/// Throws InvariantViolation if the firmware drives an illegal pin state.
Transcript run_scenario(const Scenario& scenario, const RunConfig& config = {});

/// Effective plant/firmware settings: config override, else scenario
/// directive, else default.
SimConfig resolve_sim_config(const Scenario& scenario, const RunConfig& config);

/// "10", "2.5", "0.125" liters to microliters. Nullopt on malformed text.
std::optional<VolumeMicroliters> parse_liters(std::string_view text);

}  // namespace fueldisp

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fueldisp/keys.hpp"
#include "fueldisp/lcd.hpp"
#include "fueldisp/motor.hpp"
#include "fueldisp/types.hpp"

namespace fueldisp {

struct KeyAccepted {
    Key key = Key::Reserved;
    bool operator==(const KeyAccepted&) const = default;
};

struct MotorEdge {
    MotorMode mode = MotorMode::Stop;
    bool operator==(const MotorEdge&) const = default;
};

struct LcdSnapshot {
    LcdFrame frame;
    bool operator==(const LcdSnapshot&) const = default;
};

struct FinalTally {
    VolumeMicroliters dispensed{};
    VolumeMicroliters tank{};
    bool operator==(const FinalTally&) const = default;
};

struct TranscriptEntry {
    SimTimeMs at{};
    std::variant<KeyAccepted, MotorEdge, LcdSnapshot, FinalTally> entry;

    bool operator==(const TranscriptEntry&) const = default;
};

/// Time-ordered record of one run. Within a tick, entries appear as key,
/// motor edge(s), LCD snapshot. The single FinalTally is always last.
struct Transcript {
    std::vector<TranscriptEntry> entries;

    const FinalTally& final_tally() const;
    /// Motor edges in order, with their timestamps.
    std::vector<std::pair<SimTimeMs, MotorMode>> motor_edges() const;

    bool operator==(const Transcript&) const = default;
};

enum class TranscriptFormat { Text, Structured };

/// Text form, one newline-terminated line per entry:
///
///   00001010 KEY   CONFIRM
///   00001010 MOTOR FORWARD
///   00001010 LCD   |Dispensing      |Target: 1.00 L  |0.00 L / 1.00 L |                |
///   FINAL dispensed_uL=1000000 tank_uL=9000000
///
/// Timestamps are zero-padded to eight digits. The FINAL line carries no
/// timestamp; the structured form records it.
std::string format_transcript(const Transcript& t, TranscriptFormat format);

}  // namespace fueldisp

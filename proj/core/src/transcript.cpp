#include "fueldisp/transcript.hpp"

#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace fueldisp {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::string text_line(const TranscriptEntry& e) {
    const auto stamp = fmt::format("{:08}", e.at.value);
    return std::visit(
        Overloaded{
            [&](const KeyAccepted& k) { return fmt::format("{} KEY   {}\n", stamp, key_name(k.key)); },
            [&](const MotorEdge& m) { return fmt::format("{} MOTOR {}\n", stamp, motor_mode_name(m.mode)); },
            [&](const LcdSnapshot& s) {
                return fmt::format("{} LCD   |{}|{}|{}|{}|\n", stamp, s.frame.row(0), s.frame.row(1), s.frame.row(2),
                                   s.frame.row(3));
            },
            [&](const FinalTally& f) {
                return fmt::format("FINAL dispensed_uL={} tank_uL={}\n", f.dispensed.value, f.tank.value);
            },
        },
        e.entry);
}

nlohmann::ordered_json json_entry(const TranscriptEntry& e) {
    nlohmann::ordered_json j;
    j["at"] = e.at.value;
    std::visit(Overloaded{
                   [&](const KeyAccepted& k) {
                       j["type"] = "key";
                       j["key"] = key_name(k.key);
                   },
                   [&](const MotorEdge& m) {
                       j["type"] = "motor";
                       j["mode"] = motor_mode_name(m.mode);
                   },
                   [&](const LcdSnapshot& s) {
                       j["type"] = "lcd";
                       j["rows"] = nlohmann::ordered_json::array();
                       for (int r = 0; r < kLcdRows; ++r) {
                           j["rows"].push_back(s.frame.row(r));
                       }
                   },
                   [&](const FinalTally& f) {
                       j["type"] = "final";
                       j["dispensed_ul"] = f.dispensed.value;
                       j["tank_ul"] = f.tank.value;
                   },
               },
               e.entry);
    return j;
}

}  // namespace

const FinalTally& Transcript::final_tally() const {
    if (entries.empty() || !std::holds_alternative<FinalTally>(entries.back().entry)) {
        throw std::logic_error("transcript has no final tally");
    }
    return std::get<FinalTally>(entries.back().entry);
}

std::vector<std::pair<SimTimeMs, MotorMode>> Transcript::motor_edges() const {
    std::vector<std::pair<SimTimeMs, MotorMode>> edges;
    for (const auto& e : entries) {
        if (const auto* m = std::get_if<MotorEdge>(&e.entry)) {
            edges.emplace_back(e.at, m->mode);
        }
    }
    return edges;
}

std::string format_transcript(const Transcript& t, TranscriptFormat format) {
    if (format == TranscriptFormat::Text) {
        std::string out;
        for (const auto& e : t.entries) {
            out += text_line(e);
        }
        return out;
    }
    nlohmann::ordered_json doc;
    doc["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : t.entries) {
        doc["entries"].push_back(json_entry(e));
    }
    return doc.dump(2) + "\n";
}

}  // namespace fueldisp

#include "fueldisp/scenario.hpp"

#include <algorithm>
#include <charconv>

#include <fmt/format.h>

namespace fueldisp {

namespace {

constexpr std::int64_t kIdleShutdownMs = 1000;

std::string_view kind_name(ScenarioError::Kind kind) {
    switch (kind) {
        case ScenarioError::Kind::MalformedLine: return "malformed line";
        case ScenarioError::Kind::UnsortedEvents: return "unsorted events";
        case ScenarioError::Kind::UnknownKeyLabel: return "unknown key label";
    }
    return "?";
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::optional<std::int64_t> parse_uint(std::string_view s) {
    if (s.empty() || s.size() > 15) return std::nullopt;
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0) return std::nullopt;
    return v;
}

}  // namespace

ScenarioError::ScenarioError(Kind kind, std::size_t line, const std::string& detail)
    : std::runtime_error(fmt::format("line {}: {}: {}", line, kind_name(kind), detail)), kind_(kind), line_(line) {}

std::optional<VolumeMicroliters> parse_liters(std::string_view text) {
    const auto dot = text.find('.');
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole.empty() || frac.size() > 6 || (dot != std::string_view::npos && frac.empty())) return std::nullopt;
    const auto w = parse_uint(whole);
    if (!w || *w > 1'000'000) return std::nullopt;
    std::int64_t f = 0;
    if (!frac.empty()) {
        const auto parsed = parse_uint(frac);
        if (!parsed) return std::nullopt;
        f = *parsed;
        for (std::size_t i = frac.size(); i < 6; ++i) f *= 10;
    }
    return VolumeMicroliters{*w * kMicrolitersPerLiter + f};
}

Scenario parse_scenario(std::string_view text) {
    using Kind = ScenarioError::Kind;
    Scenario scenario;
    std::size_t line_no = 0;
    std::int64_t last_at = 0;

    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (line.starts_with("# ")) continue;
        const auto tok = split_ws(line);
        if (tok.empty()) continue;

        const auto malformed = [&](std::string_view why) {
            return ScenarioError(Kind::MalformedLine, line_no, fmt::format("{} in \"{}\"", why, line));
        };

        if (tok.size() < 3 || !tok[0].starts_with('@')) throw malformed("expected '@<ms> <command> <arg>'");
        const auto at = parse_uint(tok[0].substr(1));
        if (!at) throw malformed("bad timestamp");

        ScenarioEvent event;
        event.at = SimTimeMs{*at};
        if (tok[1] == "press") {
            PressHold press;
            const auto key = key_from_label(tok[2]);
            if (!key) {
                throw ScenarioError(Kind::UnknownKeyLabel, line_no, fmt::format("'{}'", tok[2]));
            }
            press.key = *key;
            if (tok.size() == 5 && tok[3] == "hold") {
                const auto hold = parse_uint(tok[4]);
                if (!hold || *hold == 0) throw malformed("bad hold duration");
                press.hold = DurationMs{*hold};
            } else if (tok.size() != 3) {
                throw malformed("expected 'press <key> [hold <ms>]'");
            }
            event.action = press;
        } else if (tok[1] == "tank" || tok[1] == "flowk") {
            if (tok.size() != 3) throw malformed("too many arguments");
            if (*at != 0) throw malformed("tank and flowk are only allowed at @0");
            if (tok[1] == "tank") {
                const auto liters = parse_liters(tok[2]);
                if (!liters) throw malformed("bad tank volume");
                event.action = SetTank{*liters};
            } else {
                const auto k = parse_uint(tok[2]);
                if (!k || *k == 0) throw malformed("bad flow constant");
                event.action = SetFlowK{FlowConstant{*k}};
            }
        } else {
            throw malformed(fmt::format("unknown command '{}'", tok[1]));
        }

        if (*at < last_at) {
            throw ScenarioError(Kind::UnsortedEvents, line_no, fmt::format("@{} follows @{}", *at, last_at));
        }
        last_at = *at;
        scenario.events.push_back(std::move(event));
    }
    return scenario;
}

SimConfig resolve_sim_config(const Scenario& scenario, const RunConfig& config) {
    SimConfig sim;
    sim.tick = config.tick;
    for (const auto& e : scenario.events) {
        if (const auto* tank = std::get_if<SetTank>(&e.action)) sim.tank = tank->volume;
        if (const auto* k = std::get_if<SetFlowK>(&e.action)) sim.flow = k->k;
    }
    if (config.flow) sim.flow = *config.flow;
    if (config.tank) sim.tank = *config.tank;
    return sim;
}

Transcript run_scenario(const Scenario& scenario, const RunConfig& config) {
    struct Hold {
        std::int64_t start;
        std::int64_t end;
        Contact contact;
    };
    std::vector<Hold> holds;
    std::int64_t last_release = 0;
    for (const auto& e : scenario.events) {
        if (const auto* p = std::get_if<PressHold>(&e.action)) {
            holds.push_back({e.at.value, e.at.value + p->hold.value, contact_for(p->key)});
            last_release = std::max(last_release, e.at.value + p->hold.value);
        }
    }

    Simulation sim(resolve_sim_config(scenario, config));
    Transcript transcript;
    std::size_t next_hold = 0;
    std::vector<Hold> active;
    constexpr std::int64_t kNotIdle = -1;
    std::int64_t idle_since = kNotIdle;

    while (!config.until || sim.now() < *config.until) {
        const std::int64_t t = sim.now().value;
        while (next_hold < holds.size() && holds[next_hold].start <= t) {
            active.push_back(holds[next_hold++]);
        }
        std::erase_if(active, [t](const Hold& h) { return h.end <= t; });
        sim.matrix().release_all();
        for (const auto& h : active) {
            sim.matrix().press(h.contact);
        }

        const TickReport report = sim.step();
        if (config.observer) config.observer(report);
        if (report.key_accepted) {
            transcript.entries.push_back({report.at, KeyAccepted{*report.key_accepted}});
        }
        for (const MotorMode edge : report.motor_edges) {
            transcript.entries.push_back({report.at, MotorEdge{edge}});
        }
        if (report.lcd_changed) {
            transcript.entries.push_back({report.at, LcdSnapshot{*report.lcd_changed}});
        }

        const bool idle = !sim.controller_state().dispensing() && sim.debouncer().idle() &&
                          next_hold == holds.size() && last_release <= sim.now().value;
        if (!idle) {
            idle_since = kNotIdle;
        } else if (idle_since == kNotIdle) {
            idle_since = sim.now().value;
        }
        if (idle_since != kNotIdle && sim.now().value - idle_since >= kIdleShutdownMs) {
            break;
        }
    }

    transcript.entries.push_back({sim.now(), FinalTally{sim.plant().dispensed(), sim.plant().tank()}});
    return transcript;
}

}  // namespace fueldisp

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fueldisp/keypad.hpp"
#include "fueldisp/keys.hpp"
#include "fueldisp/lcd.hpp"
#include "fueldisp/motor.hpp"
#include "oracles.hpp"

using namespace fueldisp;

namespace {

Contact at(int r, int c) { return {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(c)}; }

MatrixState with(std::initializer_list<Contact> contacts) {
    MatrixState m;
    for (auto c : contacts) m.press(c);
    return m;
}

}  // namespace

TEST(Keymap, FunctionKeyAssignments) {
    EXPECT_EQ(keymap(at(0, 3)), Key::Confirm);
    EXPECT_EQ(keymap(at(3, 2)), Key::Stop);
    EXPECT_EQ(keymap(at(1, 3)), Key::Backspace);
    EXPECT_EQ(keymap(at(3, 0)), Key::Clear);
    EXPECT_EQ(keymap(at(2, 3)), Key::Dot);
    EXPECT_EQ(keymap(at(3, 3)), Key::Reserved);
    EXPECT_EQ(keymap(at(3, 1)), Key::D0);
    EXPECT_EQ(keymap(at(0, 0)), Key::D1);
    EXPECT_EQ(keymap(at(2, 2)), Key::D9);
}

TEST(Keymap, IsBijection) {
    std::set<Key> seen;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const Key k = keymap(at(r, c));
            EXPECT_TRUE(seen.insert(k).second);
            EXPECT_EQ(contact_for(k), at(r, c));
        }
    }
    EXPECT_EQ(seen.size(), kKeyCount);
}

TEST(Keymap, OutOfRangeThrows) { EXPECT_THROW(keymap(at(4, 0)), std::out_of_range); }

TEST(KeyLabels, RoundTripAndAlias) {
    for (Key k : all_keys()) {
        EXPECT_EQ(key_from_label(key_label(k)), k);
    }
    EXPECT_EQ(key_from_label("."), Key::Dot);
    EXPECT_EQ(key_from_label("#"), Key::Stop);
    EXPECT_EQ(key_from_label("*"), Key::Clear);
    EXPECT_FALSE(key_from_label("Q"));
    EXPECT_FALSE(key_from_label(""));
    EXPECT_FALSE(key_from_label("10"));
}

TEST(KeypadScan, OpenMatrixReadsAllHigh) {
    const MatrixState open;
    for (int c = 0; c < 4; ++c) EXPECT_EQ(read_rows(open, c), 0x0f);
    EXPECT_FALSE(keypad_scan(open));
}

TEST(KeypadScan, SingleContact) {
    EXPECT_EQ(keypad_scan(with({at(1, 2)})), at(1, 2));
    EXPECT_EQ(read_rows(with({at(1, 2)}), 2), 0x0f & ~0x02);
    EXPECT_EQ(read_rows(with({at(1, 2)}), 0), 0x0f);
}

TEST(KeypadScan, TwoContactsSuppressed) {
    EXPECT_FALSE(keypad_scan(with({at(0, 0), at(3, 3)})));
    EXPECT_FALSE(keypad_scan(with({at(0, 0), at(0, 1)})));
}

TEST(KeypadScan, ThreeCornersGhostTheFourth) {
    const auto m = with({at(0, 0), at(0, 1), at(1, 0)});
    // Column 1 driven: row 0 directly, row 1 through (1,0)-(0,0)-(0,1).
    EXPECT_EQ(read_rows(m, 1) & 0x03, 0);
    EXPECT_FALSE(keypad_scan(m));
}

TEST(KeypadScan, SoundnessAgainstConnectivityOracle) {
    // Every subset of up to three pressed switches.
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = static_cast<int>(rng() % 4);
        std::vector<std::pair<int, int>> pressed;
        MatrixState m;
        for (int i = 0; i < n; ++i) {
            const int r = static_cast<int>(rng() % 4), c = static_cast<int>(rng() % 4);
            pressed.emplace_back(r, c);
            m.press(at(r, c));
        }
        const auto hits = oracle::scan_hits(pressed);
        for (int c = 0; c < 4; ++c) {
            std::uint8_t expected = 0x0f;
            for (const auto& [hr, hc] : hits) {
                if (hc == c) expected &= static_cast<std::uint8_t>(~(1u << hr));
            }
            ASSERT_EQ(read_rows(m, c), expected);
        }
        const auto scanned = keypad_scan(m);
        if (m.pressed_count() == 1) {
            ASSERT_TRUE(scanned);
            ASSERT_TRUE(m.is_pressed(*scanned));
        } else {
            ASSERT_FALSE(scanned);
        }
    }
}

TEST(Debounce, TwoSamplesEmitOnSecond) {
    Debouncer d;
    EXPECT_FALSE(d.feed(at(0, 0), SimTimeMs{100}));
    const auto ev = d.feed(at(0, 0), SimTimeMs{110});
    ASSERT_TRUE(ev);
    EXPECT_EQ(ev->key, Key::D1);
    EXPECT_EQ(ev->at, SimTimeMs{110});
}

TEST(Debounce, SingleScanGlitchIgnored) {
    Debouncer d;
    EXPECT_FALSE(d.feed(at(0, 0), SimTimeMs{0}));
    EXPECT_FALSE(d.feed(std::nullopt, SimTimeMs{10}));
    EXPECT_FALSE(d.feed(std::nullopt, SimTimeMs{20}));
    EXPECT_TRUE(d.idle());
}

TEST(Debounce, LongHoldEmitsOnce) {
    Debouncer d;
    int events = 0;
    for (std::int64_t t = 0; t < 500; t += 10) {
        if (d.feed(at(2, 1), SimTimeMs{t})) ++events;
    }
    EXPECT_EQ(events, 1);
}

TEST(Debounce, NeedsFullReleaseBetweenPresses) {
    Debouncer d;
    d.feed(at(0, 0), SimTimeMs{0});
    ASSERT_TRUE(d.feed(at(0, 0), SimTimeMs{10}));
    // Slide straight onto a neighbour without an open scan.
    EXPECT_FALSE(d.feed(at(0, 1), SimTimeMs{20}));
    EXPECT_FALSE(d.feed(at(0, 1), SimTimeMs{30}));
    EXPECT_FALSE(d.feed(std::nullopt, SimTimeMs{40}));
    EXPECT_FALSE(d.feed(at(0, 1), SimTimeMs{50}));
    EXPECT_TRUE(d.feed(at(0, 1), SimTimeMs{60}));
}

TEST(Debounce, MatchesScanTraceOracle) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const std::int64_t press = static_cast<std::int64_t>(rng() % 200);
        const std::int64_t hold = 1 + static_cast<std::int64_t>(rng() % 120);
        const auto expected = oracle::debounce_events(press, hold, 10, 600);

        Debouncer d;
        std::vector<std::int64_t> got;
        for (std::int64_t t = 0; t <= 600; t += 10) {
            const bool closed = t >= press && t < press + hold;
            if (d.feed(closed ? std::optional<Contact>(at(1, 1)) : std::nullopt, SimTimeMs{t})) got.push_back(t);
        }
        ASSERT_EQ(got, expected) << "press=" << press << " hold=" << hold;
    }
}

TEST(Debounce, LatencyBound) {
    // Any press held >= 2 scan periods fires exactly once, within 2 periods of closure.
    for (std::int64_t press = 0; press < 40; ++press) {
        for (std::int64_t hold = 20; hold <= 60; ++hold) {
            const auto ev = oracle::debounce_events(press, hold, 10, 400);
            Debouncer d;
            std::vector<std::int64_t> got;
            for (std::int64_t t = 0; t <= 400; t += 10) {
                const bool closed = t >= press && t < press + hold;
                if (d.feed(closed ? std::optional<Contact>(at(3, 2)) : std::nullopt, SimTimeMs{t})) got.push_back(t);
            }
            ASSERT_EQ(got, ev);
            ASSERT_EQ(got.size(), 1u) << press << "/" << hold;
            ASSERT_LE(got[0] - press, 20);
        }
    }
}

TEST(Lcd, BlankFrame) {
    const LcdFrame f;
    for (int r = 0; r < kLcdRows; ++r) EXPECT_EQ(f.row(r), std::string(16, ' '));
    EXPECT_EQ(f.cursor(), (LcdCursor{0, 0}));
}

TEST(Lcd, PrintPadsRow) {
    const auto f = lcd_apply(LcdFrame{}, {LcdPrint{"Enter Amount"}});
    EXPECT_EQ(f.row(0), "Enter Amount    ");
    EXPECT_EQ(f.cursor(), (LcdCursor{0, 12}));
}

TEST(Lcd, ClearHomesCursor) {
    auto f = lcd_apply(LcdFrame{}, {LcdSetCursor{2, 5}});
    f = lcd_apply(f, {LcdPrint{"xyz"}});
    f = lcd_apply(f, {LcdClear{}});
    EXPECT_EQ(f, LcdFrame{});
}

TEST(Lcd, PrintTruncatesAtLastColumn) {
    auto f = lcd_apply(LcdFrame{}, {LcdSetCursor{1, 14}});
    f = lcd_apply(f, {LcdPrint{"2.5"}});
    EXPECT_EQ(f.row(1), "              2.");
    EXPECT_EQ(f.row(2), std::string(16, ' '));
    EXPECT_EQ(f.cursor(), (LcdCursor{1, 15}));
}

TEST(Lcd, SetCursorClamps) {
    const auto f = lcd_apply(LcdFrame{}, {LcdSetCursor{9, 40}});
    EXPECT_EQ(f.cursor(), (LcdCursor{3, 15}));
}

TEST(Lcd, ShapePreservedUnderRandomOps) {
    std::mt19937_64 rng(3);
    LcdFrame f;
    for (int i = 0; i < 5000; ++i) {
        switch (rng() % 3) {
            case 0: f = lcd_apply(f, {LcdClear{}}); break;
            case 1:
                f = lcd_apply(f, {LcdSetCursor{static_cast<std::uint8_t>(rng() % 8), static_cast<std::uint8_t>(rng() % 24)}});
                break;
            default: {
                std::string s(rng() % 40, 'a');
                for (auto& ch : s) ch = static_cast<char>(rng() % 256);
                f = lcd_apply(f, {LcdPrint{s}});
            }
        }
        for (int r = 0; r < kLcdRows; ++r) {
            ASSERT_EQ(f.row(r).size(), 16u);
            for (char ch : f.row(r)) ASSERT_TRUE(ch >= 0x20 && ch <= 0x7e);
        }
        ASSERT_LT(f.cursor().row, kLcdRows);
        ASSERT_LT(f.cursor().col, kLcdCols);
    }
}

TEST(Motor, DecodeTruthTable) {
    EXPECT_EQ(motor_decode({true, false}), MotorMode::Forward);
    EXPECT_EQ(motor_decode({false, false}), MotorMode::Stop);
    EXPECT_EQ(motor_decode({false, true}), MotorMode::Reverse);
    EXPECT_EQ(motor_decode({true, true}), MotorMode::BrakeInvalid);
    EXPECT_EQ(motor_decode(MotorCommand::forward()), MotorMode::Forward);
    EXPECT_EQ(motor_decode(MotorCommand::stop()), MotorMode::Stop);
}

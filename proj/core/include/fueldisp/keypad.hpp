#pragma once

#include <bitset>
#include <cstdint>
#include <optional>

#include "fueldisp/keys.hpp"
#include "fueldisp/types.hpp"

namespace fueldisp {

inline constexpr std::int64_t kDefaultScanPeriodMs = 10;

/// Which of the 16 switches are physically closed right now.
class MatrixState {
public:
    void press(Contact c) { closed_.set(index(c)); }
    void release(Contact c) { closed_.reset(index(c)); }
    void release_all() { closed_.reset(); }

    bool is_pressed(Contact c) const { return closed_.test(index(c)); }
    std::size_t pressed_count() const { return closed_.count(); }

    bool operator==(const MatrixState&) const = default;

private:
    static std::size_t index(Contact c) { return static_cast<std::size_t>(c.row) * kMatrixCols + c.col; }

    std::bitset<kMatrixRows * kMatrixCols> closed_;
};

/// Row input levels (bit r set = row r reads HIGH) while column `col` is
/// driven LOW and the others float. Rows idle high through pull-ups; a row
/// reads LOW when any chain of closed switches connects it to the driven
/// column, so three switches on a rectangle's corners ghost the fourth.
std::uint8_t read_rows(const MatrixState& matrix, int col);

/// Strobes PA0..PA3 one at a time and samples PA4..PA7. Returns the contact
/// only when exactly one position reads closed.
std::optional<Contact> keypad_scan(const MatrixState& matrix);

struct KeyEvent {
    Key key = Key::Reserved;
    SimTimeMs at{};

    bool operator==(const KeyEvent&) const = default;
};

/// Two-sample debouncer run once per scan. A contact seen on two consecutive
/// scans emits one event; nothing further is emitted until a scan reads the
/// matrix fully open.
class Debouncer {
public:
    std::optional<KeyEvent> feed(std::optional<Contact> raw, SimTimeMs now);

    /// True when the last scan was open and no press is being tracked.
    bool idle() const { return !last_.has_value(); }

    bool operator==(const Debouncer&) const = default;

private:
    std::optional<Contact> last_;
    bool armed_ = true;
};

}  // namespace fueldisp

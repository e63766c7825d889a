#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>

namespace fueldisp {

/// Logical keypad symbols. Sixteen physical keys map onto these one-to-one.
enum class Key : std::uint8_t {
    D0,
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
    D8,
    D9,
    Dot,
    Confirm,
    Backspace,
    Clear,
    Stop,
    Reserved,
};

inline constexpr std::size_t kKeyCount = 16;
inline constexpr int kMatrixRows = 4;
inline constexpr int kMatrixCols = 4;

/// A physical switch position in the 4x4 matrix.
struct Contact {
    std::uint8_t row = 0;
    std::uint8_t col = 0;

    constexpr auto operator<=>(const Contact&) const = default;
};

constexpr bool is_digit(Key k) { return k <= Key::D9; }
constexpr char digit_char(Key k) { return static_cast<char>('0' + static_cast<int>(k)); }

/// Telephone-style layout:
///   1 2 3 A      A = Confirm
///   4 5 6 B      B = Backspace
///   7 8 9 C      C = Dot
///   * 0 # D      * = Clear, # = Stop, D = Reserved
Key keymap(Contact c);

/// Inverse of keymap.
Contact contact_for(Key k);

/// Silkscreen label of the physical key ("0".."9", "A".."D", "*", "#").
std::string_view key_label(Key k);

/// Name used in transcripts: digits as themselves, otherwise the function name.
std::string_view key_name(Key k);

/// Accepts the 16 silkscreen labels plus "." as an alias for the Dot key.
std::optional<Key> key_from_label(std::string_view label);

std::array<Key, kKeyCount> all_keys();

}  // namespace fueldisp

#include "fueldisp/keys.hpp"

#include <stdexcept>

namespace fueldisp {

namespace {

constexpr std::array<std::array<Key, kMatrixCols>, kMatrixRows> kLayout{{
    {Key::D1, Key::D2, Key::D3, Key::Confirm},
    {Key::D4, Key::D5, Key::D6, Key::Backspace},
    {Key::D7, Key::D8, Key::D9, Key::Dot},
    {Key::Clear, Key::D0, Key::Stop, Key::Reserved},
}};

constexpr std::array<std::string_view, kKeyCount> kLabels{
    "0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "C", "A", "B", "*", "#", "D",
};

constexpr std::array<std::string_view, kKeyCount> kNames{
    "0", "1", "2", "3", "4", "5", "6", "7", "8", "9",
    "DOT", "CONFIRM", "BACKSPACE", "CLEAR", "STOP", "RESERVED",
};

}  // namespace

Key keymap(Contact c) {
    if (c.row >= kMatrixRows || c.col >= kMatrixCols) {
        throw std::out_of_range("keypad contact outside the 4x4 matrix");
    }
    return kLayout[c.row][c.col];
}

Contact contact_for(Key k) {
    for (std::uint8_t r = 0; r < kMatrixRows; ++r) {
        for (std::uint8_t c = 0; c < kMatrixCols; ++c) {
            if (kLayout[r][c] == k) {
                return {r, c};
            }
        }
    }
    throw std::logic_error("key missing from layout");
}

std::string_view key_label(Key k) { return kLabels[static_cast<std::size_t>(k)]; }

std::string_view key_name(Key k) { return kNames[static_cast<std::size_t>(k)]; }

std::optional<Key> key_from_label(std::string_view label) {
    if (label == ".") {
        return Key::Dot;
    }
    for (std::size_t i = 0; i < kKeyCount; ++i) {
        if (kLabels[i] == label) {
            return static_cast<Key>(i);
        }
    }
    return std::nullopt;
}

std::array<Key, kKeyCount> all_keys() {
    std::array<Key, kKeyCount> keys{};
    for (std::size_t i = 0; i < kKeyCount; ++i) {
        keys[i] = static_cast<Key>(i);
    }
    return keys;
}

}  // namespace fueldisp

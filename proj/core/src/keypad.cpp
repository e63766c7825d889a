#include "fueldisp/keypad.hpp"

namespace fueldisp {

std::uint8_t read_rows(const MatrixState& matrix, int col) {
    // Flood fill over the row/column graph from the driven column.
    std::uint8_t rows_low = 0;
    std::uint8_t cols_low = static_cast<std::uint8_t>(1u << col);
    bool grew = true;
    while (grew) {
        grew = false;
        for (int r = 0; r < kMatrixRows; ++r) {
            for (int c = 0; c < kMatrixCols; ++c) {
                if (!matrix.is_pressed({static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(c)})) {
                    continue;
                }
                const bool row_on = rows_low & (1u << r);
                const bool col_on = cols_low & (1u << c);
                if (row_on != col_on) {
                    rows_low |= static_cast<std::uint8_t>(1u << r);
                    cols_low |= static_cast<std::uint8_t>(1u << c);
                    grew = true;
                }
            }
        }
    }
    return static_cast<std::uint8_t>(~rows_low & 0x0f);
}

std::optional<Contact> keypad_scan(const MatrixState& matrix) {
    std::optional<Contact> hit;
    int hits = 0;
    for (int c = 0; c < kMatrixCols; ++c) {
        const std::uint8_t levels = read_rows(matrix, c);
        for (int r = 0; r < kMatrixRows; ++r) {
            if ((levels & (1u << r)) == 0) {
                hit = Contact{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(c)};
                ++hits;
            }
        }
    }
    if (hits != 1) {
        return std::nullopt;
    }
    return hit;
}

std::optional<KeyEvent> Debouncer::feed(std::optional<Contact> raw, SimTimeMs now) {
    if (!raw) {
        last_.reset();
        armed_ = true;
        return std::nullopt;
    }
    if (last_ != raw) {
        last_ = raw;
        return std::nullopt;
    }
    if (!armed_) {
        return std::nullopt;
    }
    armed_ = false;
    return KeyEvent{keymap(*raw), now};
}

}  // namespace fueldisp

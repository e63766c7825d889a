#include "fueldisp/lcd.hpp"

#include <algorithm>

namespace fueldisp {

namespace {

char printable(char c) { return (c >= 0x20 && c <= 0x7e) ? c : '?'; }

}  // namespace

LcdFrame::LcdFrame() {
    for (auto& r : rows_) {
        r.fill(' ');
    }
}

LcdFrame LcdFrame::from_rows(const std::array<std::string_view, kLcdRows>& rows) {
    LcdFrame frame;
    for (int r = 0; r < kLcdRows; ++r) {
        frame = lcd_apply(frame, {LcdSetCursor{static_cast<std::uint8_t>(r), 0}});
        frame = lcd_apply(frame, {LcdPrint{std::string(rows[r])}});
    }
    frame.cursor_ = {};
    return frame;
}

LcdFrame lcd_apply(LcdFrame frame, const LcdOp& op) {
    if (std::holds_alternative<LcdClear>(op.op)) {
        for (auto& r : frame.rows_) {
            r.fill(' ');
        }
        frame.cursor_ = {};
    } else if (const auto* set = std::get_if<LcdSetCursor>(&op.op)) {
        frame.cursor_.row = std::min<std::uint8_t>(set->row, kLcdRows - 1);
        frame.cursor_.col = std::min<std::uint8_t>(set->col, kLcdCols - 1);
    } else {
        const auto& text = std::get<LcdPrint>(op.op).text;
        auto& row = frame.rows_[frame.cursor_.row];
        int col = frame.cursor_.col;
        for (char c : text) {
            if (col >= kLcdCols) {
                break;
            }
            row[col++] = printable(c);
        }
        frame.cursor_.col = static_cast<std::uint8_t>(std::min(col, kLcdCols - 1));
    }
    return frame;
}

LcdFrame lcd_apply_all(LcdFrame frame, const std::vector<LcdOp>& ops) {
    for (const auto& op : ops) {
        frame = lcd_apply(std::move(frame), op);
    }
    return frame;
}

std::string pad_row(std::string_view text) {
    std::string row(text.substr(0, kLcdCols));
    row.resize(kLcdCols, ' ');
    return row;
}

}  // namespace fueldisp

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fueldisp {

inline constexpr int kLcdRows = 4;
inline constexpr int kLcdCols = 16;

struct LcdOp;

struct LcdCursor {
    std::uint8_t row = 0;
    std::uint8_t col = 0;

    constexpr bool operator==(const LcdCursor&) const = default;
};

/// Contents of the 16x4 character display. Every row is always exactly 16
/// printable characters; blank cells hold spaces.
class LcdFrame {
public:
    LcdFrame();

    static LcdFrame from_rows(const std::array<std::string_view, kLcdRows>& rows);

    std::string_view row(int r) const { return {rows_[r].data(), rows_[r].size()}; }
    LcdCursor cursor() const { return cursor_; }

    /// Equal text, cursor ignored.
    bool same_text(const LcdFrame& other) const { return rows_ == other.rows_; }

    bool operator==(const LcdFrame&) const = default;

private:
    friend LcdFrame lcd_apply(LcdFrame frame, const LcdOp& op);

    std::array<std::array<char, kLcdCols>, kLcdRows> rows_{};
    LcdCursor cursor_{};
};

struct LcdClear {
    bool operator==(const LcdClear&) const = default;
};

struct LcdSetCursor {
    std::uint8_t row = 0;
    std::uint8_t col = 0;

    bool operator==(const LcdSetCursor&) const = default;
};

struct LcdPrint {
    std::string text;

    bool operator==(const LcdPrint&) const = default;
};

struct LcdOp {
    std::variant<LcdClear, LcdSetCursor, LcdPrint> op;

    bool operator==(const LcdOp&) const = default;
};

/// Clear blanks every row and homes the cursor. SetCursor clamps to the
/// display bounds. Print writes left to right from the cursor, never wraps,
/// drops whatever does not fit before column 16, and leaves the cursor after
/// the last written cell (clamped to column 15).
LcdFrame lcd_apply(LcdFrame frame, const LcdOp& op);

LcdFrame lcd_apply_all(LcdFrame frame, const std::vector<LcdOp>& ops);

/// Left-justifies and space-pads (or truncates) to one full display row.
std::string pad_row(std::string_view text);

}  // namespace fueldisp

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include "fueldisp/types.hpp"

namespace fueldisp {

/// The operator's in-progress volume entry.
///
/// Holds digits and at most one '.', never more than six characters, never
/// more than two digits after the '.', and never starts with '.'.
/// Mutators return false and leave the buffer untouched when an edit would
/// break one of those rules.
class InputBuffer {
public:
    static constexpr std::size_t kMaxLength = 6;
    static constexpr std::size_t kMaxFractionDigits = 2;

    InputBuffer() = default;

    /// Builds a buffer by replaying keystrokes; returns an empty buffer if any
    /// keystroke would be rejected.
    static InputBuffer from_text(std::string_view text);

    bool append_digit(char digit);
    /// On an empty buffer this inserts "0.".
    bool append_dot();
    /// Removes exactly the last character; no-op when empty.
    void backspace();
    void clear() { text_.clear(); }

    std::string_view text() const { return text_; }
    bool empty() const { return text_.empty(); }
    bool has_dot() const { return text_.find('.') != std::string::npos; }

    bool operator==(const InputBuffer&) const = default;

private:
    std::string text_;
};

enum class VolumeError { EmptyInput, TrailingDot, ZeroVolume, OutOfRange };

std::string_view volume_error_name(VolumeError e);

inline constexpr VolumeMicroliters kMaxVolume{99'990'000};

using VolumeParse = std::variant<VolumeMicroliters, VolumeError>;

/// Exact microliters for the buffer's decimal text. Rejects empty input,
/// a trailing '.', zero, and anything above 99.99 L.
VolumeParse parse_volume(const InputBuffer& buffer);

/// "12.34"-style liters string for a volume, truncated to hundredths.
std::string format_liters(VolumeMicroliters v);

}  // namespace fueldisp

#include "fueldisp/input_buffer.hpp"

#include <fmt/format.h>

namespace fueldisp {

InputBuffer InputBuffer::from_text(std::string_view text) {
    InputBuffer b;
    for (char c : text) {
        const bool ok = (c == '.') ? b.append_dot() : b.append_digit(c);
        if (!ok) {
            return {};
        }
    }
    return b;
}

bool InputBuffer::append_digit(char digit) {
    if (digit < '0' || digit > '9' || text_.size() >= kMaxLength) {
        return false;
    }
    const auto dot = text_.find('.');
    if (dot != std::string::npos && text_.size() - dot - 1 >= kMaxFractionDigits) {
        return false;
    }
    text_.push_back(digit);
    return true;
}

bool InputBuffer::append_dot() {
    if (has_dot()) {
        return false;
    }
    if (text_.empty()) {
        text_ = "0.";
        return true;
    }
    if (text_.size() >= kMaxLength) {
        return false;
    }
    text_.push_back('.');
    return true;
}

void InputBuffer::backspace() {
    if (!text_.empty()) {
        text_.pop_back();
    }
}

std::string_view volume_error_name(VolumeError e) {
    switch (e) {
        case VolumeError::EmptyInput: return "EmptyInput";
        case VolumeError::TrailingDot: return "TrailingDot";
        case VolumeError::ZeroVolume: return "ZeroVolume";
        case VolumeError::OutOfRange: return "OutOfRange";
    }
    return "?";
}

VolumeParse parse_volume(const InputBuffer& buffer) {
    const std::string_view text = buffer.text();
    if (text.empty()) {
        return VolumeError::EmptyInput;
    }
    if (text.back() == '.') {
        return VolumeError::TrailingDot;
    }
    std::int64_t whole = 0;
    std::int64_t fraction = 0;
    std::int64_t fraction_scale = kMicrolitersPerLiter;
    bool after_dot = false;
    for (char c : text) {
        if (c == '.') {
            after_dot = true;
            continue;
        }
        const int d = c - '0';
        if (after_dot) {
            fraction_scale /= 10;
            fraction += d * fraction_scale;
        } else {
            whole = whole * 10 + d;
        }
    }
    const VolumeMicroliters v{whole * kMicrolitersPerLiter + fraction};
    if (v.value == 0) {
        return VolumeError::ZeroVolume;
    }
    if (v > kMaxVolume) {
        return VolumeError::OutOfRange;
    }
    return v;
}

std::string format_liters(VolumeMicroliters v) {
    const std::int64_t hundredths = v.value / 10'000;
    return fmt::format("{}.{:02}", hundredths / 100, hundredths % 100);
}

}  // namespace fueldisp

#pragma once

#include <string>
#include <string_view>

namespace tweetguard {

std::string ascii_lower(std::string_view s);
std::string_view trim(std::string_view s) noexcept;
bool is_valid_utf8(std::string_view s) noexcept;

constexpr bool is_ascii_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
constexpr bool is_ascii_alnum(char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

}  // namespace tweetguard

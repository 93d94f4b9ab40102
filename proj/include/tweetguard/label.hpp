#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace tweetguard {

enum class Label : int { Hateful = 0, Offensive = 1, Clean = 2 };

inline constexpr std::size_t kNumLabels = 3;
inline constexpr std::array<Label, kNumLabels> kAllLabels{Label::Hateful, Label::Offensive,
                                                          Label::Clean};

constexpr int to_index(Label l) noexcept { return static_cast<int>(l); }

/// Throws Error when `i` is outside [0, 3).
Label label_from_index(int i);

/// Lowercase class name: "hateful", "offensive", "clean".
std::string_view to_string(Label l) noexcept;

/// Inverse of to_string (exact lowercase match); throws Error otherwise.
Label label_from_name(std::string_view name);

}  // namespace tweetguard

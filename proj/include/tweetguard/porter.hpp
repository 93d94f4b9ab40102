#pragma once

#include <string>
#include <string_view>

namespace tweetguard {

/// Porter (1980) suffix stripper, steps 1a through 5b, reproducing the
/// reference C implementation's output byte for byte (including its
/// `bli`->`ble` and `logi`->`log` rules and leaving words of one or two
/// letters untouched).
///
/// Tokens containing anything other than lowercase ASCII letters are
/// returned unchanged.
std::string porter_stem(std::string_view token);

}  // namespace tweetguard

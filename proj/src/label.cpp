#include "tweetguard/label.hpp"

#include "tweetguard/error.hpp"

namespace tweetguard {

Label label_from_index(int i) {
    if (i < 0 || i >= static_cast<int>(kNumLabels)) {
        throw Error("label index out of range: " + std::to_string(i));
    }
    return static_cast<Label>(i);
}

std::string_view to_string(Label l) noexcept {
    switch (l) {
        case Label::Hateful: return "hateful";
        case Label::Offensive: return "offensive";
        case Label::Clean: return "clean";
    }
    return "unknown";
}

Label label_from_name(std::string_view name) {
    for (Label l : kAllLabels) {
        if (to_string(l) == name) return l;
    }
    throw Error("unknown class name \"" + std::string(name) + "\"");
}

}  // namespace tweetguard

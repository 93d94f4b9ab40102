#include "tweetguard/sparse.hpp"

#include <cmath>
#include <string>

#include "tweetguard/error.hpp"

namespace tweetguard {

void validate(const SparseVector& v, std::size_t dimension) {
    if (v.indices.size() != v.values.size()) throw Error("sparse vector: index/value length mismatch");
    for (std::size_t i = 0; i < v.indices.size(); ++i) {
        if (i > 0 && v.indices[i] <= v.indices[i - 1]) {
            throw Error("sparse vector: indices not strictly increasing");
        }
        if (v.indices[i] >= dimension) {
            throw Error("sparse vector: index " + std::to_string(v.indices[i]) + " out of range");
        }
        if (!std::isfinite(v.values[i]) || v.values[i] == 0.0) {
            throw Error("sparse vector: values must be finite and non-zero");
        }
    }
}

}  // namespace tweetguard

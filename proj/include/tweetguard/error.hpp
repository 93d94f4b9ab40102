#pragma once

#include <stdexcept>
#include <string>

namespace tweetguard {

/// Raised for invalid user input: malformed files, bad labels, violated
/// preconditions. The CLI maps it to exit status 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A persisted artifact was written by an incompatible format version, or its
/// parts do not belong together.
class VersionMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace tweetguard

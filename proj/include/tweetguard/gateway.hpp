#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "tweetguard/error.hpp"
#include "tweetguard/label.hpp"
#include "tweetguard/linear.hpp"
#include "tweetguard/pipeline.hpp"

namespace tweetguard {

using Seconds = std::chrono::duration<double>;

/// One input line of the stream. `raw` keeps the original bytes so extra
/// keys pass through untouched.
struct TweetRecord {
    std::string id;
    std::string text;
    std::string raw;
};

/// Requires a JSON object with non-empty `id` (string or integer) and
/// non-empty string `text`; throws Error otherwise.
TweetRecord parse_tweet_record(std::string_view line);

enum class StreamMode { Annotate, Filter };
StreamMode stream_mode_from_string(std::string_view s);

struct StreamPolicy {
    StreamMode mode = StreamMode::Annotate;
    std::array<bool, kNumLabels> blocked{true, true, false};

    bool is_blocked(Label l) const noexcept { return blocked[static_cast<std::size_t>(to_index(l))]; }
};

/// Comma-separated class names, e.g. "hateful,offensive". Empty string blocks nothing.
std::array<bool, kNumLabels> parse_blocked(std::string_view list);

struct AnnotatedRecord {
    std::string line;
    Label label;
    ClassScores scores;
};

/// Appends `label` and `scores` to the record. Input bytes are preserved
/// verbatim unless the record already carries one of those keys, in which
/// case the object is re-serialized with them replaced.
AnnotatedRecord classify_record(const TweetRecord& rec, const Pipeline& pipeline);

class Clock {
public:
    virtual ~Clock() = default;
    virtual Seconds now() = 0;
    virtual void sleep_for(Seconds d) = 0;
};

class SteadyClock final : public Clock {
public:
    SteadyClock();
    Seconds now() override;
    void sleep_for(Seconds d) override;

private:
    std::chrono::steady_clock::time_point origin_;
};

/// Deterministic clock for tests: sleeping advances time instantly.
class ManualClock final : public Clock {
public:
    explicit ManualClock(Seconds start = Seconds{0}) : now_(start) {}
    Seconds now() override { return now_; }
    void sleep_for(Seconds d) override { now_ += d; }
    void advance(Seconds d) { now_ += d; }

private:
    Seconds now_;
};

struct GateDecision {
    bool proceed = false;
    Seconds wait{0};
};

/// Read limiter: admits a request only while fewer than `capacity` requests
/// were admitted in the trailing window, so no half-open interval of window
/// length ever holds more than `capacity` admissions. A refused request gets
/// the time until the oldest admission leaves the window (a full window when
/// capacity is 0). Thread-safe.
class RateLimiter {
public:
    explicit RateLimiter(std::size_t capacity, Seconds window = std::chrono::minutes(15));

    /// Throws Error if `now` is earlier than a previous call.
    GateDecision gate(Seconds now);

    std::size_t capacity() const noexcept { return capacity_; }
    Seconds window() const noexcept { return window_; }

private:
    std::size_t capacity_;
    Seconds window_;
    std::mutex mu_;
    std::deque<Seconds> admitted_;
    std::optional<Seconds> last_;
};

class LineSource {
public:
    virtual ~LineSource() = default;
    /// Next line without its terminator, or nullopt at end of stream.
    virtual std::optional<std::string> next_line() = 0;
};

class StreamLineSource final : public LineSource {
public:
    explicit StreamLineSource(std::istream& in) : in_(in) {}
    std::optional<std::string> next_line() override;

private:
    std::istream& in_;
};

/// Listens on host:port and serves newline-delimited records from the first
/// connection; the stream ends when the peer closes it.
class TcpLineSource final : public LineSource {
public:
    explicit TcpLineSource(std::uint16_t port, const std::string& host = "127.0.0.1");
    ~TcpLineSource() override;
    TcpLineSource(const TcpLineSource&) = delete;
    TcpLineSource& operator=(const TcpLineSource&) = delete;

    /// Bound port (useful when constructed with port 0).
    std::uint16_t port() const noexcept { return port_; }
    std::optional<std::string> next_line() override;

private:
    int listen_fd_ = -1;
    int conn_fd_ = -1;
    std::uint16_t port_ = 0;
    std::string buffer_;
    bool eof_ = false;
};

struct StreamStats {
    std::size_t lines_read = 0;
    std::size_t emitted = 0;
    std::size_t suppressed = 0;
    std::size_t skipped_invalid = 0;
    std::array<std::size_t, kNumLabels> per_label{};

    nlohmann::json to_json() const;
};

/// Raised when the sink rejects a write; carries the counts so far.
class StreamError : public Error {
public:
    StreamError(const std::string& what, StreamStats stats) : Error(what), stats_(stats) {}
    const StreamStats& stats() const noexcept { return stats_; }

private:
    StreamStats stats_;
};

struct RateControl {
    RateLimiter* limiter = nullptr;
    Clock* clock = nullptr;
};

/// Reads records until the source ends, classifying each one. Annotate mode
/// emits every valid record; filter mode drops blocked labels. Invalid lines
/// are counted and skipped. Output order equals input order. When a limiter
/// is given, every source read first passes through it.
StreamStats run_stream(LineSource& source, std::ostream& sink, const StreamPolicy& policy,
                       const Pipeline& pipeline, RateControl rate = {});

}  // namespace tweetguard

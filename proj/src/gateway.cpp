#include "tweetguard/gateway.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <istream>
#include <ostream>
#include <thread>

#include "tweetguard/text_util.hpp"

namespace tweetguard {

using nlohmann::json;

TweetRecord parse_tweet_record(std::string_view line) {
    const std::string_view body = trim(line);
    json obj;
    try {
        obj = json::parse(body);
    } catch (const json::parse_error&) {
        throw Error("invalid record: malformed JSON");
    }
    if (!obj.is_object()) throw Error("invalid record: not a JSON object");
    TweetRecord rec;
    auto id = obj.find("id");
    if (id == obj.end()) throw Error("invalid record: missing `id`");
    if (id->is_string()) {
        rec.id = id->get<std::string>();
    } else if (id->is_number_integer()) {
        rec.id = id->dump();
    } else {
        throw Error("invalid record: `id` must be a string or integer");
    }
    auto text = obj.find("text");
    if (text == obj.end() || !text->is_string()) throw Error("invalid record: missing string `text`");
    rec.text = text->get<std::string>();
    if (rec.id.empty()) throw Error("invalid record: empty `id`");
    if (rec.text.empty()) throw Error("invalid record: empty `text`");
    rec.raw = std::string(body);
    return rec;
}

StreamMode stream_mode_from_string(std::string_view s) {
    const auto key = ascii_lower(s);
    if (key == "annotate") return StreamMode::Annotate;
    if (key == "filter") return StreamMode::Filter;
    throw Error("unknown stream mode \"" + std::string(s) + "\"");
}

std::array<bool, kNumLabels> parse_blocked(std::string_view list) {
    std::array<bool, kNumLabels> blocked{};
    while (!list.empty()) {
        const auto comma = list.find(',');
        const auto item = trim(list.substr(0, comma));
        if (!item.empty()) blocked[static_cast<std::size_t>(to_index(label_from_name(ascii_lower(item))))] = true;
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
    }
    return blocked;
}

AnnotatedRecord classify_record(const TweetRecord& rec, const Pipeline& pipeline) {
    if (rec.id.empty() || rec.text.empty()) throw Error("invalid record: `id` and `text` must be non-empty");
    pipeline.check_compatible();
    auto prediction = pipeline.classify_text(rec.text);

    json scores = json::object();
    for (const auto& [label, value] : prediction.scores) scores[std::string(to_string(label))] = value;
    const std::string label_name(to_string(prediction.label));

    AnnotatedRecord out{{}, prediction.label, std::move(prediction.scores)};
    const auto original = json::parse(rec.raw);
    if (!original.contains("label") && !original.contains("scores")) {
        const auto close = rec.raw.find_last_of('}');
        out.line = rec.raw.substr(0, close) + ",\"label\":" + json(label_name).dump() +
                   ",\"scores\":" + scores.dump() + "}";
    } else {
        auto obj = nlohmann::ordered_json::parse(rec.raw);
        obj["label"] = label_name;
        obj["scores"] = nlohmann::ordered_json::parse(scores.dump());
        out.line = obj.dump();
    }
    return out;
}

SteadyClock::SteadyClock() : origin_(std::chrono::steady_clock::now()) {}

Seconds SteadyClock::now() { return std::chrono::steady_clock::now() - origin_; }

void SteadyClock::sleep_for(Seconds d) {
    if (d > Seconds{0}) std::this_thread::sleep_for(d);
}

RateLimiter::RateLimiter(std::size_t capacity, Seconds window) : capacity_(capacity), window_(window) {
    if (!(window > Seconds{0})) throw Error("rate limiter window must be positive");
}

GateDecision RateLimiter::gate(Seconds now) {
    std::lock_guard lock(mu_);
    if (last_ && now < *last_) throw Error("rate limiter: clock went backwards");
    last_ = now;
    // An admission at time a occupies every interval [s, s + window) with
    // s <= a < s + window; it stops counting once now >= a + window.
    while (!admitted_.empty() && now >= admitted_.front() + window_) admitted_.pop_front();
    if (admitted_.size() < capacity_) {
        admitted_.push_back(now);
        return {true, Seconds{0}};
    }
    const Seconds free_at = admitted_.empty() ? now + window_ : admitted_.front() + window_;
    return {false, free_at - now};
}

std::optional<std::string> StreamLineSource::next_line() {
    std::string line;
    if (!std::getline(in_, line)) return std::nullopt;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

TcpLineSource::TcpLineSource(std::uint16_t port, const std::string& host) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw Error(std::string("socket: ") + std::strerror(errno));
    int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        ::close(listen_fd_);
        throw Error("invalid listen address " + host);
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(listen_fd_, 1) < 0) {
        const std::string msg = std::strerror(errno);
        ::close(listen_fd_);
        throw Error("cannot listen on " + host + ":" + std::to_string(port) + ": " + msg);
    }
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

TcpLineSource::~TcpLineSource() {
    if (conn_fd_ >= 0) ::close(conn_fd_);
    if (listen_fd_ >= 0) ::close(listen_fd_);
}

std::optional<std::string> TcpLineSource::next_line() {
    if (conn_fd_ < 0 && !eof_) {
        conn_fd_ = ::accept(listen_fd_, nullptr, nullptr);
        if (conn_fd_ < 0) throw Error(std::string("accept: ") + std::strerror(errno));
    }
    for (;;) {
        const auto nl = buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return line;
        }
        if (eof_) {
            if (buffer_.empty()) return std::nullopt;
            std::string line;
            line.swap(buffer_);
            return line;
        }
        char chunk[4096];
        const auto got = ::recv(conn_fd_, chunk, sizeof chunk, 0);
        if (got < 0) {
            if (errno == EINTR) continue;
            throw Error(std::string("recv: ") + std::strerror(errno));
        }
        if (got == 0) {
            eof_ = true;
            ::close(conn_fd_);
            conn_fd_ = -1;
        } else {
            buffer_.append(chunk, static_cast<std::size_t>(got));
        }
    }
}

json StreamStats::to_json() const {
    json per = json::object();
    for (Label l : kAllLabels) per[std::string(to_string(l))] = per_label[static_cast<std::size_t>(to_index(l))];
    return json{{"lines_read", lines_read},
                {"emitted", emitted},
                {"suppressed", suppressed},
                {"skipped_invalid", skipped_invalid},
                {"per_label", per}};
}

StreamStats run_stream(LineSource& source, std::ostream& sink, const StreamPolicy& policy,
                       const Pipeline& pipeline, RateControl rate) {
    pipeline.check_compatible();
    if (rate.limiter && !rate.clock) throw Error("run_stream: a rate limiter needs a clock");
    if (rate.limiter && rate.limiter->capacity() == 0) throw Error("run_stream: rate limiter capacity is 0");
    StreamStats stats;
    for (;;) {
        if (rate.limiter) {
            for (;;) {
                const auto d = rate.limiter->gate(rate.clock->now());
                if (d.proceed) break;
                rate.clock->sleep_for(d.wait);
            }
        }
        auto line = source.next_line();
        if (!line) break;
        ++stats.lines_read;

        TweetRecord rec;
        try {
            rec = parse_tweet_record(*line);
        } catch (const Error&) {
            ++stats.skipped_invalid;
            continue;
        }
        const auto annotated = classify_record(rec, pipeline);
        ++stats.per_label[static_cast<std::size_t>(to_index(annotated.label))];
        if (policy.mode == StreamMode::Filter && policy.is_blocked(annotated.label)) {
            ++stats.suppressed;
            continue;
        }
        sink << annotated.line << '\n';
        sink.flush();
        if (!sink) throw StreamError("output write failed", stats);
        ++stats.emitted;
    }
    return stats;
}

}  // namespace tweetguard

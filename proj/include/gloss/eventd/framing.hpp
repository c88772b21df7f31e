// Copyright 2026 The Gloss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Length-prefixed frames: a 4-byte big-endian payload length, then the
// payload.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "gloss/error.hpp"

namespace gloss::eventd {

inline constexpr std::size_t kFrameHeaderBytes = 4;
inline constexpr std::uint32_t kDefaultMaxFrameBytes = 16u << 20;

inline void put_be32(std::string& out, std::uint32_t n) {
    out += static_cast<char>((n >> 24) & 0xFF);
    out += static_cast<char>((n >> 16) & 0xFF);
    out += static_cast<char>((n >> 8) & 0xFF);
    out += static_cast<char>(n & 0xFF);
}

inline std::uint32_t get_be32(const char* p) noexcept {
    const auto* u = reinterpret_cast<const unsigned char*>(p);
    return (std::uint32_t{u[0]} << 24) | (std::uint32_t{u[1]} << 16) | (std::uint32_t{u[2]} << 8) | std::uint32_t{u[3]};
}

inline std::string encode_frame(std::string_view payload) {
    if (payload.size() > 0xFFFFFFFFu)
        throw Error(ErrorCode::FramingError, "payload too large for a 32-bit length prefix");
    std::string out;
    out.reserve(kFrameHeaderBytes + payload.size());
    put_be32(out, static_cast<std::uint32_t>(payload.size()));
    out.append(payload);
    return out;
}

/// Incremental decoder. Feed it bytes as they arrive and pull complete
/// payloads out with next().
class FrameDecoder {
public:
    explicit FrameDecoder(std::uint32_t max_frame = kDefaultMaxFrameBytes) : max_(max_frame) {}

    void feed(std::string_view bytes) { buf_.append(bytes); }

    /// A complete payload, or nullopt when more bytes are needed. Throws
    /// FramingError on a length above the limit.
    std::optional<std::string> next() {
        if (buf_.size() - pos_ < kFrameHeaderBytes)
            return std::nullopt;
        const std::uint32_t len = get_be32(buf_.data() + pos_);
        if (len > max_)
            throw Error(ErrorCode::FramingError,
                        "frame of " + std::to_string(len) + " bytes exceeds limit " + std::to_string(max_));
        if (buf_.size() - pos_ - kFrameHeaderBytes < len)
            return std::nullopt;
        std::string payload = buf_.substr(pos_ + kFrameHeaderBytes, len);
        pos_ += kFrameHeaderBytes + len;
        if (pos_ == buf_.size()) {
            buf_.clear();
            pos_ = 0;
        } else if (pos_ > 1 << 16) {
            buf_.erase(0, pos_);
            pos_ = 0;
        }
        return payload;
    }

    /// Bytes held that do not yet form a full frame.
    std::size_t pending() const noexcept { return buf_.size() - pos_; }

private:
    std::uint32_t max_;
    std::string buf_;
    std::size_t pos_ = 0;
};

}  // namespace gloss::eventd

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

// Stream ingest over TCP. Each inbound frame holds one locationEvent
// document and is answered by one frame: "OK <accepted>" or
// "ERR <code> <message>".

#pragma once

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "gloss/eventd/framing.hpp"
#include "gloss/eventd/store.hpp"

namespace gloss::eventd {

namespace detail {

inline std::string errno_text(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

inline bool write_all(int fd, std::string_view bytes) {
    while (!bytes.empty()) {
        const ssize_t n = ::send(fd, bytes.data(), bytes.size(), MSG_NOSIGNAL);
        if (n < 0 && errno == EINTR)
            continue;
        if (n <= 0)
            return false;
        bytes.remove_prefix(static_cast<std::size_t>(n));
    }
    return true;
}

// One step of read; 0 on orderly close, -1 on error.
inline ssize_t read_some(int fd, char* buf, std::size_t len) {
    for (;;) {
        const ssize_t n = ::recv(fd, buf, len, 0);
        if (n < 0 && errno == EINTR)
            continue;
        return n;
    }
}

class Fd {
public:
    explicit Fd(int fd = -1) noexcept : fd_(fd) {}
    Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
    Fd& operator=(Fd&& o) noexcept {
        if (this != &o) {
            reset();
            fd_ = std::exchange(o.fd_, -1);
        }
        return *this;
    }
    ~Fd() { reset(); }

    int get() const noexcept { return fd_; }
    void reset() noexcept {
        if (fd_ >= 0)
            ::close(fd_);
        fd_ = -1;
    }

private:
    int fd_;
};

}  // namespace detail

/// Sink writing to a connected socket.
class SocketSink : public Sink {
public:
    explicit SocketSink(int fd) : fd_(fd) {}

    void write(std::string_view bytes) override {
        if (!detail::write_all(fd_, bytes))
            throw Error(ErrorCode::SinkUnavailable, detail::errno_text("send"));
    }

private:
    int fd_;
};

inline std::string ack_for(const IngestAck& a) { return "OK " + std::to_string(a.accepted); }

inline std::string nack_for(const std::exception& e) {
    if (const auto* g = dynamic_cast<const Error*>(&e))
        return "ERR " + std::string(to_string(g->code())) + " " + g->what();
    return std::string("ERR Internal ") + e.what();
}

class Server {
public:
    explicit Server(EventStore& store, std::uint32_t max_frame = kDefaultMaxFrameBytes)
        : store_(store), max_frame_(max_frame) {}

    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;
    ~Server() { stop(); }

    /// Binds to 127.0.0.1 (or `host`) and starts accepting. Port 0 picks a
    /// free port; see port().
    void start(std::uint16_t port, const std::string& host = "127.0.0.1") {
        detail::Fd fd(::socket(AF_INET, SOCK_STREAM, 0));
        if (fd.get() < 0)
            throw Error(ErrorCode::IoFailure, detail::errno_text("socket"));
        int one = 1;
        ::setsockopt(fd.get(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_port = htons(port);
        if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
            throw Error(ErrorCode::InvalidArgument, "bad listen address '" + host + "'");
        if (::bind(fd.get(), reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0)
            throw Error(ErrorCode::IoFailure, detail::errno_text("bind"));
        if (::listen(fd.get(), 64) < 0)
            throw Error(ErrorCode::IoFailure, detail::errno_text("listen"));
        socklen_t len = sizeof addr;
        ::getsockname(fd.get(), reinterpret_cast<sockaddr*>(&addr), &len);
        port_ = ntohs(addr.sin_port);
        listener_ = std::move(fd);
        running_ = true;
        acceptor_ = std::jthread([this] { accept_loop(); });
    }

    std::uint16_t port() const noexcept { return port_; }

    /// Blocks until stop() is called from elsewhere.
    void wait() {
        if (acceptor_.joinable())
            acceptor_.join();
    }

    void stop() {
        if (!running_.exchange(false))
            return;
        ::shutdown(listener_.get(), SHUT_RDWR);
        if (acceptor_.joinable() && acceptor_.get_id() != std::this_thread::get_id())
            acceptor_.join();
        std::list<Connection> conns;
        {
            std::lock_guard lock(conn_mutex_);
            for (auto& c : connections_)
                ::shutdown(c.fd.get(), SHUT_RDWR);
            conns.splice(conns.end(), connections_);
        }
        conns.clear();  // joins every connection thread
        listener_.reset();
    }

private:
    struct Connection {
        detail::Fd fd;
        std::jthread thread;

        ~Connection() {
            if (thread.joinable())
                thread.join();
        }
    };

    void accept_loop() {
        while (running_) {
            const int c = ::accept(listener_.get(), nullptr, nullptr);
            if (c < 0) {
                if (errno == EINTR)
                    continue;
                break;
            }
            std::lock_guard lock(conn_mutex_);
            if (!running_) {
                ::close(c);
                break;
            }
            auto& conn = connections_.emplace_back();
            conn.fd = detail::Fd(c);
            conn.thread = std::jthread([this, c] { serve(c); });
        }
    }

    void serve(int fd) {
        FrameDecoder decoder(max_frame_);
        char buf[1 << 14];
        for (;;) {
            const ssize_t n = detail::read_some(fd, buf, sizeof buf);
            if (n <= 0)
                return;
            decoder.feed(std::string_view(buf, static_cast<std::size_t>(n)));
            try {
                while (auto doc = decoder.next()) {
                    std::string reply;
                    try {
                        reply = ack_for(store_.ingest(*doc));
                    } catch (const std::exception& e) {
                        reply = nack_for(e);
                    }
                    if (!detail::write_all(fd, encode_frame(reply)))
                        return;
                }
            } catch (const Error& e) {
                // Oversized frame: report and drop the connection.
                detail::write_all(fd, encode_frame(nack_for(e)));
                ::shutdown(fd, SHUT_RDWR);
                return;
            }
        }
    }

    EventStore& store_;
    std::uint32_t max_frame_;
    detail::Fd listener_;
    std::uint16_t port_ = 0;
    std::atomic<bool> running_{false};
    std::jthread acceptor_;
    std::mutex conn_mutex_;
    std::list<Connection> connections_;
};

/// Minimal blocking client: sends each document as a frame and collects
/// the replies in order.
inline std::vector<std::string> send_documents(const std::string& host, std::uint16_t port,
                                               const std::vector<std::string>& documents) {
    detail::Fd fd(::socket(AF_INET, SOCK_STREAM, 0));
    if (fd.get() < 0)
        throw Error(ErrorCode::IoFailure, detail::errno_text("socket"));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
        throw Error(ErrorCode::InvalidArgument, "bad address '" + host + "'");
    if (::connect(fd.get(), reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0)
        throw Error(ErrorCode::SinkUnavailable, detail::errno_text("connect"));
    SocketSink sink(fd.get());
    FrameDecoder decoder;
    std::vector<std::string> replies;
    char buf[4096];
    for (const auto& doc : documents) {
        sink.write(encode_frame(doc));
        std::optional<std::string> reply;
        while (!(reply = decoder.next())) {
            const ssize_t n = detail::read_some(fd.get(), buf, sizeof buf);
            if (n <= 0)
                throw Error(ErrorCode::SinkUnavailable, "connection closed before reply");
            decoder.feed(std::string_view(buf, static_cast<std::size_t>(n)));
        }
        replies.push_back(std::move(*reply));
    }
    return replies;
}

}  // namespace gloss::eventd

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

// In-memory store of location events keyed by subject ID, with optional
// append-only journal.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "gloss/eventd/framing.hpp"
#include "gloss/trails.hpp"
#include "gloss/wire.hpp"

namespace gloss::eventd {

using Clock = std::function<Time()>;

inline Time system_now() {
    const auto now = std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::system_clock::now());
    return Time(now.time_since_epoch().count());
}

/// Destination for forwarded frames.
class Sink {
public:
    virtual ~Sink() = default;
    /// Writes all of `bytes` or throws SinkUnavailable.
    virtual void write(std::string_view bytes) = 0;
};

class StringSink : public Sink {
public:
    void write(std::string_view bytes) override { data.append(bytes); }

    std::string data;
};

struct StoreConfig {
    std::string step_label = "ingested";
    RecordingPolicy policy = policy::Manual{};
    Clock clock = system_now;
    Gazetteer gazetteer;
    std::optional<std::filesystem::path> journal;
};

struct IngestAck {
    Id subject;
    std::size_t accepted = 0;
};

/// Thread safe. Documents are parsed outside the lock; each merge runs
/// under an exclusive lock and either commits whole or not at all. Readers
/// take a shared lock and never see a half-applied event.
class EventStore {
public:
    explicit EventStore(StoreConfig config = {}) : config_(std::move(config)) {
        if (!config_.clock)
            config_.clock = system_now;
    }

    EventStore(const EventStore&) = delete;
    EventStore& operator=(const EventStore&) = delete;

    const std::string& step_label() const noexcept { return config_.step_label; }

    /// Parses, stamps and merges one document. Throws SchemaError when the
    /// document is rejected, leaving the store untouched.
    IngestAck ingest(std::string_view bytes) {
        LocationEvent ev = parse_location_event(bytes);
        return merge(std::move(ev), bytes, true);
    }

    /// Replays a journal written by an earlier store. Entries are not
    /// journalled again. Returns the number of documents replayed.
    std::size_t replay_journal(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            if (!std::filesystem::exists(path))
                return 0;
            throw Error(ErrorCode::IoFailure, "cannot open journal " + path.string());
        }
        FrameDecoder decoder;
        char buf[1 << 14];
        std::size_t count = 0;
        while (in) {
            in.read(buf, sizeof buf);
            decoder.feed(std::string_view(buf, static_cast<std::size_t>(in.gcount())));
            while (auto doc = decoder.next()) {
                merge(parse_location_event(*doc), *doc, false);
                ++count;
            }
        }
        if (decoder.pending() != 0)
            throw Error(ErrorCode::FramingError, "journal " + path.string() + " ends inside a record");
        return count;
    }

    /// The observation with the latest time for this exact ID. Among equal
    /// times the later arrival wins.
    Observation query_last(const Id& subject) const {
        std::shared_lock lock(mutex_);
        auto it = subjects_.find(subject);
        if (it == subjects_.end() || it->second.history.empty())
            throw Error(ErrorCode::UnknownSubject, "no observations for " + subject.to_form());
        return it->second.history.back().observation;
    }

    std::vector<Observation> history(const Id& subject) const {
        std::shared_lock lock(mutex_);
        std::vector<Observation> out;
        if (auto it = subjects_.find(subject); it != subjects_.end())
            for (const auto& e : it->second.history)
                out.push_back(e.observation);
        return out;
    }

    std::optional<ObservedTrail> trail(const Id& subject) const {
        std::shared_lock lock(mutex_);
        auto it = subjects_.find(subject);
        if (it == subjects_.end())
            return std::nullopt;
        return it->second.trail;
    }

    /// The last event ingested for the subject, with this node's step.
    std::optional<LocationEvent> last_event(const Id& subject) const {
        std::shared_lock lock(mutex_);
        auto it = subjects_.find(subject);
        if (it == subjects_.end())
            return std::nullopt;
        return it->second.last_event;
    }

    std::vector<Id> subjects() const {
        std::shared_lock lock(mutex_);
        std::vector<Id> out;
        for (const auto& [id, _] : subjects_)
            out.push_back(id);
        return out;
    }

    /// Canonical byte image of the whole store, for comparing snapshots.
    std::string dump() const {
        std::shared_lock lock(mutex_);
        std::string out = "arrivals " + std::to_string(arrivals_) + "\n";
        for (const auto& [id, rec] : subjects_) {
            out += "subject " + id.to_form() + "\n";
            for (const auto& e : rec.history)
                out += "history " + std::to_string(e.arrival) + " " +
                       xml::Writer::compact(wire_detail::observation(e.observation)) + "\n";
            for (const auto& n : rec.trail.nodes)
                out += "trail " + format_datetime(reference_instant(n.when)) + " " +
                       serialize_where(n.where) + "\n";
            out += "last " + xml::Writer::compact(wire_detail::location_event(rec.last_event)) + "\n";
        }
        return out;
    }

    /// Appends this node's step and writes the event to `sink` as one frame.
    /// Returns the event as sent.
    LocationEvent forward(LocationEvent event, Sink& sink) const {
        event.processing_sequence.push_back(ProcessingStep{config_.clock(), config_.step_label});
        sink.write(encode_frame(serialize_location_event(event)));
        return event;
    }

    /// Parses `bytes` and forwards the event without storing it.
    LocationEvent relay(std::string_view bytes, Sink& sink) const { return forward(parse_location_event(bytes), sink); }

private:
    struct Entry {
        Observation observation;
        std::uint64_t arrival;
    };

    struct Record {
        std::vector<Entry> history;  // by time, then arrival
        ObservedTrail trail;
        LocationEvent last_event;
    };

    IngestAck merge(LocationEvent ev, std::string_view raw, bool journal) {
        ev.processing_sequence.push_back(ProcessingStep{config_.clock(), config_.step_label});
        std::unique_lock lock(mutex_);
        auto found = subjects_.find(ev.id);
        Record rec = found != subjects_.end() ? found->second : Record{{}, ObservedTrail{ev.id, {}}, ev};
        std::uint64_t arrivals = arrivals_;
        std::size_t accepted = 0;
        bool reordered = false;
        for (const auto& obs : ev.observations) {
            const bool duplicate = std::any_of(rec.history.begin(), rec.history.end(),
                                               [&](const Entry& e) { return e.observation == obs; });
            if (duplicate)
                continue;
            const Time t = obs.time_of_observation;
            auto pos = std::upper_bound(rec.history.begin(), rec.history.end(), t,
                                        [](const Time& x, const Entry& e) { return x < e.observation.time_of_observation; });
            const bool at_end = pos == rec.history.end();
            rec.history.insert(pos, Entry{obs, arrivals++});
            ++accepted;
            if (!at_end || reordered) {
                reordered = true;
            } else {
                rec.trail = record_observation(std::move(rec.trail), ObservedNode{t, obs.where, std::nullopt},
                                               config_.policy, config_.gazetteer);
            }
        }
        if (reordered) {
            ObservedTrail rebuilt{ev.id, {}};
            for (const auto& e : rec.history)
                rebuilt = record_observation(std::move(rebuilt),
                                             ObservedNode{e.observation.time_of_observation, e.observation.where,
                                                          std::nullopt},
                                             config_.policy, config_.gazetteer);
            rec.trail = std::move(rebuilt);
        }
        rec.last_event = ev;
        if (journal && config_.journal)
            append_journal(raw);
        const Id subject = ev.id;
        subjects_.insert_or_assign(subject, std::move(rec));
        arrivals_ = arrivals;
        return IngestAck{subject, accepted};
    }

    void append_journal(std::string_view raw) const {
        std::ofstream out(*config_.journal, std::ios::binary | std::ios::app);
        const std::string frame = encode_frame(raw);
        out.write(frame.data(), static_cast<std::streamsize>(frame.size()));
        out.flush();
        if (!out)
            throw Error(ErrorCode::IoFailure, "cannot append to journal " + config_.journal->string());
    }

    StoreConfig config_;
    mutable std::shared_mutex mutex_;
    std::map<Id, Record> subjects_;
    std::uint64_t arrivals_ = 0;
};

}  // namespace gloss::eventd

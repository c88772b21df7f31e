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

// Trail files on disk.
//
// A manifest is line oriented; blank lines and '#' comments are ignored:
//
//   subject email:someone@example.org
//   policy fixed-time 60s          (or: fixed-spatial 100m | manual | proximity 50m)
//   designated 56.34 -2.79 200m    (proximity only; repeatable)
//   event node-0001.xml            (relative to the manifest; repeatable)
//
// Every observation of every event becomes a candidate node, in file order.

#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "gloss/trails.hpp"
#include "gloss/wire.hpp"

namespace gloss {

struct TrailManifest {
    std::optional<Id> subject;
    RecordingPolicy policy = policy::Manual{};
    std::vector<std::filesystem::path> events;  // resolved against the manifest directory
};

namespace detail {

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoFailure, "cannot open " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw Error(ErrorCode::IoFailure, "cannot read " + p.string());
    return buf.str();
}

inline void write_file(const std::filesystem::path& p, std::string_view bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoFailure, "cannot create " + p.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw Error(ErrorCode::IoFailure, "cannot write " + p.string());
}

inline double read_number(std::string_view s, const std::string& where) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(ErrorCode::InvalidArgument, where + ": expected a number, got '" + std::string(s) + "'");
    return v;
}

// "60s", "1500ms", "2min", "1h"; a bare number is seconds.
inline std::int64_t parse_duration_ms(std::string_view s, const std::string& where) {
    std::size_t split = 0;
    while (split < s.size() && (std::isdigit(static_cast<unsigned char>(s[split])) || s[split] == '.'))
        ++split;
    const double value = read_number(s.substr(0, split), where);
    const std::string_view unit = s.substr(split);
    double scale = 1000.0;
    if (unit == "ms")
        scale = 1.0;
    else if (unit == "min")
        scale = 60'000.0;
    else if (unit == "h")
        scale = 3'600'000.0;
    else if (!unit.empty() && unit != "s")
        throw Error(ErrorCode::UnknownUnit, where + ": unknown duration unit '" + std::string(unit) + "'");
    return static_cast<std::int64_t>(std::llround(value * scale));
}

}  // namespace detail

inline TrailManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir = {}) {
    TrailManifest m;
    std::optional<policy::Proximity> proximity;
    std::vector<Region> designated;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = "manifest line " + std::to_string(line_no);
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream words(line);
        std::string key;
        if (!(words >> key))
            continue;
        std::string rest;
        std::getline(words, rest);
        rest = std::string(xml::detail::trim(rest));
        if (key == "subject") {
            m.subject = parse_id_form(rest);
        } else if (key == "policy") {
            std::istringstream p(rest);
            std::string kind, arg;
            p >> kind >> arg;
            if (kind == "fixed-time")
                m.policy = policy::FixedTime{detail::parse_duration_ms(arg, where)};
            else if (kind == "fixed-spatial")
                m.policy = policy::FixedSpatial{parse_distance(arg)};
            else if (kind == "manual")
                m.policy = policy::Manual{};
            else if (kind == "proximity")
                proximity = policy::Proximity{{}, parse_distance(arg)};
            else
                throw Error(ErrorCode::InvalidArgument, where + ": unknown policy '" + kind + "'");
        } else if (key == "designated") {
            std::istringstream p(rest);
            std::string lat, lon, radius;
            if (!(p >> lat >> lon >> radius))
                throw Error(ErrorCode::InvalidArgument, where + ": expected <lat> <lon> <radius>");
            const PhysicalLocation centre = point(detail::read_number(lat, where), detail::read_number(lon, where));
            designated.push_back(Region{centre, CircularBounds{centre, parse_distance(radius)}});
        } else if (key == "event") {
            if (rest.empty())
                throw Error(ErrorCode::InvalidArgument, where + ": event needs a path");
            std::filesystem::path p(rest);
            m.events.push_back(p.is_absolute() ? p : base_dir / p);
        } else {
            throw Error(ErrorCode::InvalidArgument, where + ": unknown key '" + key + "'");
        }
    }
    if (proximity) {
        proximity->designated = std::move(designated);
        m.policy = std::move(*proximity);
    } else if (!designated.empty()) {
        throw Error(ErrorCode::InvalidArgument, "designated regions given without a proximity policy");
    }
    return m;
}

inline TrailManifest load_manifest(const std::filesystem::path& path) {
    return parse_manifest(detail::read_file(path), path.parent_path());
}

/// Builds the observed trail a manifest describes. Events whose ID differs
/// from the manifest subject are refused.
inline ObservedTrail load_observed_trail(const TrailManifest& m, const Gazetteer& gazetteer = {}) {
    std::optional<ObservedTrail> trail;
    if (m.subject)
        trail = ObservedTrail{*m.subject, {}};
    for (const auto& path : m.events) {
        const LocationEvent ev = parse_location_event(detail::read_file(path));
        if (!trail)
            trail = ObservedTrail{ev.id, {}};
        else if (!(ev.id == trail->subject))
            throw Error(ErrorCode::InvalidArgument, path.string() + ": event subject " + ev.id.to_form() +
                                                        " differs from " + trail->subject.to_form());
        for (const auto& obs : ev.observations)
            trail = record_observation(std::move(*trail), ObservedNode{obs.time_of_observation, obs.where, std::nullopt},
                                       m.policy, gazetteer);
    }
    if (!trail)
        throw Error(ErrorCode::EmptyInput, "manifest names no subject and no events");
    return std::move(*trail);
}

inline std::string format_policy(const RecordingPolicy& p) {
    struct Visitor {
        std::string operator()(const policy::FixedTime& t) const { return "fixed-time " + std::to_string(t.interval_ms) + "ms"; }
        std::string operator()(const policy::FixedSpatial& s) const {
            return "fixed-spatial " + wire_detail::format_floating(metres(s.min_distance)) + "m";
        }
        std::string operator()(const policy::Manual&) const { return "manual"; }
        std::string operator()(const policy::Proximity& x) const {
            return "proximity " + wire_detail::format_floating(metres(x.threshold)) + "m";
        }
    };
    return std::visit(Visitor{}, p);
}

/// Writes one locationEvent per node plus `trail.manifest` into `dir`.
/// Returns the manifest path.
inline std::filesystem::path export_observed_trail(const ObservedTrail& trail, const RecordingPolicy& policy,
                                                   const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorCode::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
    std::string manifest = "subject " + trail.subject.to_form() + "\npolicy " + format_policy(policy) + "\n";
    if (const auto* prox = std::get_if<policy::Proximity>(&policy))
        for (const auto& r : prox->designated) {
            const auto& c = detail::require_coordinate(r.distinguished_point, "designated region point");
            const auto* circle = std::get_if<CircularBounds>(&r.bounds);
            manifest += "designated " + wire_detail::format_floating(c.latitude.value()) + " " +
                        wire_detail::format_floating(c.longitude.value()) + " " +
                        wire_detail::format_floating(circle ? metres(circle->radius) : 0.0) + "m\n";
        }
    for (std::size_t i = 0; i < trail.nodes.size(); ++i) {
        std::ostringstream name;
        name << "node-" << std::setw(4) << std::setfill('0') << i + 1 << ".xml";
        const auto& n = trail.nodes[i];
        Observation obs;
        obs.time_of_observation = reference_instant(n.when);
        obs.where = n.where;
        const LocationEvent ev{trail.subject, {}, {std::move(obs)}};
        detail::write_file(dir / name.str(), serialize_location_event(ev));
        manifest += "event " + name.str() + "\n";
    }
    const auto path = dir / "trail.manifest";
    detail::write_file(path, manifest);
    return path;
}

/// Plain-text adjacency listing:
///
///   node <id> <lat> <lon> [info | info ...]
///   edge <from> <to> <mode|-> <median-seconds|->
///   order <id> <id> ...
inline std::string format_adjacency(const ArchetypalTrail& t) {
    std::string out;
    for (const auto& n : t.nodes) {
        const auto c = detail::point_of(n.where, Gazetteer{});
        out += "node " + std::to_string(n.id) + " " + wire_detail::format_floating(c.latitude.value()) + " " +
               wire_detail::format_floating(c.longitude.value());
        for (std::size_t i = 0; i < n.info.info.size(); ++i)
            out += (i == 0 ? " " : " | ") + n.info.info[i];
        out += "\n";
    }
    for (const auto& e : t.edges) {
        out += "edge " + std::to_string(e.from) + " " + std::to_string(e.to) + " " +
               (e.mode ? std::string(to_string(*e.mode)) : "-") + " " +
               (e.travel_seconds ? wire_detail::format_floating(*e.travel_seconds) : "-") + "\n";
    }
    out += "order";
    for (auto id : t.recommended_order)
        out += " " + std::to_string(id);
    out += "\n";
    return out;
}

}  // namespace gloss

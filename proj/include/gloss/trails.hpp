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

// Observed, archetypal and intentional trails.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "gloss/geo.hpp"
#include "gloss/model.hpp"
#include "gloss/temporal.hpp"

namespace gloss {

/// Exhaustive order and route searches refuse graphs above this size.
inline constexpr std::size_t kMaxSearchNodes = 12;

// --- Observed trails -------------------------------------------------------

struct ObservedNode {
    When when;
    Where where;
    std::optional<Information> info;

    friend bool operator==(const ObservedNode&, const ObservedNode&) = default;
};

struct ObservedTrail {
    Id subject;
    std::vector<ObservedNode> nodes;  // non-decreasing reference instants

    friend bool operator==(const ObservedTrail&, const ObservedTrail&) = default;
};

namespace policy {

struct FixedTime {
    std::int64_t interval_ms;

    friend bool operator==(const FixedTime&, const FixedTime&) = default;
};

struct FixedSpatial {
    Distance min_distance;

    friend bool operator==(const FixedSpatial&, const FixedSpatial&) = default;
};

struct Manual {
    friend bool operator==(const Manual&, const Manual&) = default;
};

struct Proximity {
    std::vector<Region> designated;
    Distance threshold;

    friend bool operator==(const Proximity&, const Proximity&) = default;
};

}  // namespace policy

using RecordingPolicy = std::variant<policy::FixedTime, policy::FixedSpatial, policy::Manual, policy::Proximity>;

namespace detail {

inline const LatLongCoordinate& resolved_point(const Where& w, const Gazetteer& gazetteer, Region& storage) {
    storage = resolve_region(w, gazetteer);
    return require_coordinate(storage.distinguished_point, "distinguished point");
}

inline LatLongCoordinate point_of(const Where& w, const Gazetteer& gazetteer) {
    Region r;
    return resolved_point(w, gazetteer, r);
}

}  // namespace detail

/// Whether `policy` keeps `candidate` given the last node kept so far.
inline bool policy_admits(const RecordingPolicy& policy, const ObservedNode* last, const ObservedNode& candidate,
                          const Gazetteer& gazetteer = {}) {
    struct Visitor {
        const ObservedNode* last;
        const ObservedNode& candidate;
        const Gazetteer& gazetteer;

        bool operator()(const policy::FixedTime& p) const {
            if (last == nullptr)
                return true;
            const auto dt = reference_instant(candidate.when).epoch_ms() - reference_instant(last->when).epoch_ms();
            return dt >= p.interval_ms;
        }
        bool operator()(const policy::FixedSpatial& p) const {
            const auto here = detail::point_of(candidate.where, gazetteer);
            if (last == nullptr)
                return true;
            return great_circle_metres(detail::point_of(last->where, gazetteer), here) >= metres(p.min_distance);
        }
        bool operator()(const policy::Manual&) const { return true; }
        bool operator()(const policy::Proximity& p) const {
            const auto here = detail::point_of(candidate.where, gazetteer);
            if (last == nullptr)
                return true;
            const double limit = metres(p.threshold);
            return std::any_of(p.designated.begin(), p.designated.end(), [&](const Region& r) {
                const auto& centre = detail::require_coordinate(r.distinguished_point, "designated region point");
                return great_circle_metres(centre, here) <= limit;
            });
        }
    };
    return std::visit(Visitor{last, candidate, gazetteer}, policy);
}

/// Returns `trail` with `candidate` appended when the policy keeps it. The
/// first observation is always kept.
inline ObservedTrail record_observation(ObservedTrail trail, ObservedNode candidate, const RecordingPolicy& policy,
                                        const Gazetteer& gazetteer = {}) {
    const ObservedNode* last = trail.nodes.empty() ? nullptr : &trail.nodes.back();
    if (last != nullptr && reference_instant(candidate.when) < reference_instant(last->when))
        throw Error(ErrorCode::OutOfOrderObservation,
                    "observation at " + format_datetime(reference_instant(candidate.when)) + " precedes last node at " +
                        format_datetime(reference_instant(last->when)));
    if (policy_admits(policy, last, candidate, gazetteer))
        trail.nodes.push_back(std::move(candidate));
    return trail;
}

// --- Archetypal trails -----------------------------------------------------

struct ArchetypalNode {
    std::size_t id;
    Where where;
    Information info;

    friend bool operator==(const ArchetypalNode&, const ArchetypalNode&) = default;
};

struct ArchetypalEdge {
    std::size_t from;
    std::size_t to;
    std::optional<ModeTransport> mode;
    std::optional<double> travel_seconds;  // median of observed transitions

    friend bool operator==(const ArchetypalEdge&, const ArchetypalEdge&) = default;
};

/// Directed graph of places. Node ids are indices into `nodes`.
struct ArchetypalTrail {
    std::vector<ArchetypalNode> nodes;
    std::vector<ArchetypalEdge> edges;
    std::vector<std::size_t> recommended_order;

    bool has_edge(std::size_t from, std::size_t to, std::optional<ModeTransport> mode = std::nullopt) const {
        return std::any_of(edges.begin(), edges.end(), [&](const ArchetypalEdge& e) {
            return e.from == from && e.to == to && (!mode || e.mode == mode);
        });
    }

    friend bool operator==(const ArchetypalTrail&, const ArchetypalTrail&) = default;
};

/// True when `order` visits every node once and each step follows an edge.
inline bool is_visit_order(const ArchetypalTrail& t, const std::vector<std::size_t>& order,
                           std::optional<ModeTransport> mode = std::nullopt) {
    if (order.size() != t.nodes.size())
        return false;
    std::vector<bool> seen(t.nodes.size(), false);
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i] >= seen.size() || seen[order[i]])
            return false;
        seen[order[i]] = true;
        if (i > 0 && !t.has_edge(order[i - 1], order[i], mode))
            return false;
    }
    return true;
}

namespace detail {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

inline LatLongCoordinate spherical_mean(const std::vector<LatLongCoordinate>& points) {
    double x = 0, y = 0, z = 0;
    for (const auto& p : points) {
        const double phi = to_radians(p.latitude.value());
        const double lambda = to_radians(p.longitude.value());
        x += std::cos(phi) * std::cos(lambda);
        y += std::cos(phi) * std::sin(lambda);
        z += std::sin(phi);
    }
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (norm < 1e-12)
        return points.front();
    const double lat = std::clamp(to_degrees(std::asin(std::clamp(z / norm, -1.0, 1.0))), -90.0, 90.0);
    const double lon = std::clamp(to_degrees(std::atan2(y, x)), -180.0, 180.0);
    return LatLongCoordinate(lat, lon);
}

inline void merge_unique(std::vector<std::string>& into, const std::vector<std::string>& from) {
    for (const auto& s : from)
        if (std::find(into.begin(), into.end(), s) == into.end())
            into.push_back(s);
}

inline double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

// Lexicographically smallest Hamiltonian path over edges matching `mode`.
// Distillation searches uncapped: its edges come from observed steps and
// stay sparse.
inline std::optional<std::vector<std::size_t>> search_visit_order(const ArchetypalTrail& t,
                                                                  std::optional<ModeTransport> mode,
                                                                  bool capped = true) {
    const std::size_t n = t.nodes.size();
    if (capped && n > kMaxSearchNodes)
        throw Error(ErrorCode::TooLarge, std::to_string(n) + " nodes exceeds the search limit of " +
                                             std::to_string(kMaxSearchNodes));
    if (n == 0)
        return std::vector<std::size_t>{};
    std::vector<std::vector<std::size_t>> next(n);
    for (const auto& e : t.edges)
        if (e.from < n && e.to < n && e.from != e.to && (!mode || e.mode == mode))
            next[e.from].push_back(e.to);
    for (auto& v : next) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    std::vector<std::size_t> path;
    std::vector<bool> used(n, false);
    const auto dfs = [&](auto&& self, std::size_t at) -> bool {
        path.push_back(at);
        used[at] = true;
        if (path.size() == n)
            return true;
        for (std::size_t to : next[at])
            if (!used[to] && self(self, to))
                return true;
        used[at] = false;
        path.pop_back();
        return false;
    };
    for (std::size_t start = 0; start < n; ++start)
        if (dfs(dfs, start))
            return path;
    return std::nullopt;
}

}  // namespace detail

/// Merges observed trails into one archetypal trail.
///  1. Observation points closer than `epsilon` (single linkage) collapse
///     into one node at their spherical mean; node ids follow first
///     appearance.
///  2. Each transition between different nodes yields an edge carrying the
///     median observed travel time.
///  3. The recommended order is the most frequent per-trail node sequence
///     that visits every node once, ties going to the trail observed first
///     and then to the smaller sequence. Failing that, the smallest visit
///     order over the edges.
inline ArchetypalTrail distill_archetypal(const std::vector<ObservedTrail>& trails, const Distance& epsilon,
                                          const Gazetteer& gazetteer = {}) {
    if (trails.empty() ||
        std::all_of(trails.begin(), trails.end(), [](const ObservedTrail& t) { return t.nodes.empty(); }))
        throw Error(ErrorCode::EmptyInput, "no observations to distill");
    const double eps = metres(epsilon);
    if (!(eps > 0.0))
        throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");

    struct Sample {
        std::size_t trail;
        LatLongCoordinate point;
        const ObservedNode* node;
    };
    std::vector<Sample> samples;
    for (std::size_t t = 0; t < trails.size(); ++t)
        for (const auto& n : trails[t].nodes)
            samples.push_back(Sample{t, detail::point_of(n.where, gazetteer), &n});

    detail::UnionFind uf(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i + 1; j < samples.size(); ++j)
            if (great_circle_metres(samples[i].point, samples[j].point) <= eps)
                uf.unite(i, j);

    std::map<std::size_t, std::size_t> root_to_node;
    std::vector<std::size_t> node_of(samples.size());
    std::vector<std::vector<LatLongCoordinate>> members;
    ArchetypalTrail out;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::size_t root = uf.find(i);
        auto [it, fresh] = root_to_node.try_emplace(root, members.size());
        if (fresh) {
            members.emplace_back();
            out.nodes.push_back(ArchetypalNode{it->second, Where{}, Information{}});
        }
        node_of[i] = it->second;
        members[it->second].push_back(samples[i].point);
        if (const auto& info = samples[i].node->info) {
            auto& merged = out.nodes[it->second].info;
            detail::merge_unique(merged.info, info->info);
            detail::merge_unique(merged.links, info->links);
        }
    }
    for (std::size_t k = 0; k < out.nodes.size(); ++k) {
        const auto c = detail::spherical_mean(members[k]);
        out.nodes[k].where = where_at(c.latitude.value(), c.longitude.value());
    }

    std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> transitions;
    std::map<std::vector<std::size_t>, std::pair<std::size_t, Time>> sequences;  // count, earliest start
    std::size_t s = 0;
    for (const auto& trail : trails) {
        std::vector<std::size_t> seq;
        for (std::size_t j = 0; j < trail.nodes.size(); ++j, ++s) {
            const std::size_t node = node_of[s];
            if (j > 0 && node_of[s - 1] != node) {
                const auto dt = reference_instant(trail.nodes[j].when).epoch_ms() -
                                reference_instant(trail.nodes[j - 1].when).epoch_ms();
                transitions[{node_of[s - 1], node}].push_back(static_cast<double>(dt) / 1000.0);
            }
            if (seq.empty() || seq.back() != node)
                seq.push_back(node);
        }
        if (trail.nodes.empty())
            continue;
        const Time start = reference_instant(trail.nodes.front().when);
        auto [it, fresh] = sequences.try_emplace(seq, 0, start);
        ++it->second.first;
        it->second.second = std::min(it->second.second, start);
    }
    for (const auto& [key, deltas] : transitions)
        out.edges.push_back(ArchetypalEdge{key.first, key.second, std::nullopt, detail::median(deltas)});

    const std::vector<std::size_t>* best = nullptr;
    std::pair<std::size_t, Time> best_rank{};
    for (const auto& [seq, rank] : sequences) {
        if (!is_visit_order(out, seq))
            continue;
        // std::map iterates sequences in ascending order, so a strict
        // comparison keeps the smaller one on a full tie.
        if (best == nullptr || rank.first > best_rank.first ||
            (rank.first == best_rank.first && rank.second < best_rank.second)) {
            best = &seq;
            best_rank = rank;
        }
    }
    if (best != nullptr) {
        out.recommended_order = *best;
    } else if (auto order = detail::search_visit_order(out, std::nullopt, false)) {
        out.recommended_order = std::move(*order);
    } else {
        throw Error(ErrorCode::NoOrderExists, "the distilled graph admits no order visiting every node once");
    }
    return out;
}

/// The stored order, or with `mode` the smallest order by node id that
/// visits every node once along edges labelled with that mode.
inline std::vector<std::size_t> recommended_order(const ArchetypalTrail& trail,
                                                  std::optional<ModeTransport> mode = std::nullopt) {
    if (!mode)
        return trail.recommended_order;
    auto order = detail::search_visit_order(trail, mode);
    if (!order)
        throw Error(ErrorCode::NoOrderExists,
                    "no visit order over " + std::string(to_string(*mode)) + " edges covers every node");
    return std::move(*order);
}

// --- Intentional trails ----------------------------------------------------

struct IntentionalNode {
    Where where;
    Information info;

    friend bool operator==(const IntentionalNode&, const IntentionalNode&) = default;
};

/// Themed, unordered set of places. Node identity is Where equality.
class IntentionalTrail {
public:
    explicit IntentionalTrail(std::string theme, std::vector<IntentionalNode> nodes = {}) : theme_(std::move(theme)) {
        for (auto& n : nodes)
            add(std::move(n));
    }

    void add(IntentionalNode node) {
        if (index_of(node.where))
            throw Error(ErrorCode::DuplicateNode, "node already present in trail '" + theme_ + "'");
        nodes_.push_back(std::move(node));
    }

    std::optional<std::size_t> index_of(const Where& w) const {
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i].where == w)
                return i;
        return std::nullopt;
    }

    const std::string& theme() const noexcept { return theme_; }
    const std::vector<IntentionalNode>& nodes() const noexcept { return nodes_; }

private:
    std::string theme_;
    std::vector<IntentionalNode> nodes_;
};

struct Path {
    Where from;
    Where to;
    std::optional<ModeTransport> mode;

    friend bool operator==(const Path&, const Path&) = default;
};

struct Route {
    std::vector<Path> paths;

    friend bool operator==(const Route&, const Route&) = default;
};

/// Each path starts where the previous one ended.
inline bool is_chained(const Route& r) {
    for (std::size_t i = 1; i < r.paths.size(); ++i)
        if (!(r.paths[i - 1].to == r.paths[i].from))
            return false;
    return true;
}

/// Every simple route from `start` to `end` over the directed paths in
/// `connectivity`, shortest first, then by the node indices visited, then
/// by the indices of the paths taken.
inline std::vector<Route> routes_through(const IntentionalTrail& trail, const Where& start, const Where& end,
                                         const std::vector<Path>& connectivity) {
    const auto s = trail.index_of(start);
    const auto e = trail.index_of(end);
    if (!s || !e)
        throw Error(ErrorCode::UnknownEndpoint, std::string(!s ? "start" : "end") + " is not a node of trail '" +
                                                    trail.theme() + "'");
    const std::size_t n = trail.nodes().size();
    if (n > kMaxSearchNodes)
        throw Error(ErrorCode::TooLarge, std::to_string(n) + " nodes exceeds the search limit of " +
                                             std::to_string(kMaxSearchNodes));
    if (*s == *e)
        return {Route{}};

    struct Arc {
        std::size_t to;
        std::size_t path;
    };
    std::vector<std::vector<Arc>> out(n);
    for (std::size_t i = 0; i < connectivity.size(); ++i) {
        const auto a = trail.index_of(connectivity[i].from);
        const auto b = trail.index_of(connectivity[i].to);
        if (!a || !b)
            throw Error(ErrorCode::UnknownEndpoint, "connectivity path " + std::to_string(i) +
                                                        " references a place outside the trail");
        out[*a].push_back(Arc{*b, i});
    }

    struct Found {
        std::vector<std::size_t> nodes;
        std::vector<std::size_t> paths;
    };
    std::vector<Found> found;
    std::vector<std::size_t> nodes{*s};
    std::vector<std::size_t> taken;
    std::vector<bool> visited(n, false);
    visited[*s] = true;
    const auto dfs = [&](auto&& self, std::size_t at) -> void {
        if (at == *e) {
            found.push_back(Found{nodes, taken});
            return;
        }
        for (const Arc& arc : out[at]) {
            if (visited[arc.to])
                continue;
            visited[arc.to] = true;
            nodes.push_back(arc.to);
            taken.push_back(arc.path);
            self(self, arc.to);
            taken.pop_back();
            nodes.pop_back();
            visited[arc.to] = false;
        }
    };
    dfs(dfs, *s);

    std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
        if (a.paths.size() != b.paths.size())
            return a.paths.size() < b.paths.size();
        if (a.nodes != b.nodes)
            return a.nodes < b.nodes;
        return a.paths < b.paths;
    });
    std::vector<Route> routes;
    routes.reserve(found.size());
    for (const auto& f : found) {
        Route r;
        for (std::size_t p : f.paths)
            r.paths.push_back(connectivity[p]);
        routes.push_back(std::move(r));
    }
    return routes;
}

}  // namespace gloss

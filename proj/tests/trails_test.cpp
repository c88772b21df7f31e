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

#include <gtest/gtest.h>

#include <filesystem>

#include "oracles.hpp"
#include "support.hpp"

namespace gloss {
namespace {

const Id kWalker = make_id(IdKind::Email, "walker@example.org");

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an exception";
    return ErrorCode::IoFailure;
}

ObservedNode at(std::int64_t ms, double lat, double lon) { return ObservedNode{Time(ms), where_at(lat, lon), std::nullopt}; }

TEST(Recording, FixedTimeKeepsIntervals) {
    ObservedTrail t{kWalker, {}};
    const RecordingPolicy p = policy::FixedTime{60'000};
    for (std::int64_t s : {0, 30, 59, 60, 61, 119, 120, 200})
        t = record_observation(t, at(s * 1000, 0.0, 0.0), p);
    ASSERT_EQ(t.nodes.size(), 4u);
    EXPECT_EQ(std::get<Time>(t.nodes[1].when), Time(60'000));
    EXPECT_EQ(std::get<Time>(t.nodes[2].when), Time(120'000));
    EXPECT_EQ(std::get<Time>(t.nodes[3].when), Time(200'000));
}

TEST(Recording, FixedSpatialKeepsDistance) {
    ObservedTrail t{kWalker, {}};
    const RecordingPolicy p = policy::FixedSpatial{Distance(100.0)};
    double lon = 0.0;
    for (int i = 0; i < 20; ++i, lon += 0.0003)  // about 33 m per step at the equator
        t = record_observation(t, at(i * 1000, 0.0, lon), p);
    ASSERT_GE(t.nodes.size(), 2u);
    for (std::size_t i = 1; i < t.nodes.size(); ++i) {
        const auto& a = std::get<PhysicalLocation>(t.nodes[i - 1].where.payload).coordinate;
        const auto& b = std::get<PhysicalLocation>(t.nodes[i].where.payload).coordinate;
        EXPECT_GE(oracle::vector_metres(a->latitude.value(), a->longitude.value(), b->latitude.value(),
                                        b->longitude.value()),
                  100.0 - 1e-6);
    }
    EXPECT_EQ(code_of([&] { record_observation(t, ObservedNode{Time(99'000), Where{}, std::nullopt}, p); }),
              ErrorCode::EmptyWhere);
}

TEST(Recording, ProximityAndManual) {
    const Region gate{point(0.0, 0.0), CircularBounds{point(0.0, 0.0), Distance(10.0)}};
    const RecordingPolicy p = policy::Proximity{{gate}, Distance(50.0)};
    ObservedTrail t{kWalker, {}};
    t = record_observation(t, at(0, 1.0, 1.0), p);        // first is always kept
    t = record_observation(t, at(1000, 1.0, 1.0), p);     // far from the gate
    t = record_observation(t, at(2000, 0.0, 0.0003), p);  // ~33 m away
    t = record_observation(t, at(3000, 0.0, 0.0009), p);  // ~100 m away
    EXPECT_EQ(t.nodes.size(), 2u);

    ObservedTrail m{kWalker, {}};
    for (int i = 0; i < 5; ++i)
        m = record_observation(m, at(i, 0.0, 0.0), policy::Manual{});
    EXPECT_EQ(m.nodes.size(), 5u);
}

TEST(Recording, MonotoneOrError) {
    testing::Generator gen(40);
    for (int round = 0; round < 200; ++round) {
        ObservedTrail t{kWalker, {}};
        std::int64_t last = INT64_MIN;
        for (int i = 0; i < 20; ++i) {
            const std::int64_t ms = gen.integer(0, 100000);
            if (!t.nodes.empty() && ms < reference_instant(t.nodes.back().when).epoch_ms()) {
                EXPECT_EQ(code_of([&] { record_observation(t, at(ms, 0, 0), policy::Manual{}); }),
                          ErrorCode::OutOfOrderObservation);
                continue;
            }
            t = record_observation(t, at(ms, 0, 0), policy::Manual{});
            const std::int64_t now = reference_instant(t.nodes.back().when).epoch_ms();
            EXPECT_GE(now, last);
            last = now;
        }
    }
    // A symbolic time orders by the earliest period start.
    ObservedTrail t{kWalker, {}};
    const TemporalRegion lunch({Period(Time(5000), Time(9000))});
    t = record_observation(t, ObservedNode{SymbolicTime{"lunch", lunch}, where_at(0, 0), std::nullopt}, policy::Manual{});
    EXPECT_EQ(code_of([&] { record_observation(t, at(4999, 0, 0), policy::Manual{}); }), ErrorCode::OutOfOrderObservation);
    EXPECT_NO_THROW(record_observation(t, at(5000, 0, 0), policy::Manual{}));
}

void expect_matches_oracle(const std::vector<std::vector<oracle::Fix>>& fixes, double eps) {
    std::vector<ObservedTrail> trails;
    for (const auto& f : fixes)
        trails.push_back(testing::to_observed(f, kWalker));
    const auto want = oracle::distill(fixes, eps);
    ArchetypalTrail got;
    try {
        got = distill_archetypal(trails, Distance(eps));
    } catch (const Error& e) {
        ASSERT_EQ(e.code(), ErrorCode::NoOrderExists);
        EXPECT_TRUE(want.order.empty());
        return;
    }
    ASSERT_EQ(got.nodes.size(), want.centre.size());
    for (std::size_t k = 0; k < got.nodes.size(); ++k) {
        EXPECT_EQ(got.nodes[k].id, k);
        const auto& c = std::get<PhysicalLocation>(got.nodes[k].where.payload).coordinate;
        EXPECT_LT(oracle::vector_metres(c->latitude.value(), c->longitude.value(), want.centre[k].first,
                                        want.centre[k].second),
                  1e-6);
    }
    ASSERT_EQ(got.edges.size(), want.median_secs.size());
    for (const auto& e : got.edges) {
        const auto it = want.median_secs.find({e.from, e.to});
        ASSERT_NE(it, want.median_secs.end());
        EXPECT_EQ(e.travel_seconds, it->second);
        EXPECT_FALSE(e.mode);
        EXPECT_LT(e.from, got.nodes.size());
        EXPECT_LT(e.to, got.nodes.size());
    }
    EXPECT_EQ(got.recommended_order, want.order);
    EXPECT_TRUE(is_visit_order(got, got.recommended_order));
}

TEST(Distill, MatchesOracleOnSmallFixtures) {
    testing::Generator gen(41);
    for (int i = 0; i < 400; ++i) {
        const double eps = gen.real(20.0, 80.0);
        expect_matches_oracle(testing::trail_fixture(gen, 20, eps), eps);
    }
}

TEST(Distill, ClustersAcrossAntimeridian) {
    const std::vector<std::vector<oracle::Fix>> fixes = {
        {{10.0, 179.99995, 0}, {10.0, -179.99995, 1000}, {10.0, 179.99990, 2000}}};
    expect_matches_oracle(fixes, 50.0);
    const auto got = distill_archetypal({testing::to_observed(fixes[0], kWalker)}, Distance(50.0));
    ASSERT_EQ(got.nodes.size(), 1u);
    const auto& c = std::get<PhysicalLocation>(got.nodes[0].where.payload).coordinate;
    EXPECT_GT(std::abs(c->longitude.value()), 179.9);
}

TEST(Distill, Deterministic) {
    testing::Generator gen(42);
    for (int i = 0; i < 50; ++i) {
        const double eps = 50.0;
        std::vector<ObservedTrail> trails;
        for (const auto& f : testing::trail_fixture(gen, 20, eps))
            trails.push_back(testing::to_observed(f, kWalker));
        try {
            const auto a = distill_archetypal(trails, Distance(eps));
            EXPECT_EQ(distill_archetypal(trails, Distance(eps)), a);
            EXPECT_EQ(format_adjacency(distill_archetypal(trails, Distance(eps))), format_adjacency(a));
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::NoOrderExists);
        }
    }
}

TEST(Distill, OrderFollowsMostFrequentTour) {
    // Two walkers go A B C, one goes C B A.
    const auto walk = [](std::vector<std::pair<double, double>> pts, std::int64_t t0) {
        std::vector<oracle::Fix> f;
        for (const auto& [la, lo] : pts)
            f.push_back({la, lo, t0 += 60'000});
        return f;
    };
    const std::pair<double, double> A{56.3398, -2.7967}, B{56.3410, -2.7930}, C{56.3420, -2.7900};
    std::vector<ObservedTrail> trails = {
        testing::to_observed(walk({C, B, A}, 0), kWalker),
        testing::to_observed(walk({A, B, C}, 1'000'000), kWalker),
        testing::to_observed(walk({A, B, C}, 2'000'000), kWalker),
    };
    const auto t = distill_archetypal(trails, Distance(30.0));
    ASSERT_EQ(t.nodes.size(), 3u);
    // Nodes are numbered by first appearance: C=0, B=1, A=2.
    EXPECT_EQ(t.recommended_order, (std::vector<std::size_t>{2, 1, 0}));
    EXPECT_EQ(t.edges.size(), 4u);
    for (const auto& e : t.edges)
        EXPECT_EQ(e.travel_seconds, 60.0);
    EXPECT_EQ(recommended_order(t), t.recommended_order);
    EXPECT_EQ(code_of([&] { recommended_order(t, ModeTransport::Car); }), ErrorCode::NoOrderExists);
}

TEST(Distill, Errors) {
    EXPECT_EQ(code_of([] { distill_archetypal({}, Distance(10.0)); }), ErrorCode::EmptyInput);
    EXPECT_EQ(code_of([] { distill_archetypal({ObservedTrail{kWalker, {}}}, Distance(10.0)); }), ErrorCode::EmptyInput);
    const ObservedTrail one{kWalker, {at(0, 0, 0)}};
    EXPECT_EQ(code_of([&] { distill_archetypal({one}, Distance(0.0)); }), ErrorCode::InvalidArgument);
    // A fan with no tour: 0->1, 0->2.
    const ObservedTrail a{kWalker, {at(0, 0, 0), at(1000, 0, 1)}};
    const ObservedTrail b{kWalker, {at(0, 0, 0), at(1000, 1, 0)}};
    EXPECT_EQ(code_of([&] { distill_archetypal({a, b}, Distance(10.0)); }), ErrorCode::NoOrderExists);

    ArchetypalTrail big;
    for (std::size_t i = 0; i < kMaxSearchNodes + 1; ++i)
        big.nodes.push_back(ArchetypalNode{i, where_at(0, static_cast<double>(i)), {}});
    EXPECT_EQ(code_of([&] { recommended_order(big, ModeTransport::Foot); }), ErrorCode::TooLarge);
}

TEST(Distill, InfoMergedPerNode) {
    ObservedTrail a{kWalker, {at(0, 0, 0), at(1000, 0, 1)}};
    a.nodes[0].info = Information{{"cafe"}, {}};
    ObservedTrail b{kWalker, {at(0, 0, 0), at(1000, 0, 1)}};
    b.nodes[0].info = Information{{"cafe", "wifi"}, {"http://example.org"}};
    const auto t = distill_archetypal({a, b}, Distance(10.0));
    EXPECT_EQ(t.nodes[0].info.info, (std::vector<std::string>{"cafe", "wifi"}));
    EXPECT_EQ(t.nodes[0].info.links.size(), 1u);
    EXPECT_TRUE(t.nodes[1].info.empty());
}

IntentionalTrail trail_of(std::size_t n) {
    IntentionalTrail t("tour");
    for (std::size_t i = 0; i < n; ++i)
        t.add(IntentionalNode{where_at(0.0, static_cast<double>(i)), {}});
    return t;
}

TEST(Routes, MatchExhaustiveOracle) {
    testing::Generator gen(43);
    const ModeTransport modes[] = {ModeTransport::Foot, ModeTransport::Car, ModeTransport::Bicycle};
    for (int round = 0; round < 500; ++round) {
        const std::size_t n = static_cast<std::size_t>(gen.integer(1, 5));
        const auto trail = trail_of(n);
        std::vector<std::pair<std::size_t, std::size_t>> arcs;
        std::vector<Path> paths;
        for (int k = gen.integer(0, 12); k > 0; --k) {
            const auto a = static_cast<std::size_t>(gen.integer(0, static_cast<int>(n) - 1));
            const auto b = static_cast<std::size_t>(gen.integer(0, static_cast<int>(n) - 1));
            arcs.emplace_back(a, b);
            paths.push_back(Path{trail.nodes()[a].where, trail.nodes()[b].where, modes[arcs.size() % 3]});
        }
        const auto s = static_cast<std::size_t>(gen.integer(0, static_cast<int>(n) - 1));
        const auto e = static_cast<std::size_t>(gen.integer(0, static_cast<int>(n) - 1));
        auto want = oracle::simple_routes(n, arcs, s, e);
        const auto node_seq = [&](const std::vector<std::size_t>& r) {
            std::vector<std::size_t> seq{s};
            for (auto i : r)
                seq.push_back(arcs[i].second);
            return seq;
        };
        std::sort(want.begin(), want.end(), [&](const auto& x, const auto& y) {
            if (x.size() != y.size())
                return x.size() < y.size();
            if (node_seq(x) != node_seq(y))
                return node_seq(x) < node_seq(y);
            return x < y;
        });
        const auto got = routes_through(trail, trail.nodes()[s].where, trail.nodes()[e].where, paths);
        ASSERT_EQ(got.size(), want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            EXPECT_TRUE(is_chained(got[i]));
            ASSERT_EQ(got[i].paths.size(), want[i].size());
            for (std::size_t j = 0; j < want[i].size(); ++j)
                EXPECT_EQ(got[i].paths[j], paths[want[i][j]]);
        }
    }
}

TEST(Routes, Errors) {
    const auto t = trail_of(3);
    EXPECT_EQ(code_of([&] { routes_through(t, where_at(9, 9), t.nodes()[0].where, {}); }), ErrorCode::UnknownEndpoint);
    EXPECT_EQ(code_of([&] {
                  routes_through(t, t.nodes()[0].where, t.nodes()[1].where, {Path{where_at(9, 9), t.nodes()[1].where, {}}});
              }),
              ErrorCode::UnknownEndpoint);
    EXPECT_EQ(code_of([] {
                  const auto big = trail_of(kMaxSearchNodes + 1);
                  routes_through(big, big.nodes()[0].where, big.nodes()[1].where, {});
              }),
              ErrorCode::TooLarge);
    EXPECT_EQ(routes_through(t, t.nodes()[1].where, t.nodes()[1].where, {}), std::vector<Route>{Route{}});
    EXPECT_TRUE(routes_through(t, t.nodes()[0].where, t.nodes()[2].where, {}).empty());
    IntentionalTrail dup("dup");
    dup.add(IntentionalNode{where_at(1, 1), {}});
    EXPECT_EQ(code_of([&] { dup.add(IntentionalNode{where_at(1, 1), Information{{"again"}, {}}}); }),
              ErrorCode::DuplicateNode);
}

TEST(TrailFiles, ExportThenLoad) {
    const auto dir = std::filesystem::temp_directory_path() / ("gloss-trail-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    ObservedTrail t{kWalker, {at(0, 56.34, -2.79), at(60'000, 56.341, -2.79), at(120'000, 56.342, -2.79)}};
    const Region gate{point(56.34, -2.79), CircularBounds{point(56.34, -2.79), Distance(200.0)}};
    for (const RecordingPolicy& p : std::vector<RecordingPolicy>{policy::Manual{}, policy::FixedTime{60'000},
                                                                 policy::FixedSpatial{Distance(100.0)},
                                                                 policy::Proximity{{gate}, Distance(500.0)}}) {
        const auto manifest = export_observed_trail(t, p, dir);
        const auto m = load_manifest(manifest);
        EXPECT_EQ(m.subject, kWalker);
        EXPECT_EQ(m.policy, p) << format_policy(p);
        EXPECT_EQ(m.events.size(), 3u);
        EXPECT_EQ(load_observed_trail(m), t);
    }
    std::filesystem::remove_all(dir);
}

TEST(TrailFiles, ManifestGrammar) {
    const auto m = parse_manifest("# walk\nsubject phone:+44 1334\npolicy fixed-time 1.5min\n\nevent a.xml # first\n"
                                  "event /abs/b.xml\n",
                                  "/base");
    EXPECT_EQ(m.subject, make_id(IdKind::Phone, "+44 1334"));
    EXPECT_EQ(std::get<policy::FixedTime>(m.policy).interval_ms, 90'000);
    EXPECT_EQ(m.events, (std::vector<std::filesystem::path>{"/base/a.xml", "/abs/b.xml"}));
    EXPECT_EQ(std::get<policy::FixedSpatial>(parse_manifest("policy fixed-spatial 0.1km").policy).min_distance,
              Distance(0.1, DistanceUnit::Kilometres));
    for (const char* bad : {"policy teleport", "colour blue", "designated 1 2 3m", "policy fixed-time 5weeks", "event"})
        EXPECT_THROW(parse_manifest(bad), Error) << bad;
    EXPECT_EQ(code_of([] { load_manifest("/nonexistent/trail.manifest"); }), ErrorCode::IoFailure);
    EXPECT_EQ(code_of([] { load_observed_trail(TrailManifest{}); }), ErrorCode::EmptyInput);
}

TEST(TrailFiles, AdjacencyListing) {
    const ObservedTrail a{kWalker, {at(0, 0, 0), at(90'000, 0, 1)}};
    auto t = distill_archetypal({a}, Distance(10.0));
    t.nodes[1].info.info = {"pier", "ice cream"};
    EXPECT_EQ(format_adjacency(t), "node 0 0 0\nnode 1 0 1 pier | ice cream\nedge 0 1 - 90\norder 0 1\n");
}

}  // namespace
}  // namespace gloss

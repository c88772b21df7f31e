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

#include "support.hpp"

namespace gloss {
namespace {

Id bits(const std::string& s) { return make_id(IdKind::BitString, s); }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an exception";
    return ErrorCode::IoFailure;
}

const InformationContent kMap{bits("map"), "image/map", {}};
const InformationContent kText{bits("note"), "text/plain", {}};

TEST(Resources, Construction) {
    EXPECT_EQ(code_of([] { InteractionResource(bits("x"), {}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { RawContent(kMap, {}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { Ordinal(0); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { Ordinal(6); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(Ordinal(3).score(), 3);

    InteractionResource table(bits("table"), {Role::Surface});
    table.surface_attrs = SurfaceAttrs{"round", "1m", "40kg", "oak", "brown", "smooth", SocialUse::Public};
    table.surface_props = SurfaceProps{};
    table.surface_props->writability = Writability::Erasable;
    table.sub_surfaces.push_back(SubSurface{"top", SubSurfaceKind::Action});
    EXPECT_TRUE(table.has_role(Role::Surface));
    EXPECT_FALSE(table.has_role(Role::Instrument));
    InteractionResource pen(bits("pen"), {Role::Instrument});
    pen.instrument_props = InstrumentProps{Ordinal(4), Ordinal(5), std::nullopt};
    EXPECT_EQ(pen.instrument_props->stability, Ordinal(5));
    const RawContent raw(kText, {bits("table")});
    EXPECT_EQ(raw.sources().size(), 1u);
}

TEST(Coupling, RulesAndErrors) {
    const InteractionResource board(bits("board"), {Role::Surface});
    const InteractionResource pda(bits("pda"), {Role::Surface, Role::Instrument});
    const InteractionResource maps_only(bits("kiosk"), {Role::Surface}, Specific{"image/map"});
    CouplingState s;
    s = couple(s, board, kMap);
    EXPECT_TRUE(s.coupled(bits("board"), kMap.id));
    EXPECT_EQ(code_of([&] { couple(s, pda, kMap); }), ErrorCode::AmbiguousRole);
    EXPECT_EQ(code_of([&] { couple(s, board, kMap, Role::Instrument); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([&] { couple(s, maps_only, kText); }), ErrorCode::SpecificityMismatch);
    EXPECT_EQ(code_of([&] { couple(s, Actuator{bits("motor"), Specific{"audio"}}, kMap); }),
              ErrorCode::SpecificityMismatch);
    EXPECT_EQ(code_of([&] { couple_surfaces(s, bits("a"), bits("a")); }), ErrorCode::InvalidArgument);
    s = couple(s, pda, kMap, Role::Instrument);
    s = couple(s, maps_only, kMap);
    EXPECT_EQ(coupling_degree(s, kMap.id), (CouplingDegree{0, 0, 1, 2}));
}

TEST(Coupling, IdempotentPairAndPureValue) {
    const InteractionResource board(bits("board"), {Role::Surface});
    const CouplingState empty;
    const CouplingState once = couple(empty, board, kMap);
    EXPECT_EQ(couple(once, board, kMap), once);
    EXPECT_EQ(decouple(once, board.id(), kMap.id), empty);
    EXPECT_EQ(decouple(empty, board.id(), kMap.id), empty);
    EXPECT_TRUE(empty.content_couplings().empty());  // untouched by the calls above
    const auto joined = couple_surfaces(empty, bits("b"), bits("a"));
    EXPECT_TRUE(joined.surfaces_coupled(bits("a"), bits("b")));
    EXPECT_EQ(joined.surface_origin(bits("a"), bits("b")), CouplingOrigin::Manual);
    EXPECT_EQ(decouple_surfaces(joined, bits("a"), bits("b")), empty);
}

TEST(Coupling, DegreeEqualsFilterCount) {
    testing::Generator gen(60);
    std::vector<InformationContent> contents;
    for (int i = 0; i < 4; ++i)
        contents.push_back(InformationContent{bits("c" + std::to_string(i)), "any", {}});
    for (int round = 0; round < 300; ++round) {
        CouplingState s;
        for (int k = gen.integer(0, 40); k > 0; --k) {
            const Id entity = bits("e" + std::to_string(gen.integer(0, 9)));
            const auto& c = contents[static_cast<std::size_t>(gen.integer(0, 3))];
            switch (gen.integer(0, 4)) {
            case 0: s = couple(s, Actuator{entity}, c); break;
            case 1: s = couple(s, Sensor{entity}, c); break;
            case 2: s = couple(s, InteractionResource(entity, {Role::Instrument}), c); break;
            case 3: s = couple(s, InteractionResource(entity, {Role::Surface}), c); break;
            default: s = decouple(s, entity, c.id); break;
            }
        }
        for (const auto& c : contents) {
            std::size_t counts[4] = {0, 0, 0, 0};
            for (const auto& [key, cls] : s.content_couplings())
                if (key.second == c.id)
                    ++counts[static_cast<int>(cls)];
            const auto d = coupling_degree(s, c.id);
            EXPECT_EQ(d.actuators, counts[0]);
            EXPECT_EQ(d.sensors, counts[1]);
            EXPECT_EQ(d.instruments, counts[2]);
            EXPECT_EQ(d.surfaces, counts[3]);
            EXPECT_EQ(d.total(), counts[0] + counts[1] + counts[2] + counts[3]);
            EXPECT_EQ(is_time_multiplexed(s, c.id), counts[2] <= 1);
        }
    }
}

TEST(Proximity, FixpointAndManualCouplingsSurvive) {
    testing::Generator gen(61);
    for (int round = 0; round < 200; ++round) {
        std::vector<InteractionResource> resources;
        Topology topo;
        for (int i = 0; i < 8; ++i) {
            const Id id = bits("s" + std::to_string(i));
            resources.emplace_back(id, i % 3 == 2 ? std::set<Role>{Role::Instrument} : std::set<Role>{Role::Surface});
            if (gen.coin(0.8))
                topo = topo.place(id, Placement{where_at(gen.real(56.3400, 56.3410), gen.real(-2.7960, -2.7950)),
                                                std::nullopt});
        }
        CouplingState s = couple_surfaces(CouplingState{}, bits("s0"), bits("s7"));
        const Distance threshold(gen.real(5.0, 60.0));
        const CouplingState once = proximity_coupling(s, topo, resources, threshold);
        EXPECT_EQ(proximity_coupling(once, topo, resources, threshold), once);
        EXPECT_EQ(once.surface_origin(bits("s0"), bits("s7")), CouplingOrigin::Manual);
        for (const auto& [key, origin] : once.surface_couplings()) {
            if (origin != CouplingOrigin::Proximity)
                continue;
            const auto* a = topo.find(key.first);
            const auto* b = topo.find(key.second);
            ASSERT_TRUE(a && b);
            EXPECT_LE(metres(distance_between_wheres(a->where, b->where)), metres(threshold));
        }
        // Move everything apart: proximity couplings go, the manual one stays.
        Topology apart;
        int k = 0;
        for (const auto& [id, p] : topo.placements())
            apart = apart.place(id, Placement{where_at(0.0, 10.0 * k++), p.orientation});
        const CouplingState after = proximity_coupling(once, apart, resources, threshold);
        for (const auto& [key, origin] : after.surface_couplings())
            EXPECT_EQ(origin, CouplingOrigin::Manual);
        EXPECT_TRUE(after.surfaces_coupled(bits("s0"), bits("s7")));
    }
}

TEST(Compatibility, PainterMetaphorIsComplementary) {
    // A hand-held palette picks colours; the wall display is the canvas.
    const Id palette = bits("pda-palette"), canvas = bits("wall-canvas");
    const Declarations d{{palette, {{"choose colour", "choose brush"}, std::nullopt}}, {canvas, {{"paint"}, std::nullopt}}};
    EXPECT_EQ(classify_compatibility(palette, canvas, d), Compatibility::Complementary);
    EXPECT_EQ(classify_compatibility(canvas, palette, d), Compatibility::Complementary);
}

TEST(Compatibility, MirroredSmartBoardIsRedundant) {
    const Id local = bits("smartboard-local"), remote = bits("smartboard-remote");
    const InformationContent sketch{bits("sketch"), "image/ink", {}};
    CouplingState s;
    s = couple(s, InteractionResource(local, {Role::Surface}), sketch);
    s = couple(s, InteractionResource(remote, {Role::Surface}), sketch);
    const Declarations d{{local, {{"draw", "present"}, std::nullopt}}, {remote, {{"draw", "review"}, std::nullopt}}};
    EXPECT_EQ(classify_compatibility(local, remote, d, s), Compatibility::Redundant);
    EXPECT_EQ(classify_compatibility(remote, local, d, s), Compatibility::Redundant);
    // Without the shared content the boards merely overlap in purpose.
    EXPECT_EQ(classify_compatibility(local, remote, d), Compatibility::Incompatible);
}

TEST(Compatibility, WebViaThreeDevicesIsEquivalent) {
    const Id pda = bits("pda"), phone = bits("phone"), workstation = bits("workstation");
    const Declarations d{{pda, {{"browse web"}, std::nullopt}},
                         {phone, {{"browse web"}, std::nullopt}},
                         {workstation, {{"browse web"}, std::nullopt}}};
    for (const auto& a : {pda, phone, workstation})
        for (const auto& b : {pda, phone, workstation})
            if (!(a == b)) {
                EXPECT_EQ(classify_compatibility(a, b, d), Compatibility::Equivalent);
            }
}

TEST(Compatibility, AssignedWinsAndSymmetry) {
    const Id a = bits("a"), b = bits("b");
    Declarations d{{a, {{"x"}, "presenter"}}, {b, {{"x"}, std::nullopt}}};
    EXPECT_EQ(classify_compatibility(a, b, d), Compatibility::Assigned);
    d[b].assigned_role = "presenter";
    EXPECT_EQ(classify_compatibility(a, b, d), Compatibility::Equivalent);
    EXPECT_EQ(classify_compatibility(a, bits("unknown"), d), Compatibility::Assigned);
    EXPECT_EQ(classify_compatibility(bits("p"), bits("q"), {}), Compatibility::Incompatible);

    testing::Generator gen(62);
    const std::vector<std::string> tasks = {"t1", "t2", "t3"};
    for (int round = 0; round < 2000; ++round) {
        Declarations dd;
        CouplingState s;
        for (const Id& id : {a, b}) {
            SurfaceDeclaration decl;
            for (const auto& t : tasks)
                if (gen.coin())
                    decl.tasks.insert(t);
            if (gen.coin(0.1))
                decl.assigned_role = gen.coin() ? "r1" : "r2";
            dd[id] = decl;
            if (gen.coin())
                s = couple(s, InteractionResource(id, {Role::Surface}), kMap);
        }
        const auto ab = classify_compatibility(a, b, dd, s);
        const auto ba = classify_compatibility(b, a, dd, s);
        if (ab == Compatibility::Equivalent || ab == Compatibility::Redundant || ab == Compatibility::Complementary) {
            EXPECT_EQ(ab, ba) << to_string(ab);
        }
    }
}

}  // namespace
}  // namespace gloss

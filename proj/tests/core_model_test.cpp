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

#include <cmath>
#include <limits>
#include <random>

#include "support.hpp"

namespace gloss {
namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an exception";
    return ErrorCode::IoFailure;
}

TEST(ConstrainedScalar, IdentityOverWholeInterval) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> lat(-90.0, 90.0), lon(-180.0, 180.0), brg(0.0, 360.0);
    for (int i = 0; i < 20000; ++i) {
        const double a = lat(rng), b = lon(rng), c = brg(rng);
        EXPECT_EQ(Latitude(a).value(), a);
        EXPECT_EQ(Longitude(b).value(), b);
        EXPECT_EQ(Bearing(c).value(), c);
    }
    for (double edge : {-90.0, 90.0, -0.0})
        EXPECT_EQ(Latitude(edge).value(), edge);
    EXPECT_EQ(Longitude(-180.0).value(), -180.0);
    EXPECT_EQ(Bearing(360.0).value(), 360.0);
    for (int n = 0; n <= 12; ++n)
        EXPECT_EQ(SatCount(n).value(), n);
}

TEST(ConstrainedScalar, RejectsWithFacet) {
    try {
        Latitude(90.000001);
        FAIL();
    } catch (const OutOfRangeError& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
        EXPECT_EQ(e.kind(), ScalarKind::Latitude);
        EXPECT_EQ(e.facet(), Facet::MaxInclusive);
        EXPECT_EQ(e.value(), 90.000001);
    }
    try {
        Longitude(-180.5);
        FAIL();
    } catch (const OutOfRangeError& e) {
        EXPECT_EQ(e.facet(), Facet::MinInclusive);
    }
    EXPECT_EQ(code_of([] { Bearing(-0.1); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { Latitude(std::nan("")); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { Longitude(std::numeric_limits<double>::infinity()); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { SatCount(13); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([] { SatCount(2.5); }), ErrorCode::NotInteger);
    EXPECT_EQ(code_of([] { NonNegativeDouble(-1e-300); }), ErrorCode::OutOfRange);
}

TEST(ConstrainedScalar, ConstructorAgreesWithWireValidator) {
    const std::string base = testing::corpus("example2.xml");
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> wide(-400.0, 400.0);
    for (int i = 0; i < 300; ++i) {
        const double v = i < 6 ? std::array{-90.0, 90.0, -180.0, 180.0, 0.0, 360.0}[static_cast<std::size_t>(i)]
                               : std::round(wide(rng) * 1000.0) / 1000.0;
        const std::string lexical = wire_detail::format_floating(v);
        const auto check = [&](const char* tag, auto make) {
            const std::string from = std::string("<") + tag + ">";
            const auto open = base.find(from);
            const auto close = base.find("</", open);
            std::string doc = base;
            doc.replace(open + from.size(), close - open - from.size(), lexical);
            bool constructed = true;
            try {
                make(v);
            } catch (const OutOfRangeError&) {
                constructed = false;
            }
            EXPECT_EQ(validate_document(doc).ok(), constructed) << tag << " " << lexical;
        };
        check("latitude", [](double x) { Latitude{x}; });
        check("longitude", [](double x) { Longitude{x}; });
        check("course", [](double x) { Bearing{x}; });
    }
}

TEST(Identity, PatternsAndForms) {
    EXPECT_NO_THROW(make_id(IdKind::Phone, "+44 7941 615809"));
    EXPECT_NO_THROW(make_id(IdKind::Phone, "+"));
    EXPECT_EQ(code_of([] { make_id(IdKind::Phone, "447941615809"); }), ErrorCode::PatternMismatch);
    EXPECT_EQ(code_of([] { make_id(IdKind::Phone, "+44-79"); }), ErrorCode::PatternMismatch);
    EXPECT_NO_THROW(make_id(IdKind::Email, "graham@dcs.st-and.ac.uk"));
    EXPECT_EQ(code_of([] { make_id(IdKind::Email, "graham.dcs.st-and.ac.uk"); }), ErrorCode::PatternMismatch);
    EXPECT_EQ(code_of([] { make_id(IdKind::Email, "a@b"); }), ErrorCode::PatternMismatch);
    EXPECT_EQ(code_of([] { make_id(IdKind::Email, "@b.c"); }), ErrorCode::PatternMismatch);
    EXPECT_NO_THROW(make_id(IdKind::BitString, ""));

    const Id id = parse_id_form("email:someone@example.org");
    EXPECT_EQ(id.kind(), IdKind::Email);
    EXPECT_EQ(id.value(), "someone@example.org");
    EXPECT_EQ(id.to_form(), "email:someone@example.org");
    EXPECT_EQ(parse_id_form("bitString:a:b").value(), "a:b");
    EXPECT_THROW(parse_id_form("nocolon"), Error);
    EXPECT_THROW(parse_id_form("fax:123"), Error);
}

TEST(Identity, FormsNeverUnify) {
    const Id a = make_id(IdKind::BitString, "+447941615809");
    const Id b = make_id(IdKind::Phone, "+447941615809");
    EXPECT_NE(a, b);
    EXPECT_EQ(b, parse_id_form(b.to_form()));
}

TEST(Locale, CyclesRejectedInProcess) {
    Locale town;
    town.classifications = {Classification{{"town"}}};
    Locale street;
    street.classifications = {Classification{{"street"}}};
    const Locale chained = with_parent(street, town);
    EXPECT_FALSE(has_parent_cycle(chained));
    EXPECT_EQ(code_of([&] { with_parent(town, chained); }), ErrorCode::LocaleCycle);

    // Unclassified locales carry no identity and so never form a cycle.
    EXPECT_NO_THROW(with_parent(Locale{}, Locale{}));
}

TEST(Where, EmptyVariantIsExplicit) {
    const Where w;
    EXPECT_TRUE(w.empty());
    EXPECT_EQ(code_of([&] { resolve_region(w); }), ErrorCode::EmptyWhere);
    EXPECT_EQ(code_of([] { resolve_region(Where{std::nullopt, std::nullopt, PhysicalLocation{}}); }),
              ErrorCode::Unresolvable);
}

TEST(ResolveRegion, Idempotent) {
    testing::Generator gen(77);
    int resolved = 0;
    for (int i = 0; i < 5000; ++i) {
        const Where w = gen.where(1);
        Region r;
        try {
            r = resolve_region(w);
        } catch (const Error&) {
            continue;
        }
        ++resolved;
        EXPECT_EQ(resolve_region(where_of(r)), r);
    }
    EXPECT_GT(resolved, 1000);
}

TEST(ResolveRegion, PointBecomesZeroRadiusCircle) {
    const Region r = resolve_region(where_at(56.34, -2.87));
    ASSERT_TRUE(std::holds_alternative<CircularBounds>(r.bounds));
    EXPECT_EQ(std::get<CircularBounds>(r.bounds).radius, Distance(0.0));
    EXPECT_EQ(r.distinguished_point, point(56.34, -2.87));
}

TEST(Gazetteer, NameThenUrn) {
    SymbolicLocation by_name;
    by_name.region = Region{point(1.0, 1.0), NoBounds{}};
    SymbolicLocation by_urn;
    by_urn.region = Region{point(2.0, 2.0), NoBounds{}};
    const Gazetteer gaz(Gazetteer::Entries{{"Kinkell", by_name}, {"urn:gloss:kinkell", by_urn}});

    Where w{"Kinkell", "urn:gloss:kinkell", Locale{}};
    EXPECT_EQ(resolve_region(w, gaz).distinguished_point, point(1.0, 1.0));
    w.name = "Elsewhere";
    EXPECT_EQ(resolve_region(w, gaz).distinguished_point, point(2.0, 2.0));
    w.gloss_urn.reset();
    EXPECT_EQ(code_of([&] { resolve_region(w, gaz); }), ErrorCode::Unresolvable);

    // An embedded region beats the gazetteer.
    SymbolicLocation own;
    own.region = Region{point(3.0, 3.0), NoBounds{}};
    EXPECT_EQ(resolve_region(Where{"Kinkell", std::nullopt, own}, gaz).distinguished_point, point(3.0, 3.0));

    const Gazetteer copy = gaz;
    EXPECT_EQ(&copy.entries(), &gaz.entries());
}

TEST(Universe, JunctionNeedsTwoThoroughfares) {
    EXPECT_EQ(code_of([] { Junction({Thoroughfare{"North Street", {}, {}}}); }), ErrorCode::InvalidArgument);
    const Junction j({Thoroughfare{"North Street", {}, {}}, Thoroughfare{"Market Street", {}, {}}});
    EXPECT_EQ(j.meets().size(), 2u);
}

TEST(Universe, ModesAndObjects) {
    for (auto m : {ModeTransport::Car, ModeTransport::Train, ModeTransport::Aeroplane, ModeTransport::Bicycle,
                   ModeTransport::Foot})
        EXPECT_EQ(mode_from_string(to_string(m)), m);
    EXPECT_FALSE(mode_from_string("hovercraft"));

    Profile p;
    p.preferences["food"] = "vegetarian";
    const GlossObject person = Actor{make_id(IdKind::Email, "a@b.org"), ActorNature::Natural, "Ann", p};
    const GlossObject pda = Artefact{make_id(IdKind::BitString, "pda-1"), "PDA", Conduit{id_of(person)}};
    EXPECT_EQ(id_of(person).value(), "a@b.org");
    EXPECT_EQ(std::get<Artefact>(pda).conduit->associated_person, id_of(person));
}

}  // namespace
}  // namespace gloss

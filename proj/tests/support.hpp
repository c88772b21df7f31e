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

// Fixtures shared by the unit suites and the acceptance runner.

#pragma once

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "gloss/gloss.hpp"
#include "oracles.hpp"

namespace gloss::testing {

inline std::string corpus(const std::string& name) {
    std::ifstream in(std::string(GLOSS_CORPUS_DIR) + "/" + name, std::ios::binary);
    if (!in)
        throw std::runtime_error("missing corpus file " + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Replaces the first occurrence of `from`; fails loudly if absent so a
/// mutation never silently becomes a no-op.
inline std::string replace_once(std::string s, const std::string& from, const std::string& to) {
    const auto pos = s.find(from);
    if (pos == std::string::npos)
        throw std::runtime_error("mutation anchor not found: " + from);
    return s.replace(pos, from.size(), to);
}

inline Time utc(int y, unsigned mo, unsigned d, int h, int mi, int s, int ms = 0) {
    using namespace std::chrono;
    const auto days = sys_days{year{y} / month{mo} / day{d}}.time_since_epoch().count();
    return Time(static_cast<std::int64_t>(days) * 86'400'000 + ((h * 60 + mi) * 60 + s) * 1000LL + ms);
}

/// Random valid model values. Every value produced survives the wire
/// format; strings avoid characters XML cannot carry.
class Generator {
public:
    explicit Generator(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() noexcept { return rng_; }

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    double real(double lo, double hi) {
        // Boundaries and awkward literals show up on purpose.
        switch (integer(0, 9)) {
        case 0: return lo;
        case 1: return hi;
        default: return std::uniform_real_distribution<double>(lo, hi)(rng_);
        }
    }

    double latitude() { return real(-90.0, 90.0); }
    double longitude() { return real(-180.0, 180.0); }

    std::string text(int max_len = 12) {
        static const std::vector<std::string> pieces = {"a", "Z", "7", " ", "&", "<", ">", "\"", "'", "é", "ß",
                                                        "\xe2\x82\xac", "\xf0\x9f\x9b\xb0", "\t", "\n", "]]>", "-", "x"};
        std::string s;
        const int n = integer(0, max_len);
        for (int i = 0; i < n; ++i)
            s += pieces[static_cast<std::size_t>(integer(0, static_cast<int>(pieces.size()) - 1))];
        return s;
    }

    std::string token(int min_len = 1, int max_len = 8) {
        static const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
        std::string s;
        const int n = integer(min_len, max_len);
        for (int i = 0; i < n; ++i)
            s += alphabet[static_cast<std::size_t>(integer(0, static_cast<int>(alphabet.size()) - 1))];
        return s;
    }

    std::string email() { return token() + "@" + token() + "." + token(2, 4); }

    Id id() {
        switch (integer(0, 3)) {
        case 0: return make_id(IdKind::BitString, text());
        case 1: return make_id(IdKind::Guid, token(8, 8) + "-" + token(4, 4));
        case 2: {
            std::string p = "+";
            const int n = integer(0, 14);
            for (int i = 0; i < n; ++i)
                p += coin(0.15) ? ' ' : static_cast<char>('0' + integer(0, 9));
            return make_id(IdKind::Phone, p);
        }
        default: return make_id(IdKind::Email, email());
        }
    }

    Time time() { return Time(std::uniform_int_distribution<std::int64_t>(-2'208'988'800'000, 4'102'444'799'999)(rng_)); }

    PhysicalLocation physical(double p_coord = 0.85) {
        if (!coin(p_coord))
            return PhysicalLocation{};
        return point(latitude(), longitude());
    }

    template <class Unit>
    Measure<Unit> measure() {
        const auto& units = UnitTraits<Unit>::all;
        const Unit u = units[static_cast<std::size_t>(integer(0, static_cast<int>(units.size()) - 1))];
        const double v = UnitTraits<Unit>::non_negative ? real(0.0, 1e6) : real(-1e4, 1e4);
        return Measure<Unit>(v, u);
    }

    SpatialBounds bounds() {
        switch (integer(0, 3)) {
        case 0: return NoBounds{};
        case 1: return Horizon{text()};
        case 2: return CircularBounds{physical(), measure<DistanceUnit>()};
        default: return RectangularBounds{physical(), physical()};
        }
    }

    Region region() { return Region{physical(), bounds()}; }

    Information information() {
        Information info;
        for (int i = integer(0, 2); i > 0; --i)
            info.info.push_back(text());
        for (int i = integer(0, 2); i > 0; --i)
            info.links.push_back("http://" + token() + ".example/" + token());
        return info;
    }

    std::vector<Classification> classifications() {
        std::vector<Classification> out;
        for (int i = integer(0, 2); i > 0; --i) {
            Classification c;
            for (int j = integer(1, 3); j > 0; --j)
                c.types.push_back(text(6));
            out.push_back(std::move(c));
        }
        return out;
    }

    Address address() {
        Address a;
        const auto maybe = [&](std::optional<std::string>& slot, std::string v) {
            if (coin())
                slot = std::move(v);
        };
        maybe(a.name_number, text(4));
        maybe(a.street, text());
        maybe(a.town, text());
        maybe(a.county, text());
        maybe(a.post_code, token(5, 7));
        maybe(a.web_address, "http://" + token() + ".example/");
        maybe(a.email, email());
        return a;
    }

    TimeOfDay time_of_day() { return TimeOfDay(static_cast<double>(integer(0, 86'399'999)) / 1000.0); }

    LocationKind kind() {
        switch (integer(0, 5)) {
        case 0: return PlainLocation{};
        case 1: {
            ClassifiedLocation c;
            c.classifications = classifications();
            c.description = text();
            return c;
        }
        case 2: {
            AddressLocation a;
            a.classifications = classifications();
            a.description = text();
            a.address = address();
            return a;
        }
        case 3: {
            ProductLocation p;
            p.classifications = classifications();
            p.description = text();
            p.address = address();
            p.open_time = time_of_day();
            p.close_time = time_of_day();
            return p;
        }
        case 4: return Landmark{text()};
        default: return District{text()};
        }
    }

    SymbolicLocation symbolic(int depth) {
        SymbolicLocation s;
        s.kind = kind();
        s.information = information();
        s.region = region();
        if (depth > 0)
            for (int i = integer(0, 1); i > 0; --i)
                s.locales.push_back(locale(depth - 1));
        s.fixed = coin();
        return s;
    }

    ExtensionFragment extension() {
        xml::Element e;
        e.local = "ext" + token(1, 3);
        e.ns = coin() ? "urn:example:" + token() : std::string(kGlossNamespace);
        if (coin())
            e.attributes.push_back(xml::Attribute{"k", "k", "", text(4)});
        if (coin())
            e.children.push_back(xml::Node{std::string("v") + text(5)});
        return ExtensionFragment{xml::Writer::compact(e)};
    }

    Locale locale(int depth) {
        Locale l;
        if (depth > 0 && coin(0.3))
            l.parent = locale(depth - 1);
        l.classifications = classifications();
        if (depth > 0)
            for (int i = integer(0, 1); i > 0; --i)
                l.contents.push_back(symbolic(depth - 1));
        if (depth > 0)
            for (int i = integer(0, 1); i > 0; --i)
                l.neighbours.push_back(locale(depth - 1));
        for (int i = integer(0, 2); i > 0; --i)
            l.extensions.push_back(extension());
        return l;
    }

    Where where(int depth = 2) {
        Where w;
        if (coin(0.3))
            w.name = text();
        if (coin(0.3))
            w.gloss_urn = "urn:gloss:" + token();
        switch (integer(0, 4)) {
        case 0: break;
        case 1: w.payload = physical(); break;
        case 2: w.payload = region(); break;
        case 3: w.payload = symbolic(depth); break;
        default: w.payload = locale(depth); break;
        }
        return w;
    }

    float dop() {
        switch (integer(0, 5)) {
        case 0: return 0.0f;
        case 1: return std::numeric_limits<float>::max();
        case 2: return std::numeric_limits<float>::denorm_min();
        default: return std::uniform_real_distribution<float>(-50.0f, 50.0f)(rng_);
        }
    }

    Observation observation() {
        Observation o;
        o.time_of_observation = time();
        o.where = where();
        if (coin())
            o.altitude = measure<AltitudeUnit>();
        if (coin())
            o.speed = measure<SpeedUnit>();
        if (coin())
            o.course = Bearing(real(0.0, 360.0));
        if (coin())
            o.magnetic_variation = Bearing(real(0.0, 360.0));
        if (coin())
            o.satellites_visible = SatCount(integer(0, 12));
        const auto f = [&](std::optional<float>& slot) {
            if (coin())
                slot = dop();
        };
        f(o.pdop);
        f(o.hdop);
        f(o.vdop);
        f(o.hpe);
        f(o.vpe);
        return o;
    }

    LocationEvent event() {
        LocationEvent ev{id(), {}, {}};
        for (int i = integer(0, 3); i > 0; --i)
            ev.processing_sequence.push_back(ProcessingStep{time(), text()});
        for (int i = integer(1, 3); i > 0; --i)
            ev.observations.push_back(observation());
        return ev;
    }

private:
    std::mt19937_64 rng_;
};

/// Observed trails for distillation, at most `max_points` fixes in all.
/// Half the fixtures tour a few well separated places, the rest scatter
/// fixes over a small area so clusters chain. Pairs whose separation is
/// within a micrometre of `eps` are avoided: there the two distance
/// formulas may legitimately disagree.
inline std::vector<std::vector<oracle::Fix>> trail_fixture(Generator& g, std::size_t max_points, double eps) {
    for (;;) {
        const double lat0 = g.real(-60.0, 60.0), lon0 = g.real(-170.0, 170.0);
        const std::size_t trails = static_cast<std::size_t>(g.integer(1, 4));
        std::vector<std::vector<oracle::Fix>> out(trails);
        std::size_t budget = max_points;
        if (g.coin()) {
            const int places = g.integer(1, 5);
            std::vector<std::pair<double, double>> centre;
            for (int i = 0; i < places; ++i)
                centre.push_back(oracle::travel(lat0, lon0, g.real(0.0, 360.0), 500.0 + 2000.0 * i));
            for (auto& t : out) {
                std::vector<int> visit(static_cast<std::size_t>(places));
                std::iota(visit.begin(), visit.end(), 0);
                if (g.coin(0.4))
                    std::shuffle(visit.begin(), visit.end(), g.rng());
                std::int64_t ms = std::uniform_int_distribution<std::int64_t>(0, 1'000'000'000)(g.rng());
                for (int v : visit)
                    for (int k = g.integer(1, 2); k > 0 && budget > 0; --k, --budget) {
                        const auto [la, lo] = oracle::travel(centre[static_cast<std::size_t>(v)].first,
                                                             centre[static_cast<std::size_t>(v)].second,
                                                             g.real(0.0, 360.0), g.real(0.0, eps / 3.0));
                        ms += g.integer(1, 600) * 1000;
                        t.push_back({la, lo, ms});
                    }
            }
        } else {
            for (auto& t : out) {
                std::int64_t ms = std::uniform_int_distribution<std::int64_t>(0, 1'000'000'000)(g.rng());
                for (int k = g.integer(1, 6); k > 0 && budget > 0; --k, --budget) {
                    const auto [la, lo] = oracle::travel(lat0, lon0, g.real(0.0, 360.0), g.real(0.0, 4.0 * eps));
                    ms += g.integer(0, 300) * 1000;
                    t.push_back({la, lo, ms});
                }
            }
        }
        bool ambiguous = false;
        std::vector<oracle::Fix> all;
        for (const auto& t : out)
            all.insert(all.end(), t.begin(), t.end());
        for (std::size_t i = 0; i < all.size() && !ambiguous; ++i)
            for (std::size_t j = i + 1; j < all.size() && !ambiguous; ++j)
                ambiguous = std::abs(oracle::vector_metres(all[i].lat, all[i].lon, all[j].lat, all[j].lon) - eps) < 1e-6;
        if (!ambiguous && !all.empty())
            return out;
    }
}

inline ObservedTrail to_observed(const std::vector<oracle::Fix>& fixes, const Id& subject) {
    ObservedTrail t{subject, {}};
    for (const auto& f : fixes)
        t.nodes.push_back(ObservedNode{Time(f.ms), where_at(f.lat, f.lon), std::nullopt});
    return t;
}

}  // namespace gloss::testing

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

// The ontology's spatial and universe types as plain values. The schema
// expresses subtyping by nesting optional choice elements; here each family
// is a closed std::variant instead.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "gloss/boxed.hpp"
#include "gloss/identity.hpp"
#include "gloss/quantity.hpp"
#include "gloss/scalars.hpp"
#include "gloss/temporal.hpp"

namespace gloss {

// --- Points and bounds -----------------------------------------------------

struct LatLongCoordinate {
    Latitude latitude;
    Longitude longitude;

    LatLongCoordinate(double lat, double lon) : latitude(lat), longitude(lon) {}
    LatLongCoordinate(Latitude lat, Longitude lon) : latitude(lat), longitude(lon) {}

    friend bool operator==(const LatLongCoordinate&, const LatLongCoordinate&) = default;
};

/// A point; the coordinate is optional on the wire.
struct PhysicalLocation {
    std::optional<LatLongCoordinate> coordinate;

    friend bool operator==(const PhysicalLocation&, const PhysicalLocation&) = default;
};

inline PhysicalLocation point(double lat, double lon) { return PhysicalLocation{LatLongCoordinate(lat, lon)}; }

/// Region currently perceived by a user. Opaque text; geometry refuses it.
struct Horizon {
    std::string text;

    friend bool operator==(const Horizon&, const Horizon&) = default;
};

struct CircularBounds {
    PhysicalLocation centre;
    Distance radius;

    friend bool operator==(const CircularBounds&, const CircularBounds&) = default;
};

/// topLeft is the north-west corner (max latitude, min longitude).
struct RectangularBounds {
    PhysicalLocation top_left;
    PhysicalLocation bottom_right;

    friend bool operator==(const RectangularBounds&, const RectangularBounds&) = default;
};

/// The schema lets a bounds element carry no shape at all.
struct NoBounds {
    friend bool operator==(const NoBounds&, const NoBounds&) = default;
};

using SpatialBounds = std::variant<NoBounds, Horizon, CircularBounds, RectangularBounds>;

struct Region {
    PhysicalLocation distinguished_point;
    SpatialBounds bounds;

    /// A region with neither a point nor a shape; symbolic locations carrying
    /// one are resolved through the gazetteer.
    bool is_bare() const {
        return !distinguished_point.coordinate && std::holds_alternative<NoBounds>(bounds);
    }

    friend bool operator==(const Region&, const Region&) = default;
};

// --- Symbolic locations ----------------------------------------------------

struct Information {
    std::vector<std::string> info;
    std::vector<std::string> links;

    bool empty() const noexcept { return info.empty() && links.empty(); }

    friend bool operator==(const Information&, const Information&) = default;
};

/// One or more classification labels.
struct Classification {
    std::vector<std::string> types;

    friend bool operator==(const Classification&, const Classification&) = default;
    friend auto operator<=>(const Classification&, const Classification&) = default;
};

struct Address {
    std::optional<std::string> name_number;
    std::optional<std::string> street;
    std::optional<std::string> town;
    std::optional<std::string> county;
    std::optional<std::string> post_code;
    std::optional<std::string> web_address;
    std::optional<std::string> email;

    friend bool operator==(const Address&, const Address&) = default;
};

struct ClassifiedLocation {
    std::vector<Classification> classifications;
    std::string description;

    friend bool operator==(const ClassifiedLocation&, const ClassifiedLocation&) = default;
};

struct AddressLocation : ClassifiedLocation {
    Address address;

    friend bool operator==(const AddressLocation&, const AddressLocation&) = default;
};

/// An address where a service may be obtained between the given hours.
struct ProductLocation : AddressLocation {
    TimeOfDay open_time{0.0};
    TimeOfDay close_time{0.0};

    friend bool operator==(const ProductLocation&, const ProductLocation&) = default;
};

struct Landmark {
    std::string name;

    friend bool operator==(const Landmark&, const Landmark&) = default;
};

struct District {
    std::string name;

    friend bool operator==(const District&, const District&) = default;
};

struct PlainLocation {
    friend bool operator==(const PlainLocation&, const PlainLocation&) = default;
};

using LocationKind =
    std::variant<PlainLocation, ClassifiedLocation, AddressLocation, ProductLocation, Landmark, District>;

struct Locale;

/// A fixed (room, airport) or moveable (train, car) location occupying a
/// region.
struct SymbolicLocation {
    LocationKind kind;
    Information information;
    Region region;
    std::vector<Locale> locales;
    bool fixed = true;

    friend bool operator==(const SymbolicLocation&, const SymbolicLocation&) = default;
};

/// Foreign element content from a locale's extension slot, kept as
/// serialized XML and re-emitted untouched.
struct ExtensionFragment {
    std::string xml;

    friend bool operator==(const ExtensionFragment&, const ExtensionFragment&) = default;
};

/// A logical grouping of symbolic locations.
struct Locale {
    Boxed<Locale> parent;
    std::vector<Classification> classifications;
    std::vector<SymbolicLocation> contents;
    std::vector<Locale> neighbours;
    std::vector<ExtensionFragment> extensions;

    friend bool operator==(const Locale&, const Locale&) = default;
};

/// Locales have no name of their own; two locales are "the same locale"
/// when they carry the same non-empty classification list.
inline bool same_locale_identity(const Locale& a, const Locale& b) {
    return !a.classifications.empty() && a.classifications == b.classifications;
}

/// True when some locale on the parent chain starting at `locale` shares
/// its identity with a later one on the same chain.
inline bool has_parent_cycle(const Locale& locale) {
    std::vector<const Locale*> chain;
    for (const Locale* cur = &locale; cur != nullptr; cur = cur->parent.get()) {
        for (const Locale* seen : chain)
            if (same_locale_identity(*seen, *cur))
                return true;
        chain.push_back(cur);
    }
    return false;
}

/// Attaches `parent` to `child`, refusing chains that revisit a locale.
inline Locale with_parent(Locale child, Locale parent) {
    child.parent = std::move(parent);
    if (has_parent_cycle(child))
        throw Error(ErrorCode::LocaleCycle, "locale parent chain revisits a locale");
    return child;
}

// --- Where -----------------------------------------------------------------

struct EmptyWhere {
    friend bool operator==(const EmptyWhere&, const EmptyWhere&) = default;
};

using WherePayload = std::variant<EmptyWhere, PhysicalLocation, Region, SymbolicLocation, Locale>;

/// A point, a fixed region, a logical location, or a locale; or nothing.
struct Where {
    std::optional<std::string> name;
    std::optional<std::string> gloss_urn;
    WherePayload payload;

    bool empty() const noexcept { return std::holds_alternative<EmptyWhere>(payload); }

    friend bool operator==(const Where&, const Where&) = default;
};

inline Where where_at(double lat, double lon) { return Where{std::nullopt, std::nullopt, point(lat, lon)}; }
inline Where where_of(Region r) { return Where{std::nullopt, std::nullopt, std::move(r)}; }

// --- Directions and thoroughfares ------------------------------------------

/// Bearing in degrees from true north.
struct CompassDirection {
    Bearing bearing;

    friend bool operator==(const CompassDirection&, const CompassDirection&) = default;
};

// Only the compass form of a direction is defined.
using Direction = std::variant<CompassDirection>;

struct Keypoint {
    Where where;

    friend bool operator==(const Keypoint&, const Keypoint&) = default;
};

struct Thoroughfare {
    std::string name;
    std::vector<Keypoint> keypoints;
    std::vector<Locale> locales;

    friend bool operator==(const Thoroughfare&, const Thoroughfare&) = default;
};

/// Where two or more thoroughfares meet.
class Junction {
public:
    explicit Junction(std::vector<Thoroughfare> meets) : meets_(std::move(meets)) {
        if (meets_.size() < 2)
            throw Error(ErrorCode::InvalidArgument, "a junction joins at least two thoroughfares");
    }

    const std::vector<Thoroughfare>& meets() const noexcept { return meets_; }

private:
    std::vector<Thoroughfare> meets_;
};

// --- Universe --------------------------------------------------------------

enum class ModeTransport { Car, Train, Aeroplane, Bicycle, Foot };

constexpr std::string_view to_string(ModeTransport m) noexcept {
    switch (m) {
    case ModeTransport::Car: return "car";
    case ModeTransport::Train: return "train";
    case ModeTransport::Aeroplane: return "aeroplane";
    case ModeTransport::Bicycle: return "bicycle";
    case ModeTransport::Foot: return "foot";
    }
    return "?";
}

inline std::optional<ModeTransport> mode_from_string(std::string_view s) {
    for (auto m : {ModeTransport::Car, ModeTransport::Train, ModeTransport::Aeroplane, ModeTransport::Bicycle,
                   ModeTransport::Foot})
        if (to_string(m) == s)
            return m;
    return std::nullopt;
}

struct Profile {
    ModeTransport mode = ModeTransport::Foot;
    std::map<std::string, std::string> preferences;

    friend bool operator==(const Profile&, const Profile&) = default;
};

struct Activity {
    std::string description;
    std::optional<Information> content;

    friend bool operator==(const Activity&, const Activity&) = default;
};

enum class ActorNature { Natural, Artificial };

/// A person (natural) or a system (artificial).
struct Actor {
    Id id;
    ActorNature nature = ActorNature::Natural;
    std::optional<std::string> name;
    std::optional<Profile> profile;

    friend bool operator==(const Actor&, const Actor&) = default;
};

/// Information flows through a conduit artefact; a PDA may belong to someone.
struct Conduit {
    std::optional<Id> associated_person;

    friend bool operator==(const Conduit&, const Conduit&) = default;
};

struct Artefact {
    Id id;
    std::optional<std::string> name;
    std::optional<Conduit> conduit;

    friend bool operator==(const Artefact&, const Artefact&) = default;
};

using GlossObject = std::variant<Actor, Artefact>;

inline const Id& id_of(const GlossObject& o) {
    return std::visit([](const auto& x) -> const Id& { return x.id; }, o);
}

}  // namespace gloss

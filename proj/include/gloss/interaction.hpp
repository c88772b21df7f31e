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

// Interaction resources, their coupling to content and to each other, and
// how pairs of surfaces combine.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "gloss/geo.hpp"
#include "gloss/model.hpp"

namespace gloss {

enum class Role { Surface, Instrument };

constexpr std::string_view to_string(Role r) noexcept { return r == Role::Surface ? "surface" : "instrument"; }

enum class SocialUse { Public, Private };

// --- Descriptive metadata --------------------------------------------------

struct SurfaceAttrs {
    std::optional<std::string> shape;
    std::optional<std::string> size;
    std::optional<std::string> weight;
    std::optional<std::string> material;
    std::optional<std::string> color;
    std::optional<std::string> texture;
    std::optional<SocialUse> social_use;

    friend bool operator==(const SurfaceAttrs&, const SurfaceAttrs&) = default;
};

enum class Consistency { Solid, Fluid, Nebulous };
enum class Rigidity { Rigid, Flexible };
enum class Opacity { Opaque, Transparent };
enum class Mobility { Fixed, Mobile };
enum class Lightness { Light, Heavy };
enum class Smallness { Small, Large };
enum class Writability { ReadOnly, Writable, Erasable };
enum class Heterogeneity { Homogeneous, Heterogeneous };
enum class Refraction { Refractive, NonRefractive };
enum class Reflexion { Reflective, NonReflective };
enum class Reachability { Reachable, Unreachable };

struct SurfaceProps {
    std::optional<Consistency> consistency;
    std::optional<Rigidity> rigidity;
    std::optional<Opacity> opacity;
    std::optional<Mobility> mobility;
    std::optional<Lightness> lightness;
    std::optional<Smallness> smallness;
    std::optional<Writability> writability;
    std::optional<Heterogeneity> heterogeneity;
    std::optional<Refraction> refraction;
    std::optional<Reflexion> reflexion;
    std::optional<Reachability> reachability;

    friend bool operator==(const SurfaceProps&, const SurfaceProps&) = default;
};

/// Score on a 1..5 scale.
class Ordinal {
public:
    static constexpr int kMin = 1;
    static constexpr int kMax = 5;

    explicit Ordinal(int score) : score_(score) {
        if (score < kMin || score > kMax)
            throw Error(ErrorCode::InvalidArgument,
                        "ordinal score " + std::to_string(score) + " outside [1, 5]");
    }

    int score() const noexcept { return score_; }

    friend auto operator<=>(const Ordinal&, const Ordinal&) = default;

private:
    int score_;
};

struct InstrumentAttrs {
    std::optional<std::string> shape;
    std::optional<std::string> size;
    std::optional<std::string> weight;
    std::optional<std::string> material;
    std::optional<SocialUse> social_use;

    friend bool operator==(const InstrumentAttrs&, const InstrumentAttrs&) = default;
};

struct InstrumentProps {
    std::optional<Ordinal> precision;
    std::optional<Ordinal> stability;
    std::optional<Ordinal> manipulability;

    friend bool operator==(const InstrumentProps&, const InstrumentProps&) = default;
};

struct Generic {
    friend bool operator==(const Generic&, const Generic&) = default;
};

/// Usable only with content of one class, like a mask shaped as a face.
struct Specific {
    std::string content_class;

    friend bool operator==(const Specific&, const Specific&) = default;
};

using Genericity = std::variant<Generic, Specific>;

enum class SubSurfaceKind { Action, Observation };

/// Named part of a surface used for acting or observing. No geometry.
struct SubSurface {
    std::string name;
    SubSurfaceKind kind;

    friend bool operator==(const SubSurface&, const SubSurface&) = default;
};

// --- Entities --------------------------------------------------------------

class InteractionResource {
public:
    InteractionResource(Id id, std::set<Role> roles, Genericity genericity = Generic{})
        : id_(std::move(id)), roles_(std::move(roles)), genericity_(std::move(genericity)) {
        if (roles_.empty())
            throw Error(ErrorCode::InvalidArgument, "resource " + id_.to_form() + " needs at least one role");
    }

    const Id& id() const noexcept { return id_; }
    const std::set<Role>& roles() const noexcept { return roles_; }
    bool has_role(Role r) const { return roles_.count(r) != 0; }
    const Genericity& genericity() const noexcept { return genericity_; }

    std::optional<SurfaceAttrs> surface_attrs;
    std::optional<SurfaceProps> surface_props;
    std::optional<InstrumentAttrs> instrument_attrs;
    std::optional<InstrumentProps> instrument_props;
    std::vector<SubSurface> sub_surfaces;
    std::optional<Actor> owner;

private:
    Id id_;
    std::set<Role> roles_;
    Genericity genericity_;
};

struct Actuator {
    Id id;
    Genericity genericity = Generic{};
};

struct Sensor {
    Id id;
    Genericity genericity = Generic{};
};

struct InformationContent {
    Id id;
    std::string content_class;
    Information payload;

    friend bool operator==(const InformationContent&, const InformationContent&) = default;
};

/// Content observed from one or more surfaces.
class RawContent {
public:
    RawContent(InformationContent content, std::vector<Id> sources)
        : content_(std::move(content)), sources_(std::move(sources)) {
        if (sources_.empty())
            throw Error(ErrorCode::InvalidArgument, "raw content " + content_.id.to_form() + " cites no source surface");
    }

    const InformationContent& content() const noexcept { return content_; }
    const std::vector<Id>& sources() const noexcept { return sources_; }

private:
    InformationContent content_;
    std::vector<Id> sources_;
};

// --- Coupling --------------------------------------------------------------

enum class CouplingClass { Actuator, Sensor, Instrument, Surface };

enum class CouplingOrigin { Manual, Proximity };

/// Immutable set of couplings. Transitions return new states.
class CouplingState {
public:
    using ContentKey = std::pair<Id, Id>;  // entity, content
    using SurfaceKey = std::pair<Id, Id>;  // smaller id first

    static SurfaceKey surface_key(const Id& a, const Id& b) { return b < a ? SurfaceKey{b, a} : SurfaceKey{a, b}; }

    bool coupled(const Id& entity, const Id& content) const { return content_.count({entity, content}) != 0; }

    bool surfaces_coupled(const Id& a, const Id& b) const { return surfaces_.count(surface_key(a, b)) != 0; }

    std::optional<CouplingOrigin> surface_origin(const Id& a, const Id& b) const {
        auto it = surfaces_.find(surface_key(a, b));
        return it == surfaces_.end() ? std::nullopt : std::optional(it->second);
    }

    const std::map<ContentKey, CouplingClass>& content_couplings() const noexcept { return content_; }
    const std::map<SurfaceKey, CouplingOrigin>& surface_couplings() const noexcept { return surfaces_; }

    CouplingState with_content(const Id& entity, const Id& content, CouplingClass cls) const {
        CouplingState next = *this;
        next.content_[{entity, content}] = cls;
        return next;
    }

    CouplingState without_content(const Id& entity, const Id& content) const {
        CouplingState next = *this;
        next.content_.erase({entity, content});
        return next;
    }

    CouplingState with_surfaces(const Id& a, const Id& b, CouplingOrigin origin) const {
        CouplingState next = *this;
        next.surfaces_[surface_key(a, b)] = origin;
        return next;
    }

    CouplingState without_surfaces(const Id& a, const Id& b) const {
        CouplingState next = *this;
        next.surfaces_.erase(surface_key(a, b));
        return next;
    }

    friend bool operator==(const CouplingState&, const CouplingState&) = default;

private:
    std::map<ContentKey, CouplingClass> content_;
    std::map<SurfaceKey, CouplingOrigin> surfaces_;
};

namespace detail {

inline void check_specificity(const Id& entity, const Genericity& g, const InformationContent& content) {
    if (const auto* s = std::get_if<Specific>(&g); s && s->content_class != content.content_class)
        throw Error(ErrorCode::SpecificityMismatch, entity.to_form() + " is specific to '" + s->content_class +
                                                        "' and cannot take '" + content.content_class + "'");
}

}  // namespace detail

/// Couples a resource to content in one of its roles. A resource that is
/// both surface and instrument must say which.
inline CouplingState couple(const CouplingState& state, const InteractionResource& resource,
                            const InformationContent& content, std::optional<Role> as = std::nullopt) {
    detail::check_specificity(resource.id(), resource.genericity(), content);
    Role role;
    if (as) {
        if (!resource.has_role(*as))
            throw Error(ErrorCode::InvalidArgument,
                        resource.id().to_form() + " has no " + std::string(to_string(*as)) + " role");
        role = *as;
    } else if (resource.roles().size() == 1) {
        role = *resource.roles().begin();
    } else {
        throw Error(ErrorCode::AmbiguousRole,
                    resource.id().to_form() + " is both surface and instrument; name the role to couple it as");
    }
    return state.with_content(resource.id(), content.id,
                              role == Role::Surface ? CouplingClass::Surface : CouplingClass::Instrument);
}

inline CouplingState couple(const CouplingState& state, const Actuator& a, const InformationContent& content) {
    detail::check_specificity(a.id, a.genericity, content);
    return state.with_content(a.id, content.id, CouplingClass::Actuator);
}

inline CouplingState couple(const CouplingState& state, const Sensor& s, const InformationContent& content) {
    detail::check_specificity(s.id, s.genericity, content);
    return state.with_content(s.id, content.id, CouplingClass::Sensor);
}

inline CouplingState decouple(const CouplingState& state, const Id& entity, const Id& content) {
    return state.without_content(entity, content);
}

inline CouplingState couple_surfaces(const CouplingState& state, const Id& a, const Id& b) {
    if (a == b)
        throw Error(ErrorCode::InvalidArgument, "a surface cannot be coupled to itself");
    return state.with_surfaces(a, b, CouplingOrigin::Manual);
}

inline CouplingState decouple_surfaces(const CouplingState& state, const Id& a, const Id& b) {
    return state.without_surfaces(a, b);
}

struct CouplingDegree {
    std::size_t actuators = 0;
    std::size_t sensors = 0;
    std::size_t instruments = 0;
    std::size_t surfaces = 0;

    std::size_t total() const noexcept { return actuators + sensors + instruments + surfaces; }

    friend bool operator==(const CouplingDegree&, const CouplingDegree&) = default;
};

inline CouplingDegree coupling_degree(const CouplingState& state, const Id& content) {
    CouplingDegree d;
    for (const auto& [key, cls] : state.content_couplings()) {
        if (!(key.second == content))
            continue;
        switch (cls) {
        case CouplingClass::Actuator: ++d.actuators; break;
        case CouplingClass::Sensor: ++d.sensors; break;
        case CouplingClass::Instrument: ++d.instruments; break;
        case CouplingClass::Surface: ++d.surfaces; break;
        }
    }
    return d;
}

/// At most one instrument coupled: instruments take turns on the content.
inline bool is_time_multiplexed(const CouplingState& state, const Id& content) {
    return coupling_degree(state, content).instruments <= 1;
}

// --- Topology --------------------------------------------------------------

struct Placement {
    Where where;
    std::optional<CompassDirection> orientation;

    friend bool operator==(const Placement&, const Placement&) = default;
};

/// Where each entity is and which way it faces. One placement per entity.
class Topology {
public:
    Topology place(const Id& entity, Placement p) const {
        Topology next = *this;
        next.placements_.insert_or_assign(entity, std::move(p));
        return next;
    }

    Topology remove(const Id& entity) const {
        Topology next = *this;
        next.placements_.erase(entity);
        return next;
    }

    const Placement* find(const Id& entity) const {
        auto it = placements_.find(entity);
        return it == placements_.end() ? nullptr : &it->second;
    }

    const std::map<Id, Placement>& placements() const noexcept { return placements_; }

private:
    std::map<Id, Placement> placements_;
};

/// Couples every pair of placed surfaces within `threshold` of each other
/// and drops proximity couplings whose surfaces have moved apart. Manual
/// couplings are left alone.
inline CouplingState proximity_coupling(const CouplingState& state, const Topology& topology,
                                        const std::vector<InteractionResource>& resources, const Distance& threshold,
                                        const Gazetteer& gazetteer = {}) {
    struct Placed {
        const Id* id;
        Region region;
    };
    std::vector<Placed> surfaces;
    std::set<Id> surface_ids;
    for (const auto& r : resources) {
        if (!r.has_role(Role::Surface))
            continue;
        surface_ids.insert(r.id());
        if (const auto* p = topology.find(r.id()))
            surfaces.push_back(Placed{&r.id(), resolve_region(p->where, gazetteer)});
    }
    const double limit = metres(threshold);
    std::set<CouplingState::SurfaceKey> near;
    for (std::size_t i = 0; i < surfaces.size(); ++i)
        for (std::size_t j = i + 1; j < surfaces.size(); ++j) {
            if (*surfaces[i].id == *surfaces[j].id)
                continue;
            const auto& a = detail::require_coordinate(surfaces[i].region.distinguished_point, "placement");
            const auto& b = detail::require_coordinate(surfaces[j].region.distinguished_point, "placement");
            if (great_circle_metres(a, b) <= limit)
                near.insert(CouplingState::surface_key(*surfaces[i].id, *surfaces[j].id));
        }

    CouplingState next = state;
    for (const auto& [key, origin] : state.surface_couplings())
        if (origin == CouplingOrigin::Proximity && surface_ids.count(key.first) && surface_ids.count(key.second) &&
            !near.count(key))
            next = next.without_surfaces(key.first, key.second);
    for (const auto& key : near)
        if (!next.surfaces_coupled(key.first, key.second))
            next = next.with_surfaces(key.first, key.second, CouplingOrigin::Proximity);
    return next;
}

// --- Compatibility ---------------------------------------------------------

enum class Compatibility { Complementary, Redundant, Equivalent, Assigned, Incompatible };

constexpr std::string_view to_string(Compatibility c) noexcept {
    switch (c) {
    case Compatibility::Complementary: return "Complementary";
    case Compatibility::Redundant: return "Redundant";
    case Compatibility::Equivalent: return "Equivalent";
    case Compatibility::Assigned: return "Assigned";
    case Compatibility::Incompatible: return "Incompatible";
    }
    return "?";
}

/// What a surface is used for, and the role it is reserved for, if any.
struct SurfaceDeclaration {
    std::set<std::string> tasks;
    std::optional<std::string> assigned_role;
};

using Declarations = std::map<Id, SurfaceDeclaration>;

/// Rules, first match wins:
///  Assigned       one surface is reserved for a role the other does not share
///  Equivalent     same non-empty task set
///  Redundant      coupled to the same content and sharing a task
///  Complementary  disjoint non-empty task sets
///  Incompatible   anything else
inline Compatibility classify_compatibility(const Id& s1, const Id& s2, const Declarations& declarations,
                                            const CouplingState& state = {}) {
    static const SurfaceDeclaration none;
    const auto lookup = [&](const Id& id) -> const SurfaceDeclaration& {
        auto it = declarations.find(id);
        return it == declarations.end() ? none : it->second;
    };
    const SurfaceDeclaration& a = lookup(s1);
    const SurfaceDeclaration& b = lookup(s2);

    if ((a.assigned_role || b.assigned_role) && a.assigned_role != b.assigned_role)
        return Compatibility::Assigned;
    if (!a.tasks.empty() && a.tasks == b.tasks)
        return Compatibility::Equivalent;

    const bool share_task = std::any_of(a.tasks.begin(), a.tasks.end(), [&](const std::string& t) { return b.tasks.count(t) != 0; });
    if (share_task) {
        for (const auto& [key, cls] : state.content_couplings())
            if (key.first == s1 && state.coupled(s2, key.second))
                return Compatibility::Redundant;
    }
    if (!share_task && !a.tasks.empty() && !b.tasks.empty())
        return Compatibility::Complementary;
    return Compatibility::Incompatible;
}

}  // namespace gloss

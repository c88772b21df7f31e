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

#pragma once

#include <map>
#include <memory>
#include <string>

#include "gloss/model.hpp"

namespace gloss {

/// Symbolic locations keyed by name or gloss URN. Immutable once built;
/// replace the whole gazetteer to change it. Copies share storage.
class Gazetteer {
public:
    using Entries = std::map<std::string, SymbolicLocation, std::less<>>;

    Gazetteer() : entries_(std::make_shared<const Entries>()) {}
    explicit Gazetteer(Entries entries) : entries_(std::make_shared<const Entries>(std::move(entries))) {}

    const SymbolicLocation* find(std::string_view key) const {
        auto it = entries_->find(key);
        return it == entries_->end() ? nullptr : &it->second;
    }

    std::size_t size() const noexcept { return entries_->size(); }
    const Entries& entries() const noexcept { return *entries_; }

private:
    std::shared_ptr<const Entries> entries_;
};

namespace detail {

inline const SymbolicLocation* lookup(const Where& w, const Gazetteer& gazetteer) {
    if (w.name)
        if (auto* hit = gazetteer.find(*w.name))
            return hit;
    if (w.gloss_urn)
        if (auto* hit = gazetteer.find(*w.gloss_urn))
            return hit;
    return nullptr;
}

inline std::string describe(const Where& w) {
    if (w.name)
        return "'" + *w.name + "'";
    if (w.gloss_urn)
        return "<" + *w.gloss_urn + ">";
    return "(unnamed)";
}

}  // namespace detail

/// The region a Where occupies.
///  - a point becomes a zero-radius circle centred on it;
///  - a region is returned as is;
///  - a symbolic location yields its own region, or, when that region is
///    bare, the region of the gazetteer entry found by name then URN;
///  - a locale is only resolvable through the gazetteer.
inline Region resolve_region(const Where& w, const Gazetteer& gazetteer = {}) {
    struct Visitor {
        const Where& where;
        const Gazetteer& gazetteer;

        Region operator()(const EmptyWhere&) const {
            throw Error(ErrorCode::EmptyWhere, "where " + detail::describe(where) + " carries no location");
        }
        Region operator()(const PhysicalLocation& p) const {
            if (!p.coordinate)
                throw Error(ErrorCode::Unresolvable, "physical location " + detail::describe(where) +
                                                         " has no coordinate");
            return Region{p, CircularBounds{p, Distance(0.0)}};
        }
        Region operator()(const Region& r) const { return r; }
        Region operator()(const SymbolicLocation& s) const {
            if (!s.region.is_bare())
                return s.region;
            return from_gazetteer();
        }
        Region operator()(const Locale&) const { return from_gazetteer(); }

        Region from_gazetteer() const {
            const SymbolicLocation* hit = detail::lookup(where, gazetteer);
            if (hit == nullptr || hit->region.is_bare())
                throw Error(ErrorCode::Unresolvable, "no region known for " + detail::describe(where));
            return hit->region;
        }
    };
    return std::visit(Visitor{w, gazetteer}, w.payload);
}

}  // namespace gloss

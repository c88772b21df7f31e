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

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <variant>

#include "gloss/quantity.hpp"

namespace gloss {

/// Converts between units of one kind. Identity conversions return the
/// value untouched; everything else goes through the canonical unit.
template <class Unit>
Measure<Unit> convert(const Measure<Unit>& q, Unit target) {
    if (q.unit() == target)
        return q;
    const UnitInfo from = UnitTraits<Unit>::info(q.unit());
    const UnitInfo to = UnitTraits<Unit>::info(target);
    double canonical = q.value() * from.numerator;
    if (from.denominator != 1.0)
        canonical /= from.denominator;
    double value = canonical;
    if (to.denominator != 1.0)
        value *= to.denominator;
    value /= to.numerator;
    return Measure<Unit>(value, target);
}

inline double metres(const Distance& d) { return convert(d, DistanceUnit::Metres).value(); }

/// Any of the three quantity kinds, for callers that only learn the unit at
/// run time (command-line flags, manifests).
using Quantity = std::variant<Altitude, Distance, Speed>;

inline std::string_view kind_name(const Quantity& q) {
    return std::visit([](const auto& m) { return UnitTraits<typename std::decay_t<decltype(m)>::unit_type>::kind_name; }, q);
}

/// Converts to the unit named by `token`. UnitKindMismatch if the token is
/// a unit of another kind, UnknownUnit if it is no unit at all.
inline Quantity convert_quantity(const Quantity& q, std::string_view token) {
    return std::visit(
        [&](const auto& m) -> Quantity {
            using Unit = typename std::decay_t<decltype(m)>::unit_type;
            if (auto target = unit_from_token<Unit>(token))
                return convert(m, *target);
            const bool known = unit_from_token<AltitudeUnit>(token) || unit_from_token<DistanceUnit>(token) ||
                               unit_from_token<SpeedUnit>(token);
            if (known)
                throw Error(ErrorCode::UnitKindMismatch, "cannot convert " + std::string(UnitTraits<Unit>::kind_name) +
                                                             " to '" + std::string(token) + "'");
            throw Error(ErrorCode::UnknownUnit, "unknown unit '" + std::string(token) + "'");
        },
        q);
}

/// Parses "100m", "1.5 km", "2miles", "1nautical miles".
inline Distance parse_distance(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
    const char* begin = text.data() + pos;
    const char* end = text.data() + text.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin)
        throw Error(ErrorCode::InvalidArgument, "expected <number><unit>, got '" + std::string(text) + "'");
    std::string_view unit(ptr, static_cast<std::size_t>(end - ptr));
    while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.front())))
        unit.remove_prefix(1);
    while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.back())))
        unit.remove_suffix(1);
    if (unit.empty())
        return Distance(value);
    auto u = unit_from_token<DistanceUnit>(unit);
    if (!u)
        throw Error(ErrorCode::UnknownUnit, "unknown distance unit '" + std::string(unit) + "'");
    return Distance(value, *u);
}

}  // namespace gloss

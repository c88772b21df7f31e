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

#include <cmath>
#include <compare>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>

#include "gloss/error.hpp"

namespace gloss {

/// Scalar value spaces restricted by the wire schema.
enum class ScalarKind { Latitude, Longitude, Bearing, NonNegativeDouble, SatCount };

constexpr std::string_view to_string(ScalarKind kind) noexcept {
    switch (kind) {
    case ScalarKind::Latitude: return "Latitude";
    case ScalarKind::Longitude: return "Longitude";
    case ScalarKind::Bearing: return "Bearing";
    case ScalarKind::NonNegativeDouble: return "NonNegativeDouble";
    case ScalarKind::SatCount: return "SatCount";
    }
    return "?";
}

/// Closed interval; `max` is +infinity when the type has no upper bound.
struct Interval {
    double min;
    double max;

    constexpr bool contains(double v) const noexcept { return v >= min && v <= max; }
};

constexpr Interval allowed_interval(ScalarKind kind) noexcept {
    switch (kind) {
    case ScalarKind::Latitude: return {-90.0, 90.0};
    case ScalarKind::Longitude: return {-180.0, 180.0};
    case ScalarKind::Bearing: return {0.0, 360.0};
    case ScalarKind::NonNegativeDouble: return {0.0, std::numeric_limits<double>::infinity()};
    case ScalarKind::SatCount: return {0.0, 12.0};
    }
    return {0.0, 0.0};
}

/// Which facet of the schema restriction a value broke.
enum class Facet { MinInclusive, MaxInclusive };

constexpr std::string_view to_string(Facet f) noexcept {
    return f == Facet::MinInclusive ? "minInclusive" : "maxInclusive";
}

class OutOfRangeError : public Error {
public:
    OutOfRangeError(ScalarKind kind, double value, Interval allowed, Facet facet)
        : Error(ErrorCode::OutOfRange, describe(kind, value, allowed)),
          kind_(kind), value_(value), allowed_(allowed), facet_(facet) {}

    ScalarKind kind() const noexcept { return kind_; }
    double value() const noexcept { return value_; }
    Interval allowed() const noexcept { return allowed_; }
    Facet facet() const noexcept { return facet_; }

private:
    static std::string describe(ScalarKind kind, double value, Interval allowed) {
        std::ostringstream out;
        out << to_string(kind) << " " << value << " outside [" << allowed.min << ", " << allowed.max << "]";
        return out.str();
    }

    ScalarKind kind_;
    double value_;
    Interval allowed_;
    Facet facet_;
};

/// Validates `value` against the value space of `kind` and returns it
/// unchanged. NaN fails both facets; it is reported as minInclusive.
inline double make_constrained(ScalarKind kind, double value) {
    const Interval allowed = allowed_interval(kind);
    if (std::isnan(value) || value < allowed.min)
        throw OutOfRangeError(kind, value, allowed, Facet::MinInclusive);
    if (value > allowed.max)
        throw OutOfRangeError(kind, value, allowed, Facet::MaxInclusive);
    if (kind == ScalarKind::SatCount && std::floor(value) != value)
        throw Error(ErrorCode::NotInteger, "SatCount must be an integer");
    return value;
}

/// Strongly typed wrapper around a schema-restricted double.
template <ScalarKind Kind>
class Constrained {
public:
    static constexpr ScalarKind kind = Kind;

    explicit Constrained(double value) : value_(make_constrained(Kind, value)) {}

    double value() const noexcept { return value_; }

    friend auto operator<=>(const Constrained&, const Constrained&) = default;

private:
    double value_;
};

using Latitude = Constrained<ScalarKind::Latitude>;
using Longitude = Constrained<ScalarKind::Longitude>;
using Bearing = Constrained<ScalarKind::Bearing>;
using NonNegativeDouble = Constrained<ScalarKind::NonNegativeDouble>;

/// Number of satellites visible, 0..12 inclusive.
class SatCount {
public:
    explicit SatCount(double value) : value_(static_cast<int>(make_constrained(ScalarKind::SatCount, value))) {}

    int value() const noexcept { return value_; }

    friend auto operator<=>(const SatCount&, const SatCount&) = default;

private:
    int value_;
};

}  // namespace gloss

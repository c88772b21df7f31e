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

#include <array>
#include <optional>
#include <string_view>

#include "gloss/scalars.hpp"

namespace gloss {

enum class AltitudeUnit { Metres, Feet };
enum class DistanceUnit { Metres, Kilometres, Miles, NauticalMiles };
enum class SpeedUnit { MetresPerSecond, KilometresPerHour, MilesPerHour, Knots };

template <class Unit>
struct UnitTraits;

// Each unit carries its wire token and its size in the canonical unit
// (metres, or metres per second) as an exact ratio.
struct UnitInfo {
    std::string_view token;
    double numerator;
    double denominator;
};

template <>
struct UnitTraits<AltitudeUnit> {
    static constexpr std::string_view kind_name = "Altitude";
    static constexpr bool non_negative = false;
    static constexpr AltitudeUnit default_unit = AltitudeUnit::Metres;
    static constexpr std::array<AltitudeUnit, 2> all{AltitudeUnit::Metres, AltitudeUnit::Feet};
    static constexpr UnitInfo info(AltitudeUnit u) {
        return u == AltitudeUnit::Metres ? UnitInfo{"M", 1.0, 1.0} : UnitInfo{"F", 0.3048, 1.0};
    }
};

template <>
struct UnitTraits<DistanceUnit> {
    static constexpr std::string_view kind_name = "Distance";
    static constexpr bool non_negative = true;
    static constexpr DistanceUnit default_unit = DistanceUnit::Metres;
    static constexpr std::array<DistanceUnit, 4> all{DistanceUnit::Metres, DistanceUnit::Kilometres,
                                                      DistanceUnit::Miles, DistanceUnit::NauticalMiles};
    static constexpr UnitInfo info(DistanceUnit u) {
        switch (u) {
        case DistanceUnit::Metres: return {"m", 1.0, 1.0};
        case DistanceUnit::Kilometres: return {"km", 1000.0, 1.0};
        case DistanceUnit::Miles: return {"miles", 1609.344, 1.0};
        case DistanceUnit::NauticalMiles: return {"nautical miles", 1852.0, 1.0};
        }
        return {"?", 1.0, 1.0};
    }
};

template <>
struct UnitTraits<SpeedUnit> {
    static constexpr std::string_view kind_name = "Speed";
    static constexpr bool non_negative = true;
    static constexpr SpeedUnit default_unit = SpeedUnit::Knots;
    static constexpr std::array<SpeedUnit, 4> all{SpeedUnit::MetresPerSecond, SpeedUnit::KilometresPerHour,
                                                   SpeedUnit::MilesPerHour, SpeedUnit::Knots};
    static constexpr UnitInfo info(SpeedUnit u) {
        switch (u) {
        case SpeedUnit::MetresPerSecond: return {"m/s", 1.0, 1.0};
        case SpeedUnit::KilometresPerHour: return {"km/h", 1000.0, 3600.0};
        case SpeedUnit::MilesPerHour: return {"miles/h", 1609.344, 3600.0};
        case SpeedUnit::Knots: return {"knots", 1852.0, 3600.0};
        }
        return {"?", 1.0, 1.0};
    }
};

template <class Unit>
constexpr std::string_view unit_token(Unit u) {
    return UnitTraits<Unit>::info(u).token;
}

template <class Unit>
constexpr std::optional<Unit> unit_from_token(std::string_view token) {
    for (Unit u : UnitTraits<Unit>::all)
        if (UnitTraits<Unit>::info(u).token == token)
            return u;
    return std::nullopt;
}

/// A value tagged with a unit from one closed enumeration. Distances and
/// speeds reject negative values; altitudes may be below the datum.
template <class Unit>
class Measure {
public:
    using unit_type = Unit;

    explicit Measure(double value, Unit unit = UnitTraits<Unit>::default_unit) : value_(value), unit_(unit) {
        if constexpr (UnitTraits<Unit>::non_negative)
            make_constrained(ScalarKind::NonNegativeDouble, value);
    }

    double value() const noexcept { return value_; }
    Unit unit() const noexcept { return unit_; }
    bool has_default_unit() const noexcept { return unit_ == UnitTraits<Unit>::default_unit; }

    friend bool operator==(const Measure&, const Measure&) = default;

private:
    double value_;
    Unit unit_;
};

using Altitude = Measure<AltitudeUnit>;
using Distance = Measure<DistanceUnit>;
using Speed = Measure<SpeedUnit>;

}  // namespace gloss

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

// Spherical-earth geometry over the spatial model. All distances are on a
// sphere of radius 6 371 000 m; altitude never enters.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gloss/gazetteer.hpp"
#include "gloss/model.hpp"
#include "gloss/units.hpp"

namespace gloss {

inline constexpr double kEarthRadiusMetres = 6'371'000.0;

namespace detail {

constexpr double to_radians(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
constexpr double to_degrees(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

inline const LatLongCoordinate& require_coordinate(const PhysicalLocation& p, const char* what) {
    if (!p.coordinate)
        throw Error(ErrorCode::MissingCoordinate, std::string(what) + " has no coordinate");
    return *p.coordinate;
}

}  // namespace detail

/// Haversine distance in metres. Symmetric by construction: the formula
/// only sees squared differences and the product of the two cosines.
inline double great_circle_metres(const LatLongCoordinate& a, const LatLongCoordinate& b) noexcept {
    const double phi1 = detail::to_radians(a.latitude.value());
    const double phi2 = detail::to_radians(b.latitude.value());
    const double dphi = phi2 - phi1;
    const double dlambda = detail::to_radians(b.longitude.value() - a.longitude.value());
    const double s1 = std::sin(dphi / 2.0), c1 = std::cos(dphi / 2.0);
    const double s2 = std::sin(dlambda / 2.0), c2 = std::cos(dlambda / 2.0);
    const double sm = std::sin((phi1 + phi2) / 2.0);
    // Haversine and its complement, each a sum of squares.
    const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
    const double k = c1 * c1 * c2 * c2 + sm * sm * s2 * s2;
    return 2.0 * kEarthRadiusMetres * std::atan2(std::sqrt(h), std::sqrt(k));
}

inline Distance great_circle_distance(const LatLongCoordinate& a, const LatLongCoordinate& b) {
    return Distance(great_circle_metres(a, b), DistanceUnit::Metres);
}

/// Forward azimuth from a towards b, degrees clockwise from true north, in
/// [0, 360).
inline Bearing initial_bearing(const LatLongCoordinate& a, const LatLongCoordinate& b) {
    if (a == b)
        throw Error(ErrorCode::CoincidentPoints, "bearing between coincident points is undefined");
    const double phi1 = detail::to_radians(a.latitude.value());
    const double phi2 = detail::to_radians(b.latitude.value());
    const double dlambda = detail::to_radians(b.longitude.value() - a.longitude.value());
    const double y = std::sin(dlambda) * std::cos(phi2);
    const double x = std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dlambda);
    double deg = std::fmod(detail::to_degrees(std::atan2(y, x)) + 360.0, 360.0);
    if (deg >= 360.0)
        deg = 0.0;
    return Bearing(deg);
}

/// Point reached by travelling `metres` from `start` along the great circle
/// with initial bearing `bearing_deg`.
inline LatLongCoordinate destination_point(const LatLongCoordinate& start, double bearing_deg, double metres) {
    const double delta = metres / kEarthRadiusMetres;
    const double theta = detail::to_radians(bearing_deg);
    const double phi1 = detail::to_radians(start.latitude.value());
    const double lambda1 = detail::to_radians(start.longitude.value());
    const double sin_phi2 = std::sin(phi1) * std::cos(delta) + std::cos(phi1) * std::sin(delta) * std::cos(theta);
    const double phi2 = std::asin(std::clamp(sin_phi2, -1.0, 1.0));
    const double lambda2 = lambda1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(phi1),
                                                std::cos(delta) - std::sin(phi1) * sin_phi2);
    double lon = std::remainder(detail::to_degrees(lambda2), 360.0);
    lon = std::clamp(lon, -180.0, 180.0);
    return LatLongCoordinate(std::clamp(detail::to_degrees(phi2), -90.0, 90.0), lon);
}

namespace detail {

struct LatLonBox {
    double south, north, west, east;
};

inline LatLonBox box_of(const RectangularBounds& r) {
    const auto& tl = require_coordinate(r.top_left, "rectangle topLeft");
    const auto& br = require_coordinate(r.bottom_right, "rectangle bottomRight");
    if (tl.longitude.value() > br.longitude.value())
        throw Error(ErrorCode::InvalidBounds, "rectangle crosses the antimeridian (topLeft east of bottomRight)");
    const double lat1 = tl.latitude.value();
    const double lat2 = br.latitude.value();
    return {std::min(lat1, lat2), std::max(lat1, lat2), tl.longitude.value(), br.longitude.value()};
}

[[noreturn]] inline void unsupported(const SpatialBounds& b) {
    if (std::holds_alternative<Horizon>(b))
        throw Error(ErrorCode::UnsupportedBounds, "horizon bounds carry no geometry");
    throw Error(ErrorCode::UnsupportedBounds, "bounds carry no shape");
}

// Distance from the circle centre to the nearest point of the box, using a
// local equirectangular projection centred on the circle.
inline double centre_to_box_metres(const LatLongCoordinate& c, const LatLonBox& box) {
    const double lat_c = c.latitude.value();
    const double lon_c = c.longitude.value();
    const double k = to_radians(1.0) * kEarthRadiusMetres;
    const double cos_lat = std::cos(to_radians(lat_c));
    const double x_min = (box.west - lon_c) * cos_lat * k;
    const double x_max = (box.east - lon_c) * cos_lat * k;
    const double y_min = (box.south - lat_c) * k;
    const double y_max = (box.north - lat_c) * k;
    const double dx = std::clamp(0.0, x_min, x_max);
    const double dy = std::clamp(0.0, y_min, y_max);
    return std::hypot(dx, dy);
}

}  // namespace detail

/// Closed containment test. Circles compare great-circle distance with the
/// radius; rectangles compare latitude and longitude intervals.
inline bool contains(const SpatialBounds& bounds, const LatLongCoordinate& p) {
    if (const auto* c = std::get_if<CircularBounds>(&bounds)) {
        const auto& centre = detail::require_coordinate(c->centre, "circle centre");
        return great_circle_metres(centre, p) <= metres(c->radius);
    }
    if (const auto* r = std::get_if<RectangularBounds>(&bounds)) {
        const auto box = detail::box_of(*r);
        const double lat = p.latitude.value();
        const double lon = p.longitude.value();
        return lat >= box.south && lat <= box.north && lon >= box.west && lon <= box.east;
    }
    detail::unsupported(bounds);
}

inline bool intersects(const Region& r1, const Region& r2) {
    const auto* c1 = std::get_if<CircularBounds>(&r1.bounds);
    const auto* c2 = std::get_if<CircularBounds>(&r2.bounds);
    const auto* q1 = std::get_if<RectangularBounds>(&r1.bounds);
    const auto* q2 = std::get_if<RectangularBounds>(&r2.bounds);
    if (!c1 && !q1)
        detail::unsupported(r1.bounds);
    if (!c2 && !q2)
        detail::unsupported(r2.bounds);

    if (c1 && c2) {
        const double d = great_circle_metres(detail::require_coordinate(c1->centre, "circle centre"),
                                             detail::require_coordinate(c2->centre, "circle centre"));
        return d <= metres(c1->radius) + metres(c2->radius);
    }
    if (q1 && q2) {
        const auto a = detail::box_of(*q1);
        const auto b = detail::box_of(*q2);
        return a.south <= b.north && b.south <= a.north && a.west <= b.east && b.west <= a.east;
    }
    const CircularBounds& circle = c1 ? *c1 : *c2;
    const RectangularBounds& rect = q1 ? *q1 : *q2;
    const auto& centre = detail::require_coordinate(circle.centre, "circle centre");
    return detail::centre_to_box_metres(centre, detail::box_of(rect)) <= metres(circle.radius);
}

/// Great-circle distance between the distinguished points of the regions
/// the two Wheres resolve to.
inline Distance distance_between_wheres(const Where& a, const Where& b, const Gazetteer& gazetteer = {}) {
    const Region ra = resolve_region(a, gazetteer);
    const Region rb = resolve_region(b, gazetteer);
    return great_circle_distance(detail::require_coordinate(ra.distinguished_point, "distinguished point"),
                                 detail::require_coordinate(rb.distinguished_point, "distinguished point"));
}

}  // namespace gloss

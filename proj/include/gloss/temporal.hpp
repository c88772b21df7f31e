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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gloss/error.hpp"

namespace gloss {

enum class TimeSystem { Utc, Swatch };

constexpr std::string_view to_string(TimeSystem s) noexcept { return s == TimeSystem::Utc ? "UTC" : "Swatch"; }

/// An instant with millisecond resolution, counted from the POSIX epoch.
/// Leap seconds do not exist here.
class Time {
public:
    constexpr Time() = default;
    constexpr explicit Time(std::int64_t epoch_ms, TimeSystem system = TimeSystem::Utc) noexcept
        : ms_(epoch_ms), system_(system) {}

    constexpr std::int64_t epoch_ms() const noexcept { return ms_; }
    constexpr TimeSystem system() const noexcept { return system_; }

    constexpr Time plus_ms(std::int64_t delta) const noexcept { return Time(ms_ + delta, system_); }

    friend constexpr bool operator==(const Time& a, const Time& b) noexcept = default;
    // Instants order by position on the time line alone.
    friend constexpr std::strong_ordering operator<=>(const Time& a, const Time& b) noexcept { return a.ms_ <=> b.ms_; }

private:
    std::int64_t ms_ = 0;
    TimeSystem system_ = TimeSystem::Utc;
};

/// Result of reading an xsd:dateTime lexical value.
struct ParsedDateTime {
    Time time;
    bool had_zone = false;
    bool truncated = false;  // more than three fractional digits were given
};

namespace detail {

inline bool read_digits(std::string_view s, std::size_t& pos, std::size_t count, int& out) {
    if (pos + count > s.size())
        return false;
    int v = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const char c = s[pos + i];
        if (c < '0' || c > '9')
            return false;
        v = v * 10 + (c - '0');
    }
    pos += count;
    out = v;
    return true;
}

inline bool expect(std::string_view s, std::size_t& pos, char c) {
    if (pos >= s.size() || s[pos] != c)
        return false;
    ++pos;
    return true;
}

[[noreturn]] inline void bad_datetime(std::string_view text) {
    throw Error(ErrorCode::MalformedDateTime, "'" + std::string(text) + "' is not an xsd:dateTime");
}

// hh:mm:ss[.fff...] ; returns milliseconds since midnight.
inline std::int64_t read_clock(std::string_view s, std::size_t& pos, bool& truncated, bool& ok) {
    int hh = 0, mm = 0, ss = 0;
    ok = read_digits(s, pos, 2, hh) && expect(s, pos, ':') && read_digits(s, pos, 2, mm) && expect(s, pos, ':') &&
         read_digits(s, pos, 2, ss);
    if (!ok || hh > 23 || mm > 59 || ss > 59) {
        ok = false;
        return 0;
    }
    int ms = 0;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::size_t digits = 0;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            if (digits < 3)
                ms = ms * 10 + (s[pos] - '0');
            else
                truncated = true;
            ++digits;
            ++pos;
        }
        if (digits == 0) {
            ok = false;
            return 0;
        }
        for (std::size_t d = digits; d < 3; ++d)
            ms *= 10;
    }
    return ((static_cast<std::int64_t>(hh) * 60 + mm) * 60 + ss) * 1000 + ms;
}

// Z or (+|-)hh:mm ; returns offset in minutes east of UTC.
inline bool read_zone(std::string_view s, std::size_t& pos, int& offset_minutes, bool& had_zone) {
    had_zone = false;
    offset_minutes = 0;
    if (pos == s.size())
        return true;
    if (s[pos] == 'Z') {
        ++pos;
        had_zone = true;
        return true;
    }
    if (s[pos] != '+' && s[pos] != '-')
        return false;
    const int sign = s[pos] == '-' ? -1 : 1;
    ++pos;
    int zh = 0, zm = 0;
    if (!read_digits(s, pos, 2, zh) || !expect(s, pos, ':') || !read_digits(s, pos, 2, zm) || zh > 14 || zm > 59)
        return false;
    offset_minutes = sign * (zh * 60 + zm);
    had_zone = true;
    return true;
}

inline std::string_view trim(std::string_view s) {
    const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
    while (!s.empty() && ws(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && ws(s.back()))
        s.remove_suffix(1);
    return s;
}

}  // namespace detail

/// Reads `YYYY-MM-DDThh:mm:ss[.f+][Z|(+|-)hh:mm]`. A value without a zone
/// designator is taken to be UTC. Sub-millisecond digits are truncated.
inline ParsedDateTime parse_datetime(std::string_view text) {
    using namespace std::chrono;
    const std::string_view s = detail::trim(text);
    std::size_t pos = 0;
    int y = 0, mo = 0, d = 0;
    if (!detail::read_digits(s, pos, 4, y) || !detail::expect(s, pos, '-') || !detail::read_digits(s, pos, 2, mo) ||
        !detail::expect(s, pos, '-') || !detail::read_digits(s, pos, 2, d) || !detail::expect(s, pos, 'T'))
        detail::bad_datetime(text);
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok())
        detail::bad_datetime(text);
    ParsedDateTime out;
    bool ok = false;
    const std::int64_t clock_ms = detail::read_clock(s, pos, out.truncated, ok);
    int offset = 0;
    if (!ok || !detail::read_zone(s, pos, offset, out.had_zone) || pos != s.size())
        detail::bad_datetime(text);
    const std::int64_t days = sys_days{ymd}.time_since_epoch().count();
    out.time = Time(days * 86'400'000 + clock_ms - static_cast<std::int64_t>(offset) * 60'000);
    return out;
}

/// Canonical rendering: UTC with a `Z` designator, fractional seconds only
/// when non-zero and without trailing zeros.
inline std::string format_datetime(const Time& t) {
    using namespace std::chrono;
    const std::int64_t ms = t.epoch_ms();
    std::int64_t days = ms / 86'400'000;
    std::int64_t rem = ms % 86'400'000;
    if (rem < 0) {
        rem += 86'400'000;
        --days;
    }
    const year_month_day ymd{sys_days{std::chrono::days{days}}};
    const int hh = static_cast<int>(rem / 3'600'000);
    const int mm = static_cast<int>(rem / 60'000 % 60);
    const int ss = static_cast<int>(rem / 1000 % 60);
    const int frac = static_cast<int>(rem % 1000);
    char buf[48];
    int n = std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", static_cast<int>(ymd.year()),
                          static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), hh, mm, ss);
    std::string out(buf, static_cast<std::size_t>(n));
    if (frac != 0) {
        std::snprintf(buf, sizeof buf, ".%03d", frac);
        std::string f(buf);
        while (f.back() == '0')
            f.pop_back();
        out += f;
    }
    out += 'Z';
    return out;
}

/// A time of day without a date, seconds since midnight in [0, 86400).
class TimeOfDay {
public:
    explicit TimeOfDay(double seconds) : seconds_(seconds) {
        if (!(seconds >= 0.0 && seconds < 86400.0))
            throw Error(ErrorCode::InvalidTimeOfDay, "time of day must lie in [0, 86400) seconds");
    }

    double seconds() const noexcept { return seconds_; }

    friend bool operator==(const TimeOfDay&, const TimeOfDay&) = default;
    friend auto operator<=>(const TimeOfDay&, const TimeOfDay&) = default;

private:
    double seconds_;
};

/// Reads xsd:time, `hh:mm:ss[.fff][zone]`. Zones are accepted and ignored.
inline TimeOfDay parse_time_of_day(std::string_view text) {
    const std::string_view s = detail::trim(text);
    std::size_t pos = 0;
    bool truncated = false, ok = false, zoned = false;
    int offset = 0;
    const std::int64_t ms = detail::read_clock(s, pos, truncated, ok);
    if (!ok || !detail::read_zone(s, pos, offset, zoned) || pos != s.size())
        throw Error(ErrorCode::MalformedDateTime, "'" + std::string(text) + "' is not an xsd:time");
    return TimeOfDay(static_cast<double>(ms) / 1000.0);
}

inline std::string format_time_of_day(const TimeOfDay& t) {
    const auto ms = static_cast<std::int64_t>(std::llround(t.seconds() * 1000.0));
    return format_datetime(Time(ms)).substr(11);
}

/// A closed interval [start, end] on the time line.
class Period {
public:
    Period(Time start, Time end) : start_(start), end_(end) {
        if (end < start)
            throw Error(ErrorCode::InvalidPeriod, "period start " + format_datetime(start) + " is after end " +
                                                      format_datetime(end));
    }

    Time start() const noexcept { return start_; }
    Time end() const noexcept { return end_; }

    friend bool operator==(const Period&, const Period&) = default;

private:
    Time start_;
    Time end_;
};

inline bool period_contains(const Period& p, const Time& t) noexcept { return p.start() <= t && t <= p.end(); }

/// A non-empty set of periods. Member periods keep insertion order;
/// duplicates are dropped.
class TemporalRegion {
public:
    explicit TemporalRegion(std::vector<Period> periods) {
        for (auto& p : periods)
            if (std::find(periods_.begin(), periods_.end(), p) == periods_.end())
                periods_.push_back(p);
        if (periods_.empty())
            throw Error(ErrorCode::EmptyTemporalRegion, "a temporal region needs at least one period");
    }

    const std::vector<Period>& periods() const noexcept { return periods_; }

    Time earliest() const {
        return std::min_element(periods_.begin(), periods_.end(),
                                [](const Period& a, const Period& b) { return a.start() < b.start(); })
            ->start();
    }

    friend bool operator==(const TemporalRegion&, const TemporalRegion&) = default;

private:
    std::vector<Period> periods_;
};

/// Temporal counterpart of spatial bounds: one or more periods.
using TemporalBounds = TemporalRegion;

inline bool region_contains(const TemporalRegion& r, const Time& t) noexcept {
    return std::any_of(r.periods().begin(), r.periods().end(), [&](const Period& p) { return period_contains(p, t); });
}

/// A named time ("lunchtime") together with the region it stands for. The
/// name is opaque.
struct SymbolicTime {
    std::string name;
    TemporalRegion denotes;

    friend bool operator==(const SymbolicTime&, const SymbolicTime&) = default;
};

using When = std::variant<Time, SymbolicTime, TemporalRegion>;

/// The instant a When is ordered by: the instant itself, or the earliest
/// start of the periods it denotes.
inline Time reference_instant(const When& w) {
    struct Visitor {
        Time operator()(const Time& t) const { return t; }
        Time operator()(const SymbolicTime& s) const { return s.denotes.earliest(); }
        Time operator()(const TemporalRegion& r) const { return r.earliest(); }
    };
    return std::visit(Visitor{}, w);
}

/// Swatch Internet Time: the day at UTC+1 split into 1000 beats of 86.4 s.
/// Result lies in [0, 1000).
inline double utc_to_swatch(const Time& t) noexcept {
    constexpr std::int64_t day_ms = 86'400'000;
    std::int64_t of_day = (t.epoch_ms() + 3'600'000) % day_ms;
    if (of_day < 0)
        of_day += day_ms;
    return static_cast<double>(of_day) / 86'400.0;
}

/// "@813.88" style, two decimals, truncated so the result never reads @1000.
inline std::string format_swatch(const Time& t) {
    const double beats = std::floor(utc_to_swatch(t) * 100.0) / 100.0;
    char buf[16];
    std::snprintf(buf, sizeof buf, "@%06.2f", beats);
    return buf;
}

}  // namespace gloss

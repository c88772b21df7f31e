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

// Reading, writing and validating locationEvent documents and spaceModel
// fragments. The two schemas are compiled by hand into the Decoder below;
// the schema text itself lives in schemas/.

#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gloss/gazetteer.hpp"
#include "gloss/model.hpp"
#include "gloss/temporal.hpp"
#include "gloss/xml/document.hpp"

namespace gloss {

inline constexpr std::string_view kGlossNamespace = "http://www-systems.dcs.st-and.ac.uk/gloss/xml/2003-07/";
inline constexpr std::string_view kXsiNamespace = "http://www.w3.org/2001/XMLSchema-instance";

struct ProcessingStep {
    Time date_time;
    std::string description;

    friend bool operator==(const ProcessingStep&, const ProcessingStep&) = default;
};

/// One sighting: when, where, and whatever the receiver reported. The
/// optional fields appear on the wire at most once each, in this order.
struct Observation {
    Time time_of_observation;
    Where where;
    std::optional<Altitude> altitude;
    std::optional<Speed> speed;
    std::optional<Bearing> course;  // direction of travel, true bearing
    std::optional<Bearing> magnetic_variation;
    std::optional<SatCount> satellites_visible;
    std::optional<float> pdop;
    std::optional<float> hdop;
    std::optional<float> vdop;
    std::optional<float> hpe;  // metres
    std::optional<float> vpe;  // metres

    friend bool operator==(const Observation&, const Observation&) = default;
};

struct LocationEvent {
    Id id;
    std::vector<ProcessingStep> processing_sequence;  // oldest first
    std::vector<Observation> observations;            // at least one

    friend bool operator==(const LocationEvent&, const LocationEvent&) = default;
};

// Rule names used in violations. Facet names match the schema.
namespace rules {
inline constexpr std::string_view kNotWellFormed = "NotWellFormed";
inline constexpr std::string_view kNamespace = "namespace";
inline constexpr std::string_view kUnexpectedElement = "unexpectedElement";
inline constexpr std::string_view kUnexpectedAttribute = "unexpectedAttribute";
inline constexpr std::string_view kUnexpectedText = "unexpectedText";
inline constexpr std::string_view kMinOccurs = "minOccurs";
inline constexpr std::string_view kMaxOccurs = "maxOccurs";
inline constexpr std::string_view kChoice = "choice";
inline constexpr std::string_view kDatatype = "datatype";
inline constexpr std::string_view kMinInclusive = "minInclusive";
inline constexpr std::string_view kMaxInclusive = "maxInclusive";
inline constexpr std::string_view kPattern = "pattern";
inline constexpr std::string_view kEnumeration = "enumeration";
}  // namespace rules

struct Violation {
    std::string path;
    std::string rule;
    std::string detail;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<std::string> warnings;

    bool ok() const noexcept { return violations.empty(); }
};

/// Thrown by the parsers when a document does not conform. Carries every
/// violation found, not just the first.
class SchemaError : public Error {
public:
    explicit SchemaError(ValidationReport report)
        : Error(report.violations.empty() ? ErrorCode::SchemaViolation : code_for(report.violations.front()),
                summary(report)),
          report_(std::move(report)) {}

    const ValidationReport& report() const noexcept { return report_; }
    const Violation& first() const { return report_.violations.front(); }

private:
    static ErrorCode code_for(const Violation& v) {
        return v.rule == rules::kNotWellFormed ? ErrorCode::NotWellFormed : ErrorCode::SchemaViolation;
    }
    static std::string summary(const ValidationReport& r) {
        if (r.violations.empty())
            return "schema violation";
        const auto& v = r.violations.front();
        std::string s = v.path + " [" + v.rule + "] " + v.detail;
        if (r.violations.size() > 1)
            s += " (+" + std::to_string(r.violations.size() - 1) + " more)";
        return s;
    }

    ValidationReport report_;
};

// --- Lexical helpers -------------------------------------------------------

namespace wire_detail {

inline std::string_view collapse(std::string_view s) { return xml::detail::trim(s); }

// xsd:double / xsd:float lexical space.
inline bool is_decimal_lexical(std::string_view s) {
    if (s == "INF" || s == "-INF" || s == "+INF" || s == "NaN")
        return true;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-'))
        ++i;
    std::size_t mantissa = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        ++i;
        ++mantissa;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            ++i;
            ++mantissa;
        }
    }
    if (mantissa == 0)
        return false;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-'))
            ++i;
        std::size_t exp = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            ++i;
            ++exp;
        }
        if (exp == 0)
            return false;
    }
    return i == s.size();
}

template <class T>
std::optional<T> read_floating(std::string_view raw) {
    const std::string_view s = collapse(raw);
    if (!is_decimal_lexical(s))
        return std::nullopt;
    if (s == "INF" || s == "+INF")
        return std::numeric_limits<T>::infinity();
    if (s == "-INF")
        return -std::numeric_limits<T>::infinity();
    if (s == "NaN")
        return std::numeric_limits<T>::quiet_NaN();
    std::string_view body = s;
    if (body.front() == '+')
        body.remove_prefix(1);
    T value{};
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (ptr != body.data() + body.size())
        return std::nullopt;
    if (ec == std::errc::result_out_of_range) {
        // Underflow reads as signed zero; overflow is a value outside the type.
        if (std::abs(value) < T(1))
            return body.front() == '-' ? -T(0) : T(0);
        return std::nullopt;
    }
    if (ec != std::errc{})
        return std::nullopt;
    return value;
}

template <class T>
std::string format_floating(T value) {
    if (std::isnan(value))
        return "NaN";
    if (std::isinf(value))
        return value > 0 ? "INF" : "-INF";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

// xsd:integer; the magnitude is clamped so huge inputs still fail the range
// check with the right facet.
inline std::optional<double> read_integer(std::string_view raw) {
    const std::string_view s = collapse(raw);
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        negative = s[i] == '-';
        ++i;
    }
    if (i == s.size())
        return std::nullopt;
    double value = 0.0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            return std::nullopt;
        value = std::min(value * 10.0 + (s[i] - '0'), 1e18);
    }
    return negative ? -value : value;
}

inline std::optional<bool> read_boolean(std::string_view raw) {
    const std::string_view s = collapse(raw);
    if (s == "true" || s == "1")
        return true;
    if (s == "false" || s == "0")
        return false;
    return std::nullopt;
}

}  // namespace wire_detail

// --- Decoding --------------------------------------------------------------

/// Schema-directed reader from an XML tree into the model. Records every
/// violation it meets and keeps going; a nullopt result means the subtree
/// was invalid.
class Decoder {
public:
    Decoder(ValidationReport& report, std::string expected_ns)
        : report_(report), ns_(std::move(expected_ns)) {}

    std::optional<LocationEvent> location_event(const xml::Element& root) {
        const std::string path = "/" + root.local;
        if (!check_root(root, "locationEvent", path))
            return std::nullopt;
        check_attributes(root, path, {});
        Children kids(*this, root, path);

        std::optional<Id> id;
        if (const auto* e = kids.required("ID"))
            id = identity(*e, kids.path_of(*e));

        std::vector<ProcessingStep> steps;
        bool steps_ok = true;
        if (const auto* e = kids.required("processingSequence")) {
            const std::string p = kids.path_of(*e);
            check_attributes(*e, p, {});
            Children sk(*this, *e, p);
            for (const auto* step_el : sk.repeated("processingStep", 0)) {
                auto step = processing_step(*step_el, sk.path_of(*step_el));
                if (step)
                    steps.push_back(std::move(*step));
                else
                    steps_ok = false;
            }
            sk.finish();
        } else {
            steps_ok = false;
        }

        std::vector<Observation> observations;
        bool obs_ok = true;
        for (const auto* obs_el : kids.repeated("observation", 1)) {
            auto obs = observation(*obs_el, kids.path_of(*obs_el));
            if (obs)
                observations.push_back(std::move(*obs));
            else
                obs_ok = false;
        }
        kids.finish();

        if (!id || !steps_ok || !obs_ok || observations.empty())
            return std::nullopt;
        return LocationEvent{std::move(*id), std::move(steps), std::move(observations)};
    }

    std::optional<Where> where(const xml::Element& e, const std::string& path) {
        check_attributes(e, path, {"name", "glossURN"});
        Where w;
        if (const auto* a = e.attribute("name"))
            w.name = a->value;
        if (const auto* a = e.attribute("glossURN"))
            w.gloss_urn = std::string(wire_detail::collapse(a->value));
        Children kids(*this, e, path);
        const auto* arm = kids.choice({"symbolicLocation", "physicalLocation", "region", "locale"}, false);
        kids.finish();
        if (arm == nullptr)
            return kids.failed() ? std::nullopt : std::optional<Where>(std::move(w));
        const std::string p = kids.path_of(*arm);
        if (arm->local == "symbolicLocation") {
            auto s = symbolic_location(*arm, p);
            if (!s)
                return std::nullopt;
            w.payload = std::move(*s);
        } else if (arm->local == "physicalLocation") {
            auto pl = physical_location(*arm, p);
            if (!pl)
                return std::nullopt;
            w.payload = std::move(*pl);
        } else if (arm->local == "region") {
            auto r = region(*arm, p);
            if (!r)
                return std::nullopt;
            w.payload = std::move(*r);
        } else {
            auto l = locale(*arm, p);
            if (!l)
                return std::nullopt;
            w.payload = std::move(*l);
        }
        if (kids.failed())
            return std::nullopt;
        return w;
    }

    bool check_root(const xml::Element& root, std::string_view name, const std::string& path) {
        if (root.ns != ns_) {
            violation(path, rules::kNamespace,
                      "root element is in namespace '" + root.ns + "', expected '" + ns_ + "'");
            return false;
        }
        if (root.local != name) {
            violation(path, rules::kUnexpectedElement, "expected root element <" + std::string(name) + ">");
            return false;
        }
        return true;
    }

    void warn(const std::string& w) { report_.warnings.push_back(w); }

private:
    void violation(const std::string& path, std::string_view rule, std::string detail) {
        report_.violations.push_back(Violation{path, std::string(rule), std::move(detail)});
    }

    // Walks the element children of one element in schema order.
    class Children {
    public:
        Children(Decoder& d, const xml::Element& parent, std::string path) : d_(d), path_(std::move(path)) {
            for (const auto& n : parent.children)
                if (const auto* el = n.element())
                    kids_.push_back(el);
            if (parent.has_significant_text()) {
                d_.violation(path_, rules::kUnexpectedText, "character data where only elements are allowed");
                failed_ = true;
            }
        }

        std::string path_of(const xml::Element& e) const {
            for (const auto& [el, p] : paths_)
                if (el == &e)
                    return p;
            return path_ + "/" + e.local;
        }

        bool failed() const noexcept { return failed_; }

        // Next element if it has this local name; a namespace mismatch is
        // reported and the element still consumed.
        const xml::Element* optional(std::string_view name) {
            if (pos_ >= kids_.size() || kids_[pos_]->local != name)
                return nullptr;
            const xml::Element* el = take(std::string(name));
            if (pos_ < kids_.size() && kids_[pos_]->local == name) {
                while (pos_ < kids_.size() && kids_[pos_]->local == name) {
                    d_.violation(path_ + "/" + std::string(name), rules::kMaxOccurs,
                                 "<" + std::string(name) + "> may appear at most once");
                    ++pos_;
                }
                failed_ = true;
            }
            return el;
        }

        const xml::Element* required(std::string_view name) {
            if (pos_ >= kids_.size() || kids_[pos_]->local != name) {
                d_.violation(path_ + "/" + std::string(name), rules::kMinOccurs,
                             "missing required element <" + std::string(name) + ">");
                failed_ = true;
                return nullptr;
            }
            return optional(name);
        }

        std::vector<const xml::Element*> repeated(std::string_view name, std::size_t min_occurs) {
            std::vector<const xml::Element*> out;
            while (pos_ < kids_.size() && kids_[pos_]->local == name)
                out.push_back(take(std::string(name) + "[" + std::to_string(out.size() + 1) + "]"));
            if (out.size() < min_occurs) {
                d_.violation(path_ + "/" + std::string(name), rules::kMinOccurs,
                             "<" + std::string(name) + "> must appear at least " + std::to_string(min_occurs) +
                                 " time(s)");
                failed_ = true;
            }
            return out;
        }

        // One arm of a choice. Reports when a second arm follows.
        const xml::Element* choice(std::initializer_list<std::string_view> arms, bool required_choice) {
            const auto is_arm = [&](const xml::Element* e) {
                return std::find(arms.begin(), arms.end(), e->local) != arms.end();
            };
            if (pos_ >= kids_.size() || !is_arm(kids_[pos_])) {
                if (required_choice) {
                    std::string list;
                    for (auto a : arms)
                        list += (list.empty() ? "" : ", ") + std::string(a);
                    d_.violation(path_, rules::kMinOccurs, "expected one of: " + list);
                    failed_ = true;
                }
                return nullptr;
            }
            const xml::Element* el = take(kids_[pos_]->local);
            while (pos_ < kids_.size() && is_arm(kids_[pos_])) {
                d_.violation(path_ + "/" + kids_[pos_]->local, rules::kChoice,
                             "only one of the choice elements may be present");
                failed_ = true;
                ++pos_;
            }
            return el;
        }

        // Everything not consumed is out of place.
        std::vector<const xml::Element*> rest() {
            std::vector<const xml::Element*> out(kids_.begin() + static_cast<std::ptrdiff_t>(pos_), kids_.end());
            pos_ = kids_.size();
            return out;
        }

        void finish() {
            for (; pos_ < kids_.size(); ++pos_) {
                d_.violation(path_ + "/" + kids_[pos_]->local, rules::kUnexpectedElement,
                             "element <" + kids_[pos_]->local + "> is not allowed here");
                failed_ = true;
            }
        }

    private:
        const xml::Element* take(const std::string& step) {
            const xml::Element* el = kids_[pos_++];
            const std::string p = path_ + "/" + step;
            paths_.emplace_back(el, p);
            if (el->ns != d_.ns_) {
                d_.violation(p, rules::kNamespace, "element is in namespace '" + el->ns + "', expected '" + d_.ns_ + "'");
                failed_ = true;
            }
            return el;
        }

        Decoder& d_;
        std::string path_;
        std::vector<const xml::Element*> kids_;
        std::vector<std::pair<const xml::Element*, std::string>> paths_;
        std::size_t pos_ = 0;
        bool failed_ = false;
    };

    bool check_attributes(const xml::Element& e, const std::string& path, std::initializer_list<std::string_view> allowed) {
        bool ok = true;
        for (const auto& a : e.attributes) {
            if (a.ns == kXsiNamespace)
                continue;
            if (a.ns.empty() && std::find(allowed.begin(), allowed.end(), a.local) != allowed.end())
                continue;
            violation(path, rules::kUnexpectedAttribute, "attribute '" + a.qname + "' is not allowed here");
            ok = false;
        }
        return ok;
    }

    // Text content of a simple-typed element.
    std::optional<std::string> simple_text(const xml::Element& e, const std::string& path,
                                           std::initializer_list<std::string_view> attrs = {}) {
        bool ok = check_attributes(e, path, attrs);
        for (const auto& n : e.children)
            if (const auto* child = n.element()) {
                violation(path + "/" + child->local, rules::kUnexpectedElement, "simple-typed element has child elements");
                ok = false;
            }
        if (!ok)
            return std::nullopt;
        return e.text();
    }

    std::optional<std::string> string_value(const xml::Element& e, const std::string& path) {
        return simple_text(e, path);
    }

    std::optional<double> constrained_value(const xml::Element& e, const std::string& path, ScalarKind kind,
                                            std::initializer_list<std::string_view> attrs = {}) {
        auto text = simple_text(e, path, attrs);
        if (!text)
            return std::nullopt;
        std::optional<double> v = kind == ScalarKind::SatCount ? wire_detail::read_integer(*text)
                                                              : wire_detail::read_floating<double>(*text);
        if (!v) {
            violation(path, rules::kDatatype,
                      "'" + std::string(wire_detail::collapse(*text)) + "' is not a valid " +
                          (kind == ScalarKind::SatCount ? "xsd:integer" : "xsd:double"));
            return std::nullopt;
        }
        return check_range(path, kind, *v);
    }

    std::optional<double> check_range(const std::string& path, ScalarKind kind, double v) {
        try {
            return make_constrained(kind, v);
        } catch (const OutOfRangeError& err) {
            const Interval iv = err.allowed();
            const double bound = err.facet() == Facet::MinInclusive ? iv.min : iv.max;
            violation(path, to_string(err.facet()),
                      std::string(to_string(kind)) + " value " + wire_detail::format_floating(v) + " violates " +
                          std::string(to_string(err.facet())) + "=" + wire_detail::format_floating(bound));
        } catch (const Error& err) {
            violation(path, rules::kDatatype, err.what());
        }
        return std::nullopt;
    }

    std::optional<double> plain_double(const xml::Element& e, const std::string& path,
                                       std::initializer_list<std::string_view> attrs = {}) {
        auto text = simple_text(e, path, attrs);
        if (!text)
            return std::nullopt;
        auto v = wire_detail::read_floating<double>(*text);
        if (!v)
            violation(path, rules::kDatatype, "'" + std::string(wire_detail::collapse(*text)) + "' is not a valid xsd:double");
        return v;
    }

    std::optional<float> float_value(const xml::Element& e, const std::string& path) {
        auto text = simple_text(e, path);
        if (!text)
            return std::nullopt;
        auto v = wire_detail::read_floating<float>(*text);
        if (!v)
            violation(path, rules::kDatatype, "'" + std::string(wire_detail::collapse(*text)) + "' is not a valid xsd:float");
        return v;
    }

    std::optional<Time> datetime_value(const xml::Element& e, const std::string& path) {
        auto text = simple_text(e, path);
        if (!text)
            return std::nullopt;
        try {
            const auto parsed = parse_datetime(*text);
            if (!parsed.had_zone)
                warn(path + ": dateTime '" + std::string(wire_detail::collapse(*text)) + "' has no zone; read as UTC");
            if (parsed.truncated)
                warn(path + ": fractional seconds beyond milliseconds were dropped");
            return parsed.time;
        } catch (const Error& err) {
            violation(path, rules::kDatatype, err.what());
            return std::nullopt;
        }
    }

    std::optional<TimeOfDay> time_value(const xml::Element& e, const std::string& path) {
        auto text = simple_text(e, path);
        if (!text)
            return std::nullopt;
        try {
            return parse_time_of_day(*text);
        } catch (const Error& err) {
            violation(path, rules::kDatatype, err.what());
            return std::nullopt;
        }
    }

    template <class Unit>
    std::optional<Measure<Unit>> measure(const xml::Element& e, const std::string& path) {
        Unit unit = UnitTraits<Unit>::default_unit;
        bool ok = true;
        if (const auto* a = e.attribute("unit")) {
            const auto token = wire_detail::collapse(a->value);
            if (auto u = unit_from_token<Unit>(token)) {
                unit = *u;
            } else {
                violation(path, rules::kEnumeration,
                          "'" + std::string(token) + "' is not a " + std::string(UnitTraits<Unit>::kind_name) + " unit");
                ok = false;
            }
        }
        std::optional<double> v = UnitTraits<Unit>::non_negative
                                      ? constrained_value(e, path, ScalarKind::NonNegativeDouble, {"unit"})
                                      : plain_double(e, path, {"unit"});
        if (!v || !ok)
            return std::nullopt;
        return Measure<Unit>(*v, unit);
    }

    std::optional<Id> identity(const xml::Element& e, const std::string& path) {
        check_attributes(e, path, {});
        Children kids(*this, e, path);
        const auto* arm = kids.choice({"bitString", "GUID", "phone", "email"}, true);
        kids.finish();
        if (arm == nullptr || kids.failed())
            return std::nullopt;
        const std::string p = kids.path_of(*arm);
        auto text = string_value(*arm, p);
        if (!text)
            return std::nullopt;
        const IdKind kind = *id_kind_from_name(arm->local);
        try {
            return make_id(kind, *text);
        } catch (const Error& err) {
            violation(p, rules::kPattern, err.what());
            return std::nullopt;
        }
    }

    std::optional<ProcessingStep> processing_step(const xml::Element& e, const std::string& path) {
        check_attributes(e, path, {});
        Children kids(*this, e, path);
        std::optional<Time> when;
        std::optional<std::string> description;
        if (const auto* d = kids.required("dateTime"))
            when = datetime_value(*d, kids.path_of(*d));
        if (const auto* d = kids.required("description"))
            description = string_value(*d, kids.path_of(*d));
        kids.finish();
        if (!when || !description || kids.failed())
            return std::nullopt;
        return ProcessingStep{*when, std::move(*description)};
    }

    std::optional<Observation> observation(const xml::Element& e, const std::string& path) {
        check_attributes(e, path, {});
        Children kids(*this, e, path);
        bool ok = true;
        std::optional<Time> when;
        std::optional<Where> place;
        if (const auto* t = kids.required("timeOfObservation"))
            when = datetime_value(*t, kids.path_of(*t));
        if (const auto* w = kids.required("where"))
            place = where(*w, kids.path_of(*w));

        std::optional<Altitude> altitude;
        std::optional<Speed> speed;
        std::optional<Bearing> course, variation;
        std::optional<SatCount> sats;
        std::optional<float> pdop, hdop, vdop, hpe, vpe;

        if (const auto* x = kids.optional("altitude")) {
            altitude = measure<AltitudeUnit>(*x, kids.path_of(*x));
            ok = ok && altitude.has_value();
        }
        if (const auto* x = kids.optional("speed")) {
            speed = measure<SpeedUnit>(*x, kids.path_of(*x));
            ok = ok && speed.has_value();
        }
        const auto bearing_field = [&](std::string_view name, std::optional<Bearing>& out) {
            if (const auto* x = kids.optional(name)) {
                auto v = constrained_value(*x, kids.path_of(*x), ScalarKind::Bearing);
                if (v)
                    out = Bearing(*v);
                else
                    ok = false;
            }
        };
        bearing_field("course", course);
        bearing_field("magneticVariation", variation);
        if (const auto* x = kids.optional("satellitesVisible")) {
            auto v = constrained_value(*x, kids.path_of(*x), ScalarKind::SatCount);
            if (v)
                sats = SatCount(*v);
            else
                ok = false;
        }
        const auto float_field = [&](std::string_view name, std::optional<float>& out) {
            if (const auto* x = kids.optional(name)) {
                out = float_value(*x, kids.path_of(*x));
                ok = ok && out.has_value();
            }
        };
        float_field("PDOP", pdop);
        float_field("HDOP", hdop);
        float_field("VDOP", vdop);
        float_field("HPE", hpe);
        float_field("VPE", vpe);
        kids.finish();

        if (!ok || !when || !place || kids.failed())
            return std::nullopt;
        return Observation{*when, std::move(*place), altitude, speed, course, variation, sats,
                           pdop, hdop, vdop, hpe, vpe};
    }

    std::optional<LatLongCoordinate> lat_long(const xml::Element& e, const std::string& path) {
        check_attributes(e, path, {});
        Children kids(*this, e, path);
        std::optional<double> lat, lon;
        if (const auto* x = kids.required("latitude"))
            lat = constrained_value(*x, kids.path_of(*x), ScalarKind::Latitude);
        if (const auto* x = kids.required("longitude"))
            lon = constrained_value(*x, kids.path_of(*x), ScalarKind::Longitude);
        kids.finish();
        if (!lat || !lon || kids.failed())
            return std::nullopt;
        return LatLongCoordinate(*lat, *lon);
    }

    std::optional<PhysicalLocation> physical_location(const xml::Element& e, const std::string& path) {
        check_attributes(e, path, {});
        Children kids(*this, e, path);
        PhysicalLocation out;
        if (const auto* coord = kids.optional("coordinate")) {
            const std::string cp = kids.path_of(*coord);
            check_attributes(*coord, cp, {});
            Children ck(*this, *coord, cp);
            if (const auto* ll = ck.choice({"latLongCoordinate"}, false)) {
                auto c = lat_long(*ll, ck.path_of(*ll));
                if (!c)
                    return std::nullopt;
                out.coordinate = *c;
            }
            ck.finish();
            if (ck.failed())
                return std::nullopt;
        }
        kids.finish();
        if (kids.failed())
            return std::nullopt;
        return out;
    }

    std::optional<Region> region(const xml::Element& e, const std::string& path) {
        check_attributes(e, path, {});
        Children kids(*this, e, path);
        std::optional<PhysicalLocation> point;
        std::optional<SpatialBounds> bounds;
        if (const auto* x = kids.required("distinguishedPoint"))
            point = physical_location(*x, kids.path_of(*x));
        if (const auto* x = kids.required("bounds"))
            bounds = spatial_bounds(*x, kids.path_of(*x));
        kids.finish();
        if (!point || !bounds || kids.failed())
            return std::nullopt;
        return Region{std::move(*point), std::move(*bounds)};
    }

    std::optional<SpatialBounds> spatial_bounds(const xml::Element& e, const std::string& path) {
        check_attributes(e, path, {});
        Children kids(*this, e, path);
        const auto* arm = kids.choice({"horizon", "circularBounds", "rectangularBounds"}, false);
        kids.finish();
        if (kids.failed())
            return std::nullopt;
        if (arm == nullptr)
            return SpatialBounds{NoBounds{}};
        const std::string p = kids.path_of(*arm);
        if (arm->local == "horizon") {
            auto text = string_value(*arm, p);
            if (!text)
                return std::nullopt;
            return SpatialBounds{Horizon{std::move(*text)}};
        }
        check_attributes(*arm, p, {});
        Children ak(*this, *arm, p);
        if (arm->local == "circularBounds") {
            std::optional<PhysicalLocation> centre;
            std::optional<Distance> radius;
            if (const auto* x = ak.required("centre"))
                centre = physical_location(*x, ak.path_of(*x));
            if (const auto* x = ak.required("radius"))
                radius = measure<DistanceUnit>(*x, ak.path_of(*x));
            ak.finish();
            if (!centre || !radius || ak.failed())
                return std::nullopt;
            return SpatialBounds{CircularBounds{std::move(*centre), *radius}};
        }
        std::optional<PhysicalLocation> tl, br;
        if (const auto* x = ak.required("topLeft"))
            tl = physical_location(*x, ak.path_of(*x));
        if (const auto* x = ak.required("bottomRight"))
            br = physical_location(*x, ak.path_of(*x));
        ak.finish();
        if (!tl || !br || ak.failed())
            return std::nullopt;
        return SpatialBounds{RectangularBounds{std::move(*tl), std::move(*br)}};
    }

    std::optional<Information> information(const xml::Element& e, const std::string& path) {
        check_attributes(e, path, {});
        Children kids(*this, e, path);
        Information out;
        bool ok = true;
        for (const auto* x : kids.repeated("info", 0)) {
            auto t = string_value(*x, kids.path_of(*x));
            if (t)
                out.info.push_back(std::move(*t));
            else
                ok = false;
        }
        for (const auto* x : kids.repeated("link", 0)) {
            auto t = string_value(*x, kids.path_of(*x));
            if (t)
                out.links.emplace_back(wire_detail::collapse(*t));
            else
                ok = false;
        }
        kids.finish();
        if (!ok || kids.failed())
            return std::nullopt;
        return out;
    }

    std::optional<Classification> classification(const xml::Element& e, const std::string& path) {
        check_attributes(e, path, {});
        Children kids(*this, e, path);
        Classification out;
        bool ok = true;
        for (const auto* x : kids.repeated("classificationType", 1)) {
            auto t = string_value(*x, kids.path_of(*x));
            if (t)
                out.types.push_back(std::move(*t));
            else
                ok = false;
        }
        kids.finish();
        if (!ok || kids.failed())
            return std::nullopt;
        return out;
    }

    bool classifications(Children& kids, std::vector<Classification>& out) {
        bool ok = true;
        for (const auto* x : kids.repeated("classification", 0)) {
            auto c = classification(*x, kids.path_of(*x));
            if (c)
                out.push_back(std::move(*c));
            else
                ok = false;
        }
        return ok;
    }

    std::optional<Address> address(const xml::Element& e, const std::string& path) {
        check_attributes(e, path, {});
        Children kids(*this, e, path);
        Address out;
        bool ok = true;
        const auto field = [&](std::string_view name, std::optional<std::string>& slot) {
            if (const auto* x = kids.optional(name)) {
                slot = string_value(*x, kids.path_of(*x));
                ok = ok && slot.has_value();
            }
        };
        field("nameNumber", out.name_number);
        field("street", out.street);
        field("town", out.town);
        field("county", out.county);
        field("postCode", out.post_code);
        field("webAddress", out.web_address);
        if (out.web_address)
            out.web_address = std::string(wire_detail::collapse(*out.web_address));
        if (const auto* x = kids.optional("email")) {
            const std::string p = kids.path_of(*x);
            auto t = string_value(*x, p);
            if (t && matches_email_pattern(*t)) {
                out.email = std::move(*t);
            } else {
                if (t)
                    violation(p, rules::kPattern, "email '" + *t + "' is not of the form local@domain.tld");
                ok = false;
            }
        }
        kids.finish();
        if (!ok || kids.failed())
            return std::nullopt;
        return out;
    }

    std::optional<LocationKind> classified_location(const xml::Element& e, const std::string& path) {
        check_attributes(e, path, {});
        Children kids(*this, e, path);
        bool ok = true;
        std::optional<Address> addr;
        std::optional<std::pair<TimeOfDay, TimeOfDay>> hours;
        bool is_address = false;
        if (const auto* al = kids.choice({"addressLocation"}, false)) {
            is_address = true;
            const std::string ap = kids.path_of(*al);
            check_attributes(*al, ap, {});
            Children ak(*this, *al, ap);
            if (const auto* pl = ak.choice({"productLocation"}, false)) {
                const std::string pp = ak.path_of(*pl);
                check_attributes(*pl, pp, {});
                Children pk(*this, *pl, pp);
                std::optional<TimeOfDay> open, close;
                if (const auto* x = pk.required("openTime"))
                    open = time_value(*x, pk.path_of(*x));
                if (const auto* x = pk.required("closeTime"))
                    close = time_value(*x, pk.path_of(*x));
                pk.finish();
                if (open && close && !pk.failed())
                    hours.emplace(*open, *close);
                else
                    ok = false;
            }
            if (const auto* x = ak.required("address"))
                addr = address(*x, ak.path_of(*x));
            ak.finish();
            ok = ok && addr.has_value() && !ak.failed();
        }
        ClassifiedLocation base;
        ok = classifications(kids, base.classifications) && ok;
        std::optional<std::string> description;
        if (const auto* x = kids.required("description"))
            description = string_value(*x, kids.path_of(*x));
        kids.finish();
        if (!ok || !description || kids.failed())
            return std::nullopt;
        base.description = std::move(*description);
        if (!is_address)
            return LocationKind{std::move(base)};
        AddressLocation a;
        static_cast<ClassifiedLocation&>(a) = std::move(base);
        a.address = std::move(*addr);
        if (!hours)
            return LocationKind{std::move(a)};
        ProductLocation pl;
        static_cast<AddressLocation&>(pl) = std::move(a);
        pl.open_time = hours->first;
        pl.close_time = hours->second;
        return LocationKind{std::move(pl)};
    }

    std::optional<SymbolicLocation> symbolic_location(const xml::Element& e, const std::string& path) {
        check_attributes(e, path, {});
        Children kids(*this, e, path);
        bool ok = true;
        SymbolicLocation out;
        if (const auto* arm = kids.choice({"classifiedLocation", "landmark", "district"}, false)) {
            const std::string p = kids.path_of(*arm);
            if (arm->local == "classifiedLocation") {
                auto k = classified_location(*arm, p);
                if (k)
                    out.kind = std::move(*k);
                else
                    ok = false;
            } else {
                auto t = string_value(*arm, p);
                if (!t)
                    ok = false;
                else if (arm->local == "landmark")
                    out.kind = Landmark{std::move(*t)};
                else
                    out.kind = District{std::move(*t)};
            }
        }
        std::optional<Information> info;
        std::optional<Region> reg;
        if (const auto* x = kids.required("information"))
            info = information(*x, kids.path_of(*x));
        if (const auto* x = kids.required("region"))
            reg = region(*x, kids.path_of(*x));
        for (const auto* x : kids.repeated("locale", 0)) {
            auto l = locale(*x, kids.path_of(*x));
            if (l)
                out.locales.push_back(std::move(*l));
            else
                ok = false;
        }
        std::optional<bool> fixed;
        if (const auto* x = kids.required("fixed")) {
            const std::string p = kids.path_of(*x);
            if (auto t = simple_text(*x, p)) {
                fixed = wire_detail::read_boolean(*t);
                if (!fixed)
                    violation(p, rules::kDatatype, "'" + *t + "' is not a valid xsd:boolean");
            }
        }
        kids.finish();
        if (!ok || !info || !reg || !fixed || kids.failed())
            return std::nullopt;
        out.information = std::move(*info);
        out.region = std::move(*reg);
        out.fixed = *fixed;
        return out;
    }

    std::optional<Locale> locale(const xml::Element& e, const std::string& path) {
        check_attributes(e, path, {});
        Children kids(*this, e, path);
        bool ok = true;
        Locale out;
        if (const auto* x = kids.optional("parent")) {
            auto p = locale(*x, kids.path_of(*x));
            if (p)
                out.parent = std::move(*p);
            else
                ok = false;
        }
        ok = classifications(kids, out.classifications) && ok;
        for (const auto* x : kids.repeated("contents", 0)) {
            auto s = symbolic_location(*x, kids.path_of(*x));
            if (s)
                out.contents.push_back(std::move(*s));
            else
                ok = false;
        }
        for (const auto* x : kids.repeated("neighbours", 0)) {
            auto n = locale(*x, kids.path_of(*x));
            if (n)
                out.neighbours.push_back(std::move(*n));
            else
                ok = false;
        }
        // The trailing wildcard takes anything, from any namespace.
        for (const auto* x : kids.rest())
            out.extensions.push_back(ExtensionFragment{xml::Writer::compact(*x)});
        if (!ok || kids.failed())
            return std::nullopt;
        if (has_parent_cycle(out))
            warn(path + ": locale parent chain revisits a locale");
        return out;
    }

    ValidationReport& report_;
    std::string ns_;
};

// --- Encoding --------------------------------------------------------------

namespace wire_detail {

inline xml::Element element(std::string_view name) {
    xml::Element e;
    e.local = std::string(name);
    e.ns = std::string(kGlossNamespace);
    return e;
}

inline xml::Element leaf(std::string_view name, std::string text) {
    xml::Element e = element(name);
    if (!text.empty())
        e.children.push_back(xml::Node{std::move(text)});
    return e;
}

inline void add(xml::Element& parent, xml::Element child) { parent.children.push_back(xml::Node{std::move(child)}); }

template <class Unit>
xml::Element measure(std::string_view name, const Measure<Unit>& m) {
    xml::Element e = leaf(name, format_floating(m.value()));
    if (!m.has_default_unit())
        e.attributes.push_back(xml::Attribute{"unit", "unit", "", std::string(unit_token(m.unit()))});
    return e;
}

inline xml::Element physical_location(std::string_view name, const PhysicalLocation& p) {
    xml::Element e = element(name);
    if (p.coordinate) {
        xml::Element coord = element("coordinate");
        xml::Element ll = element("latLongCoordinate");
        add(ll, leaf("latitude", format_floating(p.coordinate->latitude.value())));
        add(ll, leaf("longitude", format_floating(p.coordinate->longitude.value())));
        add(coord, std::move(ll));
        add(e, std::move(coord));
    }
    return e;
}

inline xml::Element region(std::string_view name, const Region& r) {
    xml::Element e = element(name);
    add(e, physical_location("distinguishedPoint", r.distinguished_point));
    xml::Element bounds = element("bounds");
    if (const auto* h = std::get_if<Horizon>(&r.bounds)) {
        add(bounds, leaf("horizon", h->text));
    } else if (const auto* c = std::get_if<CircularBounds>(&r.bounds)) {
        xml::Element cb = element("circularBounds");
        add(cb, physical_location("centre", c->centre));
        add(cb, measure("radius", c->radius));
        add(bounds, std::move(cb));
    } else if (const auto* q = std::get_if<RectangularBounds>(&r.bounds)) {
        xml::Element rb = element("rectangularBounds");
        add(rb, physical_location("topLeft", q->top_left));
        add(rb, physical_location("bottomRight", q->bottom_right));
        add(bounds, std::move(rb));
    }
    add(e, std::move(bounds));
    return e;
}

inline xml::Element information(const Information& info) {
    xml::Element e = element("information");
    for (const auto& i : info.info)
        add(e, leaf("info", i));
    for (const auto& l : info.links)
        add(e, leaf("link", l));
    return e;
}

inline void classifications(xml::Element& parent, const std::vector<Classification>& cs) {
    for (const auto& c : cs) {
        xml::Element ce = element("classification");
        for (const auto& t : c.types)
            add(ce, leaf("classificationType", t));
        add(parent, std::move(ce));
    }
}

inline xml::Element address(const Address& a) {
    xml::Element e = element("address");
    const auto field = [&](std::string_view name, const std::optional<std::string>& v) {
        if (v)
            add(e, leaf(name, *v));
    };
    field("nameNumber", a.name_number);
    field("street", a.street);
    field("town", a.town);
    field("county", a.county);
    field("postCode", a.post_code);
    field("webAddress", a.web_address);
    field("email", a.email);
    return e;
}

inline xml::Element classified(const ClassifiedLocation& c, const Address* addr, const ProductLocation* product) {
    xml::Element e = element("classifiedLocation");
    if (addr != nullptr) {
        xml::Element al = element("addressLocation");
        if (product != nullptr) {
            xml::Element pl = element("productLocation");
            add(pl, leaf("openTime", format_time_of_day(product->open_time)));
            add(pl, leaf("closeTime", format_time_of_day(product->close_time)));
            add(al, std::move(pl));
        }
        add(al, address(*addr));
        add(e, std::move(al));
    }
    classifications(e, c.classifications);
    add(e, leaf("description", c.description));
    return e;
}

xml::Element locale(std::string_view name, const Locale& l);

inline xml::Element symbolic_location(std::string_view name, const SymbolicLocation& s) {
    xml::Element e = element(name);
    struct KindVisitor {
        xml::Element& e;
        void operator()(const PlainLocation&) const {}
        void operator()(const ClassifiedLocation& c) const { add(e, classified(c, nullptr, nullptr)); }
        void operator()(const AddressLocation& a) const { add(e, classified(a, &a.address, nullptr)); }
        void operator()(const ProductLocation& p) const { add(e, classified(p, &p.address, &p)); }
        void operator()(const Landmark& l) const { add(e, leaf("landmark", l.name)); }
        void operator()(const District& d) const { add(e, leaf("district", d.name)); }
    };
    std::visit(KindVisitor{e}, s.kind);
    add(e, information(s.information));
    add(e, region("region", s.region));
    for (const auto& l : s.locales)
        add(e, locale("locale", l));
    add(e, leaf("fixed", s.fixed ? "true" : "false"));
    return e;
}

inline xml::Element locale(std::string_view name, const Locale& l) {
    xml::Element e = element(name);
    if (l.parent)
        add(e, locale("parent", *l.parent));
    classifications(e, l.classifications);
    for (const auto& c : l.contents)
        add(e, symbolic_location("contents", c));
    for (const auto& n : l.neighbours)
        add(e, locale("neighbours", n));
    for (const auto& x : l.extensions)
        e.children.push_back(xml::Node{xml::Raw{x.xml}});
    return e;
}

inline xml::Element where(std::string_view name, const Where& w) {
    xml::Element e = element(name);
    if (w.name)
        e.attributes.push_back(xml::Attribute{"name", "name", "", *w.name});
    if (w.gloss_urn)
        e.attributes.push_back(xml::Attribute{"glossURN", "glossURN", "", *w.gloss_urn});
    struct PayloadVisitor {
        xml::Element& e;
        void operator()(const EmptyWhere&) const {}
        void operator()(const PhysicalLocation& p) const { add(e, physical_location("physicalLocation", p)); }
        void operator()(const Region& r) const { add(e, region("region", r)); }
        void operator()(const SymbolicLocation& s) const { add(e, symbolic_location("symbolicLocation", s)); }
        void operator()(const Locale& l) const { add(e, locale("locale", l)); }
    };
    std::visit(PayloadVisitor{e}, w.payload);
    return e;
}

inline xml::Element observation(const Observation& o) {
    xml::Element e = element("observation");
    add(e, leaf("timeOfObservation", format_datetime(o.time_of_observation)));
    add(e, where("where", o.where));
    if (o.altitude)
        add(e, measure("altitude", *o.altitude));
    if (o.speed)
        add(e, measure("speed", *o.speed));
    if (o.course)
        add(e, leaf("course", format_floating(o.course->value())));
    if (o.magnetic_variation)
        add(e, leaf("magneticVariation", format_floating(o.magnetic_variation->value())));
    if (o.satellites_visible)
        add(e, leaf("satellitesVisible", std::to_string(o.satellites_visible->value())));
    const auto f = [&](std::string_view name, const std::optional<float>& v) {
        if (v)
            add(e, leaf(name, format_floating(*v)));
    };
    f("PDOP", o.pdop);
    f("HDOP", o.hdop);
    f("VDOP", o.vdop);
    f("HPE", o.hpe);
    f("VPE", o.vpe);
    return e;
}

inline xml::Element location_event(const LocationEvent& ev) {
    xml::Element root = element("locationEvent");
    xml::Element id = element("ID");
    add(id, leaf(element_name(ev.id.kind()), ev.id.value()));
    add(root, std::move(id));
    xml::Element seq = element("processingSequence");
    for (const auto& step : ev.processing_sequence) {
        xml::Element s = element("processingStep");
        add(s, leaf("dateTime", format_datetime(step.date_time)));
        add(s, leaf("description", step.description));
        add(seq, std::move(s));
    }
    add(root, std::move(seq));
    for (const auto& o : ev.observations)
        add(root, observation(o));
    return root;
}

// Parses bytes into a tree, turning well-formedness failures into a
// violation. Reader warnings are carried into the report.
inline std::optional<xml::Document> read_tree(std::string_view bytes, ValidationReport& report) {
    try {
        xml::Document doc = xml::parse(bytes);
        for (auto& w : doc.warnings)
            report.warnings.push_back(std::move(w));
        return doc;
    } catch (const xml::ParseError& err) {
        report.violations.push_back(Violation{"/", std::string(rules::kNotWellFormed), err.what()});
        return std::nullopt;
    }
}

}  // namespace wire_detail

/// Full check of a locationEvent document. Never throws; every violation is
/// listed with its path.
inline ValidationReport validate_document(std::string_view bytes) {
    ValidationReport report;
    try {
        auto doc = wire_detail::read_tree(bytes, report);
        if (doc) {
            Decoder decoder(report, std::string(kGlossNamespace));
            decoder.location_event(doc->root);
        }
    } catch (const std::exception& err) {
        report.violations.push_back(Violation{"/", std::string(rules::kNotWellFormed), err.what()});
    }
    return report;
}

/// Parses and validates; throws SchemaError listing all violations.
/// Default units apply where no unit attribute is given.
inline LocationEvent parse_location_event(std::string_view bytes, ValidationReport* report_out = nullptr) {
    ValidationReport report;
    std::optional<LocationEvent> event;
    if (auto doc = wire_detail::read_tree(bytes, report)) {
        Decoder decoder(report, std::string(kGlossNamespace));
        event = decoder.location_event(doc->root);
    }
    if (report_out)
        *report_out = report;
    if (!report.ok() || !event)
        throw SchemaError(std::move(report));
    return std::move(*event);
}

/// UTF-8 document in the Gloss namespace, children in schema order, numbers
/// in shortest round-trip form, default units left implicit.
inline std::string serialize_location_event(const LocationEvent& event) {
    return xml::Writer::document(wire_detail::location_event(event));
}

/// Reads a standalone Where element. A fragment with no namespace at all is
/// read as if it were in the Gloss namespace.
inline Where parse_where(std::string_view fragment) {
    ValidationReport report;
    std::optional<Where> w;
    if (auto doc = wire_detail::read_tree(fragment, report)) {
        const std::string ns = doc->root.ns.empty() ? std::string() : std::string(kGlossNamespace);
        Decoder decoder(report, ns);
        if (doc->root.ns != ns)
            report.violations.push_back(Violation{"/" + doc->root.local, std::string(rules::kNamespace),
                                                  "fragment is in namespace '" + doc->root.ns + "'"});
        else
            w = decoder.where(doc->root, "/" + doc->root.local);
    }
    if (!report.ok() || !w)
        throw SchemaError(std::move(report));
    return std::move(*w);
}

inline std::string serialize_where(const Where& w, std::string_view element_name = "where") {
    std::string out;
    xml::Writer::write(out, wire_detail::where(element_name, w), nullptr, 0);
    return out;
}

/// A gazetteer file is a <gazetteer> element in the Gloss namespace holding
/// <where> entries, each with a symbolicLocation. Entries are keyed by their
/// name and by their glossURN.
inline Gazetteer parse_gazetteer(std::string_view bytes) {
    ValidationReport report;
    Gazetteer::Entries entries;
    if (auto doc = wire_detail::read_tree(bytes, report)) {
        Decoder decoder(report, std::string(kGlossNamespace));
        if (decoder.check_root(doc->root, "gazetteer", "/gazetteer")) {
            std::size_t index = 0;
            for (const auto& n : doc->root.children) {
                const auto* el = n.element();
                if (el == nullptr)
                    continue;
                const std::string path = "/gazetteer/where[" + std::to_string(++index) + "]";
                if (el->local != "where" || el->ns != kGlossNamespace) {
                    report.violations.push_back(Violation{path, std::string(rules::kUnexpectedElement),
                                                          "gazetteer entries must be <where> elements"});
                    continue;
                }
                auto w = decoder.where(*el, path);
                if (!w)
                    continue;
                const auto* s = std::get_if<SymbolicLocation>(&w->payload);
                if (s == nullptr || (!w->name && !w->gloss_urn)) {
                    report.violations.push_back(Violation{path, std::string(rules::kMinOccurs),
                                                          "entry needs a name or glossURN and a symbolicLocation"});
                    continue;
                }
                if (w->name)
                    entries.insert_or_assign(*w->name, *s);
                if (w->gloss_urn)
                    entries.insert_or_assign(*w->gloss_urn, *s);
            }
        }
    }
    if (!report.ok())
        throw SchemaError(std::move(report));
    return Gazetteer(std::move(entries));
}

}  // namespace gloss

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

#include <compare>
#include <optional>
#include <regex>
#include <string>
#include <string_view>

#include "gloss/error.hpp"

namespace gloss {

/// The four ways the wire format identifies a user or artefact. The order
/// matches the schema choice.
enum class IdKind { BitString, Guid, Phone, Email };

constexpr std::string_view element_name(IdKind kind) noexcept {
    switch (kind) {
    case IdKind::BitString: return "bitString";
    case IdKind::Guid: return "GUID";
    case IdKind::Phone: return "phone";
    case IdKind::Email: return "email";
    }
    return "?";
}

inline std::optional<IdKind> id_kind_from_name(std::string_view name) {
    if (name == "bitString") return IdKind::BitString;
    if (name == "GUID") return IdKind::Guid;
    if (name == "phone") return IdKind::Phone;
    if (name == "email") return IdKind::Email;
    return std::nullopt;
}

// Patterns are whole-value matches, as schema patterns are.
inline bool matches_phone_pattern(std::string_view value) {
    static const std::regex pattern(R"(\+[0-9 ]*)");
    return std::regex_match(value.begin(), value.end(), pattern);
}

// The schema writes this as ^[^@]+@[^.]+\..+ ; the caret is taken as an
// anchor, which regex_match already implies.
inline bool matches_email_pattern(std::string_view value) {
    static const std::regex pattern(R"([^@]+@[^.]+\..+)");
    return std::regex_match(value.begin(), value.end(), pattern);
}

/// Identity of a GlossObject. Two IDs are equal only when both the form
/// and the text agree: an email and a phone number for the same person are
/// distinct subjects.
class Id {
public:
    IdKind kind() const noexcept { return kind_; }
    const std::string& value() const noexcept { return value_; }

    /// "email:graham@dcs.st-and.ac.uk" style rendering.
    std::string to_form() const { return std::string(element_name(kind_)) + ":" + value_; }

    friend auto operator<=>(const Id&, const Id&) = default;

private:
    Id(IdKind kind, std::string value) : kind_(kind), value_(std::move(value)) {}
    friend Id make_id(IdKind, std::string);

    IdKind kind_;
    std::string value_;
};

inline Id make_id(IdKind kind, std::string value) {
    if (kind == IdKind::Phone && !matches_phone_pattern(value))
        throw Error(ErrorCode::PatternMismatch, "phone '" + value + "' must be '+' followed by digits or spaces");
    if (kind == IdKind::Email && !matches_email_pattern(value))
        throw Error(ErrorCode::PatternMismatch, "email '" + value + "' is not of the form local@domain.tld");
    return Id(kind, std::move(value));
}

/// Parses the `<id-form>:<value>` notation used on the command line.
inline Id parse_id_form(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw Error(ErrorCode::InvalidArgument, "expected <id-form>:<value>, got '" + std::string(text) + "'");
    const auto form = text.substr(0, colon);
    auto kind = id_kind_from_name(form);
    if (!kind) {
        // Accept a few spellings people actually type.
        if (form == "guid") kind = IdKind::Guid;
        else if (form == "bitstring") kind = IdKind::BitString;
        else
            throw Error(ErrorCode::InvalidArgument, "unknown id form '" + std::string(form) + "'");
    }
    return make_id(*kind, std::string(text.substr(colon + 1)));
}

}  // namespace gloss

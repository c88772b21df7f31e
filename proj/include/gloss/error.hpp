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

#include <stdexcept>
#include <string>
#include <string_view>

namespace gloss {

enum class ErrorCode {
    OutOfRange,
    NotInteger,
    PatternMismatch,
    Unresolvable,
    EmptyWhere,
    MissingCoordinate,
    UnsupportedBounds,
    InvalidBounds,
    CoincidentPoints,
    UnitKindMismatch,
    UnknownUnit,
    InvalidPeriod,
    EmptyTemporalRegion,
    InvalidTimeOfDay,
    MalformedDateTime,
    LocaleCycle,
    NotWellFormed,
    SchemaViolation,
    OutOfOrderObservation,
    EmptyInput,
    InvalidArgument,
    NoOrderExists,
    TooLarge,
    UnknownEndpoint,
    DuplicateNode,
    SpecificityMismatch,
    AmbiguousRole,
    UnknownSubject,
    SinkUnavailable,
    FramingError,
    IoFailure,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotInteger: return "NotInteger";
    case ErrorCode::PatternMismatch: return "PatternMismatch";
    case ErrorCode::Unresolvable: return "Unresolvable";
    case ErrorCode::EmptyWhere: return "EmptyWhere";
    case ErrorCode::MissingCoordinate: return "MissingCoordinate";
    case ErrorCode::UnsupportedBounds: return "UnsupportedBounds";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::UnitKindMismatch: return "UnitKindMismatch";
    case ErrorCode::UnknownUnit: return "UnknownUnit";
    case ErrorCode::InvalidPeriod: return "InvalidPeriod";
    case ErrorCode::EmptyTemporalRegion: return "EmptyTemporalRegion";
    case ErrorCode::InvalidTimeOfDay: return "InvalidTimeOfDay";
    case ErrorCode::MalformedDateTime: return "MalformedDateTime";
    case ErrorCode::LocaleCycle: return "LocaleCycle";
    case ErrorCode::NotWellFormed: return "NotWellFormed";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::OutOfOrderObservation: return "OutOfOrderObservation";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoOrderExists: return "NoOrderExists";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorCode::DuplicateNode: return "DuplicateNode";
    case ErrorCode::SpecificityMismatch: return "SpecificityMismatch";
    case ErrorCode::AmbiguousRole: return "AmbiguousRole";
    case ErrorCode::UnknownSubject: return "UnknownSubject";
    case ErrorCode::SinkUnavailable: return "SinkUnavailable";
    case ErrorCode::FramingError: return "FramingError";
    case ErrorCode::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

/// Base exception for everything in the library. The code is the stable
/// identity of the failure; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace gloss

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ldit {

enum class ErrorKind {
    ChecksumMismatch,
    FieldOutOfRange,
    TruncatedGroup,
    DuplicateStation,
    CoordinateOutOfRange,
    InsufficientOverlap,
    DegenerateVariance,
    DegenerateRange,
    TooFewPoints,
    DecayedOrbit,
    EpochTooFar,
    PropagationFailed,
    NoStations,
    MissingComponent,
    CorruptChain,
    InputMissing,
    InvalidInput,
    OfflineCacheMiss,
    Network,
};

// Stable machine-readable name, e.g. "degenerate-range".
std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace ldit

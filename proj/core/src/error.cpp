#include <ldit/error.hpp>

namespace ldit {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::ChecksumMismatch: return "checksum-mismatch";
    case ErrorKind::FieldOutOfRange: return "field-out-of-range";
    case ErrorKind::TruncatedGroup: return "truncated-group";
    case ErrorKind::DuplicateStation: return "duplicate-station";
    case ErrorKind::CoordinateOutOfRange: return "coordinate-out-of-range";
    case ErrorKind::InsufficientOverlap: return "insufficient-overlap";
    case ErrorKind::DegenerateVariance: return "degenerate-variance";
    case ErrorKind::DegenerateRange: return "degenerate-range";
    case ErrorKind::TooFewPoints: return "too-few-points";
    case ErrorKind::DecayedOrbit: return "decayed-orbit";
    case ErrorKind::EpochTooFar: return "epoch-too-far";
    case ErrorKind::PropagationFailed: return "propagation-failed";
    case ErrorKind::NoStations: return "no-stations";
    case ErrorKind::MissingComponent: return "missing-component";
    case ErrorKind::CorruptChain: return "corrupt-chain";
    case ErrorKind::InputMissing: return "input-missing";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::OfflineCacheMiss: return "offline-cache-miss";
    case ErrorKind::Network: return "network";
    }
    return "unknown";
}

} // namespace ldit

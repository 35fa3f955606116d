#include "loopforge/error.hpp"

namespace loopforge {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidInput: return "invalid_input";
        case ErrorCode::DimensionMismatch: return "dimension_mismatch";
        case ErrorCode::DegreeMismatch: return "degree_mismatch";
        case ErrorCode::CompositionNotZero: return "composition_not_zero";
        case ErrorCode::MalformedGraph: return "malformed_graph";
        case ErrorCode::Disconnected: return "disconnected";
        case ErrorCode::NonIntegralGenus: return "non_integral_genus";
        case ErrorCode::InvalidChordDiagram: return "invalid_chord_diagram";
        case ErrorCode::IndexOutOfRange: return "index_out_of_range";
        case ErrorCode::ArityMismatch: return "arity_mismatch";
        case ErrorCode::UnassignedGenerator: return "unassigned_generator";
        case ErrorCode::InvalidGroup: return "invalid_group";
        case ErrorCode::SizeGuard: return "size_guard";
        case ErrorCode::WiringMismatch: return "wiring_mismatch";
        case ErrorCode::TruncationTooSmall: return "truncation_too_small";
        case ErrorCode::NotAnAlgebra: return "not_an_algebra";
        case ErrorCode::MissingOperator: return "missing_operator";
        case ErrorCode::MalformedCactus: return "malformed_cactus";
        case ErrorCode::Parse: return "parse";
    }
    return "unknown";
}

}  // namespace loopforge

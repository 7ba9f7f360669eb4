#pragma once

#include <stdexcept>
#include <string>

namespace bctoda {

enum class ErrorCode {
    PoleError,
    MaxDepth,
    NonFinite,
    SingularityTooStrong,
    InvalidParams,
    BLimitUnsupported,
    DomainError,
    SizeLimit,
    CacheAccuracy,
    UnboundSymbol,
    DivisionFails,
    OddPowers,
    DecayClass,
    BoxMargin,
    UnknownCheck,
    DegenerateMu,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::PoleError: return "PoleError";
        case ErrorCode::MaxDepth: return "MaxDepth";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::SingularityTooStrong: return "SingularityTooStrong";
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::BLimitUnsupported: return "BLimitUnsupported";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::SizeLimit: return "SizeLimit";
        case ErrorCode::CacheAccuracy: return "CacheAccuracy";
        case ErrorCode::UnboundSymbol: return "UnboundSymbol";
        case ErrorCode::DivisionFails: return "DivisionFails";
        case ErrorCode::OddPowers: return "OddPowers";
        case ErrorCode::DecayClass: return "DecayClass";
        case ErrorCode::BoxMargin: return "BoxMargin";
        case ErrorCode::UnknownCheck: return "UnknownCheck";
        case ErrorCode::DegenerateMu: return "DegenerateMu";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace bctoda

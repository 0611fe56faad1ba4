#pragma once

#include <stdexcept>
#include <string>

namespace affiq {

enum class ErrorCode {
    DimensionMismatch,
    RankDeficient,
    SingularTransform,
    OriginNotInterior,
    NotUnitVector,
    UnsupportedRepresentation,
    DegenerateInput,
    EmptyBox,
    DependentVector,
    BadDims,
    UnknownName,
    ZeroVector,
    NonFinite,
    InvalidArgument,
    NumericFailure,
};

constexpr const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::SingularTransform: return "SingularTransform";
        case ErrorCode::OriginNotInterior: return "OriginNotInterior";
        case ErrorCode::NotUnitVector: return "NotUnitVector";
        case ErrorCode::UnsupportedRepresentation: return "UnsupportedRepresentation";
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::EmptyBox: return "EmptyBox";
        case ErrorCode::DependentVector: return "DependentVector";
        case ErrorCode::BadDims: return "BadDims";
        case ErrorCode::UnknownName: return "UnknownName";
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NumericFailure: return "NumericFailure";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

}  // namespace affiq

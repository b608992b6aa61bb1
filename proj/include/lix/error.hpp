#pragma once

#include <stdexcept>
#include <string>

namespace lix {

enum class ErrorCode {
    DuplicateId,
    NonPositiveWeight,
    MixedSpaces,
    NotADifferential,
    ArityMismatch,
    WrongDegree,
    PageBeyondCurvatureBound,
    PreconditionViolated,
    RelationCheckFailed,
    StasheffViolation,
    TruncationMismatch,
    NotAMorphism,
    NotTransferredStructure,
    SchemaError,
    Internal,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lix

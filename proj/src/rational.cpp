#include "lix/rational.hpp"

#include "lix/error.hpp"

namespace lix {

Rational Rational::from_string(const std::string& s) {
    if (s.empty()) throw Error(ErrorCode::SchemaError, "empty rational literal");
    for (char ch : s) {
        if (ch == '.' || ch == 'e' || ch == 'E')
            throw Error(ErrorCode::SchemaError, "decimal notation not accepted: " + s);
    }
    try {
        mpq_class q(s);
        q.canonicalize();
        return Rational(q);
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::SchemaError, "bad rational literal: " + s);
    }
}

std::string Rational::str() const { return v_.get_str(); }

Rational Rational::inv_factorial(int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rational(mpq_class(mpz_class(1), f));
}

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorCode::MixedSpaces: return "MixedSpaces";
        case ErrorCode::NotADifferential: return "NotADifferential";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::WrongDegree: return "WrongDegree";
        case ErrorCode::PageBeyondCurvatureBound: return "PageBeyondCurvatureBound";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::RelationCheckFailed: return "RelationCheckFailed";
        case ErrorCode::StasheffViolation: return "StasheffViolation";
        case ErrorCode::TruncationMismatch: return "TruncationMismatch";
        case ErrorCode::NotAMorphism: return "NotAMorphism";
        case ErrorCode::NotTransferredStructure: return "NotTransferredStructure";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace lix

#pragma once

#include <stdexcept>
#include <string>

namespace frirq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularOperator : Error {
    using Error::Error;
};
struct NotPsd : Error {
    using Error::Error;
};
struct InvalidEnsemble : Error {
    using Error::Error;
};
struct DegenerateEnsemble : Error {
    using Error::Error;
};
struct SingularRho0 : Error {
    using Error::Error;
};
struct CompletenessViolation : Error {
    using Error::Error;
};
struct QOutOfInterval : Error {
    using Error::Error;
};
struct EpsilonOutOfRange : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct BracketFailure : Error {
    using Error::Error;
};
struct QOutOfRange : Error {
    using Error::Error;
};
struct NotApplicable : Error {
    using Error::Error;
};
struct InvalidPovm : Error {
    using Error::Error;
};
struct ConsistencyError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

}  // namespace frirq

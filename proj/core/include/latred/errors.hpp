#pragma once

#include <stdexcept>
#include <string>

namespace latred {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularBasisError : Error {
    using Error::Error;
};

struct NotPositiveDefiniteError : Error {
    using Error::Error;
};

struct IndexOutOfRangeError : Error {
    using Error::Error;
};

struct IterationCapExceededError : Error {
    using Error::Error;
};

struct NotEffectivelyReducedError : Error {
    using Error::Error;
};

struct NotFullyReducedError : Error {
    using Error::Error;
};

struct InvalidDeltaError : Error {
    using Error::Error;
};

struct SearchTooLargeError : Error {
    using Error::Error;
};

struct UnsupportedOrderError : Error {
    using Error::Error;
};

struct PreconditionFailedError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace latred

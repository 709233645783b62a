#pragma once
#include <stdexcept>
#include <string>

namespace rsgame {

// Base class for everything thrown on purpose by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SyntaxError : Error {
    std::size_t offset;
    SyntaxError(const std::string& what, std::size_t off)
        : Error(what + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

struct UnknownIdentifier : Error {
    using Error::Error;
};

struct UnboundVariable : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct ValidationFailed : Error {
    using Error::Error;
};

struct BadGeometry : Error {
    using Error::Error;
};

struct NonPositiveVector : Error {
    using Error::Error;
};

struct Reducible : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    double lo, hi;  // last certified bracket, NaN when not applicable
    NoConvergence(const std::string& what, double lo_ = 0, double hi_ = 0)
        : Error(what), lo(lo_), hi(hi_) {}
};

struct MonotonicityViolation : Error {
    using Error::Error;
};

struct NashViolation : Error {
    using Error::Error;
};

struct NumericalOverflow : Error {
    using Error::Error;
};

struct TooManyCapped : Error {
    using Error::Error;
};

struct SpecInfeasible : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace rsgame

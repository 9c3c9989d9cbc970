#pragma once

#include <stdexcept>
#include <string>

namespace quadwalk {

/// Distinguishes the ways an input can be rejected. Each validation failure
/// carries exactly one code so callers (and tests) can tell them apart.
enum class ErrorCode {
    EmptySteps,
    NegativeWeight,
    ZeroTotalWeight,
    NonZeroDrift,
    DegenerateLattice,
    DegenerateSupport,
    InfeasibleTarget,
    BarrierTooSmall,
    NegativeHorizon,
    OutsideRegion,
    ZeroLadderMean,
    BadArgument,
    FileError,
    ParseError,
    ToleranceNotReached,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Malformed or out-of-contract input. Maps to CLI exit code 3.
class InputError : public Error {
public:
    using Error::Error;
};

/// A numeric procedure stopped short of its tolerance. `achieved` holds the
/// residual it did reach. Maps to CLI exit code 4.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double achieved)
        : Error(ErrorCode::ToleranceNotReached, what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

} // namespace quadwalk

#include "quadwalk/errors.hpp"

namespace quadwalk {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::EmptySteps: return "empty step list";
    case ErrorCode::NegativeWeight: return "negative weight";
    case ErrorCode::ZeroTotalWeight: return "zero total weight";
    case ErrorCode::NonZeroDrift: return "nonzero vertical drift";
    case ErrorCode::DegenerateLattice: return "degenerate lattice";
    case ErrorCode::DegenerateSupport: return "degenerate support";
    case ErrorCode::InfeasibleTarget: return "infeasible drift target";
    case ErrorCode::BarrierTooSmall: return "barrier too small";
    case ErrorCode::NegativeHorizon: return "negative horizon";
    case ErrorCode::OutsideRegion: return "start outside survival region";
    case ErrorCode::ZeroLadderMean: return "ladder mean is zero";
    case ErrorCode::BadArgument: return "bad argument";
    case ErrorCode::FileError: return "file error";
    case ErrorCode::ParseError: return "parse error";
    case ErrorCode::ToleranceNotReached: return "tolerance not reached";
    }
    return "unknown";
}

} // namespace quadwalk

#pragma once

#include <stdexcept>
#include <string>

namespace smax {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionTooSmall : Error { using Error::Error; };
struct EmptyLattice : Error { using Error::Error; };
struct ResolutionTooLow : Error { using Error::Error; };
struct DisjointnessViolated : Error { using Error::Error; };
struct NodeBudgetExceeded : Error { using Error::Error; };
struct OutOfApproximationRange : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct WindowViolated : Error { using Error::Error; };
struct TimeOutOfRange : Error { using Error::Error; };
struct NoBranch : Error { using Error::Error; };
struct DegenerateFit : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace smax

// Exception hierarchy shared by all cbmdlab modules.
#pragma once

#include <stdexcept>
#include <string>

namespace cbmdlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidMatrix : Error {
    using Error::Error;
};
struct NumericalFailure : Error {
    using Error::Error;
};
struct NormTooLarge : Error {
    using Error::Error;
};
struct StepTooCoarse : Error {
    using Error::Error;
};
struct SampleOnSingularity : Error {
    using Error::Error;
};
struct InvalidTolerance : Error {
    using Error::Error;
};
struct ParamTooLarge : Error {
    using Error::Error;
};
struct HypothesisViolation : Error {
    using Error::Error;
};
struct InvalidKernelParam : Error {
    using Error::Error;
};
struct DegeneratePoints : Error {
    using Error::Error;
};
struct InvalidShift : Error {
    using Error::Error;
};
struct NonUnitarySelectTerm : Error {
    using Error::Error;
};
struct InvalidState : Error {
    using Error::Error;
};
struct InvalidSeries : Error {
    using Error::Error;
};

// Malformed input files (JSON); the CLI maps this to exit code 2.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace cbmdlab

#pragma once

#include <stdexcept>
#include <string>

namespace durlab {

/// Base class for all durlab failures.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition or container invariant.
struct ValidationError : Error {
    using Error::Error;
};

/// A file could not be parsed; message carries the offending line number.
struct ParseError : Error {
    using Error::Error;
};

/// Market data produced an impossible quantity (e.g. a nonpositive strip
/// price); message carries the date and magnitude.
struct DataQualityError : Error {
    using Error::Error;
};

/// A computation produced non-finite values or hit a singular matrix.
struct NumericalError : Error {
    using Error::Error;
};

/// A loading matrix is rank deficient; partial recovery is not attempted.
struct DegeneracyError : Error {
    int rank = 0;
    DegeneracyError(const std::string& msg, int rank_) : Error(msg), rank(rank_) {}
};

/// An optimizer failed to converge on every start.
struct EstimationError : Error {
    using Error::Error;
};

}  // namespace durlab

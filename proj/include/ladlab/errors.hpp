#pragma once

#include <stdexcept>

namespace ladlab {

// Dimension out of the supported range, or two operands over different cubes.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// More sample points requested than the cube holds.
struct InfeasibleSample : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Index, id, count, or probability outside its domain.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Empty datasets, empty sample sets, empty hypothesis classes.
struct EmptyInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A constructed witness failed its own verification. Always a bug.
struct VerificationFailure : std::logic_error {
    using std::logic_error::logic_error;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace ladlab

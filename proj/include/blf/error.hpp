#ifndef BLF_ERROR_HPP
#define BLF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace blf {

// Base class for all library errors. The C API maps these onto status codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad caller input: out-of-range flag, mismatched dimensions, invalid config.
struct InvalidArgument : Error {
    using Error::Error;
};

// A lattice site with no neighbors was handed to a kernel that needs them.
struct DegenerateVoxel : Error {
    using Error::Error;
};

// Non-finite intermediate, non-SPD matrix, or similar numerical failure.
struct NumericalError : Error {
    using Error::Error;
};

// A diagnostic was asked of a trace with no usable variation.
struct DegenerateTrace : Error {
    using Error::Error;
};

// A metric is undefined for the given inputs (e.g. Dice of two empty masks).
struct UndefinedMetric : Error {
    using Error::Error;
};

// Malformed file contents; message carries the offending line number.
struct ParseError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace blf

#endif

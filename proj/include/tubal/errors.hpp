#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tubal {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes do not conform (zero extent, inner dimension or tube length mismatch).
class DimensionError : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Non-finite entries in external input.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A transform-domain slice is numerically singular.
class SingularTensorError : public Error {
public:
    SingularTensorError(std::size_t slice, double condition)
        : Error("singular tensor: transform-domain slice " + std::to_string(slice) +
                " has condition estimate " + std::to_string(condition)),
          slice_(slice) {}

    std::size_t slice() const noexcept { return slice_; }

private:
    std::size_t slice_;
};

/// Training data carries no variance (e.g. all images identical).
class DegenerateDataError : public Error {
public:
    using Error::Error;
};

/// Malformed external file (IDX, manifest, model, image).
class FormatError : public Error {
public:
    using Error::Error;
};

/// File cannot be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Stored checksum or version does not match.
class IntegrityError : public Error {
public:
    using Error::Error;
};

}  // namespace tubal

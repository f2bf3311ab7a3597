#pragma once

#include <stdexcept>
#include <string>

namespace lumen {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto its exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter or argument outside its documented domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Two inputs that must agree in shape do not, or an input is too small for
// the operation.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Unreadable/unwritable file or a truncated stream.
class IoError : public Error {
public:
    using Error::Error;
};

// Readable file in a format or bit depth the codecs do not handle.
class UnsupportedFormat : public IoError {
public:
    using IoError::IoError;
};

}  // namespace lumen

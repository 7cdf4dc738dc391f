#pragma once

#include <stdexcept>
#include <string>

namespace origami {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A shape angle of exactly pi/2 (tan undefined) or a flat-target ratio.
class DegenerateAngleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Planar geometry cannot be built (overlapping strip, self-intersection, empty inset).
class GeometryError : public Error {
public:
    using Error::Error;
};

/// Rigid folding cannot close around some vertex.
class KinematicError : public Error {
public:
    KinematicError(const std::string& what, double worst_residual)
        : Error(what), worst_residual_(worst_residual) {}
    double worst_residual() const noexcept { return worst_residual_; }

private:
    double worst_residual_;
};

/// A panel, hole or string references something that does not exist.
class ReferenceError : public Error {
public:
    using Error::Error;
};

/// Malformed input document. `offset` is a byte offset when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset = 0) : Error(what), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Schema violation in a structured document; `path` locates the field.
class SchemaError : public Error {
public:
    SchemaError(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// The simulated setup cannot start (strings too short at the first state).
class SetupError : public Error {
public:
    using Error::Error;
};

}  // namespace origami

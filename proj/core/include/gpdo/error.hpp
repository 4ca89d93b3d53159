#pragma once

#include <stdexcept>
#include <string>

namespace gpdo {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands belong to different backends (cyclic vs affine).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Operands live on different grids / models.
class GridMismatch : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// A dilation that is not an integer power of the grid ratio.
class OffLatticeError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Least-squares inversion failed; carries the conditioning estimate.
class SolverError : public Error {
public:
    SolverError(const std::string& what, double condition)
        : Error(what), condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

} // namespace gpdo

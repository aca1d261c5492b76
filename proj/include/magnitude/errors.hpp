#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace magnitude {

// Input fails a space invariant (range, symmetry, triangle, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A determinant required to be nonzero vanished.
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

// A derived space (glue, generator output) left the admissible domain.
class ConstructionError : public std::runtime_error {
public:
    explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed file, flag, or request.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace magnitude

#pragma once

#include <stdexcept>
#include <string>

namespace matgeo {

// Base class for all library failures.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A caller violated a documented precondition (shape mismatch, wrong field,
// singular input, off-manifold point, inadmissible direction, ...).
class precondition_error : public error {
public:
    explicit precondition_error(const std::string& what) : error(what) {}
};

// An iterative kernel failed to reach its tolerance within its iteration cap.
// The message carries the best bracketing information available.
class convergence_error : public error {
public:
    explicit convergence_error(const std::string& what) : error(what) {}
};

// The input is outside the implemented decision procedure (for example a
// defective matrix handed to the real-logarithm classifier).  Distinct from a
// negative mathematical answer, which is a regular result.
class unsupported_error : public error {
public:
    explicit unsupported_error(const std::string& what) : error(what) {}
};

}  // namespace matgeo

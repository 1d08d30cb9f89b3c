#pragma once

#include <stdexcept>
#include <string>

namespace riccimc {

/// Base class for every error this library raises on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Simplex / input validation.
struct NonPositiveEntry : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct TooFewStates : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// Scalar-function domains.
struct DomainError : Error { using Error::Error; };
struct NegativeInput : Error { using Error::Error; };
struct DegeneratePhi : Error { using Error::Error; };

// Integration.
struct StepTooLarge : Error { using Error::Error; };
struct NumericalBlowup : Error { using Error::Error; };

// Curvature machinery.
struct EmptyEdgeSet : Error { using Error::Error; };
struct SingularPencil : Error { using Error::Error; };
struct ZeroEdge : Error { using Error::Error; };

// Harness and I/O.
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
  std::size_t line_number;
};

}  // namespace riccimc

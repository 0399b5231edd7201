#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ardec {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape mismatches (row/column counts, dimension vectors).
struct DimensionError : Error {
  using Error::Error;
};

// Bad arguments: field mismatch, out-of-range indices, zero polynomial, ...
struct DomainError : Error {
  using Error::Error;
};

// A matrix that had to be invertible was not.
struct SingularMatrixError : Error {
  using Error::Error;
};

// A claimed subrepresentation basis is not closed under some arrow.
struct StabilityError : Error {
  StabilityError(const std::string& msg, int arrow) : Error(msg), arrow_id(arrow) {}
  int arrow_id;
};

// Mesh data fails the almost-split bookkeeping (or the multiplicity formula
// went negative, which means the mesh does not belong to this algebra).
struct InvalidMeshError : Error {
  using Error::Error;
};

// A candidate set did not cover the support of the module being decomposed.
struct CoverageError : Error {
  CoverageError(const std::string& msg, std::vector<long long> d)
      : Error(msg), deficit(std::move(d)) {}
  std::vector<long long> deficit;  // per-vertex missing dimensions
};

// An internal cross-check failed; indicates a bug, not bad input.
struct ConsistencyError : Error {
  using Error::Error;
};

// Malformed input files or scalar literals.
struct ParseError : Error {
  using Error::Error;
};

// The alpha matrix of a claimed regular-without-infinity part was singular.
struct InvalidRegularPartError : Error {
  using Error::Error;
};

}  // namespace ardec

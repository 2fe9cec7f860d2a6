#pragma once

#include <stdexcept>
#include <string>

namespace mixmult {

// Three error families, one per CLI exit code.

/// Malformed input text or documents.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A model or lattice that violates its invariants.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Failures raised while computing: division by zero, mismatched fields,
/// roots outside the field, missing envelopes, undecidable comparisons.
class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mixmult

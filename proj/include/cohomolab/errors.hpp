#pragma once

#include <stdexcept>
#include <string>

namespace cohomolab {

// Malformed input text: presentation/complex/representation files, rep specs,
// config files, CLI values. Mapped to exit code 2 by the CLI.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A representation (or generated deformation) failed a mathematical contract:
// relator defect above tolerance, singular generator image, derivation identity
// violation, rescaling that cannot reach the requested distance window.
// Mapped to exit code 3 by the CLI.
struct VerificationError : std::runtime_error {
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cohomolab

#pragma once

#include <stdexcept>
#include <string>

namespace qdr {

// Malformed input to an algebraic operation: mismatched rings, bad degrees,
// invalid ring homomorphisms, exponent overflow.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model that fails one of its declared preconditions.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// d_out * d_in != 0, or an algebraic identity failed. Carries a witness.
class ComplexViolation : public std::runtime_error {
 public:
  ComplexViolation(const std::string& what, std::string witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

// A differential produced a term outside the sector being assembled.
class SectorLeak : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qdr

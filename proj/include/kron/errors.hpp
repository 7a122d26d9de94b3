#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kron {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define KRON_DEFINE_ERROR(Name, Base)                                   \
  class Name : public Base {                                            \
   public:                                                               \
    using Base::Base;                                                    \
    const char* kind() const noexcept override { return #Name; }        \
  };

// Arithmetic.
KRON_DEFINE_ERROR(NonUnit, Error)
KRON_DEFINE_ERROR(Unsupported, Error)
KRON_DEFINE_ERROR(FieldTooSmall, Error)
KRON_DEFINE_ERROR(NotMonic, Error)
KRON_DEFINE_ERROR(DuplicateNode, Error)
KRON_DEFINE_ERROR(NonUnitConstantTerm, Error)
KRON_DEFINE_ERROR(SingularMatrix, Error)
KRON_DEFINE_ERROR(InvalidArgument, Error)

// Input.
KRON_DEFINE_ERROR(UnknownVariable, Error)
KRON_DEFINE_ERROR(TooLarge, Error)
/// Malformed FiberDocument, or one that does not belong to the system.
KRON_DEFINE_ERROR(DocumentError, Error)
KRON_DEFINE_ERROR(FieldMismatch, DocumentError)

/// Raised when a randomized step met a bad draw. The solver reacts by
/// resampling; everything deriving from it is retryable.
KRON_DEFINE_ERROR(UnluckyRun, Error)
KRON_DEFINE_ERROR(BadPrime, UnluckyRun)
KRON_DEFINE_ERROR(NotCoprime, UnluckyRun)
KRON_DEFINE_ERROR(ShapeViolation, UnluckyRun)
KRON_DEFINE_ERROR(DegenerateFiber, UnluckyRun)
/// deg m_1 = 0 although F_1 does not vanish on the line.
KRON_DEFINE_ERROR(EmptyFiber, DegenerateFiber)
KRON_DEFINE_ERROR(JacobianNonInvertible, UnluckyRun)
KRON_DEFINE_ERROR(UnluckyEvaluationPoint, UnluckyRun)
KRON_DEFINE_ERROR(ZeroConstantTerm, UnluckyRun)
KRON_DEFINE_ERROR(NoReconstruction, UnluckyRun)
KRON_DEFINE_ERROR(VerificationFailed, UnluckyRun)
KRON_DEFINE_ERROR(CoercionFailed, UnluckyRun)
KRON_DEFINE_ERROR(DegreeBoundExceeded, UnluckyRun)

/// deg m_{s+1} = 0: the slice is empty on this randomization.
KRON_DEFINE_ERROR(DegreeCollapse, Error)
KRON_DEFINE_ERROR(EmptyVariety, Error)
KRON_DEFINE_ERROR(RetriesExhausted, Error)

#undef KRON_DEFINE_ERROR

/// NotCoprime carrying the offending gcd. Elem is the coefficient type of
/// the polynomial ring that raised it.
template <class Elem>
class NotCoprimeWith : public NotCoprime {
 public:
  NotCoprimeWith(const std::string& what, std::vector<Elem> witness)
      : NotCoprime(what), witness_(std::move(witness)) {}
  const std::vector<Elem>& witness() const { return witness_; }

 private:
  std::vector<Elem> witness_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  const char* kind() const noexcept override { return "SyntaxError"; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace kron

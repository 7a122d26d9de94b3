#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kron/errors.hpp"
#include "kron/io/fiber_document.hpp"
#include "kron/kronecker/types.hpp"
#include "kron/kronecker/verify.hpp"
#include "kron/oracle/oracle.hpp"

namespace kron {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitInput = 2,
  kExitRetries = 3,
  kExitEmpty = 4,
  kExitFieldTooSmall = 5,
  kExitTooLarge = 6,
  kExitInternal = 7,
};

int exit_code_for(const Error& e);

/// Solves over the field named by the system and packages the result.
FiberDocument solve_document(const SystemSpec& spec, const SolveConfig& cfg);

/// Runs the a posteriori checks on a document against a system.
/// FieldMismatch when the document belongs to another field or shape.
VerifyReport verify_document(const FiberDocument& doc, const SystemSpec& spec);

/// Outcome of comparing a solve with exhaustive enumeration over F_p.
struct OracleReport {
  enum class Outcome { Match, Mismatch, SolverFailure };

  Outcome outcome = Outcome::SolverFailure;
  std::size_t degree = 0;           // deg m
  std::size_t rational_degree = 0;  // deg gcd(m, T^p - T)
  std::size_t oracle_points = 0;    // rational points in the fiber
  std::string failure;              // solver error, if any
  int solver_exit = kExitOk;
  FiberDocument document;
};

const char* to_string(OracleReport::Outcome o);

/// Solves an `Fp:` system and compares the F_p-rational part of m and the
/// pulled-back points with the oracle's fiber. TooLarge beyond the oracle
/// guard; InvalidArgument for other fields.
OracleReport oracle_check(const SystemSpec& spec, const SolveConfig& cfg);

}  // namespace kron

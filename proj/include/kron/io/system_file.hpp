#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "kron/kronecker/types.hpp"

namespace kron {

/// A parsed system file.
///
///   # comment
///   vars: 2
///   field: Fp:10007
///   epsilon: 1/100
///   delta_bound: 4
///   height: 3
///   degree: 2
///   F: x2^2 - x1
///   F: x2 - x1 - 1
///   G: x1
///
/// Only `vars`, `field` and at least one F line are required. Rational
/// literals are cleared: each polynomial is multiplied by the lcm of its
/// denominators, recorded in `scales` (G last).
struct SystemFile {
  SystemSpec spec;
  std::vector<mpz_class> scales;
  std::vector<std::string> sources;  // F lines then G, as written
};

/// SyntaxError for malformed lines or expressions, InvalidArgument for
/// inconsistent headers.
SystemFile parse_system_file(std::string_view text);
SystemFile read_system_file(const std::string& path);

/// Exact value of a decimal ("0.01") or fraction ("1/100") literal.
mpq_class parse_exact(std::string_view text);

}  // namespace kron

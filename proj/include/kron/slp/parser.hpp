#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string_view>
#include <vector>

#include "kron/slp/slp.hpp"

namespace kron {

/// Result of compiling one expression: `node` computes scale * expression,
/// where scale clears every rational literal so all parameters are integers.
struct CompiledExpr {
  std::uint32_t node;
  mpz_class scale;
};

/// Compiles `text` into `slp`. Variables are x1..x<n>; `inputs[i]` is the
/// node holding x<i+1>. `line` and `column` locate the text for error
/// messages (both 1-based).
///
/// Grammar:
///   expr  := term (('+' | '-') term)*
///   term  := unary ('*' unary)*
///   unary := '-' unary | power
///   power := atom ('^' integer)?
///   atom  := integer ('/' integer)? | 'x' index | '(' expr ')'
CompiledExpr compile_expression(Slp& slp, const std::vector<std::uint32_t>& inputs,
                                std::string_view text, int line = 1, int column = 1);

/// Single-expression program with one output. With n_vars = 0 the number of
/// variables is the largest index that occurs.
Slp parse(std::string_view text, std::size_t n_vars = 0);

}  // namespace kron

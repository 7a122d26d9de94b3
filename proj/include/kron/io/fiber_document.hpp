#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "kron/kronecker/types.hpp"
#include "kron/ring/ext_field.hpp"
#include "kron/ring/field_descriptor.hpp"
#include "kron/ring/prime_field.hpp"
#include "kron/ring/rationals.hpp"

namespace kron {

using AnyFiber = std::variant<Fiber<PrimeField>, Fiber<ExtField>, Fiber<Rationals>>;

/// A solved fiber with the data needed to read it back and check it.
/// Elements are decimal strings: F_p residues as "r", rationals as "a/b"
/// (or "a" when integral), F_q elements as coefficient arrays over F_p in
/// the basis 1, t, t^2, ... of F_p[t]/(modulus).
struct FiberDocument {
  FieldDescriptor field;
  FpPoly modulus;  // F_q only
  std::size_t n = 0;
  std::size_t r = 0;
  AnyFiber fiber;
  std::uint64_t seed = 0;
  SolveStats stats;

  ExtField ext_field() const { return ExtField(field.p, modulus); }
  bool operator==(const FiberDocument&) const = default;
};

/// One JSON object on one line, without a trailing newline.
std::string to_json_line(const FiberDocument& doc);

/// Inverse of to_json_line. lambda_inverse is recomputed. DocumentError on
/// malformed input or a singular lambda.
FiberDocument parse_fiber_document(std::string_view text);

}  // namespace kron

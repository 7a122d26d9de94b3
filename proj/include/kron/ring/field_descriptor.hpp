#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "kron/errors.hpp"

namespace kron {

/// Textual field choice: `Fp:<p>`, `Fq:<p>^<e>` or `Q`.
struct FieldDescriptor {
  enum class Kind { Prime, Extension, Rational };

  Kind kind = Kind::Rational;
  std::uint64_t p = 0;
  unsigned e = 1;

  static FieldDescriptor parse(std::string_view text);
  std::string to_string() const;

  bool operator==(const FieldDescriptor&) const = default;
};

}  // namespace kron

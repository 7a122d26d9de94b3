#include <algorithm>
#include <limits>

#include "kron/kronecker/types.hpp"

namespace kron {

std::size_t SystemSpec::max_degree() const {
  if (degree_override) return std::max<std::size_t>(1, *degree_override);
  std::size_t d = 1;
  for (std::size_t k : degrees) d = std::max(d, k);
  return d;
}

std::uint64_t SystemSpec::bezout() const {
  constexpr std::uint64_t cap = std::uint64_t(1) << 63;
  std::uint64_t b = 1;
  for (std::size_t k : degrees) {
    const std::uint64_t f = std::max<std::size_t>(1, k);
    if (b > cap / f) return cap;
    b *= f;
  }
  return b;
}

mpz_class SystemSpec::param_height() const {
  std::size_t bits = 1;
  if (program)
    for (const auto& c : program->params())
      bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  return mpz_class(static_cast<unsigned long>(bits));
}

SystemSpec make_system(std::shared_ptr<const Slp> program, std::size_t r, FieldDescriptor field) {
  if (!program) throw InvalidArgument("system: missing program");
  if (program->n_outputs() != r + 1)
    throw InvalidArgument("system: program must have outputs F_1..F_r, G");
  if (r == 0 || r > program->n_vars())
    throw InvalidArgument("system: need 1 <= r <= n equations");
  SystemSpec spec;
  spec.n = program->n_vars();
  spec.r = r;
  spec.field = field;
  const auto deg = program->degree_bounds();
  spec.degrees.assign(deg.begin(), deg.begin() + static_cast<std::ptrdiff_t>(r));
  spec.g_degree = deg[r];
  spec.program = std::move(program);
  return spec;
}

}  // namespace kron

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kron/poly/poly_ring.hpp"
#include "kron/ring/field_descriptor.hpp"
#include "kron/ring/matrix.hpp"
#include "kron/slp/slp.hpp"

namespace kron {

/// F_1, ..., F_r and G in n variables. The program's outputs are
/// F_1, ..., F_r followed by G.
struct SystemSpec {
  std::size_t n = 0;
  std::size_t r = 0;
  FieldDescriptor field;
  std::shared_ptr<const Slp> program;
  std::vector<std::size_t> degrees;  // deg F_1 .. deg F_r
  std::size_t g_degree = 0;
  std::optional<std::size_t> degree_override;
  mpq_class epsilon{1, 100};
  std::optional<std::uint64_t> delta_bound;
  std::optional<mpz_class> height;

  std::size_t g_index() const { return r; }
  /// Maximum degree d of the equations (at least 1).
  std::size_t max_degree() const;
  /// prod deg F_i, saturated at 2^63.
  std::uint64_t bezout() const;
  /// Bit length of the largest integer constant of the program.
  mpz_class param_height() const;
};

/// Builds a spec from a program whose outputs are F_1..F_r, G. The degrees
/// are the program's syntactic bounds.
SystemSpec make_system(std::shared_ptr<const Slp> program, std::size_t r, FieldDescriptor field);

struct SolveConfig {
  mpq_class epsilon{1, 100};
  std::uint64_t seed = 0x5eed;
  std::optional<std::uint64_t> delta_bound;
  unsigned max_retries = 5;
  /// Refuse to cap sample sets at the field size.
  bool strict_sampling = false;
  /// Run the per-point projection loop and the oracle sweep with OpenMP.
  bool parallel = true;
};

/// Bookkeeping filled in by a solve: timings in microseconds.
struct SolveStats {
  std::uint64_t retries = 0;
  std::uint64_t delta_doublings = 0;
  bool sample_set_capped = false;
  std::uint64_t lift_us = 0;
  std::uint64_t project_us = 0;
  std::uint64_t shape_us = 0;
  std::uint64_t conclude_us = 0;
  std::uint64_t total_us = 0;
  std::uint64_t extension_degree = 1;
  std::uint64_t prime = 0;        // modular prime on the rational path
  std::uint64_t padic_order = 0;  // final precision exponent k of p^k
  std::string last_failure;

  bool operator==(const SolveStats&) const = default;
};

/// Polynomial in (X, T) stored by powers of T; entry k is the coefficient
/// of T^k, a polynomial in X.
template <class K>
using Biv = std::vector<typename PolyRing<K>::Elem>;

/// A Kronecker representation of the lifting fiber at level s.
///
/// Coordinates are Y = lambda X. Y_1..Y_{n-s} are fixed to the first n-s
/// entries of `point`, the primitive element is Y_{n-s+1} = T and
/// Y_{n-s+1+i} = v[i](T) for i < s - 1.
template <class K>
struct Fiber {
  using Poly = typename PolyRing<K>::Elem;

  std::size_t level = 0;
  Poly m;
  std::vector<Poly> v;
  std::vector<Poly> w;
  Matrix<K> lambda;
  Matrix<K> lambda_inverse;
  std::vector<typename K::Elem> point;  // n - 1 entries

  std::size_t delta() const { return m.empty() ? 0 : m.size() - 1; }
  bool operator==(const Fiber&) const = default;
};

/// Kronecker representation of the lifting curve C_s in the variable
/// X = Y_{n-s}: M(X, T) monic in T and W_i with
/// dM/dT (X, Y_{n-s+1}) * Y_{n-s+1+i} = W_i (X, Y_{n-s+1}) on C_s.
template <class K>
struct CurveRep {
  std::size_t level = 0;
  Biv<K> M;
  std::vector<Biv<K>> W;

  std::size_t delta() const { return M.empty() ? 0 : M.size() - 1; }
};

}  // namespace kron

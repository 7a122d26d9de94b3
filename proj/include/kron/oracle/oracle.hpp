#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kron/kronecker/types.hpp"
#include "kron/poly/poly_ring.hpp"
#include "kron/ring/matrix.hpp"
#include "kron/ring/prime_field.hpp"

namespace kron {

using FpPoly = std::vector<std::uint64_t>;

/// Pairwise distinct points of F_p^n in lexicographic order.
struct PointSet {
  std::uint64_t p = 0;
  std::size_t n = 0;
  std::vector<std::vector<std::uint64_t>> points;

  std::size_t size() const { return points.size(); }
  bool operator==(const PointSet&) const = default;
};

/// Largest p^n brute_zeros accepts.
inline constexpr std::uint64_t kOracleLimit = 100'000'000;

/// Every x in F_p^n with F_1(x) = ... = F_r(x) = 0 and G(x) != 0. The
/// parallel sweep shards by leading coordinate. TooLarge above kOracleLimit.
PointSet brute_zeros(const SystemSpec& spec, std::uint64_t p, bool parallel = true);

/// Zeros x with (lambda x)_i = point_i for i < point.size().
PointSet fiber_points(const PointSet& zeros, const Matrix<PrimeField>& lambda,
                      std::span<const std::uint64_t> point);

/// prod (T - l(x)) over the distinct values of the linear form l on pts.
FpPoly minpoly_of_form(const PointSet& pts, std::span<const std::uint64_t> form);

/// gcd(m, T^p - T): the part of m that splits into distinct F_p-rational roots.
FpPoly rational_part(const PrimeField& k, const FpPoly& m);

/// The F_p-rational points of a fiber, pulled back through v and lambda^-1.
PointSet rational_solutions(const PrimeField& k, const Fiber<PrimeField>& fib);

}  // namespace kron

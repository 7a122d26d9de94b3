#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kron/kronecker/types.hpp"

namespace kron {

/// A parameter ladder: `d=4,8,16` or `n=2,3`, with optional fixed settings
/// after semicolons, e.g. `d=4,8,16;n=2;seed=7;reps=3;p=1000003`.
struct SweepSpec {
  char key = 'd';
  std::vector<std::uint64_t> values;
  std::size_t n = 2;
  std::uint64_t d = 2;
  std::uint64_t p = (std::uint64_t(1) << 61) - 1;
  std::uint64_t seed = 1;
  unsigned reps = 1;
};

/// SyntaxError on unknown keys or malformed numbers.
SweepSpec parse_sweep(std::string_view text);

/// Square system in n variables over F_p: F_1 is dense of degree min(d, 2)
/// plus sum c_i x_i^d when d > 2, the others are dense quadrics, and all
/// coefficients are drawn from `seed`. Bezout number 2^(n-1) d.
SystemSpec ladder_system(std::size_t n, std::uint64_t d, std::uint64_t p, std::uint64_t seed);

struct BenchRow {
  std::uint64_t value = 0;
  std::size_t n = 0;
  std::uint64_t d = 0;
  std::uint64_t bezout = 0;
  std::size_t degree = 0;  // deg m, 0 on failure
  std::string status;      // "ok" or the error kind
  SolveStats stats;        // the fastest repetition
  double ratio = 0;        // total time over the previous row's, 0 on the first
};

std::vector<BenchRow> run_sweep(const SweepSpec& sweep, bool parallel = true);

/// Header line plus one line per row.
std::string bench_csv(const SweepSpec& sweep, const std::vector<BenchRow>& rows);

}  // namespace kron

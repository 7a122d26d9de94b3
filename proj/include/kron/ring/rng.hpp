#pragma once

#include <cstdint>
#include <random>

namespace kron {

/// The single seeded random stream owned by a solve session.
///
/// Draws are produced by rejection sampling on top of mt19937_64 so the
/// sequence is identical on every platform for a given seed (the standard
/// distributions are implementation-defined).
class SessionRng {
 public:
  explicit SessionRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform value in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) {
      ++draws_;
      return 0;
    }
    const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % n);
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    ++draws_;
    return x % n;
  }

  std::uint64_t raw() { return engine_(); }

  /// Number of logical draws taken so far.
  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace kron

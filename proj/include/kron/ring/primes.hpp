#pragma once

#include <gmpxx.h>

#include <cstdint>

#include "kron/ring/rng.hpp"

namespace kron {

inline constexpr int kMillerRabinRounds = 40;

/// Miller-Rabin with the first `rounds` primes as witnesses.
bool is_probable_prime(std::uint64_t n, int rounds = kMillerRabinRounds);
bool is_probable_prime(const mpz_class& n, int rounds = kMillerRabinRounds);

/// Uniformly random prime in (lo, hi]. Throws InvalidArgument when the
/// interval is empty or contains no prime after an exhaustive scan.
std::uint64_t random_prime_in(std::uint64_t lo, std::uint64_t hi,
                              SessionRng& rng);

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace kron

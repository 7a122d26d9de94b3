#include "kron/ring/primes.hpp"

#include <array>

#include "kron/errors.hpp"

namespace kron {

namespace {

constexpr std::array<std::uint64_t, 40> kWitnesses = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};

}  // namespace

bool is_probable_prime(std::uint64_t n, int rounds) {
  if (n < 2) return false;
  for (std::uint64_t w : kWitnesses) {
    if (n == w) return true;
    if (n % w == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  const int count = rounds < 40 ? rounds : 40;
  for (int i = 0; i < count; ++i) {
    std::uint64_t x = powmod(kWitnesses[i], d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_probable_prime(const mpz_class& n, int rounds) {
  if (n.fits_ulong_p()) return is_probable_prime(std::uint64_t(n.get_ui()), rounds);
  return mpz_probab_prime_p(n.get_mpz_t(), rounds) != 0;
}

std::uint64_t random_prime_in(std::uint64_t lo, std::uint64_t hi,
                              SessionRng& rng) {
  if (hi <= lo) throw InvalidArgument("random_prime_in: empty interval");
  const std::uint64_t width = hi - lo;
  // Random probing first; fall back to a scan so tiny intervals terminate.
  for (int attempt = 0; attempt < 4096; ++attempt) {
    const std::uint64_t c = lo + 1 + rng.below(width);
    if (is_probable_prime(c)) return c;
  }
  for (std::uint64_t c = lo + 1; c <= hi && c > lo; ++c)
    if (is_probable_prime(c)) return c;
  throw InvalidArgument("random_prime_in: no prime in interval");
}

}  // namespace kron

#pragma once

#include <cstdint>
#include <vector>

#include "kron/poly/poly_ring.hpp"
#include "kron/ring/prime_field.hpp"
#include "kron/ring/rng.hpp"

namespace kron {

using FpPoly = std::vector<std::uint64_t>;

/// Distinct prime divisors of n.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// T^(p^k) mod f by k successive p-th powers.
inline FpPoly frobenius_power_of_t(const PolyRing<PrimeField>& P, const FpPoly& f,
                                   unsigned k) {
  const mpz_class p(static_cast<unsigned long>(P.base().characteristic()));
  FpPoly x = P.rem_monic(P.variable(), f);
  for (unsigned i = 0; i < k; ++i) x = P.powmod(x, p, f);
  return x;
}

/// Rabin's test: f monic of degree e is irreducible over F_p iff
/// T^(p^e) = T mod f and gcd(T^(p^(e/q)) - T, f) = 1 for every prime q | e.
inline bool is_irreducible(const PrimeField& F, const FpPoly& f) {
  PolyRing<PrimeField> P(F);
  if (!P.is_monic(f)) return false;
  const auto e = static_cast<unsigned>(P.degree(f));
  if (e == 0) return false;
  if (e == 1) return true;
  const FpPoly t = P.variable();
  for (std::uint64_t q : prime_divisors(e)) {
    const FpPoly x = frobenius_power_of_t(P, f, e / static_cast<unsigned>(q));
    if (!P.is_one(P.gcd(P.sub(x, t), f))) return false;
  }
  return P.eq(frobenius_power_of_t(P, f, e), P.rem_monic(t, f));
}

/// Random monic irreducible polynomial of degree e over F_p. Degree one
/// always yields T.
inline FpPoly find_irreducible(std::uint64_t p, unsigned e, SessionRng& rng) {
  if (e == 0) throw InvalidArgument("find_irreducible: degree must be positive");
  PrimeField F(p);
  if (e == 1) return FpPoly{0, 1};
  for (;;) {
    FpPoly f(e + 1);
    for (unsigned i = 0; i < e; ++i) f[i] = rng.below(p);
    f[e] = 1;
    if (is_irreducible(F, f)) return f;
  }
}

}  // namespace kron

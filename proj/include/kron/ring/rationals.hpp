#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "kron/errors.hpp"
#include "kron/ring/prime_field.hpp"

namespace kron {

/// The rational numbers, exact. mpq_class keeps fractions reduced with a
/// positive denominator.
class Rationals {
 public:
  using Elem = mpq_class;
  using Scalar = Elem;
  static constexpr bool is_field = true;

  std::uint64_t characteristic() const { return 0; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) throw NonUnit("Q: zero has no inverse");
    return 1 / a;
  }
  Elem pow(const Elem& a, std::uint64_t e) const {
    Elem r;
    mpz_pow_ui(r.get_num_mpz_t(), a.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), a.get_den_mpz_t(), static_cast<unsigned long>(e));
    return r;
  }

  Elem from_int(std::int64_t v) const { return Elem(static_cast<long>(v)); }
  Elem from_mpz(const mpz_class& v) const { return Elem(v); }
  Elem from_scalar(const Scalar& s) const { return s; }
  Elem from_index(std::uint64_t i) const { return Elem(static_cast<unsigned long>(i)); }
  Elem pth_root(const Elem& a) const { return a; }

  std::string to_string(const Elem& a) const { return a.get_str(); }

  bool operator==(const Rationals&) const { return true; }
};

/// numerator * denominator^-1 mod p; BadPrime when p divides the denominator.
inline std::uint64_t reduce_mod(const mpq_class& a, const PrimeField& F) {
  const std::uint64_t den = F.from_mpz(a.get_den());
  if (den == 0) throw BadPrime("reduce_mod: prime divides a denominator");
  return F.mul(F.from_mpz(a.get_num()), F.inv(den));
}

}  // namespace kron

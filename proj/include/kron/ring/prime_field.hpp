#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "kron/errors.hpp"
#include "kron/ring/primes.hpp"

namespace kron {

/// The prime field F_p for a prime p < 2^62. Elements are residues in [0, p).
class PrimeField {
 public:
  using Elem = std::uint64_t;
  using Scalar = Elem;
  static constexpr bool is_field = true;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (std::uint64_t(1) << 62))
      throw InvalidArgument("prime field: modulus must be below 2^62");
    if (!is_probable_prime(p))
      throw InvalidArgument("prime field: " + std::to_string(p) +
                            " is not prime");
  }

  std::uint64_t characteristic() const { return p_; }
  std::uint64_t modulus() const { return p_; }
  mpz_class cardinality() const { return mpz_class(static_cast<unsigned long>(p_)); }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const {
    const Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return mulmod(a, b, p_); }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }

  Elem inv(Elem a) const {
    if (a == 0) throw NonUnit("F_p: zero has no inverse");
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p_);
    std::int64_t new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
      const std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(t);
  }

  Elem pow(Elem a, std::uint64_t e) const { return powmod(a, e, p_); }
  Elem pow(Elem a, const mpz_class& e) const {
    mpz_class r;
    const mpz_class base(static_cast<unsigned long>(a));
    const mpz_class mod(static_cast<unsigned long>(p_));
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
    return r.get_ui();
  }

  Elem from_int(std::int64_t v) const {
    const std::int64_t m = static_cast<std::int64_t>(p_);
    std::int64_t r = v % m;
    if (r < 0) r += m;
    return static_cast<Elem>(r);
  }
  Elem from_mpz(const mpz_class& v) const {
    mpz_class r;
    const mpz_class mod(static_cast<unsigned long>(p_));
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
    return r.get_ui();
  }
  Elem from_scalar(Scalar s) const { return s; }

  /// Canonical embedding of the sampling index i into the field.
  Elem from_index(std::uint64_t i) const {
    if (i >= p_) throw FieldTooSmall("sampling index exceeds field size");
    return i;
  }

  /// Frobenius is the identity on the prime field.
  Elem pth_root(Elem a) const { return a; }

  mpz_class to_mpz(Elem a) const { return mpz_class(static_cast<unsigned long>(a)); }
  std::string to_string(Elem a) const { return std::to_string(a); }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint64_t p_;
};

}  // namespace kron

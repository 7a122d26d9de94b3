#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "kron/errors.hpp"
#include "kron/ring/primes.hpp"

namespace kron {

/// Z/p^k with residues in [0, p^k).
class ResidueRing {
 public:
  using Elem = mpz_class;
  using Scalar = Elem;
  static constexpr bool is_field = false;

  ResidueRing(std::uint64_t p, unsigned k) : p_(p), k_(k) {
    if (k == 0) throw InvalidArgument("residue ring: precision must be positive");
    if (!is_probable_prime(p)) throw InvalidArgument("residue ring: modulus base must be prime");
    mpz_ui_pow_ui(mod_.get_mpz_t(), static_cast<unsigned long>(p), k);
  }

  std::uint64_t characteristic() const { return p_; }
  std::uint64_t prime() const { return p_; }
  unsigned precision() const { return k_; }
  const mpz_class& modulus() const { return mod_; }

  Elem zero() const { return 0; }
  Elem one() const { return mod_ == 1 ? 0 : 1; }
  Elem add(const Elem& a, const Elem& b) const {
    Elem s = a + b;
    if (s >= mod_) s -= mod_;
    return s;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem s = a - b;
    if (s < 0) s += mod_;
    return s;
  }
  Elem neg(const Elem& a) const { return a == 0 ? Elem(0) : Elem(mod_ - a); }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem r = a * b;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod_.get_mpz_t());
    return r;
  }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem inv(const Elem& a) const {
    Elem r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod_.get_mpz_t()) == 0)
      throw NonUnit("Z/p^k: element divisible by p");
    return r;
  }
  Elem pow(const Elem& a, const mpz_class& e) const {
    Elem r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), mod_.get_mpz_t());
    return r;
  }

  Elem from_int(std::int64_t v) const { return from_mpz(mpz_class(static_cast<long>(v))); }
  Elem from_mpz(const mpz_class& v) const {
    Elem r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), mod_.get_mpz_t());
    return r;
  }
  Elem from_scalar(const Scalar& s) const { return from_mpz(s); }

  Elem pth_root(const Elem& a) const {
    if (k_ > 1) throw Unsupported("Z/p^k: p-th roots need a field");
    return a;
  }

  mpz_class to_mpz(const Elem& a) const { return a; }
  std::string to_string(const Elem& a) const { return a.get_str(); }

  bool operator==(const ResidueRing& o) const { return p_ == o.p_ && k_ == o.k_; }

 private:
  std::uint64_t p_;
  unsigned k_;
  mpz_class mod_;
};

}  // namespace kron

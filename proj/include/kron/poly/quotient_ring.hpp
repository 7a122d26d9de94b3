#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "kron/errors.hpp"
#include "kron/poly/poly_ring.hpp"

namespace kron {

/// R[T]/(m) for a monic m. Elements are reduced polynomials of degree
/// below deg m. Inversion requires R to be a field.
template <class R>
class QuotientRing {
 public:
  using Base = R;
  using Coeff = typename R::Elem;
  using Elem = typename PolyRing<R>::Elem;
  using Scalar = typename R::Scalar;
  static constexpr bool is_field = false;

  QuotientRing(R base, Elem modulus) : poly_(std::move(base)), m_(std::move(modulus)) {
    if (!poly_.is_monic(m_)) throw NotMonic("quotient ring: modulus is not monic");
  }
  QuotientRing(PolyRing<R> poly, Elem modulus) : poly_(std::move(poly)), m_(std::move(modulus)) {
    if (!poly_.is_monic(m_)) throw NotMonic("quotient ring: modulus is not monic");
  }

  const R& base() const { return poly_.base(); }
  const PolyRing<R>& poly_ring() const { return poly_; }
  const Elem& modulus() const { return m_; }
  std::uint64_t characteristic() const { return base().characteristic(); }

  Elem reduce(const Elem& f) const { return poly_.rem_monic(f, m_); }

  Elem zero() const { return {}; }
  Elem one() const { return reduce(poly_.one()); }
  Elem from_int(std::int64_t v) const { return reduce(poly_.from_int(v)); }
  Elem from_mpz(const mpz_class& v) const { return reduce(poly_.from_mpz(v)); }
  Elem from_scalar(const Scalar& s) const { return reduce(poly_.from_scalar(s)); }
  Elem constant(const Coeff& c) const { return reduce(poly_.constant(c)); }
  /// The class of T.
  Elem generator() const { return reduce(poly_.variable()); }

  bool is_zero(const Elem& a) const { return a.empty(); }
  bool eq(const Elem& a, const Elem& b) const { return poly_.eq(a, b); }
  Elem add(const Elem& a, const Elem& b) const { return poly_.add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return poly_.sub(a, b); }
  Elem neg(const Elem& a) const { return poly_.neg(a); }
  Elem mul(const Elem& a, const Elem& b) const { return reduce(poly_.mul(a, b)); }
  Elem scale(const Elem& a, const Coeff& c) const { return poly_.scale(a, c); }
  Elem inv(const Elem& a) const { return poly_.modinv(a, m_); }

  std::string to_string(const Elem& a) const { return poly_.to_string(a); }

 private:
  PolyRing<R> poly_;
  Elem m_;
};

}  // namespace kron

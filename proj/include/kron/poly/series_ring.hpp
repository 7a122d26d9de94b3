#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kron/errors.hpp"
#include "kron/poly/poly_ring.hpp"

namespace kron {

/// Truncated power series in Z = X - base_point modulo Z^t. Elements store
/// the coefficients of powers of Z, lowest first, at most t of them.
template <class R>
class SeriesRing {
 public:
  using Base = R;
  using Coeff = typename R::Elem;
  using Elem = std::vector<Coeff>;
  using Scalar = typename R::Scalar;
  static constexpr bool is_field = false;

  SeriesRing(R base, std::size_t precision, Coeff base_point)
      : poly_(std::move(base)), t_(precision), b_(std::move(base_point)) {
    if (t_ == 0) throw InvalidArgument("series ring: precision must be positive");
  }

  const R& base() const { return poly_.base(); }
  const PolyRing<R>& poly_ring() const { return poly_; }
  std::size_t precision() const { return t_; }
  const Coeff& base_point() const { return b_; }
  std::uint64_t characteristic() const { return base().characteristic(); }

  SeriesRing with_precision(std::size_t t) const { return SeriesRing(base(), t, b_); }

  Elem zero() const { return {}; }
  Elem one() const { return poly_.one(); }
  Elem from_int(std::int64_t v) const { return poly_.from_int(v); }
  Elem from_mpz(const mpz_class& v) const { return poly_.from_mpz(v); }
  Elem from_scalar(const Scalar& s) const { return poly_.from_scalar(s); }
  Elem constant(const Coeff& c) const { return poly_.constant(c); }
  /// Z itself (zero at precision 1).
  Elem z() const { return truncate(poly_.variable()); }
  /// The series of X = base_point + Z.
  Elem x() const { return truncate(poly_.from_coeffs({b_, base().one()})); }

  Elem truncate(const Elem& a) const { return poly_.truncate(a, t_); }

  bool is_zero(const Elem& a) const { return a.empty(); }
  bool eq(const Elem& a, const Elem& b) const { return poly_.eq(a, b); }
  Elem add(const Elem& a, const Elem& b) const { return poly_.add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return poly_.sub(a, b); }
  Elem neg(const Elem& a) const { return poly_.neg(a); }
  Elem mul(const Elem& a, const Elem& b) const { return poly_.mul_trunc(a, b, t_); }
  Elem scale(const Elem& a, const Coeff& c) const { return poly_.scale(a, c); }

  Coeff constant_term(const Elem& a) const { return poly_.coeff(a, 0); }

  /// Newton iteration g <- g (2 - a g), doubling the precision each round.
  Elem inv(const Elem& a) const {
    const R& r = base();
    Coeff c0;
    try {
      c0 = r.inv(constant_term(a));
    } catch (const NonUnit&) {
      throw NonUnitConstantTerm("series inverse: constant term is not a unit");
    }
    Elem g = poly_.constant(c0);
    std::size_t prec = 1;
    const Elem two = poly_.from_int(2);
    while (prec < t_) {
      prec = std::min(2 * prec, t_);
      const Elem ag = poly_.mul_trunc(poly_.truncate(a, prec), g, prec);
      g = poly_.mul_trunc(g, poly_.sub(two, ag), prec);
    }
    return g;
  }

  /// Rewrites a series in Z as a polynomial in X = Z + base_point.
  typename PolyRing<R>::Elem to_poly_in_x(const Elem& a) const {
    return poly_.taylor_shift(a, base().neg(b_));
  }
  /// Expansion of a polynomial in X around base_point, truncated.
  Elem from_poly_in_x(const typename PolyRing<R>::Elem& f) const {
    return truncate(poly_.taylor_shift(f, b_));
  }

  std::string to_string(const Elem& a) const { return poly_.to_string(a); }

 private:
  PolyRing<R> poly_;
  std::size_t t_;
  Coeff b_;
};

}  // namespace kron

#pragma once

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "kron/errors.hpp"
#include "kron/poly/poly_ring.hpp"
#include "kron/ring/irreducible.hpp"
#include "kron/ring/prime_field.hpp"

namespace kron {

/// F_{p^e} = F_p[t]/(f) for a fixed monic irreducible f of degree e.
///
/// Elements are coefficient vectors in t, lowest first, with trailing zeros
/// trimmed so that the representation is canonical (zero is empty).
class ExtField {
 public:
  using Elem = boost::container::small_vector<std::uint64_t, 4>;
  using Scalar = Elem;
  static constexpr bool is_field = true;

  /// `modulus` is monic of degree e, lowest coefficient first.
  ExtField(std::uint64_t p, FpPoly modulus) : fp_(p), f_(std::move(modulus)) {
    PolyRing<PrimeField> P(fp_);
    P.normalize(f_);
    if (!is_irreducible(fp_, f_))
      throw InvalidArgument("extension field: modulus is not monic irreducible");
    e_ = static_cast<unsigned>(f_.size() - 1);
    q_ = 1;
    for (unsigned i = 0; i < e_; ++i) q_ *= static_cast<unsigned long>(p);
  }

  static ExtField random(std::uint64_t p, unsigned e, SessionRng& rng) {
    return ExtField(p, find_irreducible(p, e, rng));
  }

  const PrimeField& prime_field() const { return fp_; }
  const FpPoly& modulus() const { return f_; }
  unsigned degree() const { return e_; }
  std::uint64_t characteristic() const { return fp_.characteristic(); }
  mpz_class cardinality() const { return q_; }

  Elem zero() const { return {}; }
  Elem one() const { return Elem{1}; }
  /// The class of t.
  Elem generator() const {
    if (e_ == 1) return from_prime(fp_.neg(f_[0]));
    return Elem{0, 1};
  }
  Elem from_prime(std::uint64_t c) const {
    if (c == 0) return {};
    return Elem{c};
  }
  Elem from_int(std::int64_t v) const { return from_prime(fp_.from_int(v)); }
  Elem from_mpz(const mpz_class& v) const { return from_prime(fp_.from_mpz(v)); }
  Elem from_scalar(const Scalar& s) const { return s; }

  /// Coefficients must lie in [0, p); trailing zeros are trimmed.
  Elem from_coeffs(const std::vector<std::uint64_t>& c) const {
    if (c.size() > e_) throw InvalidArgument("extension element has too many coefficients");
    Elem a(c.begin(), c.end());
    for (std::uint64_t x : a)
      if (x >= fp_.modulus()) throw InvalidArgument("extension coefficient out of range");
    trim(a);
    return a;
  }
  std::vector<std::uint64_t> coeffs(const Elem& a) const {
    std::vector<std::uint64_t> c(e_, 0);
    std::copy(a.begin(), a.end(), c.begin());
    return c;
  }

  bool is_zero(const Elem& a) const { return a.empty(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const {
    const Elem& big = a.size() >= b.size() ? a : b;
    const Elem& small = a.size() >= b.size() ? b : a;
    Elem out = big;
    for (std::size_t i = 0; i < small.size(); ++i) out[i] = fp_.add(out[i], small[i]);
    trim(out);
    return out;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem out(std::max(a.size(), b.size()), 0);
    std::copy(a.begin(), a.end(), out.begin());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = fp_.sub(out[i], b[i]);
    trim(out);
    return out;
  }
  Elem neg(const Elem& a) const {
    Elem out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = fp_.neg(a[i]);
    return out;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    if (a.empty() || b.empty()) return {};
    boost::container::small_vector<std::uint64_t, 8> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j)
        prod[i + j] = fp_.add(prod[i + j], fp_.mul(a[i], b[j]));
    }
    for (std::size_t i = prod.size(); i-- > e_;) {
      const std::uint64_t c = prod[i];
      if (c == 0) continue;
      for (unsigned j = 0; j < e_; ++j)
        prod[i - e_ + j] = fp_.sub(prod[i - e_ + j], fp_.mul(c, f_[j]));
    }
    Elem out(prod.begin(), prod.begin() + std::min<std::size_t>(prod.size(), e_));
    trim(out);
    return out;
  }

  Elem inv(const Elem& a) const {
    if (a.empty()) throw NonUnit("F_q: zero has no inverse");
    PolyRing<PrimeField> P(fp_);
    FpPoly g = P.modinv(FpPoly(a.begin(), a.end()), f_);
    return Elem(g.begin(), g.end());
  }

  Elem pow(Elem a, const mpz_class& e) const {
    Elem result = one();
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      result = mul(result, result);
      if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, a);
    }
    return result;
  }
  Elem pow(const Elem& a, std::uint64_t e) const {
    return pow(a, mpz_class(static_cast<unsigned long>(e)));
  }

  /// Inverse Frobenius: a^(p^(e-1)).
  Elem pth_root(const Elem& a) const {
    Elem r = a;
    const mpz_class p(static_cast<unsigned long>(characteristic()));
    for (unsigned i = 0; i + 1 < e_; ++i) r = pow(r, p);
    return r;
  }

  /// The index i < p^e written in base p gives the coefficient vector.
  Elem from_index(std::uint64_t i) const {
    if (mpz_class(static_cast<unsigned long>(i)) >= q_)
      throw FieldTooSmall("sampling index exceeds field size");
    Elem a;
    const std::uint64_t p = characteristic();
    while (i) {
      a.push_back(i % p);
      i /= p;
    }
    return a;
  }

  std::string to_string(const Elem& a) const {
    std::string s = "[";
    for (unsigned i = 0; i < e_; ++i) {
      if (i) s += ",";
      s += std::to_string(i < a.size() ? a[i] : 0);
    }
    return s + "]";
  }

  bool operator==(const ExtField& o) const { return fp_ == o.fp_ && f_ == o.f_; }

 private:
  static void trim(Elem& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  PrimeField fp_;
  FpPoly f_;
  unsigned e_ = 1;
  mpz_class q_;
};

}  // namespace kron

#pragma once

// Dense multivariate polynomials over F_p, used as an expansion oracle for
// straight-line programs.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "kron/ring/prime_field.hpp"

namespace kron::testing {

class DenseMPoly {
 public:
  using Monomial = std::vector<unsigned>;
  using Elem = std::map<Monomial, std::uint64_t>;
  using Scalar = std::uint64_t;

  DenseMPoly(PrimeField F, std::size_t n) : F_(F), n_(n) {}

  Elem zero() const { return {}; }
  Elem one() const { return constant(1); }
  Elem constant(std::uint64_t c) const {
    Elem e;
    if (c) e[Monomial(n_, 0)] = c;
    return e;
  }
  Elem var(std::size_t i) const {
    Monomial m(n_, 0);
    m[i] = 1;
    return Elem{{m, 1}};
  }
  Elem from_int(std::int64_t v) const { return constant(F_.from_int(v)); }
  Elem from_mpz(const mpz_class& v) const { return constant(F_.from_mpz(v)); }
  Elem from_scalar(std::uint64_t v) const { return constant(v); }
  bool is_zero(const Elem& a) const { return a.empty(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (const auto& [m, c] : b) put(r, m, F_.add(get(r, m), c));
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (const auto& [m, c] : b) put(r, m, F_.sub(get(r, m), c));
    return r;
  }
  Elem neg(const Elem& a) const { return sub(zero(), a); }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem r;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        Monomial m(n_);
        for (std::size_t i = 0; i < n_; ++i) m[i] = ma[i] + mb[i];
        put(r, m, F_.add(get(r, m), F_.mul(ca, cb)));
      }
    return r;
  }

  Elem derivative(const Elem& a, std::size_t i) const {
    Elem r;
    for (const auto& [m, c] : a) {
      if (m[i] == 0) continue;
      Monomial d = m;
      d[i] -= 1;
      put(r, d, F_.add(get(r, d), F_.mul(c, F_.from_int(m[i]))));
    }
    return r;
  }

  std::uint64_t eval(const Elem& a, const std::vector<std::uint64_t>& x) const {
    std::uint64_t acc = 0;
    for (const auto& [m, c] : a) {
      std::uint64_t t = c;
      for (std::size_t i = 0; i < n_; ++i) t = F_.mul(t, F_.pow(x[i], m[i]));
      acc = F_.add(acc, t);
    }
    return acc;
  }

  std::vector<Elem> vars() const {
    std::vector<Elem> v;
    for (std::size_t i = 0; i < n_; ++i) v.push_back(var(i));
    return v;
  }

 private:
  std::uint64_t get(const Elem& e, const Monomial& m) const {
    auto it = e.find(m);
    return it == e.end() ? 0 : it->second;
  }
  void put(Elem& e, const Monomial& m, std::uint64_t c) const {
    if (c == 0)
      e.erase(m);
    else
      e[m] = c;
  }

  PrimeField F_;
  std::size_t n_;
};

}  // namespace kron::testing

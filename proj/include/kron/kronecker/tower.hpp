#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "kron/errors.hpp"
#include "kron/kronecker/types.hpp"
#include "kron/poly/poly_ring.hpp"
#include "kron/ring/ext_field.hpp"
#include "kron/ring/matrix.hpp"
#include "kron/ring/prime_field.hpp"
#include "kron/ring/rng.hpp"

namespace kron {

/// Working field K together with the field E in which the projection and
/// shape-lemma draws are made. embed is a ring map K -> E and coerce its
/// partial inverse.
template <class K>
struct TrivialTower {
  using Base = K;
  using Inner = K;

  K base;
  const K& inner() const { return base; }
  unsigned degree() const { return 1; }
  typename K::Elem embed(const typename K::Elem& a) const { return a; }
  std::optional<typename K::Elem> coerce(const typename K::Elem& a) const { return a; }
};

/// F_p inside F_{p^e}.
struct PrimeTower {
  using Base = PrimeField;
  using Inner = ExtField;

  PrimeField base;
  ExtField ext;
  const ExtField& inner() const { return ext; }
  unsigned degree() const { return ext.degree(); }
  ExtField::Elem embed(std::uint64_t a) const { return ext.from_prime(a); }
  std::optional<std::uint64_t> coerce(const ExtField::Elem& a) const {
    if (a.size() > 1) return std::nullopt;
    return a.empty() ? 0 : a[0];
  }
};

/// A root of the irreducible f in E, by equal-degree splitting
/// (a trace map in characteristic 2).
inline ExtField::Elem find_root(const ExtField& E, const FpPoly& f, SessionRng& rng) {
  PolyRing<ExtField> P(E);
  using Poly = PolyRing<ExtField>::Elem;
  Poly g;
  for (std::uint64_t c : f) g.push_back(E.from_prime(c));
  P.normalize(g);
  g = P.make_monic(g);
  const mpz_class q = E.cardinality();
  const auto p = E.characteristic();
  std::size_t guard = 0;
  while (P.degree(g) > 1) {
    if (++guard > 10000) throw Unsupported("find_root: splitting did not converge");
    const auto a = E.from_index(rng.below(q.fits_ulong_p() ? q.get_ui() : std::uint64_t(-1)));
    const Poly lin{a, E.one()};
    Poly s;
    if (p == 2) {
      // Tr(a T) = sum_{i < log2 q} (a T)^(2^i) mod g.
      const std::size_t k = mpz_sizeinbase(q.get_mpz_t(), 2) - 1;
      Poly t = P.rem_monic(Poly{E.zero(), a}, g);
      s = t;
      for (std::size_t i = 1; i < k; ++i) {
        t = P.rem_monic(P.sqr(t), g);
        s = P.add(s, t);
      }
    } else {
      s = P.sub(P.powmod(lin, (q - 1) / 2, g), P.one());
    }
    const Poly h = P.gcd(s, g);
    const auto dh = P.degree(h);
    if (dh <= 0 || dh >= P.degree(g)) continue;
    const Poly other = P.exact_div(g, h);
    g = P.degree(h) <= P.degree(other) ? h : P.make_monic(other);
  }
  return E.neg(g[0]);
}

/// F_q = F_p[t]/(f) inside F_{q^e}, via t -> a root of f.
class ExtTower {
 public:
  using Base = ExtField;
  using Inner = ExtField;

  ExtTower(ExtField base, ExtField inner, SessionRng& rng)
      : base(std::move(base)), ext(std::move(inner)) {
    theta_ = find_root(ext, this->base.modulus(), rng);
    const unsigned eb = this->base.degree(), ei = ext.degree();
    basis_.assign(ei, std::vector<std::uint64_t>(eb, 0));
    auto pw = ext.one();
    for (unsigned j = 0; j < eb; ++j) {
      const auto c = ext.coeffs(pw);
      for (unsigned i = 0; i < ei && i < c.size(); ++i) basis_[i][j] = c[i];
      pw = ext.mul(pw, theta_);
    }
  }

  ExtField base;
  ExtField ext;

  const ExtField& inner() const { return ext; }
  unsigned degree() const { return ext.degree() / base.degree(); }

  ExtField::Elem embed(const ExtField::Elem& a) const {
    ExtField::Elem acc = ext.zero(), pw = ext.one();
    for (std::uint64_t c : base.coeffs(a)) {
      if (c) acc = ext.add(acc, ext.mul(ext.from_prime(c), pw));
      pw = ext.mul(pw, theta_);
    }
    return acc;
  }

  std::optional<ExtField::Elem> coerce(const ExtField::Elem& a) const {
    std::vector<std::uint64_t> b = ext.coeffs(a);
    b.resize(ext.degree(), 0);
    const auto x = solve_overdetermined(ext.prime_field(), basis_, b);
    if (!x) return std::nullopt;
    return base.from_coeffs(*x);
  }

 private:
  ExtField::Elem theta_;
  Matrix<PrimeField> basis_;
};

template <class Tower>
typename PolyRing<typename Tower::Inner>::Elem embed_poly(
    const Tower& tw, const typename PolyRing<typename Tower::Base>::Elem& f) {
  typename PolyRing<typename Tower::Inner>::Elem out;
  out.reserve(f.size());
  for (const auto& c : f) out.push_back(tw.embed(c));
  PolyRing<typename Tower::Inner>(tw.inner()).normalize(out);
  return out;
}

template <class Tower>
typename PolyRing<typename Tower::Base>::Elem coerce_poly(
    const Tower& tw, const typename PolyRing<typename Tower::Inner>::Elem& f) {
  typename PolyRing<typename Tower::Base>::Elem out;
  out.reserve(f.size());
  for (const auto& c : f) {
    auto b = tw.coerce(c);
    if (!b) throw CoercionFailed("coefficient does not lie in the base field");
    out.push_back(std::move(*b));
  }
  PolyRing<typename Tower::Base>(tw.base).normalize(out);
  return out;
}

template <class Tower>
Matrix<typename Tower::Inner> embed_matrix(const Tower& tw, const Matrix<typename Tower::Base>& A) {
  Matrix<typename Tower::Inner> out;
  for (const auto& row : A) {
    std::vector<typename Tower::Inner::Elem> r;
    for (const auto& x : row) r.push_back(tw.embed(x));
    out.push_back(std::move(r));
  }
  return out;
}

template <class Tower>
CurveRep<typename Tower::Inner> embed_curve(const Tower& tw, const CurveRep<typename Tower::Base>& c) {
  CurveRep<typename Tower::Inner> out;
  out.level = c.level;
  for (const auto& k : c.M) out.M.push_back(embed_poly(tw, k));
  for (const auto& w : c.W) {
    Biv<typename Tower::Inner> e;
    for (const auto& k : w) e.push_back(embed_poly(tw, k));
    out.W.push_back(std::move(e));
  }
  return out;
}

}  // namespace kron

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kron/errors.hpp"
#include "kron/poly/poly_ring.hpp"
#include "kron/poly/quotient_ring.hpp"

namespace kron {

/// Outcome of trying to invert a modulo a monic square-free m.
template <class K>
struct InvOrSplit {
  enum class Kind { Inverse, ZeroBranch, Split };
  using Poly = typename PolyRing<K>::Elem;

  Kind kind;
  Poly inverse;  // Inverse
  Poly m1, m2;   // Split: m1 = gcd(a, m), m2 = m / m1, both monic
};

template <class K>
InvOrSplit<K> inv_or_split(const PolyRing<K>& P, const typename PolyRing<K>::Elem& a,
                           const typename PolyRing<K>::Elem& m) {
  using R = InvOrSplit<K>;
  const auto ar = P.rem_monic(a, m);
  if (ar.empty()) return {R::Kind::ZeroBranch, {}, {}, {}};
  const auto g = P.xgcd(ar, m);
  if (P.is_one(g.d)) return {R::Kind::Inverse, P.rem_monic(g.u, m), {}, {}};
  return {R::Kind::Split, {}, g.d, P.exact_div(m, g.d)};
}

/// A modulus together with a value living over it.
template <class K, class V>
struct Branch {
  typename PolyRing<K>::Elem modulus;
  V value;
};

/// Polynomials in Y whose coefficients are residues modulo some m(X).
template <class K>
using YPoly = std::vector<typename PolyRing<K>::Elem>;

template <class K>
using SplitContext = std::vector<Branch<K, YPoly<K>>>;

namespace detail {

template <class K>
YPoly<K> reduce_coeffs(const PolyRing<K>& P, const YPoly<K>& f,
                       const typename PolyRing<K>::Elem& m) {
  YPoly<K> out;
  out.reserve(f.size());
  for (const auto& c : f) out.push_back(P.rem_monic(c, m));
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

// Scales f so its leading coefficient is one. Returns false after pushing
// the two halves of a split onto `pending` instead.
template <class K, class State>
bool make_monic_or_split(const PolyRing<K>& P, const typename PolyRing<K>::Elem& m, YPoly<K>& f,
                         std::vector<State>& pending, const State& self) {
  if (f.empty()) return true;
  const auto r = inv_or_split(P, f.back(), m);
  if (r.kind == InvOrSplit<K>::Kind::Split) {
    pending.push_back(self.restrict_to(P, r.m1));
    pending.push_back(self.restrict_to(P, r.m2));
    return false;
  }
  // ZeroBranch cannot happen: coefficients are reduced and trimmed.
  for (auto& c : f) c = P.rem_monic(P.mul(c, r.inverse), m);
  return true;
}

template <class K>
struct GcdState {
  typename PolyRing<K>::Elem m;
  YPoly<K> a, b;

  GcdState restrict_to(const PolyRing<K>& P, const typename PolyRing<K>::Elem& mi) const {
    return {mi, reduce_coeffs(P, a, mi), reduce_coeffs(P, b, mi)};
  }
};

}  // namespace detail

/// Monic gcd in Y of f1, f2 over k[X]/(m), splitting m whenever a leading
/// coefficient is a zero divisor. Splits are processed depth first.
template <class K>
SplitContext<K> biv_gcd(const PolyRing<K>& P, const YPoly<K>& f1, const YPoly<K>& f2,
                        const typename PolyRing<K>::Elem& m) {
  using State = detail::GcdState<K>;
  SplitContext<K> out;
  std::vector<State> pending{State{m, detail::reduce_coeffs(P, f1, m), detail::reduce_coeffs(P, f2, m)}};
  while (!pending.empty()) {
    State st = std::move(pending.back());
    pending.pop_back();
    if (P.degree(st.m) <= 0) continue;
    bool split = false;
    while (!st.b.empty()) {
      if (!detail::make_monic_or_split<K>(P, st.m, st.b, pending, st)) {
        split = true;
        break;
      }
      QuotientRing<K> Q(P, st.m);
      PolyRing<QuotientRing<K>> PY(Q);
      auto r = PY.divrem_monic(st.a, st.b).remainder;
      st.a = std::move(st.b);
      st.b = std::move(r);
    }
    if (split) continue;
    if (!detail::make_monic_or_split<K>(P, st.m, st.a, pending, st)) continue;
    out.push_back({st.m, std::move(st.a)});
  }
  return out;
}

/// The unique v with v = v_i mod m_i for branches whose gcd is Y - v_i.
template <class K>
typename PolyRing<K>::Elem crt_combine(const PolyRing<K>& P, const SplitContext<K>& ctx) {
  using Poly = typename PolyRing<K>::Elem;
  Poly v, mod = P.one();
  for (const auto& br : ctx) {
    if (br.value.size() != 2 || !P.is_one(br.value[1]))
      throw ShapeViolation("shape lemma: branch gcd is not of the form Y - v(X)");
    const Poly vi = P.rem_monic(P.neg(br.value[0]), br.modulus);
    // v <- v + mod * ((vi - v) * mod^-1 mod m_i)
    const Poly inv = P.modinv(mod, br.modulus);
    const Poly t = P.rem_monic(P.mul(P.sub(vi, v), inv), br.modulus);
    v = P.add(v, P.mul(mod, t));
    mod = P.mul(mod, br.modulus);
  }
  return v;
}

/// CRT for scalar-in-X residues: the unique c mod prod m_i with c = c_i mod m_i.
template <class K>
typename PolyRing<K>::Elem crt_values(
    const PolyRing<K>& P, const std::vector<Branch<K, typename PolyRing<K>::Elem>>& parts) {
  using Poly = typename PolyRing<K>::Elem;
  Poly v, mod = P.one();
  for (const auto& br : parts) {
    const Poly inv = P.modinv(mod, br.modulus);
    const Poly t = P.rem_monic(P.mul(P.sub(br.value, v), inv), br.modulus);
    v = P.add(v, P.mul(mod, t));
    mod = P.mul(mod, br.modulus);
  }
  return v;
}

namespace detail {

template <class K>
struct ResState {
  typename PolyRing<K>::Elem m;
  YPoly<K> f, g;
  typename PolyRing<K>::Elem acc;

  ResState restrict_to(const PolyRing<K>& P, const typename PolyRing<K>::Elem& mi) const {
    return {mi, reduce_coeffs(P, f, mi), reduce_coeffs(P, g, mi), P.rem_monic(acc, mi)};
  }
};

// Ensures the leading coefficient of f is a unit mod m (f may be zero).
template <class K>
bool unit_lc_or_split(const PolyRing<K>& P, const typename PolyRing<K>::Elem& m,
                      const YPoly<K>& f, std::vector<ResState<K>>& pending,
                      const ResState<K>& self) {
  if (f.empty()) return true;
  const auto r = inv_or_split(P, f.back(), m);
  if (r.kind != InvOrSplit<K>::Kind::Split) return true;
  pending.push_back(self.restrict_to(P, r.m1));
  pending.push_back(self.restrict_to(P, r.m2));
  return false;
}

}  // namespace detail

/// res_T(f, g) reduced modulo the square-free m(X), where f and g have
/// coefficients in k[X]. The Euclidean recurrence runs over k[X]/(m) and
/// splits m at zero divisors; branch values are recombined by CRT.
template <class K>
typename PolyRing<K>::Elem resultant_mod(const PolyRing<K>& P, const YPoly<K>& f,
                                         const YPoly<K>& g,
                                         const typename PolyRing<K>::Elem& m) {
  using Poly = typename PolyRing<K>::Elem;
  using State = detail::ResState<K>;
  std::vector<Branch<K, Poly>> parts;
  std::vector<State> pending{
      State{m, detail::reduce_coeffs(P, f, m), detail::reduce_coeffs(P, g, m), P.rem_monic(P.one(), m)}};
  while (!pending.empty()) {
    State st = std::move(pending.back());
    pending.pop_back();
    if (P.degree(st.m) <= 0) continue;
    QuotientRing<K> Q(P, st.m);
    PolyRing<QuotientRing<K>> PT(Q);
    if (!detail::unit_lc_or_split<K>(P, st.m, st.f, pending, st)) continue;
    if (!detail::unit_lc_or_split<K>(P, st.m, st.g, pending, st)) continue;
    bool split = false;
    Poly value;
    for (;;) {
      if (st.f.empty() || st.g.empty()) {
        value = {};
        break;
      }
      const std::size_t n = st.f.size() - 1, k = st.g.size() - 1;
      if (n == 0) {
        value = Q.mul(st.acc, PT.pow_coeff(st.f[0], k));
        break;
      }
      if (k == 0) {
        value = Q.mul(st.acc, PT.pow_coeff(st.g[0], n));
        break;
      }
      if (n < k) {
        std::swap(st.f, st.g);
        if ((n * k) & 1) st.acc = Q.neg(st.acc);
        continue;
      }
      auto r = PT.divrem(st.f, st.g).remainder;
      if (r.empty()) {
        value = {};
        break;
      }
      const auto s = inv_or_split(P, r.back(), st.m);
      if (s.kind == InvOrSplit<K>::Kind::Split) {
        // Restart both halves from the current (f, g); r is recomputed there.
        pending.push_back(st.restrict_to(P, s.m1));
        pending.push_back(st.restrict_to(P, s.m2));
        split = true;
        break;
      }
      const std::size_t d = r.size() - 1;
      if ((n * k) & 1) st.acc = Q.neg(st.acc);
      st.acc = Q.mul(st.acc, PT.pow_coeff(st.g.back(), n - d));
      st.f = std::move(st.g);
      st.g = std::move(r);
    }
    if (split) continue;
    parts.push_back({st.m, std::move(value)});
  }
  return crt_values(P, parts);
}

/// Coefficients in Y of m(X + lambda Y), each a polynomial in X.
template <class K>
YPoly<K> substitute_linear_form(const PolyRing<K>& P, const typename PolyRing<K>::Elem& m,
                                const typename K::Elem& lambda) {
  const K& F = P.base();
  const std::size_t n = m.size();
  if (n == 0) return {};
  // out[j] = lambda^j * sum_k m_k binom(k, j) X^(k-j)
  std::vector<typename K::Elem> binom_row(n, F.zero());
  YPoly<K> out(n);
  std::vector<std::vector<typename K::Elem>> coeffs(n, std::vector<typename K::Elem>(n, F.zero()));
  for (std::size_t k = 0; k < n; ++k) {
    // binom_row becomes row k of Pascal's triangle.
    for (std::size_t j = k; j > 0; --j) binom_row[j] = F.add(binom_row[j], binom_row[j - 1]);
    binom_row[0] = F.one();
    if (F.is_zero(m[k])) continue;
    for (std::size_t j = 0; j <= k; ++j)
      coeffs[j][k - j] = F.add(coeffs[j][k - j], F.mul(m[k], binom_row[j]));
  }
  auto lp = F.one();
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = P.scale(P.from_coeffs(coeffs[j]), lp);
    lp = F.mul(lp, lambda);
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

}  // namespace kron

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "kron/errors.hpp"
#include "kron/kronecker/types.hpp"
#include "kron/poly/poly_ring.hpp"
#include "kron/poly/quotient_ring.hpp"
#include "kron/poly/series_ring.hpp"
#include "kron/ring/matrix.hpp"
#include "kron/slp/composed.hpp"

namespace kron {

/// m_1 = F_1(p^1, T) / gcd(F_1(p^1, T), G(p^1, T)), made monic and
/// square-free. Evaluated in k[T]/(T^(d+1)), which is exact for degree d.
template <class K>
Fiber<K> initial_fiber(const SystemSpec& spec, const ComposedSlp<K>& F,
                       const std::vector<typename K::Elem>& point) {
  const K& k = F.field();
  const std::size_t n = spec.n;
  if (point.size() + 1 != n) throw InvalidArgument("initial_fiber: point must have n - 1 entries");
  const std::size_t prec = std::max(spec.degrees[0], spec.g_degree) + 1;
  SeriesRing<K> S(k, prec, k.zero());
  std::vector<typename SeriesRing<K>::Elem> y;
  for (const auto& c : point) y.push_back(S.constant(c));
  y.push_back(S.z());
  const auto out = F.evaluate(S, y);
  PolyRing<K> P(k);
  const auto& f1 = out[0];
  const auto& g = out[spec.g_index()];
  if (f1.empty()) throw DegenerateFiber("F_1 vanishes on the lifting line");
  auto m = P.exact_div(f1, P.gcd(f1, g));
  m = P.make_monic(P.squarefree_part(m));
  if (P.degree(m) < 1) throw EmptyFiber("first fiber is empty");
  Fiber<K> fib;
  fib.level = 1;
  fib.m = std::move(m);
  fib.lambda = F.lambda();
  fib.lambda_inverse = F.lambda_inverse();
  fib.point = point;
  return fib;
}

namespace detail {

template <class K>
using SeriesQuotient = QuotientRing<SeriesRing<K>>;

// Inverse of a modulo M over truncated series: the field inverse of the
// constant terms, then g <- g (2 - a g) until the precision is reached.
template <class K>
typename SeriesQuotient<K>::Elem series_modinv(const SeriesQuotient<K>& Q,
                                               const typename SeriesQuotient<K>::Elem& a) {
  const SeriesRing<K>& S = Q.base();
  PolyRing<K> P(S.base());
  typename PolyRing<K>::Elem a0, m0;
  for (const auto& c : a) a0.push_back(S.constant_term(c));
  for (const auto& c : Q.modulus()) m0.push_back(S.constant_term(c));
  P.normalize(a0);
  const auto g0 = P.modinv(a0, m0);
  typename SeriesQuotient<K>::Elem g;
  for (const auto& c : g0) g.push_back(S.constant(c));
  const auto two = Q.from_int(2);
  for (std::size_t prec = 1; prec < S.precision(); prec *= 2) g = Q.mul(g, Q.sub(two, Q.mul(a, g)));
  return g;
}

template <class K>
typename PolyRing<SeriesRing<K>>::Elem to_series_poly(const SeriesRing<K>& S,
                                                      const typename PolyRing<K>::Elem& f) {
  typename PolyRing<SeriesRing<K>>::Elem out;
  for (const auto& c : f) out.push_back(S.constant(c));
  return out;
}

template <class K>
Biv<K> series_poly_to_biv(const SeriesRing<K>& S, const typename PolyRing<SeriesRing<K>>::Elem& f) {
  Biv<K> out;
  for (const auto& c : f) out.push_back(S.to_poly_in_x(S.truncate(c)));
  return out;
}

template <class K>
typename PolyRing<SeriesRing<K>>::Elem biv_to_series_poly(const SeriesRing<K>& S, const Biv<K>& f) {
  typename PolyRing<SeriesRing<K>>::Elem out;
  for (const auto& c : f) out.push_back(S.from_poly_in_x(c));
  PolyRing<SeriesRing<K>>(S).normalize(out);
  return out;
}

// Inputs Y_1..Y_n over R[T]/(M): the fixed point coordinates, X at index
// `xi`, then the unknowns.
template <class Q, class K>
std::vector<typename Q::Elem> curve_inputs(const Q& q, const typename Q::Elem& x,
                                           const std::vector<typename K::Elem>& point,
                                           std::size_t xi,
                                           const std::vector<typename Q::Elem>& unknowns) {
  std::vector<typename Q::Elem> y;
  for (std::size_t i = 0; i < xi; ++i) y.push_back(q.from_scalar(point[i]));
  y.push_back(x);
  y.insert(y.end(), unknowns.begin(), unknowns.end());
  return y;
}

}  // namespace detail

/// Lifts the level-s fiber to the Kronecker representation of the curve
/// C_s in X = Y_{n-s}, by Newton-Hensel iteration over k[[X - p_{n-s}]]
/// modulo M at doubling precision.
template <class K>
CurveRep<K> newton_lift(const Fiber<K>& fib, const ComposedSlp<K>& F) {
  using S = SeriesRing<K>;
  using Q = QuotientRing<S>;
  const K& k = F.field();
  const std::size_t n = F.n_vars(), s = fib.level;
  if (s == 0 || s >= n) throw InvalidArgument("newton_lift: level out of range");
  const std::size_t delta = fib.delta();
  const std::size_t xi = n - s - 1;
  const S base(k, 1, fib.point[xi]);

  auto M = detail::to_series_poly(base, fib.m);
  std::vector<typename Q::Elem> V;
  {
    const Q q0(base, M);
    V.push_back(q0.generator());
    for (const auto& v : fib.v) V.push_back(detail::to_series_poly(base, v));
  }

  std::size_t prec = 1;
  while (prec < delta + 1) {
    prec = std::min(2 * prec, delta + 1);
    const S sp = base.with_precision(prec);
    const Q q(sp, M);
    const auto& PS = q.poly_ring();
    const auto y = detail::curve_inputs<Q, K>(q, q.constant(sp.x()), fib.point, xi, V);
    const auto J = F.jacobian(q, std::span<const typename Q::Elem>(y), s);
    Matrix<Q> A(s, std::vector<typename Q::Elem>(s));
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t c = 0; c < s; ++c) A[j][c] = J.d[j][xi + 1 + c];
    const auto da = det_adjugate(q, A);
    typename Q::Elem dinv;
    try {
      dinv = detail::series_modinv<K>(q, da.det);
    } catch (const NotCoprime&) {
      throw JacobianNonInvertible("newton_lift: Jacobian determinant is a zero divisor mod m_s");
    }
    std::vector<typename Q::Elem> nv(s);
    for (std::size_t a = 0; a < s; ++a) {
      auto acc = q.zero();
      for (std::size_t b = 0; b < s; ++b) acc = q.add(acc, q.mul(da.adj[a][b], J.values[b]));
      nv[a] = q.sub(V[a], q.mul(dinv, acc));
    }
    const auto T = q.generator();
    const auto delta_t = q.sub(nv[0], T);
    for (std::size_t a = 1; a < s; ++a)
      V[a] = q.sub(nv[a], q.mul(delta_t, PS.derivative(nv[a])));
    M = PS.sub(M, q.mul(delta_t, PS.derivative(M)));
    V[0] = Q(sp, M).generator();
  }

  const S out(k, delta + 1, fib.point[xi]);
  const Q q(out, M);
  CurveRep<K> curve;
  curve.level = s;
  curve.M = detail::series_poly_to_biv(out, M);
  const auto dM = q.poly_ring().derivative(M);
  for (std::size_t a = 1; a < s; ++a) curve.W.push_back(detail::series_poly_to_biv(out, q.mul(dM, V[a])));
  return curve;
}

/// Independent check of a lift: M(p_{n-s}, T) = m_s, and F_1..F_s vanish
/// modulo M at precision delta + 1 on Y_{n-s+1+i} = W_i (dM/dT)^-1.
template <class K>
bool lift_is_consistent(const CurveRep<K>& curve, const Fiber<K>& fib, const ComposedSlp<K>& F) {
  using S = SeriesRing<K>;
  using Q = QuotientRing<S>;
  const K& k = F.field();
  PolyRing<K> P(k);
  const std::size_t n = F.n_vars(), s = curve.level, delta = curve.delta();
  const std::size_t xi = n - s - 1;
  typename PolyRing<K>::Elem at_p;
  for (const auto& c : curve.M) at_p.push_back(P.eval(c, fib.point[xi]));
  P.normalize(at_p);
  if (!P.eq(at_p, fib.m)) return false;
  const S ser(k, delta + 1, fib.point[xi]);
  const auto M = detail::biv_to_series_poly(ser, curve.M);
  const Q q(ser, M);
  const auto dinv = detail::series_modinv<K>(q, q.poly_ring().derivative(M));
  std::vector<typename Q::Elem> unknowns{q.generator()};
  for (const auto& w : curve.W) unknowns.push_back(q.mul(dinv, q.reduce(detail::biv_to_series_poly(ser, w))));
  const auto y = detail::curve_inputs<Q, K>(q, q.constant(ser.x()), fib.point, xi, unknowns);
  const auto vals = F.evaluate(q, y);
  for (std::size_t j = 0; j < s; ++j)
    if (!q.is_zero(vals[j])) return false;
  return true;
}

}  // namespace kron

#pragma once

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include "kron/errors.hpp"
#include "kron/kronecker/lift.hpp"
#include "kron/kronecker/sampling.hpp"
#include "kron/kronecker/types.hpp"
#include "kron/poly/poly_ring.hpp"
#include "kron/poly/quotient_ring.hpp"
#include "kron/ring/rng.hpp"
#include "kron/slp/composed.hpp"

namespace kron {

/// A lifting curve written over the line L, with X = L - shear * T:
/// M(L, T) monic in T and Y_{n-s+1+i} = W_i(L, T) / denom(L, T) on the curve.
template <class K>
struct CurveChart {
  std::size_t level = 0;
  Biv<K> M;
  Biv<K> denom;
  std::vector<Biv<K>> W;
  typename K::Elem shear{};

  std::size_t delta() const { return M.empty() ? 0 : M.size() - 1; }
};

template <class K>
Biv<K> biv_derivative_t(const K& k, const Biv<K>& f) {
  PolyRing<K> P(k);
  Biv<K> out;
  for (std::size_t i = 1; i < f.size(); ++i)
    out.push_back(P.scale(f[i], k.from_int(static_cast<std::int64_t>(i))));
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

template <class K>
CurveChart<K> chart_from_curve(const K& k, const CurveRep<K>& c) {
  CurveChart<K> ch;
  ch.level = c.level;
  ch.M = c.M;
  ch.denom = biv_derivative_t(k, c.M);
  ch.W = c.W;
  ch.shear = k.zero();
  return ch;
}

/// Largest i + deg f_i.
template <class K>
std::ptrdiff_t biv_total_degree(const Biv<K>& f) {
  std::ptrdiff_t d = PolyRing<K>::kMinusInfinity;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!f[i].empty()) d = std::max(d, static_cast<std::ptrdiff_t>(i + f[i].size() - 1));
  return d;
}

/// B(L - lambda T, T) for B of total degree at most `bound`, through the
/// Kronecker substitution L -> u, T -> u^(bound+1): evaluation at
/// bound (bound + 1) + 1 distinct nodes, then interpolation.
template <class K>
Biv<K> shear_biv(const K& k, const Biv<K>& B, const typename K::Elem& lambda, std::size_t bound,
                 std::span<const typename K::Elem> nodes) {
  PolyRing<K> P(k);
  if (B.empty()) return {};
  if (biv_total_degree<K>(B) > static_cast<std::ptrdiff_t>(bound))
    throw UnluckyRun("shear: curve polynomial exceeds the fiber degree");
  const std::size_t need = bound * (bound + 1) + 1;
  if (nodes.size() < need) throw InvalidArgument("shear: not enough nodes");
  nodes = nodes.first(need);
  std::vector<typename K::Elem> vals;
  vals.reserve(need);
  for (const auto& u : nodes) {
    const auto t = k.pow(u, static_cast<std::uint64_t>(bound + 1));
    const auto x = k.sub(u, k.mul(lambda, t));
    auto acc = k.zero();
    for (std::size_t i = B.size(); i-- > 0;) acc = k.add(k.mul(acc, t), P.eval(B[i], x));
    vals.push_back(acc);
  }
  const auto U = P.interpolate(nodes, vals);
  Biv<K> out(bound + 1);
  for (std::size_t i = 0; i <= bound; ++i) {
    typename PolyRing<K>::Elem c;
    for (std::size_t a = 0; a + i <= bound; ++a) c.push_back(P.coeff(U, a + i * (bound + 1)));
    P.normalize(c);
    out[i] = std::move(c);
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

/// The chart in L = X + lambda T. Requires total degree of M at most delta.
template <class K>
CurveChart<K> shear_chart(const K& k, const CurveChart<K>& ch, const typename K::Elem& lambda,
                          std::span<const typename K::Elem> nodes) {
  PolyRing<K> P(k);
  const std::size_t delta = ch.delta();
  CurveChart<K> out;
  out.level = ch.level;
  out.shear = k.add(ch.shear, lambda);
  out.M = shear_biv(k, ch.M, lambda, delta, nodes);
  if (out.M.size() != delta + 1 || out.M[delta].size() != 1)
    throw UnluckyRun("shear: leading coefficient in T vanishes for this form");
  const auto c = k.inv(out.M[delta][0]);
  for (auto& f : out.M) f = P.scale(f, c);
  out.denom = shear_biv(k, ch.denom, lambda, delta, nodes);
  for (const auto& w : ch.W) out.W.push_back(shear_biv(k, w, lambda, delta, nodes));
  return out;
}

namespace detail {

template <class K>
typename PolyRing<K>::Elem eval_biv_x(const PolyRing<K>& P, const Biv<K>& B, const typename K::Elem& a) {
  typename PolyRing<K>::Elem out;
  out.reserve(B.size());
  for (const auto& c : B) out.push_back(P.eval(c, a));
  P.normalize(out);
  return out;
}

// res_T(M(a, T), F*(a, T)). NotCoprime when the denominator is a zero
// divisor modulo M(a, T).
template <class K>
typename K::Elem chart_value(const K& k, const CurveChart<K>& ch, const ComposedSlp<K>& F,
                             const std::vector<typename K::Elem>& point, const typename K::Elem& a) {
  PolyRing<K> P(k);
  const std::size_t n = F.n_vars(), xi = n - ch.level - 1;
  const auto Ma = eval_biv_x(P, ch.M, a);
  const QuotientRing<K> Q(P, Ma);
  std::vector<typename PolyRing<K>::Elem> unknowns{Q.generator()};
  if (!ch.W.empty()) {
    const auto dinv = P.modinv(eval_biv_x(P, ch.denom, a), Ma);
    for (const auto& w : ch.W) unknowns.push_back(Q.mul(dinv, Q.reduce(eval_biv_x(P, w, a))));
  }
  const auto x = Q.reduce(P.from_coeffs({a, k.neg(ch.shear)}));
  const auto y = curve_inputs<QuotientRing<K>, K>(Q, x, point, xi, unknowns);
  const auto fs = F.evaluate(Q, y);
  return P.resultant(Ma, fs[0]);
}

}  // namespace detail

/// Evaluates the chart at pre-committed nodes, optionally in parallel.
/// Nodes whose denominator is a zero divisor are redrawn afterwards in index
/// order, so serial and parallel runs agree.
template <class K>
std::vector<typename K::Elem> chart_values(const K& k, const CurveChart<K>& ch,
                                           const ComposedSlp<K>& F,
                                           const std::vector<typename K::Elem>& point,
                                           std::vector<typename K::Elem>& nodes, DistinctDraws& draws,
                                           SessionRng& rng, bool parallel) {
  const std::size_t count = nodes.size();
  std::vector<typename K::Elem> vals(count, k.zero());
  std::vector<char> ok(count, 0);
  std::vector<std::exception_ptr> err(count);
  const auto eval_one = [&](std::size_t j) {
    try {
      vals[j] = detail::chart_value(k, ch, F, point, nodes[j]);
      ok[j] = 1;
    } catch (const NotCoprime&) {
      ok[j] = 0;
    } catch (...) {
      err[j] = std::current_exception();
    }
  };
  const auto n = static_cast<std::ptrdiff_t>(count);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t j = 0; j < n; ++j) eval_one(static_cast<std::size_t>(j));
  } else {
    for (std::ptrdiff_t j = 0; j < n; ++j) eval_one(static_cast<std::size_t>(j));
  }
  for (const auto& e : err)
    if (e) std::rethrow_exception(e);
  std::size_t budget = count + 8;
  for (std::size_t j = 0; j < count; ++j) {
    while (!ok[j]) {
      if (budget == 0 || draws.remaining() == 0)
        throw UnluckyEvaluationPoint("projection: too many evaluation points on the discriminant");
      --budget;
      nodes[j] = draws.next(k, rng);
      eval_one(j);
      if (err[j]) std::rethrow_exception(err[j]);
    }
  }
  return vals;
}

/// Square-free part of the constant term of the characteristic polynomial
/// of multiplication by F on the curve, as a monic polynomial in L.
/// `degree` bounds deg F; the interpolant has degree at most degree * delta.
template <class K>
typename PolyRing<K>::Elem project_aF(const K& k, const CurveChart<K>& ch, const ComposedSlp<K>& F,
                                      std::size_t degree, const std::vector<typename K::Elem>& point,
                                      const SampleSet& S, SessionRng& rng, bool parallel) {
  PolyRing<K> P(k);
  if (degree == 0) {
    const std::vector<typename K::Elem> zeros(F.n_vars(), k.zero());
    if (k.is_zero(F.evaluate(k, zeros)[0]))
      throw ZeroConstantTerm("projection: F vanishes identically");
    return P.one();
  }
  const std::size_t D = degree * ch.delta();
  DistinctDraws draws(S);
  auto nodes = draws.take(k, rng, D + 1);
  const auto vals = chart_values(k, ch, F, point, nodes, draws, rng, parallel);
  const auto a = P.interpolate(nodes, vals);
  if (a.empty()) throw ZeroConstantTerm("projection: F vanishes on a component of the curve");
  return P.make_monic(P.squarefree_part(a));
}

}  // namespace kron

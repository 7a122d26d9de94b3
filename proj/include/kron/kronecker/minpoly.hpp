#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kron/dyneval/dyneval.hpp"
#include "kron/errors.hpp"
#include "kron/kronecker/project.hpp"
#include "kron/kronecker/sampling.hpp"
#include "kron/kronecker/types.hpp"
#include "kron/poly/poly_ring.hpp"
#include "kron/ring/rng.hpp"
#include "kron/slp/composed.hpp"

namespace kron {

/// What next_minpoly needs besides the curve: F_{s+1} and G as
/// single-output programs in the Y coordinates, their degrees, and the
/// sampling parameters.
template <class K>
struct NextLevelInputs {
  const ComposedSlp<K>* f_next = nullptr;
  const ComposedSlp<K>* g = nullptr;
  std::size_t f_degree = 1;
  std::size_t g_degree = 0;
  std::size_t d = 1;
  std::uint64_t delta_bound = 1;
  std::vector<typename K::Elem> point;
  mpq_class epsilon{1, 100};
  bool strict_sampling = false;
  bool parallel = true;
  unsigned shape_attempts = 4;
};

template <class K>
struct NextMinpoly {
  typename PolyRing<K>::Elem m;  // minimal polynomial of Y_{n-s}
  typename PolyRing<K>::Elem v;  // Y_{n-s+1} = v(Y_{n-s})
};

namespace detail {

inline std::uint64_t micros_since(std::chrono::steady_clock::time_point t0) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0)
          .count());
}

}  // namespace detail

/// a_F / gcd(a_F, a_G * rho) on one chart: the minimal polynomial of the
/// chart coordinate on the next fiber.
template <class K>
typename PolyRing<K>::Elem chart_minpoly(const K& k, const CurveChart<K>& ch,
                                         const NextLevelInputs<K>& in, const SampleSet& S,
                                         SessionRng& rng) {
  PolyRing<K> P(k);
  const auto aF = project_aF(k, ch, *in.f_next, in.f_degree, in.point, S, rng, in.parallel);
  if (P.degree(aF) < 1) return aF;
  const auto aG = project_aF(k, ch, *in.g, in.g_degree, in.point, S, rng, in.parallel);
  const auto rho = resultant_mod(P, ch.M, biv_derivative_t(k, ch.M), aF);
  const auto bad = P.rem_monic(P.mul(P.rem_monic(aG, aF), rho), aF);
  return P.exact_div(aF, P.gcd(aF, bad));
}


/// v with Y_{n-s+1} = v(X) modulo m, from the forms X + lam[i] T.
/// ShapeViolation when a form does not separate the fiber.
template <class K>
typename PolyRing<K>::Elem shape_parametrization(const K& k, const CurveChart<K>& chart,
                                                 const NextLevelInputs<K>& in,
                                                 const typename PolyRing<K>::Elem& m,
                                                 const typename K::Elem (&lam)[2],
                                                 std::span<const typename K::Elem> nodes,
                                                 const SampleSet& S, SessionRng& rng) {
  PolyRing<K> P(k);
  typename PolyRing<K>::Elem ml[2];
  for (int i = 0; i < 2; ++i) {
    const auto sheared = shear_chart(k, chart, lam[i], nodes);
    ml[i] = chart_minpoly(k, sheared, in, S, rng);
    if (P.degree(ml[i]) != P.degree(m))
      throw ShapeViolation("shape lemma: sheared minimal polynomial has the wrong degree");
  }
  const auto f1 = substitute_linear_form(P, ml[0], lam[0]);
  const auto f2 = substitute_linear_form(P, ml[1], lam[1]);
  return crt_combine(P, biv_gcd(P, f1, f2, m));
}

/// m_{s+1} and the parametrization of Y_{n-s+1} by Y_{n-s}: projection of
/// F_{s+1} and G, removal of the discriminant locus, then two sheared
/// projections and the bidimensional shape lemma.
template <class K>
NextMinpoly<K> next_minpoly(const K& k, const CurveRep<K>& curve, const NextLevelInputs<K>& in,
                            SessionRng& rng, SolveStats& st) {
  PolyRing<K> P(k);
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t delta = curve.delta();
  const CurveChart<K> chart = chart_from_curve(k, curve);
  const SampleSet Sp(projection_size(in.d, delta, in.epsilon), k.cardinality(), in.strict_sampling);
  st.sample_set_capped |= Sp.capped();
  const auto m = chart_minpoly(k, chart, in, Sp, rng);
  st.project_us += detail::micros_since(t0);
  if (P.degree(m) < 1) throw DegreeCollapse("m_{s+1} has degree 0");

  const auto t1 = std::chrono::steady_clock::now();
  const SampleSet Ss(shape_size(std::max(in.delta_bound, delta), in.epsilon), k.cardinality(),
                     in.strict_sampling);
  st.sample_set_capped |= Ss.capped();
  DistinctDraws draws(Ss);
  const auto nodes = draws.take(k, rng, static_cast<std::size_t>(delta * (delta + 1) + 1));
  std::string last = "shape lemma failed";
  for (unsigned attempt = 0; attempt < in.shape_attempts; ++attempt) {
    try {
      const typename K::Elem lam[2] = {draws.next(k, rng), draws.next(k, rng)};
      const auto v = shape_parametrization(k, chart, in, m, lam,
                                           std::span<const typename K::Elem>(nodes), Sp, rng);
      st.shape_us += detail::micros_since(t1);
      return {m, v};
    } catch (const UnluckyRun& e) {
      last = e.what();
    }
  }
  st.shape_us += detail::micros_since(t1);
  throw ShapeViolation(last);
}

/// Horner evaluation of B(X, v(X)) modulo m.
template <class K>
typename PolyRing<K>::Elem biv_at_param(const PolyRing<K>& P, const Biv<K>& B,
                                        const typename PolyRing<K>::Elem& v,
                                        const typename PolyRing<K>::Elem& m) {
  typename PolyRing<K>::Elem acc;
  for (std::size_t i = B.size(); i-- > 0;)
    acc = P.rem_monic(P.add(P.mul(acc, v), P.rem_monic(B[i], m)), m);
  return acc;
}

/// w_i = m' v_i mod m.
template <class K>
std::vector<typename PolyRing<K>::Elem> kronecker_numerators(const PolyRing<K>& P,
                                                             const typename PolyRing<K>::Elem& m,
                                                             const std::vector<typename PolyRing<K>::Elem>& v) {
  std::vector<typename PolyRing<K>::Elem> w;
  const auto dm = P.derivative(m);
  for (const auto& vi : v) w.push_back(P.rem_monic(P.mul(dm, vi), m));
  return w;
}

/// The level-(s+1) fiber from the curve C_s and (m_{s+1}, v): the new
/// primitive element is Y_{n-s}, with Y_{n-s+1} = v and the remaining
/// coordinates W_i(X, v) / dM/dT(X, v) mod m_{s+1}.
template <class K>
Fiber<K> conclude_fiber(const K& k, const CurveRep<K>& curve, const typename PolyRing<K>::Elem& m,
                        const typename PolyRing<K>::Elem& v, const Fiber<K>& prev) {
  PolyRing<K> P(k);
  const auto h = biv_at_param(P, biv_derivative_t(k, curve.M), v, m);
  const auto g = P.modinv(h, m);
  Fiber<K> fib;
  fib.level = curve.level + 1;
  fib.m = m;
  fib.v.push_back(P.rem_monic(v, m));
  for (const auto& W : curve.W) fib.v.push_back(P.rem_monic(P.mul(g, biv_at_param(P, W, v, m)), m));
  fib.w = kronecker_numerators(P, m, fib.v);
  fib.lambda = prev.lambda;
  fib.lambda_inverse = prev.lambda_inverse;
  fib.point = prev.point;
  return fib;
}

}  // namespace kron

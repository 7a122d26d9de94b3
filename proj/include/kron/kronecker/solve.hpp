#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kron/errors.hpp"
#include "kron/kronecker/lift.hpp"
#include "kron/kronecker/minpoly.hpp"
#include "kron/kronecker/sampling.hpp"
#include "kron/kronecker/tower.hpp"
#include "kron/kronecker/types.hpp"
#include "kron/kronecker/verify.hpp"
#include "kron/ring/ext_field.hpp"
#include "kron/ring/matrix.hpp"
#include "kron/ring/prime_field.hpp"
#include "kron/ring/rng.hpp"
#include "kron/slp/composed.hpp"

namespace kron {

/// The random linear change Y = lambda X and the lifting point.
template <class K>
struct Preprocessing {
  Matrix<K> lambda;
  Matrix<K> lambda_inverse;
  std::vector<typename K::Elem> point;  // n - 1 entries
};

/// lambda and the point drawn from S of size ceil(eps^-1 2 n^2 r d delta^3),
/// lambda = 1 when n = 1. UnluckyRun when lambda is singular.
template <class K>
Preprocessing<K> sample_preprocessing(const K& k, const SystemSpec& spec, std::uint64_t delta,
                                      const SolveConfig& cfg, SessionRng& rng, SolveStats& st) {
  const std::size_t n = spec.n;
  const SampleSet S(preprocessing_size(n, spec.r, spec.max_degree(), delta, cfg.epsilon),
                    k.cardinality(), cfg.strict_sampling);
  st.sample_set_capped |= S.capped();
  Preprocessing<K> pre;
  if (n == 1) {
    // Every nonzero scalar is generic in one variable.
    pre.lambda = pre.lambda_inverse = identity_matrix(k, 1);
    return pre;
  }
  pre.lambda.assign(n, std::vector<typename K::Elem>(n, k.zero()));
  for (auto& row : pre.lambda)
    for (auto& x : row) x = S.draw(k, rng);
  for (std::size_t i = 0; i + 1 < n; ++i) pre.point.push_back(S.draw(k, rng));
  try {
    pre.lambda_inverse = mat_inverse(k, pre.lambda);
  } catch (const SingularMatrix&) {
    throw UnluckyRun("preprocessing: singular linear change");
  }
  return pre;
}

namespace detail {

template <class E>
ComposedSlp<E> single_output(const SystemSpec& spec, const E& e, std::size_t index,
                             const Matrix<E>& lambda, const Matrix<E>& lambda_inverse) {
  const std::size_t idx[1] = {index};
  return ComposedSlp<E>(std::make_shared<const Slp>(select_outputs(*spec.program, idx)), e, lambda,
                        lambda_inverse);
}

}  // namespace detail

/// One pass of the main loop under a fixed delta bound. Projections and
/// shape-lemma draws happen in tw.inner(); everything else over tw.base.
template <class Tower>
Fiber<typename Tower::Base> solve_attempt(const SystemSpec& spec, const SolveConfig& cfg,
                                          const Tower& tw, std::uint64_t delta_bound,
                                          SessionRng& rng, SolveStats& st,
                                          const Preprocessing<typename Tower::Base>* forced) {
  using K = typename Tower::Base;
  using E = typename Tower::Inner;
  const K& k = tw.base;
  const E& e = tw.inner();
  const Preprocessing<K> pre =
      forced ? *forced : sample_preprocessing(k, spec, delta_bound, cfg, rng, st);
  const ComposedSlp<K> F(spec.program, k, pre.lambda, pre.lambda_inverse);

  auto fib = initial_fiber(spec, F, pre.point);
  if (fib.delta() > delta_bound) throw DegreeBoundExceeded("deg m_1 exceeds the degree bound");

  const auto lam_e = embed_matrix(tw, pre.lambda);
  const auto inv_e = embed_matrix(tw, pre.lambda_inverse);
  const auto g_e = detail::single_output(spec, e, spec.g_index(), lam_e, inv_e);
  std::vector<typename E::Elem> point_e;
  for (const auto& c : pre.point) point_e.push_back(tw.embed(c));

  for (std::size_t s = 1; s < spec.r; ++s) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto curve = newton_lift(fib, F);
    st.lift_us += detail::micros_since(t0);

    const auto f_e = detail::single_output(spec, e, s, lam_e, inv_e);
    NextLevelInputs<E> in;
    in.f_next = &f_e;
    in.g = &g_e;
    in.f_degree = spec.degrees[s];
    in.g_degree = spec.g_degree;
    in.d = spec.max_degree();
    in.delta_bound = delta_bound;
    in.point = point_e;
    in.epsilon = cfg.epsilon;
    in.strict_sampling = cfg.strict_sampling;
    in.parallel = cfg.parallel;
    const auto next = next_minpoly(e, embed_curve(tw, curve), in, rng, st);
    const auto m = coerce_poly(tw, next.m);
    const auto v = coerce_poly(tw, next.v);
    if (PolyRing<K>::degree(m) > static_cast<std::ptrdiff_t>(delta_bound))
      throw DegreeBoundExceeded("deg m_" + std::to_string(s + 1) + " exceeds the degree bound");

    const auto t1 = std::chrono::steady_clock::now();
    fib = conclude_fiber(k, curve, m, v, fib);
    st.conclude_us += detail::micros_since(t1);
  }

  const auto rep = verify(k, fib, spec);
  if (!rep.ok())
    throw VerificationFailed("verification failed: " +
                             (rep.diagnostics.empty() ? std::string("?") : rep.diagnostics.front()));
  return fib;
}

/// Resamples after unlucky runs. A second empty first fiber or degree
/// collapse is taken as evidence that the variety is empty.
template <class Tower>
Fiber<typename Tower::Base> run_attempts(const SystemSpec& spec, const SolveConfig& cfg,
                                         const Tower& tw, std::uint64_t delta_bound,
                                         SessionRng& rng, SolveStats& st,
                                         const Preprocessing<typename Tower::Base>* forced) {
  unsigned empties = 0;
  for (unsigned attempt = 0;; ++attempt) {
    try {
      return solve_attempt(spec, cfg, tw, delta_bound, rng, st, forced);
    } catch (const DegreeBoundExceeded&) {
      throw;
    } catch (const EmptyFiber& ex) {
      st.last_failure = std::string(ex.kind()) + ": " + ex.what();
      if (++empties >= 2) throw EmptyVariety("no solutions: " + st.last_failure);
    } catch (const DegreeCollapse& ex) {
      st.last_failure = std::string(ex.kind()) + ": " + ex.what();
      if (++empties >= 2) throw EmptyVariety("no solutions: " + st.last_failure);
    } catch (const UnluckyRun& ex) {
      st.last_failure = std::string(ex.kind()) + ": " + ex.what();
    }
    if (attempt >= cfg.max_retries) throw RetriesExhausted(st.last_failure);
    ++st.retries;
  }
}

/// Initial degree bound: the configuration, then the system, then Bezout.
inline std::uint64_t initial_delta_bound(const SystemSpec& spec, const SolveConfig& cfg) {
  if (cfg.delta_bound) return std::max<std::uint64_t>(1, *cfg.delta_bound);
  if (spec.delta_bound) return std::max<std::uint64_t>(1, *spec.delta_bound);
  return spec.bezout();
}

/// Calls run(delta) under a delta bound that doubles whenever a fiber
/// degree exceeds it.
template <class Run>
auto solve_with_doubling(const SystemSpec& spec, const SolveConfig& cfg, SolveStats& st, Run run) {
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t delta = initial_delta_bound(spec, cfg);
  for (;;) {
    try {
      auto fib = run(delta);
      st.total_us += detail::micros_since(t0);
      return fib;
    } catch (const DegreeBoundExceeded& ex) {
      st.last_failure = std::string(ex.kind()) + ": " + ex.what();
      if (delta >= (std::uint64_t(1) << 62)) throw RetriesExhausted(st.last_failure);
      delta *= 2;
      ++st.delta_doublings;
    }
  }
}

/// Whether q exceeds 4 eps^-1 n^2 r d delta^3, so no inner extension is needed.
inline bool field_is_large(const mpz_class& q, const SystemSpec& spec, std::uint64_t delta,
                           const mpq_class& eps) {
  const mpz_class need = ceil_q(mpq_class(mpz_class(4) * upow(spec.n, 2) *
                                          static_cast<unsigned long>(spec.r) *
                                          static_cast<unsigned long>(spec.max_degree()) *
                                          upow(delta, 3)) /
                                eps);
  return q > need;
}

/// Inner extension degree for a base field of cardinality q (1 if none).
inline unsigned inner_degree(const mpz_class& q, const SystemSpec& spec, std::uint64_t delta,
                             const mpq_class& eps) {
  if (field_is_large(q, spec, delta, eps)) return 1;
  return fq_extension_degree(q, spec.r, delta, eps);
}

/// The working field F_{p^e} of a `Fq:p^e` system. The modulus comes from a
/// fixed seed so documents can be read back.
ExtField base_extension_field(std::uint64_t p, unsigned e);

/// Solve over F_p. `forced` fixes lambda and the lifting point.
Fiber<PrimeField> solve_fp(const SystemSpec& spec, const SolveConfig& cfg, SolveStats& st,
                           const Preprocessing<PrimeField>* forced = nullptr);

/// Solve over F_{p^e}, e > 1, in base_extension_field(p, e).
Fiber<ExtField> solve_fq(const SystemSpec& spec, const SolveConfig& cfg, SolveStats& st);

}  // namespace kron

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "kron/errors.hpp"
#include "kron/kronecker/types.hpp"
#include "kron/poly/poly_ring.hpp"
#include "kron/poly/quotient_ring.hpp"
#include "kron/ring/matrix.hpp"
#include "kron/slp/composed.hpp"

namespace kron {

/// Outcome of the a posteriori checks on a fiber at level r:
/// (a) m monic, square-free and of positive degree;
/// (b) deg v_i < deg m and F_j(p^r, T, v(T)) = 0 mod m for every j;
/// (c) res(m, G(p^r, T, v(T))) != 0;
/// (d) w_i = m' v_i mod m.
struct VerifyReport {
  bool structure = true;
  bool square_free = true;
  bool equations = true;
  bool g_nonvanishing = true;
  bool numerators = true;
  std::vector<std::string> diagnostics;

  bool ok() const { return structure && square_free && equations && g_nonvanishing && numerators; }
};

template <class K>
VerifyReport verify(const K& k, const Fiber<K>& fib, const SystemSpec& spec) {
  VerifyReport rep;
  const auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    rep.diagnostics.push_back(std::move(msg));
  };
  PolyRing<K> P(k);
  const std::size_t n = spec.n, r = spec.r;
  if (fib.level != r) fail(rep.structure, "fiber level " + std::to_string(fib.level) + " differs from r");
  if (fib.point.size() + 1 != n) fail(rep.structure, "lifting point must have n - 1 entries");
  if (fib.v.size() + 1 != r) fail(rep.structure, "expected r - 1 parametrizations");
  if (fib.w.size() != fib.v.size()) fail(rep.structure, "numerators and parametrizations differ in number");
  if (fib.lambda.size() != n || fib.lambda_inverse.size() != n) {
    fail(rep.structure, "linear change has the wrong size");
  } else if (mat_mul(k, fib.lambda, fib.lambda_inverse) != identity_matrix(k, n)) {
    fail(rep.structure, "lambda_inverse is not the inverse of lambda");
  }
  if (!rep.structure) return rep;

  const auto& m = fib.m;
  if (P.degree(m) < 1 || !P.is_monic(m)) {
    fail(rep.square_free, "m is not monic of positive degree");
    return rep;
  }
  if (k.is_zero(P.discriminant(m))) fail(rep.square_free, "disc(m) = 0");

  const auto dm = P.derivative(m);
  for (std::size_t i = 0; i < fib.v.size(); ++i) {
    if (P.degree(fib.v[i]) >= P.degree(m))
      fail(rep.equations, "deg v_" + std::to_string(i) + " >= deg m");
    if (!P.eq(P.rem_monic(P.mul(dm, fib.v[i]), m), fib.w[i]))
      fail(rep.numerators, "w_" + std::to_string(i) + " != m' v_" + std::to_string(i) + " mod m");
  }

  const ComposedSlp<K> F(spec.program, k, fib.lambda, fib.lambda_inverse);
  const QuotientRing<K> Q(P, m);
  std::vector<typename QuotientRing<K>::Elem> y;
  for (std::size_t i = 0; i + r < n; ++i) y.push_back(Q.from_scalar(fib.point[i]));
  y.push_back(Q.generator());
  for (const auto& v : fib.v) y.push_back(Q.reduce(v));
  const auto out = F.evaluate(Q, y);
  for (std::size_t j = 0; j < r; ++j)
    if (!Q.is_zero(out[j])) fail(rep.equations, "F_" + std::to_string(j + 1) + " does not vanish mod m");
  if (k.is_zero(P.resultant(m, out[spec.g_index()]))) fail(rep.g_nonvanishing, "res(m, G) = 0");
  return rep;
}

}  // namespace kron

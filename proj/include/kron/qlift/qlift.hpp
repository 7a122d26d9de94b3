#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "kron/kronecker/types.hpp"
#include "kron/ring/matrix.hpp"
#include "kron/ring/prime_field.hpp"
#include "kron/ring/rationals.hpp"
#include "kron/ring/rng.hpp"

namespace kron {

using ZPoly = std::vector<mpz_class>;

/// Bit-length bound for reconstructed coefficients; doubled on failure.
struct HeightBudget {
  std::uint64_t eta = 1;
  bool doubling = true;
};

/// eta = 4 n d^(r-1) (h + n d) (1 + log2(n d h + 2))^2.
HeightBudget height_budget(const SystemSpec& spec);

/// The majorant d^r 2^n (h + 1) ceil(log2(1/eps) + 2) (n + r + 1) of log2 of
/// the product of the bad primes.
mpz_class lucky_prime_height(const SystemSpec& spec, const mpq_class& eps);

/// Random prime in (4 H / eps, 10 H / eps], capped at 2^61. Unsupported when
/// the interval lies above the cap.
std::uint64_t lucky_prime(const SystemSpec& spec, const mpq_class& eps, SessionRng& rng);

/// The fraction a/b with gcd(b, f) = 1, a = g b mod f and both heights at
/// most eta bits, from the Euclidean remainder sequence of (f, g) stopped
/// below sqrt(f / 2). NoReconstruction when there is none.
mpq_class rational_reconstruct(const mpz_class& g, const mpz_class& f, std::uint64_t eta);

/// The integer data the p-adic lift works with: the program, the linear
/// change (integer lambda, rational inverse) and the integer lifting point.
struct PadicProblem {
  std::shared_ptr<const Slp> program;
  std::size_t n = 0;
  std::size_t r = 0;
  Matrix<Rationals> lambda;
  Matrix<Rationals> lambda_inverse;
  std::vector<mpz_class> point;  // n - 1 entries
};

/// M and V_2..V_r over Z/p^k (V_1 = T), plus the cached inverse C of the
/// Jacobian in the unknowns, accurate to at least p^(k/2).
struct PadicState {
  std::uint64_t p = 0;
  unsigned k = 1;
  ZPoly M;
  std::vector<ZPoly> V;
  std::vector<std::vector<ZPoly>> C;
};

/// The state at order p from a modular fiber: v_i = (m')^-1 w_i and the
/// Jacobian inverse over F_p[T]/(m). JacobianNonInvertible when the prime
/// is unlucky.
PadicState padic_start(const PadicProblem& prob, const Fiber<PrimeField>& fib, std::uint64_t p);

/// One Global Newton step from Z/p^k to Z/p^(2k).
void global_newton_step(const PadicProblem& prob, PadicState& st);

/// Lifts a modular fiber to order p^k, k a power of two.
PadicState padic_lift(const PadicProblem& prob, const Fiber<PrimeField>& fib, std::uint64_t p,
                      unsigned k);

/// W_i = M' V_i mod M over Z/p^k.
std::vector<ZPoly> padic_numerators(const PadicState& st);

/// Reconstructs m and the w_i, then v_i = (m')^-1 w_i mod m over Q.
/// NoReconstruction when a coefficient has no small preimage.
Fiber<Rationals> reconstruct_fiber(const PadicProblem& prob, const PadicState& st,
                                   std::uint64_t eta);

/// Number of entries of S for lambda and the lifting point:
/// ceil(D / eps) with D = r (n+1) ((n+1) d delta^2 + 2 delta^3 + n^2 2^(n-1) d delta^2).
mpz_class rational_sample_size(const SystemSpec& spec, std::uint64_t delta, const mpq_class& eps);

/// Fixed choices for solve_over_Q; the prime is drawn when absent.
struct QForced {
  Matrix<Rationals> lambda;
  std::vector<mpz_class> point;
  std::optional<std::uint64_t> prime;
};

/// Modular solve at a lucky prime, p-adic lifting with doubling precision,
/// reconstruction and exact verification over Q.
Fiber<Rationals> solve_over_Q(const SystemSpec& spec, const SolveConfig& cfg, SolveStats& st,
                              const QForced* forced = nullptr);

}  // namespace kron

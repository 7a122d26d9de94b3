#include "kron/qlift/qlift.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "kron/errors.hpp"
#include "kron/kronecker/sampling.hpp"
#include "kron/kronecker/solve.hpp"
#include "kron/kronecker/verify.hpp"
#include "kron/poly/poly_ring.hpp"
#include "kron/poly/quotient_ring.hpp"
#include "kron/ring/primes.hpp"
#include "kron/ring/residue_ring.hpp"
#include "kron/slp/composed.hpp"

namespace kron {

namespace {

using ZQ = QuotientRing<ResidueRing>;

std::uint64_t bits(const mpz_class& a) {
  return a == 0 ? 0 : mpz_sizeinbase(a.get_mpz_t(), 2);
}

mpz_class height_param(const SystemSpec& spec) {
  return spec.height ? *spec.height : spec.param_height();
}

ResidueRing::Elem reduce_q(const ResidueRing& R, const mpq_class& a) {
  const auto den = R.from_mpz(a.get_den());
  if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(R.prime())))
    throw BadPrime("p divides a denominator of the linear change");
  return R.mul(R.from_mpz(a.get_num()), R.inv(den));
}

template <class R>
Matrix<R> reduce_matrix(const R& ring, const Matrix<Rationals>& A) {
  Matrix<R> out;
  for (const auto& row : A) {
    std::vector<typename R::Elem> r;
    for (const auto& x : row) r.push_back(reduce_q(ring, x));
    out.push_back(std::move(r));
  }
  return out;
}

Matrix<PrimeField> reduce_matrix_fp(const PrimeField& F, const Matrix<Rationals>& A) {
  Matrix<PrimeField> out;
  for (const auto& row : A) {
    std::vector<std::uint64_t> r;
    for (const auto& x : row) {
      if (F.from_mpz(x.get_den()) == 0) throw BadPrime("p divides a denominator of the linear change");
      r.push_back(reduce_mod(x, F));
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

HeightBudget height_budget(const SystemSpec& spec) {
  const mpz_class n = static_cast<unsigned long>(spec.n);
  const mpz_class d = static_cast<unsigned long>(spec.max_degree());
  const mpz_class h = height_param(spec);
  const mpz_class lg = 1 + bits(n * d * h + 2);
  const mpz_class eta = 4 * n * upow(spec.max_degree(), static_cast<unsigned>(spec.r - 1)) * (h + n * d) * lg * lg;
  HeightBudget b;
  b.eta = eta.fits_ulong_p() ? eta.get_ui() : std::uint64_t(1) << 62;
  return b;
}

mpz_class lucky_prime_height(const SystemSpec& spec, const mpq_class& eps) {
  const mpz_class inv_eps = ceil_q(1 / eps);
  const mpz_class lg = bits(inv_eps) + 2;  // ceil(log2(1/eps) + 2), rounded up
  return upow(spec.max_degree(), static_cast<unsigned>(spec.r)) * upow(2, static_cast<unsigned>(spec.n)) *
         (height_param(spec) + 1) * lg * static_cast<unsigned long>(spec.n + spec.r + 1);
}

std::uint64_t lucky_prime(const SystemSpec& spec, const mpq_class& eps, SessionRng& rng) {
  const mpz_class H = lucky_prime_height(spec, eps);
  const mpz_class lo = ceil_q(mpq_class(4 * H) / eps);
  mpz_class hi;
  mpz_fdiv_q(hi.get_mpz_t(), mpz_class(10 * H * eps.get_den()).get_mpz_t(), eps.get_num_mpz_t());
  const mpz_class cap = mpz_class(1) << 61;
  if (lo >= cap)
    throw Unsupported("lucky prime interval lies above 2^61; multi-modular reconstruction is not supported");
  if (hi > cap) hi = cap;
  return random_prime_in(lo.get_ui(), hi.get_ui(), rng);
}

mpq_class rational_reconstruct(const mpz_class& g, const mpz_class& f, std::uint64_t eta) {
  if (f <= 1) throw InvalidArgument("rational_reconstruct: modulus must exceed 1");
  mpz_class r0 = f, r1, t0 = 0, t1 = 1;
  mpz_mod(r1.get_mpz_t(), g.get_mpz_t(), f.get_mpz_t());
  // Stop at the first remainder with 2 r^2 < f.
  while (2 * r1 * r1 >= f) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    mpz_class r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  mpz_class num = r1, den = t1;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  mpz_class gg;
  mpz_gcd(gg.get_mpz_t(), den.get_mpz_t(), f.get_mpz_t());
  if (den == 0 || gg != 1 || 2 * den * den >= f)
    throw NoReconstruction("no fraction with small height matches the residue");
  mpz_gcd(gg.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (gg != 1) throw NoReconstruction("reconstructed fraction is not reduced");
  const mpz_class anum = abs(num);
  if (bits(anum) > eta || bits(den) > eta)
    throw NoReconstruction("reconstructed fraction exceeds the height bound");
  return mpq_class(num, den);
}

PadicState padic_start(const PadicProblem& prob, const Fiber<PrimeField>& fib, std::uint64_t p) {
  const PrimeField F(p);
  const PolyRing<PrimeField> P(F);
  const std::size_t n = prob.n, r = prob.r;
  if (fib.v.size() + 1 != r || fib.w.size() + 1 != r) throw InvalidArgument("padic_start: fiber level mismatch");
  const auto& m = fib.m;
  const auto dm_inv = P.modinv(P.derivative(m), m);
  std::vector<PolyRing<PrimeField>::Elem> v;
  for (const auto& w : fib.w) v.push_back(P.rem_monic(P.mul(dm_inv, w), m));

  const QuotientRing<PrimeField> Q(P, m);
  const ComposedSlp<PrimeField> G(prob.program, F, reduce_matrix_fp(F, prob.lambda),
                                  reduce_matrix_fp(F, prob.lambda_inverse));
  std::vector<QuotientRing<PrimeField>::Elem> y;
  for (std::size_t i = 0; i + r < n; ++i) y.push_back(Q.from_scalar(F.from_mpz(prob.point[i])));
  y.push_back(Q.generator());
  for (const auto& vi : v) y.push_back(vi);
  const auto J = G.jacobian(Q, std::span<const QuotientRing<PrimeField>::Elem>(y), r);
  for (const auto& val : J.values)
    if (!Q.is_zero(val)) throw VerificationFailed("padic_start: modular fiber does not satisfy the system");
  Matrix<QuotientRing<PrimeField>> A(r, std::vector<QuotientRing<PrimeField>::Elem>(r));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t c = 0; c < r; ++c) A[j][c] = J.d[j][n - r + c];
  const auto da = det_adjugate(Q, A);
  PolyRing<PrimeField>::Elem dinv;
  try {
    dinv = P.modinv(da.det, m);
  } catch (const NotCoprime&) {
    throw JacobianNonInvertible("padic_start: Jacobian is singular modulo (p, m)");
  }

  const auto to_z = [](const PolyRing<PrimeField>::Elem& f) {
    ZPoly out;
    for (auto c : f) out.push_back(mpz_class(static_cast<unsigned long>(c)));
    return out;
  };
  PadicState st;
  st.p = p;
  st.k = 1;
  st.M = to_z(m);
  for (const auto& vi : v) st.V.push_back(to_z(vi));
  st.C.assign(r, std::vector<ZPoly>(r));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) st.C[a][b] = to_z(Q.mul(dinv, da.adj[a][b]));
  return st;
}

void global_newton_step(const PadicProblem& prob, PadicState& st) {
  const std::size_t n = prob.n, r = prob.r;
  const unsigned k2 = 2 * st.k;
  const ResidueRing R(st.p, k2);
  const PolyRing<ResidueRing> PR(R);
  const ZQ Q(PR, st.M);
  const ComposedSlp<ResidueRing> G(prob.program, R, reduce_matrix(R, prob.lambda),
                                   reduce_matrix(R, prob.lambda_inverse));
  std::vector<ZQ::Elem> fixed, unknowns{Q.generator()};
  for (std::size_t i = 0; i + r < n; ++i) fixed.push_back(Q.from_scalar(R.from_mpz(prob.point[i])));
  for (const auto& v : st.V) unknowns.push_back(Q.reduce(v));
  auto y = fixed;
  y.insert(y.end(), unknowns.begin(), unknowns.end());
  const auto J = G.jacobian(Q, std::span<const ZQ::Elem>(y), r);
  Matrix<ZQ> A(r, std::vector<ZQ::Elem>(r));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t c = 0; c < r; ++c) A[j][c] = J.d[j][n - r + c];

  // C <- 2C - C A C
  Matrix<ZQ> C(r, std::vector<ZQ::Elem>(r));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) C[a][b] = Q.reduce(st.C[a][b]);
  const auto CAC = mat_mul(Q, mat_mul(Q, C, A), C);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) C[a][b] = Q.sub(Q.add(C[a][b], C[a][b]), CAC[a][b]);

  std::vector<ZQ::Elem> nv(r);
  for (std::size_t a = 0; a < r; ++a) {
    auto acc = Q.zero();
    for (std::size_t b = 0; b < r; ++b) acc = Q.add(acc, Q.mul(C[a][b], J.values[b]));
    nv[a] = Q.sub(unknowns[a], acc);
  }
  const auto delta = Q.sub(nv[0], Q.generator());
  ZPoly M = PR.sub(st.M, Q.mul(delta, PR.derivative(st.M)));
  std::vector<ZPoly> V;
  for (std::size_t a = 1; a < r; ++a)
    V.push_back(PR.rem_monic(Q.sub(nv[a], Q.mul(delta, PR.derivative(nv[a]))), M));
  for (auto& row : C)
    for (auto& c : row) c = PR.rem_monic(c, M);
  st.M = std::move(M);
  st.V = std::move(V);
  st.C = std::move(C);
  st.k = k2;
}

PadicState padic_lift(const PadicProblem& prob, const Fiber<PrimeField>& fib, std::uint64_t p,
                      unsigned k) {
  if (k == 0 || (k & (k - 1)) != 0) throw InvalidArgument("padic_lift: order must be a power of two");
  auto st = padic_start(prob, fib, p);
  while (st.k < k) global_newton_step(prob, st);
  return st;
}

std::vector<ZPoly> padic_numerators(const PadicState& st) {
  const ResidueRing R(st.p, st.k);
  const PolyRing<ResidueRing> PR(R);
  const auto dM = PR.derivative(st.M);
  std::vector<ZPoly> W;
  for (const auto& v : st.V) W.push_back(PR.rem_monic(PR.mul(dM, v), st.M));
  return W;
}

Fiber<Rationals> reconstruct_fiber(const PadicProblem& prob, const PadicState& st,
                                   std::uint64_t eta) {
  const ResidueRing R(st.p, st.k);
  const mpz_class& f = R.modulus();
  const Rationals Qf;
  const PolyRing<Rationals> P(Qf);
  const auto lift = [&](const ZPoly& g, std::size_t len) {
    PolyRing<Rationals>::Elem out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(rational_reconstruct(i < g.size() ? g[i] : mpz_class(0), f, eta));
    P.normalize(out);
    return out;
  };
  Fiber<Rationals> fib;
  fib.level = prob.r;
  const std::size_t delta = st.M.size() - 1;
  fib.m = lift(st.M, delta);
  fib.m.resize(delta + 1, mpq_class(0));
  fib.m[delta] = 1;
  for (const auto& W : padic_numerators(st)) fib.w.push_back(lift(W, delta));
  PolyRing<Rationals>::Elem dinv;
  try {
    dinv = P.modinv(P.derivative(fib.m), fib.m);
  } catch (const NotCoprime&) {
    throw NoReconstruction("reconstructed m is not square-free");
  }
  for (const auto& w : fib.w) fib.v.push_back(P.rem_monic(P.mul(dinv, w), fib.m));
  fib.lambda = prob.lambda;
  fib.lambda_inverse = prob.lambda_inverse;
  for (const auto& c : prob.point) fib.point.push_back(mpq_class(c));
  return fib;
}

mpz_class rational_sample_size(const SystemSpec& spec, std::uint64_t delta, const mpq_class& eps) {
  const unsigned long n = spec.n, r = spec.r, d = spec.max_degree();
  const mpz_class dl = static_cast<unsigned long>(delta);
  const mpz_class D = mpz_class(r) * (n + 1) *
                      ((n + 1) * d * dl * dl + 2 * dl * dl * dl +
                       mpz_class(n * n) * upow(2, static_cast<unsigned>(n - 1)) * d * dl * dl);
  return ceil_q(mpq_class(D) / eps);
}

Fiber<Rationals> solve_over_Q(const SystemSpec& spec, const SolveConfig& cfg, SolveStats& st,
                              const QForced* forced) {
  const auto t0 = std::chrono::steady_clock::now();
  const Rationals Qf;
  SessionRng rng(cfg.seed);
  const std::size_t n = spec.n;
  const std::uint64_t delta = initial_delta_bound(spec, cfg);
  mpz_class N = rational_sample_size(spec, delta, cfg.epsilon);
  const mpz_class cap = mpz_class(1) << 62;
  if (N > cap) N = cap;
  const std::uint64_t base_eta = height_budget(spec).eta;

  for (unsigned attempt = 0;; ++attempt) {
    try {
      PadicProblem prob;
      prob.program = spec.program;
      prob.n = n;
      prob.r = spec.r;
      if (forced) {
        prob.lambda = forced->lambda;
        prob.point = forced->point;
      } else if (n == 1) {
        prob.lambda = identity_matrix(Qf, 1);
      } else {
        prob.lambda.assign(n, std::vector<mpq_class>(n));
        for (auto& row : prob.lambda)
          for (auto& x : row) x = mpq_class(mpz_class(static_cast<unsigned long>(rng.below(N.get_ui()))));
        for (std::size_t i = 0; i + 1 < n; ++i)
          prob.point.push_back(mpz_class(static_cast<unsigned long>(rng.below(N.get_ui()))));
      }
      try {
        prob.lambda_inverse = mat_inverse(Qf, prob.lambda);
      } catch (const SingularMatrix&) {
        throw UnluckyRun("preprocessing: singular linear change");
      }
      const std::uint64_t p = forced && forced->prime ? *forced->prime : lucky_prime(spec, cfg.epsilon, rng);
      st.prime = p;
      const PrimeField F(p);
      Preprocessing<PrimeField> pre;
      pre.lambda = reduce_matrix_fp(F, prob.lambda);
      try {
        pre.lambda_inverse = mat_inverse(F, pre.lambda);
      } catch (const SingularMatrix&) {
        throw BadPrime("linear change is singular modulo p");
      }
      for (const auto& c : prob.point) pre.point.push_back(F.from_mpz(c));

      SystemSpec spec_p = spec;
      spec_p.field = FieldDescriptor{FieldDescriptor::Kind::Prime, p, 1};
      SolveConfig cfg_p = cfg;
      cfg_p.seed = rng.raw();
      SolveStats st_p;
      Fiber<PrimeField> fib_p;
      try {
        fib_p = solve_fp(spec_p, cfg_p, st_p, &pre);
      } catch (const RetriesExhausted& e) {
        st.retries += st_p.retries;
        throw UnluckyRun(std::string("modular solve failed: ") + e.what());
      }
      st.retries += st_p.retries;
      st.delta_doublings += st_p.delta_doublings;
      st.sample_set_capped |= st_p.sample_set_capped;
      st.lift_us += st_p.lift_us;
      st.project_us += st_p.project_us;
      st.shape_us += st_p.shape_us;
      st.conclude_us += st_p.conclude_us;
      st.extension_degree = st_p.extension_degree;

      auto state = padic_start(prob, fib_p, p);
      std::uint64_t eta = base_eta;
      const std::uint64_t max_bits = 64 * base_eta + 128;
      for (;;) {
        global_newton_step(prob, state);
        st.padic_order = state.k;
        const std::uint64_t prec_bits = bits(ResidueRing(p, state.k).modulus());
        try {
          auto fib = reconstruct_fiber(prob, state, eta);
          const auto rep = verify(Qf, fib, spec);
          if (rep.ok()) {
            st.total_us += detail::micros_since(t0);
            return fib;
          }
          st.last_failure = "VerificationFailed: " + rep.diagnostics.front();
        } catch (const NoReconstruction& e) {
          st.last_failure = std::string("NoReconstruction: ") + e.what();
          if (prec_bits / 2 > eta && eta < (std::uint64_t(1) << 61)) eta *= 2;
        }
        if (prec_bits > max_bits) throw UnluckyRun("p-adic precision budget exhausted: " + st.last_failure);
      }
    } catch (const UnluckyRun& e) {
      st.last_failure = std::string(e.kind()) + ": " + e.what();
    }
    if (attempt >= cfg.max_retries) throw RetriesExhausted(st.last_failure);
    ++st.retries;
  }
}

}  // namespace kron

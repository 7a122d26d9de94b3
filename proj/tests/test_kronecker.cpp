#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "kron/io/system_file.hpp"
#include "kron/kronecker/lift.hpp"
#include "kron/kronecker/minpoly.hpp"
#include "kron/kronecker/project.hpp"
#include "kron/kronecker/solve.hpp"
#include "kron/kronecker/verify.hpp"
#include "kron/ring/prime_field.hpp"

using namespace kron;

using Fp = PrimeField;
using P = PolyRing<Fp>;
using Poly = P::Elem;

namespace {

SystemSpec sys(const std::string& text) { return parse_system_file(text).spec; }

ComposedSlp<Fp> identity_program(const SystemSpec& spec, const Fp& F) {
  const auto I = identity_matrix(F, spec.n);
  return ComposedSlp<Fp>(spec.program, F, I, I);
}

ComposedSlp<Fp> output_program(const SystemSpec& spec, const Fp& F, std::size_t j) {
  const auto I = identity_matrix(F, spec.n);
  const std::size_t idx[1] = {j};
  return ComposedSlp<Fp>(std::make_shared<const Slp>(select_outputs(*spec.program, idx)), F, I, I);
}

Fiber<Fp> level_one(const Fp& F, std::size_t n, Poly m, std::vector<std::uint64_t> point) {
  Fiber<Fp> fib;
  fib.level = 1;
  fib.m = std::move(m);
  fib.lambda = identity_matrix(F, n);
  fib.lambda_inverse = fib.lambda;
  fib.point = std::move(point);
  return fib;
}

const char* kParabola7 =
    "vars: 2\nfield: Fp:7\nF: x2^2 - x1\nF: x2 - x1 - 1\n";
const char* kParabolaBig =
    "vars: 2\nfield: Fp:10007\nF: x2^2 - x1\nF: x2 - x1 - 1\n";

}  // namespace

TEST_CASE("initial fiber of the circle over F_7") {
  const Fp F(7);
  const auto spec = sys("vars: 2\nfield: Fp:7\nF: x1^2 + x2^2 - 1\n");
  const auto fib = initial_fiber(spec, identity_program(spec, F), {2});
  CHECK(fib.level == 1);
  CHECK(P(F).eq(fib.m, Poly{3, 0, 1}));
  CHECK(fib.v.empty());
}

TEST_CASE("initial fiber with F_1 = G is degenerate") {
  const Fp F(7);
  const auto spec = sys("vars: 2\nfield: Fp:7\nF: x2 - x1\nG: x2 - x1\n");
  CHECK_THROWS_AS(initial_fiber(spec, identity_program(spec, F), {3}), DegenerateFiber);
  const auto zero = sys("vars: 2\nfield: Fp:7\nF: x1 - 3\n");
  CHECK_THROWS_AS(initial_fiber(zero, identity_program(zero, F), {3}), DegenerateFiber);
}

TEST_CASE("newton_lift of the parabola is T^2 - X") {
  const Fp F(7);
  const auto spec = sys(kParabola7);
  const auto prog = identity_program(spec, F);
  const auto fib = level_one(F, 2, {5, 0, 1}, {2});
  const auto curve = newton_lift(fib, prog);
  REQUIRE(curve.M.size() == 3);
  CHECK(P(F).eq(curve.M[0], Poly{0, 6}));
  CHECK(curve.M[1].empty());
  CHECK(P(F).eq(curve.M[2], Poly{1}));
  CHECK(curve.W.empty());
  CHECK(lift_is_consistent(curve, fib, prog));
}

TEST_CASE("newton_lift of the hyperbola truncates the series of 1/X") {
  const Fp F(7);
  const auto spec = sys("vars: 2\nfield: Fp:7\nF: x1*x2 - 1\nF: x2 - 2\n");
  const auto prog = identity_program(spec, F);
  const auto fib = initial_fiber(spec, prog, {3});
  REQUIRE(P(F).eq(fib.m, Poly{2, 1}));  // T - 5
  const auto curve = newton_lift(fib, prog);
  // T - (5 + 3 (X - 3)) = T - (3X + 3)
  REQUIRE(curve.M.size() == 2);
  CHECK(P(F).eq(curve.M[0], Poly{4, 4}));
  CHECK(P(F).eq(curve.M[1], Poly{1}));
  CHECK(lift_is_consistent(curve, fib, prog));
}

TEST_CASE("project_aF on the parabola") {
  const Fp F(7);
  const auto spec = sys(kParabola7);
  const auto curve = newton_lift(level_one(F, 2, {5, 0, 1}, {2}), identity_program(spec, F));
  const auto chart = chart_from_curve(F, curve);
  const SampleSet S(mpz_class(7), F.cardinality(), false);
  for (bool parallel : {false, true}) {
    SessionRng rng(11);
    const auto f2 = output_program(spec, F, 1);
    CHECK(P(F).eq(project_aF(F, chart, f2, 1, {2}, S, rng, parallel), Poly{1, 1, 1}));
    const auto g = output_program(spec, F, 2);
    CHECK(P(F).eq(project_aF(F, chart, g, 0, {2}, S, rng, parallel), Poly{1}));
    const auto f1 = output_program(spec, F, 0);
    CHECK_THROWS_AS(project_aF(F, chart, f1, 2, {2}, S, rng, parallel), ZeroConstantTerm);
  }
}

TEST_CASE("next minimal polynomial and shape lemma on the parabola") {
  const Fp F(7);
  const P R(F);
  const auto spec = sys(kParabola7);
  const auto fib = level_one(F, 2, {5, 0, 1}, {2});
  const auto curve = newton_lift(fib, identity_program(spec, F));
  const auto chart = chart_from_curve(F, curve);
  const auto f2 = output_program(spec, F, 1);
  const auto g = output_program(spec, F, 2);
  NextLevelInputs<Fp> in;
  in.f_next = &f2;
  in.g = &g;
  in.f_degree = 1;
  in.g_degree = 0;
  in.point = {2};
  const SampleSet S(mpz_class(7), F.cardinality(), false);
  SessionRng rng(5);

  // rho_1 = disc_T(T^2 - X) = -4X is coprime to a_F here.
  CHECK(R.eq(resultant_mod(R, chart.M, biv_derivative_t(F, chart.M), Poly{1, 1, 1}), Poly{0, 3}));
  const auto m = chart_minpoly(F, chart, in, S, rng);
  CHECK(R.eq(m, Poly{1, 1, 1}));

  // Values of X + lam T on V_2 = {(2, 3), (4, 5)}: {5, 2} for lam = 1 and
  // {1, 0} for lam = 2.
  const std::vector<std::uint64_t> nodes{0, 1, 2, 3, 4, 5, 6};
  const auto sheared1 = shear_chart(F, chart, 1, nodes);
  const auto sheared2 = shear_chart(F, chart, 2, nodes);
  CHECK(R.eq(sheared1.M[0], Poly{0, 6}));  // T^2 + T - L
  CHECK(R.eq(sheared1.M[1], Poly{1}));
  CHECK(R.eq(project_aF(F, sheared1, f2, 1, {2}, S, rng, false), Poly{3, 0, 1}));
  CHECK(R.eq(project_aF(F, sheared2, f2, 1, {2}, S, rng, false), Poly{0, 6, 1}));
  CHECK(R.eq(chart_minpoly(F, sheared2, in, S, rng), Poly{0, 6, 1}));
  // Over F_7 the sheared curve for lam = 1 ramifies above L = 5
  // (T^2 + T - 5 = (T - 3)^2), so the discriminant gcd removes that point.
  CHECK(R.eq(chart_minpoly(F, sheared1, in, S, rng), Poly{5, 1}));
  const std::uint64_t lam[2] = {2, 3};
  const auto v = shape_parametrization(F, chart, in, m, lam, nodes, S, rng);
  CHECK(R.eq(v, Poly{1, 1}));
  const std::uint64_t unlucky[2] = {1, 2};
  CHECK_THROWS_AS(shape_parametrization(F, chart, in, m, unlucky, nodes, S, rng), ShapeViolation);

  // h = 2 v = 2X + 2 and its inverse 3X modulo m.
  CHECK(R.eq(biv_at_param(R, biv_derivative_t(F, curve.M), v, m), Poly{2, 2}));
  CHECK(R.eq(R.modinv(Poly{2, 2}, m), Poly{0, 3}));
  const auto next = conclude_fiber(F, curve, m, v, fib);
  CHECK(next.level == 2);
  CHECK(R.eq(next.m, m));
  REQUIRE(next.v.size() == 1);
  CHECK(R.eq(next.v[0], Poly{1, 1}));
  CHECK(R.eq(next.w[0], Poly{6, 1}));
  CHECK(verify(F, next, spec).ok());
}

TEST_CASE("a point over the discriminant is lost by the gcd with rho") {
  const Fp F(7);
  const P R(F);
  const auto spec = sys("vars: 2\nfield: Fp:7\nF: x2^2 - x1\nF: x2 - x1\n");
  const auto curve = newton_lift(level_one(F, 2, {5, 0, 1}, {2}), identity_program(spec, F));
  const auto f2 = output_program(spec, F, 1);
  const auto g = output_program(spec, F, 2);
  NextLevelInputs<Fp> in;
  in.f_next = &f2;
  in.g = &g;
  in.f_degree = 1;
  in.point = {2};
  const SampleSet S(mpz_class(7), F.cardinality(), false);
  SessionRng rng(3);
  CHECK(R.eq(chart_minpoly(F, chart_from_curve(F, curve), in, S, rng), Poly{6, 1}));
}

TEST_CASE("next minimal polynomial collapses when F_2 = G") {
  const Fp F(10007);
  const auto spec = sys("vars: 2\nfield: Fp:10007\nF: x2^2 - x1\nF: x2 - 3\nG: x2 - 3\n");
  const auto curve = newton_lift(level_one(F, 2, {10005, 0, 1}, {2}), identity_program(spec, F));
  const auto f2 = output_program(spec, F, 1);
  const auto g = output_program(spec, F, 2);
  NextLevelInputs<Fp> in;
  in.f_next = &f2;
  in.g = &g;
  in.f_degree = 1;
  in.g_degree = 1;
  in.d = 2;
  in.delta_bound = 2;
  in.point = {2};
  SessionRng rng(1);
  SolveStats st;
  CHECK_THROWS_AS(next_minpoly(F, curve, in, rng, st), DegreeCollapse);
}

TEST_CASE("conclude_fiber rejects a non-invertible derivative") {
  const Fp F(7);
  CurveRep<Fp> curve;
  curve.level = 1;
  curve.M = {Poly{0, 6}, Poly{}, Poly{1}};  // T^2 - X
  const auto fib = level_one(F, 2, {5, 0, 1}, {2});
  // m = X (X - 1) with v = 0: h = 2 v = 0 is not a unit.
  CHECK_THROWS_AS(conclude_fiber(F, curve, Poly{0, 6, 1}, Poly{}, fib), NotCoprime);
}

TEST_CASE("solve the parabola with the identity change") {
  const auto spec = sys(kParabolaBig);
  const Fp F(10007);
  Preprocessing<Fp> pre{identity_matrix(F, 2), identity_matrix(F, 2), {2}};
  SolveConfig cfg;
  SolveStats st;
  const auto fib = solve_fp(spec, cfg, st, &pre);
  CHECK(fib.level == 2);
  CHECK(P(F).eq(fib.m, Poly{1, 1, 1}));
  REQUIRE(fib.v.size() == 1);
  CHECK(P(F).eq(fib.v[0], Poly{1, 1}));
  CHECK(verify(F, fib, spec).ok());
}

TEST_CASE("solve the parabola with random preprocessing") {
  const auto spec = sys(kParabolaBig);
  const Fp F(10007);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SolveConfig cfg;
    cfg.seed = seed;
    SolveStats st;
    const auto fib = solve_fp(spec, cfg, st);
    CHECK(fib.delta() == 2);
    CHECK(verify(F, fib, spec).ok());
  }
}

TEST_CASE("solve a linear equation in one variable") {
  const auto spec = sys("vars: 1\nfield: Fp:10007\nF: x1 - 5\n");
  const Fp F(10007);
  SolveConfig cfg;
  SolveStats st;
  const auto fib = solve_fp(spec, cfg, st);
  CHECK(fib.point.empty());
  REQUIRE(fib.lambda.size() == 1);
  CHECK(P(F).eq(fib.m, Poly{F.neg(F.mul(fib.lambda[0][0], 5)), 1}));
  CHECK(verify(F, fib, spec).ok());
}

TEST_CASE("inconsistent system is reported as empty") {
  const auto spec = sys("vars: 2\nfield: Fp:10007\nF: x1\nF: x1 - 1\n");
  SolveConfig cfg;
  SolveStats st;
  CHECK_THROWS_AS(solve_fp(spec, cfg, st), EmptyVariety);
}

TEST_CASE("verify detects tampering") {
  const auto spec = sys(kParabolaBig);
  const Fp F(10007);
  const P R(F);
  SolveConfig cfg;
  SolveStats st;
  const auto fib = solve_fp(spec, cfg, st);
  REQUIRE(verify(F, fib, spec).ok());

  auto bad_v = fib;
  bad_v.v[0] = R.add(bad_v.v[0], R.one());
  const auto rv = verify(F, bad_v, spec);
  CHECK_FALSE(rv.equations);
  CHECK_FALSE(rv.numerators);

  auto bad_m = fib;
  bad_m.m = R.mul(fib.m, R.from_coeffs({5, 1}));
  bad_m.m = R.mul(bad_m.m, R.from_coeffs({5, 1}));
  CHECK_FALSE(verify(F, bad_m, spec).square_free);

  auto bad_w = fib;
  bad_w.w[0] = R.add(bad_w.w[0], R.one());
  const auto rw = verify(F, bad_w, spec);
  CHECK(rw.equations);
  CHECK_FALSE(rw.numerators);

  const auto with_g = sys("vars: 2\nfield: Fp:10007\nF: x2^2 - x1\nF: x2 - x1 - 1\nG: x2^2 - x1\n");
  CHECK_FALSE(verify(F, fib, with_g).g_nonvanishing);

  auto bad_level = fib;
  bad_level.level = 1;
  CHECK_FALSE(verify(F, bad_level, spec).structure);
}

TEST_CASE("sample_preprocessing") {
  const auto spec = sys(kParabola7);
  const Fp F(7);
  SolveConfig cfg;
  cfg.strict_sampling = true;
  SessionRng rng(1);
  SolveStats st;
  CHECK_THROWS_AS(sample_preprocessing(F, spec, 2, cfg, rng, st), FieldTooSmall);

  const auto big = sys(kParabolaBig);
  const Fp G(10007);
  cfg.strict_sampling = false;
  SessionRng a(42), b(42);
  Preprocessing<Fp> pa, pb;
  for (;;) {
    try {
      pa = sample_preprocessing(G, big, 2, cfg, a, st);
      pb = sample_preprocessing(G, big, 2, cfg, b, st);
      break;
    } catch (const UnluckyRun&) {
    }
  }
  CHECK(pa.lambda == pb.lambda);
  CHECK(pa.point == pb.point);
  CHECK(pa.point.size() == 1);
  CHECK(mat_mul(G, pa.lambda, pa.lambda_inverse) == identity_matrix(G, 2));
}

TEST_CASE("serial and parallel projections give the same fiber") {
  const auto spec = sys(
      "vars: 3\nfield: Fp:1000003\nF: x1^2 + x2*x3 - 3\nF: x2^2 - x1*x3 + 2\nF: x3^2 + x1 + x2 - 5\n");
  SolveConfig serial, parallel;
  serial.parallel = false;
  parallel.parallel = true;
  SolveStats s1, s2;
  const auto a = solve_fp(spec, serial, s1);
  const auto b = solve_fp(spec, parallel, s2);
  CHECK(a.m == b.m);
  CHECK(a.v == b.v);
  CHECK(a.lambda == b.lambda);
  CHECK(s1.retries == s2.retries);
  CHECK(verify(Fp(1000003), a, spec).ok());
}

TEST_CASE("small prime fields use an inner extension") {
  const auto spec = sys("vars: 2\nfield: Fp:101\nF: x1^2 + x2^2 - 5\nF: x1*x2 - 2\n");
  SolveConfig cfg;
  SolveStats st;
  const auto fib = solve_fp(spec, cfg, st);
  CHECK(st.extension_degree > 1);
  CHECK(st.sample_set_capped);
  CHECK(verify(Fp(101), fib, spec).ok());
  CHECK(fib.delta() == 4);
}

TEST_CASE("solve over an extension field") {
  const auto spec = sys("vars: 2\nfield: Fq:7^2\nF: x2^2 - x1\nF: x2 - x1 - 1\n");
  SolveConfig cfg;
  SolveStats st;
  const auto fib = solve_fq(spec, cfg, st);
  const ExtField K = base_extension_field(7, 2);
  CHECK(fib.delta() == 2);
  CHECK(verify(K, fib, spec).ok());
  CHECK(st.extension_degree > 1);
}

TEST_CASE("lifting consistency and degree growth on random systems") {
  const std::uint64_t p = 1000003;
  const Fp F(p);
  const P R(F);
  SessionRng gen(2024);
  const auto coeff = [&] { return std::to_string(static_cast<long>(gen.below(19)) - 9); };
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    // Dense quadrics in three variables.
    std::string text = "vars: 3\nfield: Fp:1000003\n";
    for (int j = 0; j < 3; ++j) {
      text += "F: " + coeff();
      for (int a = 1; a <= 3; ++a) {
        text += " + " + coeff() + "*x" + std::to_string(a);
        for (int b = a; b <= 3; ++b)
          text += " + " + coeff() + "*x" + std::to_string(a) + "*x" + std::to_string(b);
      }
      text += "\n";
    }
    const auto spec = sys(text);
    SolveConfig cfg;
    cfg.seed = 100 + trial;
    SolveStats st;
    SessionRng rng(cfg.seed);
    try {
      const auto pre = sample_preprocessing(F, spec, 8, cfg, rng, st);
      const ComposedSlp<Fp> prog(spec.program, F, pre.lambda, pre.lambda_inverse);
      auto fib = initial_fiber(spec, prog, pre.point);
      for (std::size_t s = 1; s < 3; ++s) {
        const auto curve = newton_lift(fib, prog);
        CHECK(curve.delta() == fib.delta());
        CHECK(lift_is_consistent(curve, fib, prog));
        const auto f = detail::single_output(spec, F, s, pre.lambda, pre.lambda_inverse);
        const auto g = detail::single_output(spec, F, 3, pre.lambda, pre.lambda_inverse);
        NextLevelInputs<Fp> in;
        in.f_next = &f;
        in.g = &g;
        in.f_degree = spec.degrees[s];
        in.g_degree = 0;
        in.d = 2;
        in.delta_bound = 8;
        in.point = pre.point;
        const auto next = next_minpoly(F, curve, in, rng, st);
        CHECK(R.degree(next.m) <= 2 * static_cast<std::ptrdiff_t>(fib.delta()));
        fib = conclude_fiber(F, curve, next.m, next.v, fib);
        ++checked;
      }
      CHECK(verify(F, fib, spec).ok());
    } catch (const UnluckyRun&) {
    } catch (const DegreeCollapse&) {
    }
  }
  CHECK(checked >= 40);
}

TEST_CASE("single-attempt failure rate with a large field") {
  const auto spec = sys("vars: 2\nfield: Fp:1000003\nF: x1^2 + x2^2 - 5\nF: x1*x2 - 2\n");
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SolveConfig cfg;
    cfg.seed = seed;
    cfg.max_retries = 0;
    SolveStats st;
    try {
      const auto fib = solve_fp(spec, cfg, st);
      CHECK(verify(Fp(1000003), fib, spec).ok());
    } catch (const RetriesExhausted&) {
      ++failures;
    }
  }
  CHECK(failures <= 50);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "kron/dyneval/dyneval.hpp"
#include "kron/ring/prime_field.hpp"
#include "kron/ring/rng.hpp"

using namespace kron;

using Fp = PrimeField;
using P = PolyRing<Fp>;
using Poly = P::Elem;
using Y = YPoly<Fp>;

TEST_CASE("inv_or_split") {
  P R{Fp(7)};
  auto r = inv_or_split(R, {1, 1}, {0, 6, 1});
  REQUIRE(r.kind == InvOrSplit<Fp>::Kind::Inverse);
  CHECK(R.eq(r.inverse, Poly{1, 3}));
  r = inv_or_split(R, {0, 1}, {0, 6, 1});
  REQUIRE(r.kind == InvOrSplit<Fp>::Kind::Split);
  CHECK(R.eq(r.m1, Poly{0, 1}));
  CHECK(R.eq(r.m2, Poly{6, 1}));
  CHECK(R.eq(R.mul(r.m1, r.m2), Poly{0, 6, 1}));
  r = inv_or_split(R, {}, {0, 6, 1});
  CHECK(r.kind == InvOrSplit<Fp>::Kind::ZeroBranch);
}

TEST_CASE("biv_gcd examples") {
  Fp F(7);
  P R{F};
  const Poly m{1, 1, 1};
  const Y f1 = substitute_linear_form(R, Poly{3, 0, 1}, 1);
  const Y f2 = substitute_linear_form(R, Poly{0, 6, 1}, 2);
  const auto ctx = biv_gcd(R, f1, f2, m);
  REQUIRE(ctx.size() == 1);
  CHECK(R.eq(ctx[0].modulus, m));
  REQUIRE(ctx[0].value.size() == 2);
  CHECK(R.eq(ctx[0].value[0], R.neg(Poly{1, 1})));
  CHECK(R.eq(crt_combine(R, ctx), Poly{1, 1}));

  const Y lin{Poly{4}, Poly{1}};  // Y - 3
  const auto c2 = biv_gcd(R, lin, lin, m);
  REQUIRE(c2.size() == 1);
  CHECK(R.eq(crt_combine(R, c2), Poly{3}));

  const Poly m3{0, 6, 1};  // X^2 - X
  const Y a{Poly{0, 6}, Poly{1}};     // Y - X
  const Y b{Poly{0, 0, 6}, Poly{1}};  // Y - X^2
  const auto c3 = biv_gcd(R, a, b, m3);
  CHECK(R.eq(crt_combine(R, c3), Poly{0, 1}));
}

TEST_CASE("crt_combine") {
  P R{Fp(7)};
  SplitContext<Fp> ctx{{Poly{0, 1}, Y{Poly{}, Poly{1}}}, {Poly{6, 1}, Y{Poly{6}, Poly{1}}}};
  CHECK(R.eq(crt_combine(R, ctx), Poly{0, 1}));
  SplitContext<Fp> single{{Poly{1, 1, 1}, Y{Poly{3, 2}, Poly{1}}}};
  CHECK(R.eq(crt_combine(R, single), Poly{4, 5}));
  SplitContext<Fp> bad{{Poly{1, 1, 1}, Y{Poly{3}, Poly{}, Poly{1}}}};
  CHECK_THROWS_AS(crt_combine(R, bad), ShapeViolation);
}

TEST_CASE("biv_gcd splits the modulus and preserves it") {
  // Over m = X(X-1)(X-2) the gcd of Y - X and Y*(X-1) changes shape by branch.
  P R{Fp(7)};
  const Poly m = R.from_roots(std::vector<std::uint64_t>{0, 1, 2});
  const Y a{Poly{0, 6}, Poly{1}};
  const Y b{Poly{}, Poly{6, 1}};
  const auto ctx = biv_gcd(R, a, b, m);
  Poly prod = R.one();
  std::size_t total = 0;
  for (const auto& br : ctx) {
    prod = R.mul(prod, br.modulus);
    total += static_cast<std::size_t>(R.degree(br.modulus));
  }
  CHECK(R.eq(prod, m));
  CHECK(total == 3);
  CHECK(ctx.size() >= 2);
  for (std::size_t i = 0; i < ctx.size(); ++i)
    for (std::size_t j = i + 1; j < ctx.size(); ++j)
      CHECK(R.degree(R.gcd(ctx[i].modulus, ctx[j].modulus)) == 0);
}

TEST_CASE("planted shape-lemma instances") {
  const std::uint64_t p = 10007;
  Fp F(p);
  P R{F};
  SessionRng rng(21);
  int resamples = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t delta = 1 + rng.below(8);
    std::vector<std::uint64_t> xs, ys;
    while (xs.size() < delta) {
      const auto x = rng.below(p);
      if (std::find(xs.begin(), xs.end(), x) != xs.end()) continue;
      xs.push_back(x);
      ys.push_back(rng.below(p));
    }
    const Poly m = R.from_roots(xs);
    const Poly v_expected = R.interpolate(xs, ys);
    for (;;) {
      const auto l1 = rng.below(p), l2 = rng.below(p);
      std::vector<std::uint64_t> r1, r2;
      for (std::size_t i = 0; i < delta; ++i) {
        r1.push_back(F.add(xs[i], F.mul(l1, ys[i])));
        r2.push_back(F.add(xs[i], F.mul(l2, ys[i])));
      }
      const Y f1 = substitute_linear_form(R, R.from_roots(r1), l1);
      const Y f2 = substitute_linear_form(R, R.from_roots(r2), l2);
      try {
        const auto ctx = biv_gcd(R, f1, f2, m);
        Poly prod = R.one();
        for (const auto& br : ctx) prod = R.mul(prod, br.modulus);
        CHECK(R.eq(prod, m));
        CHECK(R.eq(crt_combine(R, ctx), v_expected));
        break;
      } catch (const ShapeViolation&) {
        ++resamples;
      }
    }
  }
  CHECK(resamples < 10);
}

TEST_CASE("substitute_linear_form against direct evaluation") {
  const std::uint64_t p = 101;
  Fp F(p);
  P R{F};
  SessionRng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Poly m(1 + rng.below(7));
    for (auto& c : m) c = rng.below(p);
    m.back() = 1;
    const auto lam = rng.below(p);
    const Y f = substitute_linear_form(R, m, lam);
    for (int k = 0; k < 5; ++k) {
      const auto x = rng.below(p), y = rng.below(p);
      std::uint64_t lhs = 0, ypow = 1;
      for (const auto& c : f) {
        lhs = F.add(lhs, F.mul(R.eval(c, x), ypow));
        ypow = F.mul(ypow, y);
      }
      CHECK(lhs == R.eval(m, F.add(x, F.mul(lam, y))));
    }
  }
}

TEST_CASE("resultant modulo a split modulus") {
  const std::uint64_t p = 10007;
  Fp F(p);
  P R{F};
  SessionRng rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 1 + rng.below(6);
    std::vector<std::uint64_t> roots;
    while (roots.size() < k) {
      const auto x = rng.below(p);
      if (std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
    }
    const Poly m = R.from_roots(roots);
    // f monic in T; g with coefficients that vanish at some roots of m.
    const std::size_t df = 1 + rng.below(4), dg = rng.below(4);
    Y f(df + 1), g(dg + 1);
    for (auto& c : f) {
      c = Poly{rng.below(p), rng.below(p)};
      R.normalize(c);
    }
    f.back() = R.one();
    for (auto& c : g) {
      c = R.mul(Poly{rng.below(p), rng.below(p)}, Poly{F.neg(roots[rng.below(k)]), 1});
      if (rng.below(2)) c = Poly{rng.below(p)};
      R.normalize(c);
    }
    while (!g.empty() && g.back().empty()) g.pop_back();
    const Poly rho = resultant_mod(R, f, g, m);
    CHECK(R.degree(rho) < R.degree(m));
    for (auto x : roots) {
      Poly fx, gx;
      for (const auto& c : f) fx.push_back(R.eval(c, x));
      for (const auto& c : g) gx.push_back(R.eval(c, x));
      R.normalize(fx);
      R.normalize(gx);
      CHECK(R.eval(rho, x) == R.resultant(fx, gx));
    }
  }
}

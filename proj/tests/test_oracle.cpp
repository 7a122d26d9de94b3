#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "kron/io/system_file.hpp"
#include "kron/kronecker/solve.hpp"
#include "kron/oracle/oracle.hpp"

using namespace kron;

namespace {

SystemSpec sys(const std::string& text) { return parse_system_file(text).spec; }

using Points = std::vector<std::vector<std::uint64_t>>;

}  // namespace

TEST_CASE("brute_zeros on the F_7 circle and diagonal") {
  const auto spec = sys("vars: 2\nfield: Fp:7\nF: x1^2 + x2^2 - 1\nF: x1 - x2\n");
  const auto serial = brute_zeros(spec, 7, false);
  CHECK(serial.points == Points{{2, 2}, {5, 5}});
  CHECK(brute_zeros(spec, 7, true) == serial);
}

TEST_CASE("brute_zeros honours G and empty systems") {
  CHECK(brute_zeros(sys("vars: 2\nfield: Fp:7\nF: x1 + x2\nF: x1 + x2 - 1\n"), 7).size() == 0);
  const auto g = sys("vars: 2\nfield: Fp:7\nF: x1^2 + x2^2 - 1\nF: x1 - x2\nG: x1 - 2\n");
  CHECK(brute_zeros(g, 7).points == Points{{5, 5}});
  const auto one_eq = sys("vars: 2\nfield: Fp:5\nF: x1\nG: x2\n");
  CHECK(brute_zeros(one_eq, 5).points == Points{{0, 1}, {0, 2}, {0, 3}, {0, 4}});
}

TEST_CASE("brute_zeros guard") {
  const auto spec = sys("vars: 3\nfield: Fp:1009\nF: x1\nF: x2\nF: x3\n");
  CHECK_THROWS_AS(brute_zeros(spec, 1009), TooLarge);
}

TEST_CASE("serial and parallel sweeps agree on a larger prime") {
  const auto spec = sys("vars: 2\nfield: Fp:1009\nF: x1^3 + 2*x2^2 - 5*x1 + 1\nF: x1*x2 - 3*x2 + 7\n");
  CHECK(brute_zeros(spec, 1009, false) == brute_zeros(spec, 1009, true));
}

TEST_CASE("fiber_points") {
  const PrimeField F(7);
  const PointSet zeros{7, 2, {{2, 2}, {5, 5}}};
  const auto I = identity_matrix(F, 2);
  const std::uint64_t slice[1] = {2};
  CHECK(fiber_points(zeros, I, slice).points == Points{{2, 2}});
  CHECK(fiber_points(PointSet{7, 2, {}}, I, slice).size() == 0);
  CHECK(fiber_points(zeros, I, std::span<const std::uint64_t>{}) == zeros);
  const Matrix<PrimeField> lam{{1, 1}, {0, 1}};
  const std::uint64_t sum[1] = {3};  // 5 + 5 = 10 = 3
  CHECK(fiber_points(zeros, lam, sum).points == Points{{5, 5}});
}

TEST_CASE("minpoly_of_form") {
  const PointSet pts{7, 2, {{2, 2}, {5, 5}}};
  const std::uint64_t x2[2] = {0, 1};
  CHECK(minpoly_of_form(pts, x2) == FpPoly{3, 0, 1});
  CHECK(minpoly_of_form(PointSet{7, 2, {{2, 2}}}, x2) == FpPoly{5, 1});
  const std::uint64_t diff[2] = {1, 6};
  CHECK(minpoly_of_form(pts, diff) == FpPoly{0, 1});
  CHECK(minpoly_of_form(PointSet{7, 2, {}}, x2) == FpPoly{1});
}

TEST_CASE("rational_part keeps the F_p-rational roots") {
  const PrimeField F(7);
  const PolyRing<PrimeField> P(F);
  const FpPoly f = P.mul(FpPoly{6, 1}, FpPoly{1, 0, 1});  // (T - 1)(T^2 + 1)
  CHECK(rational_part(F, f) == FpPoly{6, 1});
  CHECK(rational_part(F, FpPoly{3, 0, 1}) == FpPoly{3, 0, 1});
  CHECK(rational_part(F, FpPoly{1, 0, 1}) == FpPoly{1});
}

TEST_CASE("solver and oracle agree on the F_7 parabola") {
  const auto spec = sys("vars: 2\nfield: Fp:7\nF: x2^2 - x1\nF: x2 - x1 - 1\n");
  const PrimeField F(7);
  const auto zeros = brute_zeros(spec, 7);
  CHECK(zeros.points == Points{{2, 3}, {4, 5}});
  int matched = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SolveConfig cfg;
    cfg.seed = seed;
    SolveStats st;
    Fiber<PrimeField> fib;
    try {
      fib = solve_fp(spec, cfg, st);
    } catch (const Error&) {
      continue;
    }
    const auto pts = rational_solutions(F, fib);
    if (fib.m == minpoly_of_form(zeros, fib.lambda[0])) {
      CHECK(pts == zeros);
      ++matched;
    } else {
      // Only possible when lambda was drawn from a capped sample set; the
      // output is then an incomplete set of genuine solutions.
      CHECK(st.sample_set_capped);
      CHECK(pts.size() < zeros.size());
      for (const auto& x : pts.points)
        CHECK(std::find(zeros.points.begin(), zeros.points.end(), x) != zeros.points.end());
    }
  }
  CHECK(matched >= 5);
}

TEST_CASE("rational solutions of a fiber with a non-rational part") {
  // 1000003 = 3 mod 4, so x1^2 + 1 has no root and x1 = 3 is the only rational point.
  const auto spec = sys("vars: 2\nfield: Fp:1000003\nF: (x1^2 + 1)*(x1 - 3)\nF: x2 - x1\n");
  const PrimeField F(1000003);
  SolveConfig cfg;
  SolveStats st;
  const auto fib = solve_fp(spec, cfg, st);
  CHECK(fib.delta() == 3);
  const auto pts = rational_solutions(F, fib);
  CHECK(pts.points == Points{{3, 3}});
}

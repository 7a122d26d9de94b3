#include "kron/oracle/oracle.hpp"

#include <algorithm>
#include <string>

#include "kron/errors.hpp"
#include "kron/ring/rng.hpp"
#include "kron/slp/slp.hpp"

namespace kron {

namespace {

std::uint64_t dot(const PrimeField& F, std::span<const std::uint64_t> row,
                  const std::vector<std::uint64_t>& x) {
  std::uint64_t acc = 0;
  for (std::size_t j = 0; j < x.size(); ++j) acc = F.add(acc, F.mul(row[j], x[j]));
  return acc;
}

// F_p^width with componentwise operations.
struct Lanes {
  using Elem = std::vector<std::uint64_t>;
  const PrimeField& F;
  std::size_t width;

  Elem broadcast(std::uint64_t c) const { return Elem(width, c); }
  Elem from_mpz(const mpz_class& c) const { return broadcast(F.from_mpz(c)); }
  Elem add(const Elem& a, const Elem& b) const {
    Elem c(width);
    for (std::size_t i = 0; i < width; ++i) c[i] = F.add(a[i], b[i]);
    return c;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem c(width);
    for (std::size_t i = 0; i < width; ++i) c[i] = F.sub(a[i], b[i]);
    return c;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem c(width);
    for (std::size_t i = 0; i < width; ++i) c[i] = F.mul(a[i], b[i]);
    return c;
  }
};

// Roots of a monic product of distinct linear factors.
void split_roots(const PolyRing<PrimeField>& P, const FpPoly& f, SessionRng& rng,
                 std::vector<std::uint64_t>& out) {
  const PrimeField& F = P.base();
  const auto deg = P.degree(f);
  if (deg <= 0) return;
  if (deg == 1) {
    out.push_back(F.neg(f[0]));
    return;
  }
  const std::uint64_t p = F.characteristic();
  if (p == 2) {
    for (std::uint64_t t = 0; t < 2; ++t)
      if (F.is_zero(P.eval(f, t))) out.push_back(t);
    return;
  }
  const mpz_class half(static_cast<unsigned long>((p - 1) / 2));
  for (;;) {
    const FpPoly shifted{rng.below(p), 1};
    const FpPoly h = P.sub(P.powmod(shifted, half, f), P.one());
    const FpPoly g = P.gcd(h, f);
    const auto dg = P.degree(g);
    if (dg > 0 && dg < deg) {
      split_roots(P, g, rng, out);
      split_roots(P, P.exact_div(f, g), rng, out);
      return;
    }
  }
}

}  // namespace

PointSet brute_zeros(const SystemSpec& spec, std::uint64_t p, bool parallel) {
  const std::size_t n = spec.n;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > kOracleLimit / p) throw TooLarge("oracle: p^n exceeds " + std::to_string(kOracleLimit));
    total *= p;
  }
  const PrimeField F(p);
  const Slp& prog = *spec.program;
  const std::size_t r = spec.r;

  std::vector<std::vector<std::vector<std::uint64_t>>> shards(p);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t lead = 0; lead < static_cast<std::int64_t>(p); ++lead) {
    // One evaluation per line: the last coordinate runs over all lanes.
    const Lanes L{F, n == 1 ? 1 : p};
    std::vector<Lanes::Elem> x(n);
    if (n > 1) {
      x[n - 1].resize(p);
      for (std::uint64_t t = 0; t < p; ++t) x[n - 1][t] = t;
    }
    const std::size_t fixed = n == 1 ? 1 : n - 1;
    const std::uint64_t lines = total / p / L.width;
    std::vector<std::uint64_t> pt(n, 0);
    pt[0] = static_cast<std::uint64_t>(lead);
    for (std::uint64_t idx = 0; idx < lines; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t j = n - 1; j-- > 1;) {
        pt[j] = rest % p;
        rest /= p;
      }
      for (std::size_t j = 0; j < fixed; ++j) x[j] = L.broadcast(pt[j]);
      const auto out = evaluate(prog, L, x);
      for (std::size_t t = 0; t < L.width; ++t) {
        bool zero = true;
        for (std::size_t j = 0; j < r && zero; ++j) zero = out[j][t] == 0;
        if (!zero || out[r][t] == 0) continue;
        if (n > 1) pt[n - 1] = t;
        shards[static_cast<std::size_t>(lead)].push_back(pt);
      }
    }
  }

  PointSet res{p, n, {}};
  for (auto& s : shards)
    for (auto& x : s) res.points.push_back(std::move(x));
  return res;
}

PointSet fiber_points(const PointSet& zeros, const Matrix<PrimeField>& lambda,
                      std::span<const std::uint64_t> point) {
  const PrimeField F(zeros.p);
  PointSet res{zeros.p, zeros.n, {}};
  for (const auto& x : zeros.points) {
    bool keep = true;
    for (std::size_t i = 0; i < point.size() && keep; ++i) keep = dot(F, lambda[i], x) == point[i];
    if (keep) res.points.push_back(x);
  }
  return res;
}

FpPoly minpoly_of_form(const PointSet& pts, std::span<const std::uint64_t> form) {
  const PrimeField F(pts.p);
  std::vector<std::uint64_t> values;
  for (const auto& x : pts.points) values.push_back(dot(F, form, x));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return PolyRing<PrimeField>(F).from_roots(values);
}

FpPoly rational_part(const PrimeField& k, const FpPoly& m) {
  const PolyRing<PrimeField> P(k);
  if (P.degree(m) < 1) return P.one();
  const FpPoly mm = P.make_monic(m);
  const mpz_class p(static_cast<unsigned long>(k.characteristic()));
  const FpPoly frob = P.powmod(P.variable(), p, mm);
  return P.make_monic(P.gcd(P.sub(frob, P.rem_monic(P.variable(), mm)), mm));
}

PointSet rational_solutions(const PrimeField& k, const Fiber<PrimeField>& fib) {
  const PolyRing<PrimeField> P(k);
  const std::size_t n = fib.lambda.size();
  const std::size_t r = fib.level;
  std::vector<std::uint64_t> roots;
  SessionRng rng(k.characteristic());
  split_roots(P, rational_part(k, fib.m), rng, roots);

  PointSet res{k.characteristic(), n, {}};
  for (std::uint64_t t : roots) {
    std::vector<std::uint64_t> y(fib.point.begin(), fib.point.begin() + static_cast<std::ptrdiff_t>(n - r));
    y.push_back(t);
    for (const auto& v : fib.v) y.push_back(P.eval(v, t));
    res.points.push_back(mat_vec(k, fib.lambda_inverse, y));
  }
  std::sort(res.points.begin(), res.points.end());
  return res;
}

}  // namespace kron

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kron/errors.hpp"

namespace kron {

/// Dense univariate polynomials over the coefficient ring R, lowest degree
/// first. The zero polynomial is the empty sequence and every other value has
/// a nonzero leading coefficient.
///
/// PolyRing is itself a ring context, so straight-line programs and matrices
/// can be interpreted over R[T] directly. Operations that need division in R
/// (gcd, resultant, interpolation, ...) require R to be a field.
template <class R>
class PolyRing {
 public:
  using Base = R;
  using Coeff = typename R::Elem;
  using Elem = std::vector<Coeff>;
  using Scalar = typename R::Scalar;
  static constexpr bool is_field = false;

  /// Degree of the zero polynomial. Only ever compared, never used in
  /// arithmetic.
  static constexpr std::ptrdiff_t kMinusInfinity =
      std::numeric_limits<std::ptrdiff_t>::min();
  static constexpr std::size_t kKaratsubaCrossover = 32;

  struct DivRem {
    Elem quotient;
    Elem remainder;
  };
  struct Xgcd {
    Elem d, u, v;  // u*f + v*g = d, d monic (or zero)
  };

  explicit PolyRing(R base) : r_(std::move(base)) {}
  const R& base() const { return r_; }

  // -- construction -------------------------------------------------------

  void normalize(Elem& f) const {
    while (!f.empty() && r_.is_zero(f.back())) f.pop_back();
  }
  Elem from_coeffs(Elem c) const {
    normalize(c);
    return c;
  }
  Elem zero() const { return {}; }
  Elem one() const { return constant(r_.one()); }
  Elem constant(const Coeff& c) const {
    if (r_.is_zero(c)) return {};
    return Elem{c};
  }
  Elem monomial(const Coeff& c, std::size_t k) const {
    if (r_.is_zero(c)) return {};
    Elem f(k + 1, r_.zero());
    f[k] = c;
    return f;
  }
  Elem variable() const { return monomial(r_.one(), 1); }
  Elem from_int(std::int64_t v) const { return constant(r_.from_int(v)); }
  Elem from_mpz(const mpz_class& v) const { return constant(r_.from_mpz(v)); }
  Elem from_scalar(const Scalar& s) const { return constant(r_.from_scalar(s)); }

  // -- inspection ---------------------------------------------------------

  static std::ptrdiff_t degree(const Elem& f) {
    return f.empty() ? kMinusInfinity : static_cast<std::ptrdiff_t>(f.size()) - 1;
  }
  Coeff lc(const Elem& f) const { return f.empty() ? r_.zero() : f.back(); }
  Coeff coeff(const Elem& f, std::size_t i) const {
    return i < f.size() ? f[i] : r_.zero();
  }
  bool is_zero(const Elem& f) const { return f.empty(); }
  bool is_constant(const Elem& f) const { return f.size() <= 1; }
  bool is_one(const Elem& f) const {
    return f.size() == 1 && r_.eq(f[0], r_.one());
  }
  bool is_monic(const Elem& f) const {
    return !f.empty() && r_.eq(f.back(), r_.one());
  }
  bool eq(const Elem& a, const Elem& b) const {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!r_.eq(a[i], b[i])) return false;
    return true;
  }

  // -- ring operations ----------------------------------------------------

  Elem add(const Elem& a, const Elem& b) const {
    const Elem& big = a.size() >= b.size() ? a : b;
    const Elem& small = a.size() >= b.size() ? b : a;
    Elem out = big;
    for (std::size_t i = 0; i < small.size(); ++i) out[i] = r_.add(out[i], small[i]);
    normalize(out);
    return out;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem out(std::max(a.size(), b.size()), r_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = r_.sub(out[i], b[i]);
    normalize(out);
    return out;
  }
  Elem neg(const Elem& a) const {
    Elem out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = r_.neg(a[i]);
    return out;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    if (a.empty() || b.empty()) return {};
    Elem out(a.size() + b.size() - 1, r_.zero());
    mul_into(a.data(), a.size(), b.data(), b.size(), out.data());
    normalize(out);
    return out;
  }
  Elem sqr(const Elem& a) const { return mul(a, a); }

  /// Product truncated to its first t coefficients.
  Elem mul_trunc(const Elem& a, const Elem& b, std::size_t t) const {
    if (a.empty() || b.empty() || t == 0) return {};
    const std::size_t na = std::min(a.size(), t), nb = std::min(b.size(), t);
    if (std::min(na, nb) >= kKaratsubaCrossover) {
      Elem out(na + nb - 1, r_.zero());
      mul_into(a.data(), na, b.data(), nb, out.data());
      if (out.size() > t) out.resize(t);
      normalize(out);
      return out;
    }
    const std::size_t n = std::min(na + nb - 1, t);
    Elem out(n, r_.zero());
    for (std::size_t i = 0; i < na; ++i) {
      if (r_.is_zero(a[i])) continue;
      const std::size_t lim = std::min(nb, n - i);
      for (std::size_t j = 0; j < lim; ++j)
        out[i + j] = r_.add(out[i + j], r_.mul(a[i], b[j]));
    }
    normalize(out);
    return out;
  }

  Elem scale(const Elem& f, const Coeff& c) const {
    if (r_.is_zero(c)) return {};
    Elem out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = r_.mul(f[i], c);
    normalize(out);
    return out;
  }
  /// f * T^k
  Elem shift(const Elem& f, std::size_t k) const {
    if (f.empty()) return {};
    Elem out(f.size() + k, r_.zero());
    std::copy(f.begin(), f.end(), out.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
  }
  Elem truncate(const Elem& f, std::size_t t) const {
    Elem out(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(std::min(t, f.size())));
    normalize(out);
    return out;
  }
  Elem derivative(const Elem& f) const {
    if (f.size() <= 1) return {};
    Elem out(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i)
      out[i - 1] = r_.mul(f[i], r_.from_int(static_cast<std::int64_t>(i)));
    normalize(out);
    return out;
  }
  Elem pow(Elem f, std::uint64_t e) const {
    Elem result = one();
    while (e) {
      if (e & 1) result = mul(result, f);
      e >>= 1;
      if (e) f = sqr(f);
    }
    return result;
  }

  Coeff eval(const Elem& f, const Coeff& x) const {
    Coeff acc = r_.zero();
    for (std::size_t i = f.size(); i-- > 0;) acc = r_.add(r_.mul(acc, x), f[i]);
    return acc;
  }
  std::vector<Coeff> multipoint_eval(const Elem& f, std::span<const Coeff> points) const {
    std::vector<Coeff> out;
    out.reserve(points.size());
    for (const Coeff& x : points) out.push_back(eval(f, x));
    return out;
  }

  /// f(g) by Horner.
  Elem compose(const Elem& f, const Elem& g) const {
    Elem acc;
    for (std::size_t i = f.size(); i-- > 0;) acc = add(mul(acc, g), constant(f[i]));
    return acc;
  }
  /// f(T + a).
  Elem taylor_shift(const Elem& f, const Coeff& a) const {
    Elem acc;
    for (std::size_t i = f.size(); i-- > 0;) {
      // acc <- acc * (T + a) + f_i
      Elem next(acc.size() + 1, r_.zero());
      for (std::size_t j = 0; j < acc.size(); ++j) {
        next[j + 1] = r_.add(next[j + 1], acc[j]);
        next[j] = r_.add(next[j], r_.mul(acc[j], a));
      }
      next[0] = r_.add(next[0], f[i]);
      normalize(next);
      acc = std::move(next);
    }
    return acc;
  }

  // -- division -----------------------------------------------------------

  /// Division by a monic divisor; valid over any coefficient ring.
  DivRem divrem_monic(const Elem& f, const Elem& g) const {
    if (!is_monic(g)) throw NotMonic("divrem_monic: divisor is not monic");
    return divrem_with_inverse(f, g, r_.one());
  }
  Elem rem_monic(const Elem& f, const Elem& g) const {
    if (!is_monic(g)) throw NotMonic("rem_monic: divisor is not monic");
    if (f.size() < g.size()) return f;
    Elem r = f;
    const std::size_t dg = g.size() - 1;
    for (std::size_t i = r.size(); i-- > dg;) {
      const Coeff c = r[i];
      if (r_.is_zero(c)) continue;
      for (std::size_t j = 0; j < dg; ++j)
        r[i - dg + j] = r_.sub(r[i - dg + j], r_.mul(c, g[j]));
      r[i] = r_.zero();
    }
    r.resize(dg);
    normalize(r);
    return r;
  }

  /// Division over a field (leading coefficient of g must be invertible).
  DivRem divrem(const Elem& f, const Elem& g) const {
    if (g.empty()) throw InvalidArgument("divrem: division by zero polynomial");
    return divrem_with_inverse(f, g, r_.inv(g.back()));
  }
  Elem rem(const Elem& f, const Elem& g) const {
    if (f.size() < g.size()) return f;
    return divrem(f, g).remainder;
  }
  Elem quo(const Elem& f, const Elem& g) const { return divrem(f, g).quotient; }
  Elem exact_div(const Elem& f, const Elem& g) const {
    DivRem qr = divrem(f, g);
    if (!qr.remainder.empty()) throw InvalidArgument("exact_div: nonzero remainder");
    return std::move(qr.quotient);
  }

  Elem make_monic(const Elem& f) const {
    if (f.empty() || r_.eq(f.back(), r_.one())) return f;
    return scale(f, r_.inv(f.back()));
  }

  // -- field algorithms ---------------------------------------------------

  Elem gcd(Elem a, Elem b) const {
    while (!b.empty()) {
      Elem r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return make_monic(a);
  }

  Xgcd xgcd(const Elem& f, const Elem& g) const {
    Elem r0 = f, r1 = g;
    Elem s0 = one(), s1 = zero();
    Elem t0 = zero(), t1 = one();
    while (!r1.empty()) {
      DivRem qr = divrem(r0, r1);
      Elem s2 = sub(s0, mul(qr.quotient, s1));
      Elem t2 = sub(t0, mul(qr.quotient, t1));
      r0 = std::move(r1);
      r1 = std::move(qr.remainder);
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.empty()) return {zero(), zero(), zero()};
    const Coeff c = r_.inv(r0.back());
    return {scale(r0, c), scale(s0, c), scale(t0, c)};
  }

  /// Inverse of f modulo the monic m; NotCoprimeWith carries gcd(f, m).
  Elem modinv(const Elem& f, const Elem& m) const {
    if (!is_monic(m)) throw NotMonic("modinv: modulus is not monic");
    if (m.size() == 1) return {};
    Xgcd g = xgcd(rem_monic(f, m), m);
    if (!is_one(g.d))
      throw NotCoprimeWith<Coeff>("modinv: polynomial is not invertible modulo m",
                                  g.d.empty() ? m : g.d);
    return rem_monic(g.u, m);
  }

  /// res(f, g) = lc(f)^deg g * prod g(roots of f). Zero when either input is.
  Coeff resultant(Elem f, Elem g) const {
    if (f.empty() || g.empty()) return r_.zero();
    Coeff acc = r_.one();
    for (;;) {
      const std::size_t n = f.size() - 1, m = g.size() - 1;
      if (n == 0) return r_.mul(acc, pow_coeff(f[0], m));
      if (m == 0) return r_.mul(acc, pow_coeff(g[0], n));
      if (n < m) {
        std::swap(f, g);
        if ((n * m) & 1) acc = r_.neg(acc);
        continue;
      }
      Elem r = rem(f, g);
      if (r.empty()) return r_.zero();
      const std::size_t k = r.size() - 1;
      if ((n * m) & 1) acc = r_.neg(acc);
      acc = r_.mul(acc, pow_coeff(g.back(), n - k));
      f = std::move(g);
      g = std::move(r);
    }
  }

  /// res(f, f'), without the usual leading-coefficient and sign
  /// normalization. Callers only use its vanishing.
  Coeff discriminant(const Elem& f) const { return resultant(f, derivative(f)); }

  /// Monic product of the distinct irreducible factors of f.
  Elem squarefree_part(const Elem& f_in) const {
    if (f_in.empty()) return {};
    Elem f = make_monic(f_in);
    if (f.size() == 1) return one();
    Elem fp = derivative(f);
    if (fp.empty()) return squarefree_part(pth_root_poly(f));
    Elem g = gcd(f, fp);
    Elem w = exact_div(f, g);
    Elem rest = std::move(g);
    for (;;) {
      Elem y = gcd(rest, w);
      if (y.size() <= 1) break;
      rest = exact_div(rest, y);
    }
    if (rest.size() <= 1) return w;
    return mul(w, squarefree_part(pth_root_poly(rest)));
  }

  /// For f = h(T^p) in characteristic p, returns h^(1/p) coefficientwise.
  Elem pth_root_poly(const Elem& f) const {
    const std::uint64_t p = r_.characteristic();
    if (p == 0) throw InvalidArgument("pth_root_poly: characteristic zero");
    Elem h;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i % p == 0)
        h.push_back(r_.pth_root(f[i]));
      else if (!r_.is_zero(f[i]))
        throw InvalidArgument("pth_root_poly: not a polynomial in T^p");
    }
    normalize(h);
    return h;
  }

  Elem powmod(const Elem& f, const mpz_class& e, const Elem& m) const {
    Elem result = rem_monic(one(), m);
    Elem b = rem_monic(f, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      result = rem_monic(sqr(result), m);
      if (mpz_tstbit(e.get_mpz_t(), i)) result = rem_monic(mul(result, b), m);
    }
    return result;
  }

  /// Unique f with deg f < #points and f(xs[i]) = ys[i] (Lagrange form,
  /// one batched inversion for all barycentric weights).
  Elem interpolate(std::span<const Coeff> xs, std::span<const Coeff> ys) const {
    if (xs.size() != ys.size()) throw InvalidArgument("interpolate: size mismatch");
    const std::size_t n = xs.size();
    if (n == 0) return {};
    // P = prod (T - x_i), kept unnormalized with n + 1 slots.
    std::vector<Coeff> P(n + 1, r_.zero());
    P[0] = r_.one();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k > 0; --k) P[k] = r_.sub(P[k - 1], r_.mul(P[k], xs[i]));
      P[0] = r_.neg(r_.mul(P[0], xs[i]));
    }
    // w_i = P'(x_i) = prod_{j != i} (x_i - x_j).
    std::vector<Coeff> dP(n);
    for (std::size_t k = 1; k <= n; ++k) dP[k - 1] = r_.mul(r_.from_int(static_cast<std::int64_t>(k)), P[k]);
    std::vector<Coeff> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      Coeff v = r_.zero();
      for (std::size_t k = n; k-- > 0;) v = r_.add(r_.mul(v, xs[i]), dP[k]);
      if (r_.is_zero(v)) throw DuplicateNode("interpolate: repeated node");
      w[i] = v;
    }
    // Batch inversion of the weights.
    std::vector<Coeff> prefix(n);
    Coeff run = r_.one();
    for (std::size_t i = 0; i < n; ++i) {
      prefix[i] = run;
      run = r_.mul(run, w[i]);
    }
    Coeff inv;
    try {
      inv = r_.inv(run);
    } catch (const NonUnit&) {
      throw DuplicateNode("interpolate: node difference is not a unit");
    }
    Elem acc(n, r_.zero());
    for (std::size_t i = n; i-- > 0;) {
      const Coeff wi_inv = r_.mul(inv, prefix[i]);
      inv = r_.mul(inv, w[i]);
      if (r_.is_zero(ys[i])) continue;
      // acc += c * P / (T - x_i), quotient by synthetic division.
      const Coeff c = r_.mul(ys[i], wi_inv);
      Coeff qk = P[n];
      for (std::size_t k = n; k-- > 0;) {
        acc[k] = r_.add(acc[k], r_.mul(c, qk));
        qk = r_.add(P[k], r_.mul(qk, xs[i]));
      }
    }
    normalize(acc);
    return acc;
  }

  /// prod (T - roots[i])
  Elem from_roots(std::span<const Coeff> roots) const {
    Elem acc = one();
    for (const Coeff& a : roots) acc = mul(acc, Elem{r_.neg(a), r_.one()});
    return acc;
  }

  Coeff pow_coeff(Coeff a, std::uint64_t e) const {
    Coeff result = r_.one();
    while (e) {
      if (e & 1) result = r_.mul(result, a);
      e >>= 1;
      if (e) a = r_.mul(a, a);
    }
    return result;
  }

  std::string to_string(const Elem& f) const {
    if (f.empty()) return "0";
    std::string s;
    for (std::size_t i = f.size(); i-- > 0;) {
      if (r_.is_zero(f[i])) continue;
      if (!s.empty()) s += " + ";
      s += "(" + r_.to_string(f[i]) + ")";
      if (i > 0) s += "*T^" + std::to_string(i);
    }
    return s;
  }

 private:
  DivRem divrem_with_inverse(const Elem& f, const Elem& g, const Coeff& lc_inv) const {
    if (f.size() < g.size()) return {zero(), f};
    Elem r = f;
    const std::size_t dg = g.size() - 1;
    Elem q(f.size() - dg, r_.zero());
    for (std::size_t i = r.size(); i-- > dg;) {
      if (r_.is_zero(r[i])) continue;
      const Coeff c = r_.mul(r[i], lc_inv);
      q[i - dg] = c;
      for (std::size_t j = 0; j < dg; ++j)
        r[i - dg + j] = r_.sub(r[i - dg + j], r_.mul(c, g[j]));
      r[i] = r_.zero();
    }
    r.resize(dg);
    normalize(r);
    normalize(q);
    return {std::move(q), std::move(r)};
  }

  // out[0 .. na+nb-1) += a * b
  void mul_into(const Coeff* a, std::size_t na, const Coeff* b, std::size_t nb,
                Coeff* out) const {
    if (na == 0 || nb == 0) return;
    if (std::min(na, nb) < kKaratsubaCrossover) {
      for (std::size_t i = 0; i < na; ++i) {
        if (r_.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < nb; ++j)
          out[i + j] = r_.add(out[i + j], r_.mul(a[i], b[j]));
      }
      return;
    }
    const std::size_t h = std::max(na, nb) / 2;
    if (na <= h || nb <= h) {
      // Unbalanced: split only the longer operand.
      if (na < nb) {
        std::swap(a, b);
        std::swap(na, nb);
      }
      for (std::size_t off = 0; off < na; off += nb) {
        const std::size_t len = std::min(nb, na - off);
        mul_into(a + off, len, b, nb, out + off);
      }
      return;
    }
    const std::size_t na1 = na - h, nb1 = nb - h;
    std::vector<Coeff> z0(2 * h - 1, r_.zero());
    std::vector<Coeff> z2(na1 + nb1 - 1, r_.zero());
    mul_into(a, h, b, h, z0.data());
    mul_into(a + h, na1, b + h, nb1, z2.data());
    const std::size_t sa = std::max(h, na1), sb = std::max(h, nb1);
    std::vector<Coeff> as(sa, r_.zero()), bs(sb, r_.zero());
    for (std::size_t i = 0; i < h; ++i) as[i] = a[i];
    for (std::size_t i = 0; i < na1; ++i) as[i] = r_.add(as[i], a[h + i]);
    for (std::size_t i = 0; i < h; ++i) bs[i] = b[i];
    for (std::size_t i = 0; i < nb1; ++i) bs[i] = r_.add(bs[i], b[h + i]);
    std::vector<Coeff> z1(sa + sb - 1, r_.zero());
    mul_into(as.data(), sa, bs.data(), sb, z1.data());
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = r_.sub(z1[i], z0[i]);
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = r_.sub(z1[i], z2[i]);
    for (std::size_t i = 0; i < z0.size(); ++i) out[i] = r_.add(out[i], z0[i]);
    for (std::size_t i = 0; i < z1.size(); ++i) out[h + i] = r_.add(out[h + i], z1[i]);
    for (std::size_t i = 0; i < z2.size(); ++i)
      out[2 * h + i] = r_.add(out[2 * h + i], z2[i]);
  }

  R r_;
};

}  // namespace kron

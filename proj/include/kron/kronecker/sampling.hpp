#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "kron/errors.hpp"
#include "kron/kronecker/types.hpp"
#include "kron/ring/rng.hpp"

namespace kron {

/// The finite set S = {0, ..., N-1} of the randomized steps, mapped into a
/// field through from_index. N is capped at the field size unless sampling
/// is strict.
class SampleSet {
 public:
  SampleSet(const mpz_class& wanted, const mpz_class& cardinality, bool strict) {
    mpz_class n = wanted < 1 ? mpz_class(1) : wanted;
    if (n > cardinality) {
      if (strict)
        throw FieldTooSmall("sample set of size " + n.get_str() + " exceeds the field size " +
                            cardinality.get_str());
      n = cardinality;
      capped_ = true;
    }
    const mpz_class limit = mpz_class(1) << 63;
    if (n > limit) n = limit;
    size_ = n.get_ui();
    if (!n.fits_ulong_p()) size_ = std::uint64_t(1) << 63;
  }

  std::uint64_t size() const { return size_; }
  bool capped() const { return capped_; }

  template <class K>
  typename K::Elem draw(const K& field, SessionRng& rng) const {
    return field.from_index(rng.below(size_));
  }

 private:
  std::uint64_t size_ = 1;
  bool capped_ = false;
};

/// Draws from a SampleSet without replacement.
class DistinctDraws {
 public:
  explicit DistinctDraws(const SampleSet& s) : set_(s) {}

  std::size_t remaining() const { return set_.size() - used_.size(); }

  template <class K>
  typename K::Elem next(const K& field, SessionRng& rng) {
    if (remaining() == 0) throw FieldTooSmall("sample set exhausted");
    for (;;) {
      const std::uint64_t i = rng.below(set_.size());
      if (used_.insert(i).second) return field.from_index(i);
    }
  }

  template <class K>
  std::vector<typename K::Elem> take(const K& field, SessionRng& rng, std::size_t count) {
    if (count > remaining())
      throw FieldTooSmall("sample set has fewer than " + std::to_string(count) + " elements");
    std::vector<typename K::Elem> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(next(field, rng));
    return out;
  }

 private:
  const SampleSet& set_;
  std::unordered_set<std::uint64_t> used_;
};

inline mpz_class ceil_q(const mpq_class& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline mpz_class upow(std::uint64_t b, unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

/// ceil(eps^-1 * 2 n^2 r d delta^3): linear change and lifting point.
inline mpz_class preprocessing_size(std::size_t n, std::size_t r, std::size_t d,
                                    std::uint64_t delta, const mpq_class& eps) {
  const mpz_class k = mpz_class(2) * upow(n, 2) * static_cast<unsigned long>(r) *
                      static_cast<unsigned long>(d) * upow(delta, 3);
  return ceil_q(mpq_class(k) / eps);
}

/// ceil(eps^-1 (D + 1)(delta^2 + D)) with D = d delta: projection nodes.
inline mpz_class projection_size(std::size_t d, std::uint64_t delta, const mpq_class& eps) {
  const mpz_class D = mpz_class(static_cast<unsigned long>(d)) * delta;
  return ceil_q(mpq_class((D + 1) * (upow(delta, 2) + D)) / eps);
}

/// ceil(2 eps^-1 delta^4): the shape-lemma forms.
inline mpz_class shape_size(std::uint64_t delta, const mpq_class& eps) {
  return ceil_q(mpq_class(mpz_class(2) * upow(delta, 4)) / eps);
}

/// Least e >= 1 with q^e >= bound.
inline unsigned log_ceil(const mpz_class& q, const mpz_class& bound) {
  unsigned e = 1;
  mpz_class qe = q;
  while (qe < bound) {
    qe *= q;
    ++e;
  }
  return e;
}

/// Inner extension degree for the projection and shape steps over F_q:
/// max(1, ceil(log_q(12 r eps^-1 delta^4))).
inline unsigned fq_extension_degree(const mpz_class& q, std::size_t r, std::uint64_t delta,
                                    const mpq_class& eps) {
  const mpz_class bound =
      ceil_q(mpq_class(mpz_class(12) * static_cast<unsigned long>(r) * upow(delta, 4)) / eps);
  return log_ceil(q, bound);
}

}  // namespace kron

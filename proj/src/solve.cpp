#include "kron/kronecker/solve.hpp"

#include "kron/ring/irreducible.hpp"

namespace kron {

ExtField base_extension_field(std::uint64_t p, unsigned e) {
  SessionRng rng(0x6b726f6eULL ^ (p * 1000003ULL) ^ e);
  return ExtField(p, find_irreducible(p, e, rng));
}

Fiber<PrimeField> solve_fp(const SystemSpec& spec, const SolveConfig& cfg, SolveStats& st,
                           const Preprocessing<PrimeField>* forced) {
  const PrimeField k(spec.field.p);
  SessionRng rng(cfg.seed);
  return solve_with_doubling(spec, cfg, st, [&](std::uint64_t delta) {
    const unsigned e = inner_degree(k.cardinality(), spec, delta, cfg.epsilon);
    st.extension_degree = e;
    if (e == 1) return run_attempts(spec, cfg, TrivialTower<PrimeField>{k}, delta, rng, st, forced);
    const PrimeTower tw{k, ExtField::random(k.characteristic(), e, rng)};
    return run_attempts(spec, cfg, tw, delta, rng, st, forced);
  });
}

Fiber<ExtField> solve_fq(const SystemSpec& spec, const SolveConfig& cfg, SolveStats& st) {
  const ExtField k = base_extension_field(spec.field.p, spec.field.e);
  SessionRng rng(cfg.seed);
  return solve_with_doubling(spec, cfg, st, [&](std::uint64_t delta) {
    const unsigned e = inner_degree(k.cardinality(), spec, delta, cfg.epsilon);
    st.extension_degree = e;
    if (e == 1) return run_attempts(spec, cfg, TrivialTower<ExtField>{k}, delta, rng, st, nullptr);
    const ExtTower tw(k, ExtField::random(k.characteristic(), e * k.degree(), rng), rng);
    return run_attempts(spec, cfg, tw, delta, rng, st, nullptr);
  });
}

}  // namespace kron

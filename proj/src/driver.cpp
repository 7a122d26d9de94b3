#include "kron/io/driver.hpp"

#include "kron/kronecker/solve.hpp"
#include "kron/qlift/qlift.hpp"

namespace kron {

int exit_code_for(const Error& e) {
  if (dynamic_cast<const SyntaxError*>(&e) || dynamic_cast<const DocumentError*>(&e) ||
      dynamic_cast<const InvalidArgument*>(&e) || dynamic_cast<const UnknownVariable*>(&e))
    return kExitInput;
  if (dynamic_cast<const RetriesExhausted*>(&e)) return kExitRetries;
  if (dynamic_cast<const EmptyVariety*>(&e)) return kExitEmpty;
  if (dynamic_cast<const FieldTooSmall*>(&e)) return kExitFieldTooSmall;
  if (dynamic_cast<const TooLarge*>(&e)) return kExitTooLarge;
  return kExitInternal;
}

FiberDocument solve_document(const SystemSpec& spec, const SolveConfig& cfg) {
  FiberDocument doc;
  doc.field = spec.field;
  doc.n = spec.n;
  doc.r = spec.r;
  doc.seed = cfg.seed;
  switch (spec.field.kind) {
    case FieldDescriptor::Kind::Prime:
      doc.fiber = solve_fp(spec, cfg, doc.stats);
      break;
    case FieldDescriptor::Kind::Extension:
      doc.modulus = base_extension_field(spec.field.p, spec.field.e).modulus();
      doc.fiber = solve_fq(spec, cfg, doc.stats);
      break;
    case FieldDescriptor::Kind::Rational:
      doc.fiber = solve_over_Q(spec, cfg, doc.stats);
      break;
  }
  return doc;
}

VerifyReport verify_document(const FiberDocument& doc, const SystemSpec& spec) {
  if (!(doc.field == spec.field))
    throw FieldMismatch("document field " + doc.field.to_string() + " differs from system field " +
                        spec.field.to_string());
  if (doc.n != spec.n || doc.r != spec.r)
    throw FieldMismatch("document shape (" + std::to_string(doc.n) + ", " + std::to_string(doc.r) +
                        ") differs from system shape (" + std::to_string(spec.n) + ", " +
                        std::to_string(spec.r) + ")");
  return std::visit(
      [&](const auto& fib) {
        using F = std::remove_cvref_t<decltype(fib)>;
        if constexpr (std::is_same_v<F, Fiber<PrimeField>>)
          return verify(PrimeField(doc.field.p), fib, spec);
        else if constexpr (std::is_same_v<F, Fiber<ExtField>>)
          return verify(doc.ext_field(), fib, spec);
        else
          return verify(Rationals{}, fib, spec);
      },
      doc.fiber);
}

const char* to_string(OracleReport::Outcome o) {
  switch (o) {
    case OracleReport::Outcome::Match:
      return "MATCH";
    case OracleReport::Outcome::Mismatch:
      return "MISMATCH";
    case OracleReport::Outcome::SolverFailure:
      return "SOLVER_FAILURE";
  }
  return "?";
}

OracleReport oracle_check(const SystemSpec& spec, const SolveConfig& cfg) {
  if (spec.field.kind != FieldDescriptor::Kind::Prime)
    throw InvalidArgument("oracle-check needs a prime field Fp:<p>");
  const PrimeField F(spec.field.p);
  const PointSet zeros = brute_zeros(spec, spec.field.p, cfg.parallel);

  OracleReport rep;
  try {
    rep.document = solve_document(spec, cfg);
  } catch (const Error& e) {
    rep.outcome = OracleReport::Outcome::SolverFailure;
    rep.failure = std::string(e.kind()) + ": " + e.what();
    rep.solver_exit = exit_code_for(e);
    return rep;
  }
  const auto& fib = std::get<Fiber<PrimeField>>(rep.document.fiber);
  const std::size_t n = spec.n, r = spec.r;
  const std::span<const std::uint64_t> slice(fib.point.data(), n - r);
  const PointSet expected = fiber_points(zeros, fib.lambda, slice);
  const FpPoly m_oracle = minpoly_of_form(expected, fib.lambda[n - r]);
  const FpPoly m_rational = rational_part(F, fib.m);
  rep.degree = fib.delta();
  rep.rational_degree = m_rational.size() - 1;
  rep.oracle_points = expected.size();
  const bool match = m_rational == m_oracle && rational_solutions(F, fib) == expected;
  rep.outcome = match ? OracleReport::Outcome::Match : OracleReport::Outcome::Mismatch;
  return rep;
}

}  // namespace kron

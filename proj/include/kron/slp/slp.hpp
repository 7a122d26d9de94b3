#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kron/errors.hpp"

namespace kron {

enum class Op : std::uint8_t { Input, Param, Add, Sub, Mul };

struct Instr {
  Op op;
  std::uint32_t a = 0;  // Input: variable index; Param: parameter index; else operand
  std::uint32_t b = 0;
};

/// Division-free straight-line program with integer parameters.
///
/// Every operand refers to an earlier instruction, so the program is
/// acyclic by construction. The same program can be run over any ring that
/// embeds the integers.
class Slp {
 public:
  Slp() = default;
  explicit Slp(std::size_t n_vars) : n_vars_(n_vars) {}

  std::size_t n_vars() const { return n_vars_; }
  const std::vector<mpz_class>& params() const { return params_; }
  const std::vector<Instr>& code() const { return code_; }
  const std::vector<std::uint32_t>& outputs() const { return outputs_; }
  std::size_t n_outputs() const { return outputs_.size(); }

  /// Number of Add/Sub/Mul instructions.
  std::size_t length() const;

  // Builder interface; each call returns the index of the new instruction.
  std::uint32_t input(std::size_t var);
  std::uint32_t param(const mpz_class& value);
  std::uint32_t add(std::uint32_t a, std::uint32_t b) { return binary(Op::Add, a, b); }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) { return binary(Op::Sub, a, b); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) { return binary(Op::Mul, a, b); }
  void add_output(std::uint32_t node);
  void set_outputs(std::vector<std::uint32_t> nodes);

  /// Interval degree propagation: an upper bound on the total degree of
  /// every output (zero parameters count as degree 0).
  std::vector<std::size_t> degree_bounds() const;

  /// Instructions reachable from the given nodes, as a mask.
  std::vector<bool> reachable(std::span<const std::uint32_t> roots) const;

  bool operator==(const Slp&) const = default;

 private:
  std::uint32_t binary(Op op, std::uint32_t a, std::uint32_t b);

  std::size_t n_vars_ = 0;
  std::vector<mpz_class> params_;
  std::vector<Instr> code_;
  std::vector<std::uint32_t> outputs_;
};

/// Runs the program over `ring` and returns one value per output.
template <class R>
std::vector<typename R::Elem> evaluate(const Slp& slp, const R& ring,
                                       std::span<const typename R::Elem> inputs) {
  if (inputs.size() != slp.n_vars())
    throw InvalidArgument("evaluate: expected " + std::to_string(slp.n_vars()) + " inputs");
  std::vector<typename R::Elem> params;
  params.reserve(slp.params().size());
  for (const auto& c : slp.params()) params.push_back(ring.from_mpz(c));
  const auto& code = slp.code();
  std::vector<typename R::Elem> val(code.size());
  for (std::size_t i = 0; i < code.size(); ++i) {
    const Instr& in = code[i];
    switch (in.op) {
      case Op::Input:
        val[i] = inputs[in.a];
        break;
      case Op::Param:
        val[i] = params[in.a];
        break;
      case Op::Add:
        val[i] = ring.add(val[in.a], val[in.b]);
        break;
      case Op::Sub:
        val[i] = ring.sub(val[in.a], val[in.b]);
        break;
      case Op::Mul:
        val[i] = ring.mul(val[in.a], val[in.b]);
        break;
    }
  }
  std::vector<typename R::Elem> out;
  out.reserve(slp.n_outputs());
  for (std::uint32_t o : slp.outputs()) out.push_back(val[o]);
  return out;
}

template <class R>
std::vector<typename R::Elem> evaluate(const Slp& slp, const R& ring,
                                       const std::vector<typename R::Elem>& inputs) {
  return evaluate(slp, ring, std::span<const typename R::Elem>(inputs));
}

/// Reverse-mode (Baur-Strassen) partial derivatives of one output: the
/// result has n_vars outputs, d/dx_1 ... d/dx_n.
Slp gradient(const Slp& slp, std::size_t output_index);

/// One program whose outputs are the selected outputs f_1..f_k followed by
/// all their partials, row by row: f_1, ..., f_k, df_1/dx_1, ..., df_k/dx_n.
/// The forward pass is shared.
Slp jacobian_program(const Slp& slp, std::span<const std::size_t> output_indices);

/// Replaces the first values.size() inputs by integer parameters; the
/// result has n_vars - k inputs.
Slp specialize(const Slp& slp, std::span<const mpz_class> values);

/// Keeps only the selected outputs, in order.
Slp select_outputs(const Slp& slp, std::span<const std::size_t> output_indices);

}  // namespace kron

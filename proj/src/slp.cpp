#include "kron/slp/slp.hpp"

#include <algorithm>
#include <optional>

namespace kron {

std::size_t Slp::length() const {
  return static_cast<std::size_t>(std::count_if(code_.begin(), code_.end(), [](const Instr& i) {
    return i.op == Op::Add || i.op == Op::Sub || i.op == Op::Mul;
  }));
}

std::uint32_t Slp::input(std::size_t var) {
  if (var >= n_vars_) throw InvalidArgument("slp: input index out of range");
  code_.push_back({Op::Input, static_cast<std::uint32_t>(var), 0});
  return static_cast<std::uint32_t>(code_.size() - 1);
}

std::uint32_t Slp::param(const mpz_class& value) {
  params_.push_back(value);
  code_.push_back({Op::Param, static_cast<std::uint32_t>(params_.size() - 1), 0});
  return static_cast<std::uint32_t>(code_.size() - 1);
}

std::uint32_t Slp::binary(Op op, std::uint32_t a, std::uint32_t b) {
  if (a >= code_.size() || b >= code_.size())
    throw InvalidArgument("slp: operand refers to a later instruction");
  code_.push_back({op, a, b});
  return static_cast<std::uint32_t>(code_.size() - 1);
}

void Slp::add_output(std::uint32_t node) {
  if (node >= code_.size()) throw InvalidArgument("slp: output index out of range");
  outputs_.push_back(node);
}

void Slp::set_outputs(std::vector<std::uint32_t> nodes) {
  for (std::uint32_t n : nodes)
    if (n >= code_.size()) throw InvalidArgument("slp: output index out of range");
  outputs_ = std::move(nodes);
}

std::vector<std::size_t> Slp::degree_bounds() const {
  std::vector<std::size_t> deg(code_.size(), 0);
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    switch (in.op) {
      case Op::Input:
        deg[i] = 1;
        break;
      case Op::Param:
        deg[i] = 0;
        break;
      case Op::Add:
      case Op::Sub:
        deg[i] = std::max(deg[in.a], deg[in.b]);
        break;
      case Op::Mul:
        deg[i] = deg[in.a] + deg[in.b];
        break;
    }
  }
  std::vector<std::size_t> out;
  for (std::uint32_t o : outputs_) out.push_back(deg[o]);
  return out;
}

std::vector<bool> Slp::reachable(std::span<const std::uint32_t> roots) const {
  std::vector<bool> mark(code_.size(), false);
  for (std::uint32_t r : roots) mark[r] = true;
  for (std::size_t i = code_.size(); i-- > 0;) {
    if (!mark[i]) continue;
    const Instr& in = code_[i];
    if (in.op == Op::Add || in.op == Op::Sub || in.op == Op::Mul) {
      mark[in.a] = true;
      mark[in.b] = true;
    }
  }
  return mark;
}

namespace {

// Copies the instructions in `keep` into `out`, returning old -> new indices.
std::vector<std::uint32_t> copy_forward(const Slp& src, const std::vector<bool>& keep, Slp& out) {
  std::vector<std::uint32_t> map(src.code().size(), 0);
  for (std::size_t i = 0; i < src.code().size(); ++i) {
    if (!keep[i]) continue;
    const Instr& in = src.code()[i];
    switch (in.op) {
      case Op::Input:
        map[i] = out.input(in.a);
        break;
      case Op::Param:
        map[i] = out.param(src.params()[in.a]);
        break;
      case Op::Add:
        map[i] = out.add(map[in.a], map[in.b]);
        break;
      case Op::Sub:
        map[i] = out.sub(map[in.a], map[in.b]);
        break;
      case Op::Mul:
        map[i] = out.mul(map[in.a], map[in.b]);
        break;
    }
  }
  return map;
}

// A signed adjoint; `one` marks the constant +-1 so products with it are free.
struct Term {
  std::uint32_t node;
  bool neg;
  bool one;
};

class ReverseSweep {
 public:
  ReverseSweep(const Slp& src, const std::vector<std::uint32_t>& map, Slp& out)
      : src_(src), map_(map), out_(out), active_(src.code().size(), false) {
    for (std::size_t i = 0; i < src.code().size(); ++i) {
      const Instr& in = src.code()[i];
      if (in.op == Op::Input)
        active_[i] = true;
      else if (in.op != Op::Param)
        active_[i] = active_[in.a] || active_[in.b];
    }
  }

  // Partials of the source node `root`, one new node per variable.
  std::vector<std::uint32_t> run(std::uint32_t root) {
    std::vector<std::optional<Term>> adj(src_.code().size());
    if (active_[root]) adj[root] = Term{one(), false, true};
    for (std::size_t i = root + 1; i-- > 0;) {
      if (!adj[i]) continue;
      const Term g = *adj[i];
      const Instr& in = src_.code()[i];
      switch (in.op) {
        case Op::Input:
        case Op::Param:
          break;
        case Op::Add:
          accumulate(adj, in.a, g);
          accumulate(adj, in.b, g);
          break;
        case Op::Sub:
          accumulate(adj, in.a, g);
          accumulate(adj, in.b, Term{g.node, !g.neg, g.one});
          break;
        case Op::Mul:
          if (active_[in.a]) accumulate(adj, in.a, scale(g, map_[in.b]));
          if (active_[in.b]) accumulate(adj, in.b, scale(g, map_[in.a]));
          break;
      }
    }
    std::vector<std::optional<Term>> per_var(src_.n_vars());
    for (std::size_t i = 0; i <= root; ++i) {
      const Instr& in = src_.code()[i];
      if (in.op != Op::Input || !adj[i]) continue;
      combine(per_var[in.a], *adj[i]);
    }
    std::vector<std::uint32_t> result;
    for (auto& t : per_var) {
      if (!t) {
        result.push_back(zero());
      } else if (t->neg) {
        result.push_back(out_.sub(zero(), t->one ? one() : t->node));
      } else {
        result.push_back(t->one ? one() : t->node);
      }
    }
    return result;
  }

 private:
  std::uint32_t one() {
    if (!one_) one_ = out_.param(1);
    return *one_;
  }
  std::uint32_t zero() {
    if (!zero_) zero_ = out_.param(0);
    return *zero_;
  }

  Term scale(const Term& g, std::uint32_t operand) {
    if (g.one) return Term{operand, g.neg, false};
    return Term{out_.mul(g.node, operand), g.neg, false};
  }

  void accumulate(std::vector<std::optional<Term>>& adj, std::uint32_t target, const Term& t) {
    if (!active_[target]) return;
    combine(adj[target], t);
  }

  void combine(std::optional<Term>& acc, const Term& t) {
    if (!acc) {
      acc = t;
      return;
    }
    const Term a = *acc;
    const std::uint32_t va = a.one ? one() : a.node;
    const std::uint32_t vb = t.one ? one() : t.node;
    if (a.neg == t.neg)
      acc = Term{out_.add(va, vb), a.neg, false};
    else if (!a.neg)
      acc = Term{out_.sub(va, vb), false, false};
    else
      acc = Term{out_.sub(vb, va), false, false};
  }

  const Slp& src_;
  const std::vector<std::uint32_t>& map_;
  Slp& out_;
  std::vector<bool> active_;
  std::optional<std::uint32_t> one_, zero_;
};

}  // namespace

Slp jacobian_program(const Slp& slp, std::span<const std::size_t> output_indices) {
  std::vector<std::uint32_t> roots;
  for (std::size_t k : output_indices) {
    if (k >= slp.n_outputs()) throw InvalidArgument("jacobian: output index out of range");
    roots.push_back(slp.outputs()[k]);
  }
  Slp out(slp.n_vars());
  const auto map = copy_forward(slp, slp.reachable(roots), out);
  std::vector<std::uint32_t> outputs;
  for (std::uint32_t r : roots) outputs.push_back(map[r]);
  ReverseSweep sweep(slp, map, out);
  for (std::uint32_t r : roots) {
    const auto partials = sweep.run(r);
    outputs.insert(outputs.end(), partials.begin(), partials.end());
  }
  out.set_outputs(std::move(outputs));
  return out;
}

Slp gradient(const Slp& slp, std::size_t output_index) {
  const std::size_t idx[1] = {output_index};
  Slp g = jacobian_program(slp, idx);
  std::vector<std::uint32_t> outs(g.outputs().begin() + 1, g.outputs().end());
  g.set_outputs(std::move(outs));
  return g;
}

Slp specialize(const Slp& slp, std::span<const mpz_class> values) {
  const std::size_t k = values.size();
  if (k > slp.n_vars()) throw InvalidArgument("specialize: too many values");
  Slp out(slp.n_vars() - k);
  std::vector<std::uint32_t> map(slp.code().size());
  for (std::size_t i = 0; i < slp.code().size(); ++i) {
    const Instr& in = slp.code()[i];
    switch (in.op) {
      case Op::Input:
        map[i] = in.a < k ? out.param(values[in.a]) : out.input(in.a - k);
        break;
      case Op::Param:
        map[i] = out.param(slp.params()[in.a]);
        break;
      case Op::Add:
        map[i] = out.add(map[in.a], map[in.b]);
        break;
      case Op::Sub:
        map[i] = out.sub(map[in.a], map[in.b]);
        break;
      case Op::Mul:
        map[i] = out.mul(map[in.a], map[in.b]);
        break;
    }
  }
  std::vector<std::uint32_t> outputs;
  for (std::uint32_t o : slp.outputs()) outputs.push_back(map[o]);
  out.set_outputs(std::move(outputs));
  return out;
}

Slp select_outputs(const Slp& slp, std::span<const std::size_t> output_indices) {
  std::vector<std::uint32_t> roots;
  for (std::size_t k : output_indices) {
    if (k >= slp.n_outputs()) throw InvalidArgument("select_outputs: index out of range");
    roots.push_back(slp.outputs()[k]);
  }
  Slp out(slp.n_vars());
  const auto map = copy_forward(slp, slp.reachable(roots), out);
  std::vector<std::uint32_t> outputs;
  for (std::uint32_t r : roots) outputs.push_back(map[r]);
  out.set_outputs(std::move(outputs));
  return out;
}

}  // namespace kron

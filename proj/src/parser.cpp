#include "kron/slp/parser.hpp"

#include <cctype>
#include <string>

#include "kron/errors.hpp"

namespace kron {

namespace {

struct Ast {
  enum class Kind { Num, Var, Add, Sub, Mul, Neg, Pow };
  Kind kind;
  mpq_class value;
  std::size_t var = 0;
  unsigned long exponent = 0;
  int a = -1, b = -1;
  mpz_class denom = 1;  // multiplier that makes the subexpression integral
};

class Parser {
 public:
  Parser(std::string_view text, std::size_t n_vars, int line, int column)
      : s_(text), n_vars_(n_vars), line_(line), col0_(column) {}

  int parse_all() {
    const int root = expr();
    skip_ws();
    if (pos_ < s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return root;
  }

  std::vector<Ast> nodes;
  std::size_t max_var = 0;

 private:
  [[noreturn]] void error(const std::string& msg) const {
    throw SyntaxError(msg, line_, col0_ + static_cast<int>(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int push(Ast a) {
    nodes.push_back(std::move(a));
    return static_cast<int>(nodes.size() - 1);
  }
  int binary(Ast::Kind k, int a, int b) {
    Ast n{k, 0, 0, 0, a, b, 1};
    if (k == Ast::Kind::Mul) {
      n.denom = nodes[a].denom * nodes[b].denom;
    } else {
      mpz_lcm(n.denom.get_mpz_t(), nodes[a].denom.get_mpz_t(), nodes[b].denom.get_mpz_t());
    }
    return push(n);
  }

  int expr() {
    int lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = binary(Ast::Kind::Add, lhs, term());
      else if (accept('-'))
        lhs = binary(Ast::Kind::Sub, lhs, term());
      else
        return lhs;
    }
  }

  int term() {
    int lhs = unary();
    while (accept('*')) lhs = binary(Ast::Kind::Mul, lhs, unary());
    return lhs;
  }

  int unary() {
    if (accept('-')) {
      const int a = unary();
      Ast n{Ast::Kind::Neg, 0, 0, 0, a, -1, nodes[a].denom};
      return push(n);
    }
    return power();
  }

  int power() {
    const int base = atom();
    if (!accept('^')) return base;
    skip_ws();
    const mpz_class k = integer("exponent");
    if (!k.fits_ulong_p()) error("exponent too large");
    Ast n{Ast::Kind::Pow, 0, 0, k.get_ui(), base, -1, 1};
    mpz_pow_ui(n.denom.get_mpz_t(), nodes[base].denom.get_mpz_t(), k.get_ui());
    return push(n);
  }

  mpz_class integer(const char* what) {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error(std::string("expected ") + what);
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  int atom() {
    skip_ws();
    if (pos_ >= s_.size()) error("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = expr();
      if (!accept(')')) error("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class v(integer("number"));
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip_ws();
        const mpz_class den = integer("denominator");
        if (den == 0) error("zero denominator");
        v = mpq_class(v.get_num(), den);
        v.canonicalize();
      }
      return push(Ast{Ast::Kind::Num, v, 0, 0, -1, -1, v.get_den()});
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      std::size_t idx = 0;
      bool ok = name.size() >= 2 && name[0] == 'x' && name[1] != '0';
      for (std::size_t i = 1; ok && i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i])) || i > 9) ok = false;
        else idx = idx * 10 + static_cast<std::size_t>(name[i] - '0');
      }
      if (!ok || (n_vars_ != 0 && idx > n_vars_))
        throw UnknownVariable("line " + std::to_string(line_) + ", column " +
                              std::to_string(col0_ + static_cast<int>(start)) +
                              ": unknown variable '" + name + "'");
      max_var = std::max(max_var, idx);
      return push(Ast{Ast::Kind::Var, 0, idx - 1, 0, -1, -1, 1});
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t n_vars_;
  int line_, col0_;
  std::size_t pos_ = 0;
};

class Emitter {
 public:
  Emitter(const std::vector<Ast>& nodes, Slp& slp, const std::vector<std::uint32_t>& inputs)
      : nodes_(nodes), slp_(slp), inputs_(inputs) {}

  // Node computing scale * (subexpression at i); scale is a multiple of its denom.
  std::uint32_t emit(int i, const mpz_class& scale) {
    const Ast& n = nodes_[i];
    switch (n.kind) {
      case Ast::Kind::Num: {
        const mpq_class v = n.value * scale;
        return slp_.param(v.get_num());
      }
      case Ast::Kind::Var:
        if (scale == 1) return inputs_[n.var];
        return slp_.mul(slp_.param(scale), inputs_[n.var]);
      case Ast::Kind::Add:
        return slp_.add(emit(n.a, scale), emit(n.b, scale));
      case Ast::Kind::Sub:
        return slp_.sub(emit(n.a, scale), emit(n.b, scale));
      case Ast::Kind::Neg:
        return slp_.sub(slp_.param(0), emit(n.a, scale));
      case Ast::Kind::Mul: {
        const mpz_class& db = nodes_[n.b].denom;
        const mpz_class sa = scale / db;
        return slp_.mul(emit(n.a, sa), emit(n.b, db));
      }
      case Ast::Kind::Pow: {
        const mpz_class rest = scale / n.denom;
        if (n.exponent == 0) return slp_.param(rest);
        const std::uint32_t base = emit(n.a, nodes_[n.a].denom);
        std::uint32_t result = 0, sq = base;
        bool have = false;
        for (unsigned long k = n.exponent;;) {
          if (k & 1) {
            result = have ? slp_.mul(result, sq) : sq;
            have = true;
          }
          k >>= 1;
          if (!k) break;
          sq = slp_.mul(sq, sq);
        }
        if (rest != 1) result = slp_.mul(slp_.param(rest), result);
        return result;
      }
    }
    return 0;
  }

 private:
  const std::vector<Ast>& nodes_;
  Slp& slp_;
  const std::vector<std::uint32_t>& inputs_;
};

}  // namespace

CompiledExpr compile_expression(Slp& slp, const std::vector<std::uint32_t>& inputs,
                                std::string_view text, int line, int column) {
  Parser parser(text, inputs.size(), line, column);
  const int root = parser.parse_all();
  if (parser.max_var > inputs.size())
    throw UnknownVariable("variable x" + std::to_string(parser.max_var) + " is not declared");
  const mpz_class scale = parser.nodes[root].denom;
  Emitter emitter(parser.nodes, slp, inputs);
  return {emitter.emit(root, scale), scale};
}

Slp parse(std::string_view text, std::size_t n_vars) {
  if (n_vars == 0) {
    Parser probe(text, 0, 1, 1);
    probe.parse_all();
    n_vars = probe.max_var;
  }
  Slp slp(n_vars);
  std::vector<std::uint32_t> inputs;
  for (std::size_t i = 0; i < n_vars; ++i) inputs.push_back(slp.input(i));
  const CompiledExpr e = compile_expression(slp, inputs, text);
  slp.add_output(e.node);
  return slp;
}

}  // namespace kron

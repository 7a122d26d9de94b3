#include "kron/io/system_file.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "kron/errors.hpp"
#include "kron/slp/parser.hpp"

namespace kron {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_count(std::string_view s, int line, int col) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw SyntaxError("expected a non-negative integer, got '" + std::string(s) + "'", line, col);
  return v;
}

}  // namespace

mpq_class parse_exact(std::string_view text) {
  std::string s(trim(text));
  if (s.empty()) throw InvalidArgument("empty number");
  bool neg = false;
  std::string body = s;
  if (body[0] == '-' || body[0] == '+') {
    neg = body[0] == '-';
    body.erase(0, 1);
  }
  mpq_class out;
  const auto dot = body.find('.');
  const auto slash = body.find('/');
  const auto digits = [](const std::string& d) {
    return !d.empty() && d.find_first_not_of("0123456789") == std::string::npos;
  };
  if (slash != std::string::npos) {
    const std::string a = body.substr(0, slash), b = body.substr(slash + 1);
    if (!digits(a) || !digits(b)) throw InvalidArgument("bad fraction '" + s + "'");
    const mpz_class den(b);
    if (den == 0) throw InvalidArgument("zero denominator in '" + s + "'");
    out = mpq_class(mpz_class(a), den);
  } else if (dot != std::string::npos) {
    const std::string a = body.substr(0, dot), b = body.substr(dot + 1);
    if ((!a.empty() && !digits(a)) || !digits(b)) throw InvalidArgument("bad decimal '" + s + "'");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, b.size());
    out = mpq_class(mpz_class(a.empty() ? "0" : a) * den + mpz_class(b), den);
  } else {
    if (!digits(body)) throw InvalidArgument("bad number '" + s + "'");
    out = mpq_class(mpz_class(body));
  }
  out.canonicalize();
  return neg ? mpq_class(-out) : out;
}

SystemFile parse_system_file(std::string_view text) {
  std::optional<std::size_t> n;
  std::optional<FieldDescriptor> field;
  std::optional<mpq_class> epsilon;
  std::optional<std::uint64_t> delta_bound, degree;
  std::optional<mpz_class> height;
  struct Expr {
    std::string text;
    int line, column;
  };
  std::vector<Expr> fs;
  std::optional<Expr> g;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view l = raw;
    if (const auto h = l.find('#'); h != std::string_view::npos) l = l.substr(0, h);
    if (trim(l).empty()) continue;
    const auto colon = l.find(':');
    if (colon == std::string_view::npos) throw SyntaxError("expected 'key: value'", line, 1);
    const std::string key(trim(l.substr(0, colon)));
    const std::string_view value_raw = l.substr(colon + 1);
    const std::string_view value = trim(value_raw);
    const auto lead = value_raw.find_first_not_of(" \t");
    const int vcol = static_cast<int>(colon + 2 + (lead == std::string_view::npos ? 0 : lead));
    const auto once = [&](bool seen) {
      if (seen) throw SyntaxError("duplicate header '" + key + "'", line, 1);
    };
    try {
      if (key == "vars") {
        once(n.has_value());
        n = parse_count(value, line, vcol);
      } else if (key == "field") {
        once(field.has_value());
        field = FieldDescriptor::parse(value);
      } else if (key == "epsilon") {
        once(epsilon.has_value());
        epsilon = parse_exact(value);
      } else if (key == "delta_bound") {
        once(delta_bound.has_value());
        delta_bound = parse_count(value, line, vcol);
      } else if (key == "degree") {
        once(degree.has_value());
        degree = parse_count(value, line, vcol);
      } else if (key == "height") {
        once(height.has_value());
        height = mpz_class(static_cast<unsigned long>(parse_count(value, line, vcol)));
      } else if (key == "F") {
        fs.push_back({std::string(value), line, vcol});
      } else if (key == "G") {
        once(g.has_value());
        g = Expr{std::string(value), line, vcol};
      } else {
        throw SyntaxError("unknown key '" + key + "'", line, 1);
      }
    } catch (const InvalidArgument& e) {
      throw SyntaxError(e.what(), line, vcol);
    }
  }
  if (!n || *n == 0) throw SyntaxError("missing 'vars' header", line, 1);
  if (!field) throw SyntaxError("missing 'field' header", line, 1);
  if (fs.empty()) throw SyntaxError("no F lines", line, 1);
  if (fs.size() > *n) throw SyntaxError("more equations than variables", fs[*n].line, 1);
  if (epsilon && (*epsilon <= 0 || *epsilon >= 1)) throw SyntaxError("epsilon must lie in (0, 1)", line, 1);

  auto slp = std::make_shared<Slp>(*n);
  std::vector<std::uint32_t> inputs;
  for (std::size_t i = 0; i < *n; ++i) inputs.push_back(slp->input(i));
  SystemFile out;
  std::vector<std::uint32_t> outputs;
  const auto compile = [&](const Expr& e) {
    const CompiledExpr c = compile_expression(*slp, inputs, e.text, e.line, e.column);
    if (field->kind != FieldDescriptor::Kind::Rational &&
        mpz_divisible_ui_p(c.scale.get_mpz_t(), static_cast<unsigned long>(field->p)))
      throw SyntaxError("a denominator is divisible by the characteristic", e.line, e.column);
    outputs.push_back(c.node);
    out.scales.push_back(c.scale);
    out.sources.push_back(e.text);
  };
  for (const auto& e : fs) compile(e);
  if (g)
    compile(*g);
  else {
    outputs.push_back(slp->param(1));
    out.scales.push_back(1);
    out.sources.push_back("1");
  }
  slp->set_outputs(std::move(outputs));

  out.spec = make_system(std::move(slp), fs.size(), *field);
  if (epsilon) out.spec.epsilon = *epsilon;
  out.spec.delta_bound = delta_bound;
  if (degree) out.spec.degree_override = static_cast<std::size_t>(*degree);
  out.spec.height = height;
  return out;
}

SystemFile read_system_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open system file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_system_file(ss.str());
}

}  // namespace kron

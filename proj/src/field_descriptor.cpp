#include "kron/ring/field_descriptor.hpp"

#include <charconv>

#include "kron/ring/primes.hpp"

namespace kron {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("field descriptor: bad " + std::string(what) + " '" +
                          std::string(s) + "'");
  return v;
}

void check_prime(std::uint64_t p) {
  if (p >= (std::uint64_t(1) << 62))
    throw InvalidArgument("field descriptor: prime must be below 2^62");
  if (!is_probable_prime(p))
    throw InvalidArgument("field descriptor: " + std::to_string(p) + " is not prime");
}

}  // namespace

FieldDescriptor FieldDescriptor::parse(std::string_view text) {
  text = trim(text);
  FieldDescriptor d;
  if (text == "Q") return d;
  if (text.starts_with("Fp:")) {
    d.kind = Kind::Prime;
    d.p = parse_uint(trim(text.substr(3)), "prime");
    check_prime(d.p);
    return d;
  }
  if (text.starts_with("Fq:")) {
    const std::string_view body = trim(text.substr(3));
    const auto caret = body.find('^');
    if (caret == std::string_view::npos)
      throw InvalidArgument("field descriptor: expected Fq:<p>^<e>");
    d.kind = Kind::Extension;
    d.p = parse_uint(trim(body.substr(0, caret)), "prime");
    const std::uint64_t e = parse_uint(trim(body.substr(caret + 1)), "degree");
    if (e == 0 || e > 64) throw InvalidArgument("field descriptor: degree must be in 1..64");
    d.e = static_cast<unsigned>(e);
    check_prime(d.p);
    return d;
  }
  throw InvalidArgument("field descriptor: unknown field '" + std::string(text) + "'");
}

std::string FieldDescriptor::to_string() const {
  switch (kind) {
    case Kind::Prime:
      return "Fp:" + std::to_string(p);
    case Kind::Extension:
      return "Fq:" + std::to_string(p) + "^" + std::to_string(e);
    case Kind::Rational:
      break;
  }
  return "Q";
}

}  // namespace kron

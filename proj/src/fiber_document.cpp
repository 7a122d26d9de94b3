#include "kron/io/fiber_document.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

#include "kron/errors.hpp"
#include "kron/ring/matrix.hpp"

namespace kron {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFormat = "kron-fiber/1";

// Element codecs per field.
struct FpCodec {
  PrimeField k;
  json put(std::uint64_t a) const { return std::to_string(a); }
  std::uint64_t get(const json& j) const {
    const mpz_class v = parse_integer(j);
    if (v < 0 || v >= mpz_class(static_cast<unsigned long>(k.characteristic())))
      throw DocumentError("residue out of range: " + v.get_str());
    return v.get_ui();
  }
  static mpz_class parse_integer(const json& j) {
    if (!j.is_string()) throw DocumentError("expected a decimal string");
    mpz_class v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw DocumentError("bad integer: " + j.get<std::string>());
    return v;
  }
};

struct FqCodec {
  ExtField k;
  json put(const ExtField::Elem& a) const {
    json out = json::array();
    for (std::uint64_t c : a) out.push_back(std::to_string(c));
    return out;
  }
  ExtField::Elem get(const json& j) const {
    if (!j.is_array() || j.size() > k.degree()) throw DocumentError("expected at most e coefficients");
    const FpCodec fp{k.prime_field()};
    std::vector<std::uint64_t> c;
    for (const auto& x : j) c.push_back(fp.get(x));
    return k.from_coeffs(c);
  }
};

struct QCodec {
  Rationals k;
  json put(const mpq_class& a) const { return a.get_str(); }
  mpq_class get(const json& j) const {
    if (!j.is_string()) throw DocumentError("expected a rational string");
    const std::string s = j.get<std::string>();
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw DocumentError("bad rational: " + s);
    q.canonicalize();
    return q;
  }
};

template <class Codec, class E>
json put_vec(const Codec& c, const std::vector<E>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(c.put(x));
  return out;
}

template <class Codec>
auto get_vec(const Codec& c, const json& j) {
  if (!j.is_array()) throw DocumentError("expected an array");
  std::vector<decltype(c.get(j))> out;
  for (const auto& x : j) out.push_back(c.get(x));
  return out;
}

template <class Codec>
auto get_poly(const Codec& c, const json& j) {
  auto f = get_vec(c, j);
  PolyRing<decltype(c.k)>(c.k).normalize(f);
  return f;
}

template <class Codec, class K>
void put_fiber(const Codec& c, const Fiber<K>& fib, json& out) {
  out["level"] = fib.level;
  json lam = json::array();
  for (const auto& row : fib.lambda) lam.push_back(put_vec(c, row));
  out["lambda"] = std::move(lam);
  out["point"] = put_vec(c, fib.point);
  out["m"] = put_vec(c, fib.m);
  json v = json::array(), w = json::array();
  for (const auto& f : fib.v) v.push_back(put_vec(c, f));
  for (const auto& f : fib.w) w.push_back(put_vec(c, f));
  out["v"] = std::move(v);
  out["w"] = std::move(w);
}

template <class Codec>
auto get_fiber(const Codec& c, const json& j, std::size_t n) {
  using K = std::remove_cvref_t<decltype(c.k)>;
  Fiber<K> fib;
  fib.level = j.at("level").get<std::size_t>();
  for (const auto& row : j.at("lambda")) {
    fib.lambda.push_back(get_vec(c, row));
    if (fib.lambda.back().size() != n) throw DocumentError("lambda row has the wrong length");
  }
  if (fib.lambda.size() != n) throw DocumentError("lambda has the wrong number of rows");
  try {
    fib.lambda_inverse = mat_inverse(c.k, fib.lambda);
  } catch (const SingularMatrix&) {
    throw DocumentError("lambda is singular");
  }
  fib.point = get_vec(c, j.at("point"));
  fib.m = get_poly(c, j.at("m"));
  for (const auto& f : j.at("v")) fib.v.push_back(get_poly(c, f));
  for (const auto& f : j.at("w")) fib.w.push_back(get_poly(c, f));
  return fib;
}

json put_meta(const FiberDocument& doc) {
  const SolveStats& s = doc.stats;
  json meta;
  meta["seed"] = doc.seed;
  meta["retries"] = s.retries;
  meta["delta_doublings"] = s.delta_doublings;
  meta["sample_set_capped"] = s.sample_set_capped;
  meta["extension_degree"] = s.extension_degree;
  meta["prime"] = s.prime;
  meta["padic_order"] = s.padic_order;
  meta["last_failure"] = s.last_failure;
  meta["timings_us"] = {{"lift", s.lift_us},       {"project", s.project_us}, {"shape", s.shape_us},
                        {"conclude", s.conclude_us}, {"total", s.total_us}};
  return meta;
}

void get_meta(const json& meta, FiberDocument& doc) {
  SolveStats& s = doc.stats;
  doc.seed = meta.at("seed").get<std::uint64_t>();
  s.retries = meta.at("retries").get<std::uint64_t>();
  s.delta_doublings = meta.at("delta_doublings").get<std::uint64_t>();
  s.sample_set_capped = meta.at("sample_set_capped").get<bool>();
  s.extension_degree = meta.at("extension_degree").get<std::uint64_t>();
  s.prime = meta.at("prime").get<std::uint64_t>();
  s.padic_order = meta.at("padic_order").get<std::uint64_t>();
  s.last_failure = meta.at("last_failure").get<std::string>();
  const auto& t = meta.at("timings_us");
  s.lift_us = t.at("lift").get<std::uint64_t>();
  s.project_us = t.at("project").get<std::uint64_t>();
  s.shape_us = t.at("shape").get<std::uint64_t>();
  s.conclude_us = t.at("conclude").get<std::uint64_t>();
  s.total_us = t.at("total").get<std::uint64_t>();
}

}  // namespace

std::string to_json_line(const FiberDocument& doc) {
  json out;
  out["format"] = kFormat;
  out["field"] = doc.field.to_string();
  if (doc.field.kind == FieldDescriptor::Kind::Extension)
    out["modulus"] = put_vec(FpCodec{PrimeField(doc.field.p)}, doc.modulus);
  out["vars"] = doc.n;
  out["equations"] = doc.r;
  std::visit(
      [&](const auto& fib) {
        using F = std::remove_cvref_t<decltype(fib)>;
        if constexpr (std::is_same_v<F, Fiber<PrimeField>>)
          put_fiber(FpCodec{PrimeField(doc.field.p)}, fib, out);
        else if constexpr (std::is_same_v<F, Fiber<ExtField>>)
          put_fiber(FqCodec{doc.ext_field()}, fib, out);
        else
          put_fiber(QCodec{}, fib, out);
      },
      doc.fiber);
  out["meta"] = put_meta(doc);
  return out.dump();
}

FiberDocument parse_fiber_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DocumentError(std::string("not JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("format", "") != kFormat) throw DocumentError("unknown document format");
    FiberDocument doc;
    try {
      doc.field = FieldDescriptor::parse(j.at("field").get<std::string>());
    } catch (const InvalidArgument& e) {
      throw DocumentError(std::string("bad field: ") + e.what());
    }
    doc.n = j.at("vars").get<std::size_t>();
    doc.r = j.at("equations").get<std::size_t>();
    if (doc.n == 0) throw DocumentError("vars must be positive");
    switch (doc.field.kind) {
      case FieldDescriptor::Kind::Prime:
        doc.fiber = get_fiber(FpCodec{PrimeField(doc.field.p)}, j, doc.n);
        break;
      case FieldDescriptor::Kind::Extension: {
        doc.modulus = get_vec(FpCodec{PrimeField(doc.field.p)}, j.at("modulus"));
        if (doc.modulus.size() != doc.field.e + 1) throw DocumentError("modulus has the wrong degree");
        std::optional<ExtField> ext;
        try {
          ext.emplace(doc.ext_field());
        } catch (const InvalidArgument& e) {
          throw DocumentError(std::string("bad modulus: ") + e.what());
        }
        doc.fiber = get_fiber(FqCodec{*ext}, j, doc.n);
        break;
      }
      case FieldDescriptor::Kind::Rational:
        doc.fiber = get_fiber(QCodec{}, j, doc.n);
        break;
    }
    get_meta(j.at("meta"), doc);
    return doc;
  } catch (const json::exception& e) {
    throw DocumentError(std::string("malformed document: ") + e.what());
  }
}

}  // namespace kron

#include "kron/io/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "kron/errors.hpp"
#include "kron/io/driver.hpp"
#include "kron/io/system_file.hpp"
#include "kron/ring/rng.hpp"

namespace kron {

namespace {

std::uint64_t parse_number(std::string_view s, int col) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw SyntaxError("sweep: expected a non-negative integer, got '" + std::string(s) + "'", 1, col);
  return v;
}

void exponents(std::size_t n, std::uint64_t left, std::vector<std::uint64_t>& cur,
               std::vector<std::vector<std::uint64_t>>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  for (std::uint64_t e = 0; e <= left; ++e) {
    cur.push_back(e);
    exponents(n, left - e, cur, out);
    cur.pop_back();
  }
}

std::string dense_poly(std::size_t n, std::uint64_t deg, SessionRng& rng) {
  std::vector<std::vector<std::uint64_t>> mons;
  std::vector<std::uint64_t> cur;
  exponents(n, deg, cur, mons);
  std::ostringstream os;
  bool first = true;
  for (const auto& m : mons) {
    os << (first ? "" : " + ") << 1 + rng.below(1u << 20);
    first = false;
    for (std::size_t i = 0; i < n; ++i)
      if (m[i]) os << "*x" << i + 1 << (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
  }
  return os.str();
}

}  // namespace

SweepSpec parse_sweep(std::string_view text) {
  struct Item {
    std::string_view key, val;
    int col;
  };
  std::vector<Item> items;
  for (std::size_t pos = 0; pos <= text.size();) {
    const std::size_t end = std::min(text.find(';', pos), text.size());
    const std::string_view item = text.substr(pos, end - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw SyntaxError("sweep: expected key=value", 1, static_cast<int>(pos) + 1);
    items.push_back({item.substr(0, eq), item.substr(eq + 1), static_cast<int>(pos + eq) + 2});
    pos = end + 1;
  }
  // The ladder is the first d or n carrying a list, else the first d or n.
  const Item* ladder = nullptr;
  for (const auto& it : items)
    if ((it.key == "d" || it.key == "n") && it.val.find(',') != std::string_view::npos) {
      ladder = &it;
      break;
    }
  for (const auto& it : items)
    if (!ladder && (it.key == "d" || it.key == "n")) ladder = &it;
  if (!ladder) throw SyntaxError("sweep: missing d=... or n=... ladder", 1, 1);

  SweepSpec sw;
  sw.key = ladder->key[0];
  for (std::size_t q = 0; q < ladder->val.size();) {
    const std::size_t c = std::min(ladder->val.find(',', q), ladder->val.size());
    const std::uint64_t v = parse_number(ladder->val.substr(q, c - q), ladder->col + static_cast<int>(q));
    if (v == 0) throw SyntaxError("sweep: ladder values must be positive", 1, ladder->col + static_cast<int>(q));
    sw.values.push_back(v);
    q = c + 1;
  }
  for (const auto& it : items) {
    if (&it == ladder) continue;
    const std::uint64_t v = parse_number(it.val, it.col);
    if (it.key == "n")
      sw.n = v;
    else if (it.key == "d")
      sw.d = v;
    else if (it.key == "p")
      sw.p = v;
    else if (it.key == "seed")
      sw.seed = v;
    else if (it.key == "reps")
      sw.reps = static_cast<unsigned>(std::max<std::uint64_t>(1, v));
    else
      throw SyntaxError("sweep: unknown key '" + std::string(it.key) + "'", 1, it.col);
  }
  if (sw.n == 0 || sw.d == 0) throw SyntaxError("sweep: n and d must be positive", 1, 1);
  return sw;
}

SystemSpec ladder_system(std::size_t n, std::uint64_t d, std::uint64_t p, std::uint64_t seed) {
  SessionRng rng(seed ^ (d << 32) ^ n);
  std::ostringstream os;
  os << "vars: " << n << "\nfield: Fp:" << p << "\n";
  // F_1 adds pure powers x_i^d to a dense quadric, so the program length
  // grows like log d while the Bezout number grows like d.
  os << "F: " << dense_poly(n, std::min<std::uint64_t>(d, 2), rng);
  if (d > 2)
    for (std::size_t i = 0; i < n; ++i) os << " + " << 1 + rng.below(1u << 20) << "*x" << i + 1 << "^" << d;
  os << "\n";
  for (std::size_t i = 1; i < n; ++i) os << "F: " << dense_poly(n, 2, rng) << "\n";
  return parse_system_file(os.str()).spec;
}

std::vector<BenchRow> run_sweep(const SweepSpec& sw, bool parallel) {
  std::vector<BenchRow> rows;
  for (std::uint64_t value : sw.values) {
    BenchRow row;
    row.value = value;
    row.n = sw.key == 'n' ? static_cast<std::size_t>(value) : sw.n;
    row.d = sw.key == 'd' ? value : sw.d;
    const SystemSpec spec = ladder_system(row.n, row.d, sw.p, sw.seed);
    row.bezout = spec.bezout();
    SolveConfig cfg;
    cfg.seed = sw.seed;
    cfg.parallel = parallel;
    bool have = false;
    for (unsigned rep = 0; rep < sw.reps; ++rep) {
      try {
        const auto doc = solve_document(spec, cfg);
        const auto& fib = std::get<Fiber<PrimeField>>(doc.fiber);
        row.degree = fib.delta();
        row.status = "ok";
        if (!have || doc.stats.total_us < row.stats.total_us) row.stats = doc.stats;
      } catch (const Error& e) {
        row.status = e.kind();
        row.degree = 0;
      }
      have = true;
    }
    if (!rows.empty() && rows.back().stats.total_us > 0)
      row.ratio = static_cast<double>(row.stats.total_us) / static_cast<double>(rows.back().stats.total_us);
    rows.push_back(row);
  }
  return rows;
}

std::string bench_csv(const SweepSpec& sw, const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "key,value,n,r,d,bezout,deg_m,seed,status,retries,lift_us,project_us,shape_us,conclude_us,total_us,"
        "ratio\n";
  for (const auto& r : rows) {
    char ratio[32] = "";
    if (r.ratio > 0) std::snprintf(ratio, sizeof ratio, "%.3f", r.ratio);
    os << sw.key << ',' << r.value << ',' << r.n << ',' << r.n << ',' << r.d << ',' << r.bezout << ','
       << r.degree << ',' << sw.seed << ',' << r.status << ',' << r.stats.retries << ',' << r.stats.lift_us
       << ',' << r.stats.project_us << ',' << r.stats.shape_us << ',' << r.stats.conclude_us << ','
       << r.stats.total_us << ',' << ratio << '\n';
  }
  return os.str();
}

}  // namespace kron

// Serial against OpenMP for the two parallel kernels: the per-node loop of
// the projection step (timed inside full solves) and the oracle sweep.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <variant>

#include "kron/io/bench.hpp"
#include "kron/io/driver.hpp"
#include "kron/io/system_file.hpp"
#include "kron/oracle/oracle.hpp"

using namespace kron;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  std::printf("threads: %d\n\n", omp_get_max_threads());
  std::printf("%-28s %12s %12s %9s %s\n", "kernel", "serial_ms", "parallel_ms", "speedup", "same");

  bool all_same = true;
  for (std::uint64_t d : {8, 16, 32}) {
    const SystemSpec spec = ladder_system(2, d, (std::uint64_t(1) << 61) - 1, 1);
    SolveConfig cfg;
    cfg.seed = 1;
    cfg.parallel = false;
    const auto serial = solve_document(spec, cfg);
    cfg.parallel = true;
    const auto parallel = solve_document(spec, cfg);
    const bool same = serial.fiber == parallel.fiber;
    all_same &= same;
    char name[64];
    std::snprintf(name, sizeof name, "projection d=%llu", static_cast<unsigned long long>(d));
    const double s = serial.stats.project_us / 1000.0, p = parallel.stats.project_us / 1000.0;
    std::printf("%-28s %12.2f %12.2f %9.2f %s\n", name, s, p, p > 0 ? s / p : 0.0, same ? "yes" : "NO");
  }

  for (std::uint64_t p : {1009, 2003}) {
    const SystemSpec spec = parse_system_file(
                                "vars: 2\nfield: Fp:" + std::to_string(p) +
                                "\nF: x1^3 + 2*x2^2 - 5*x1 + 1\nF: x1*x2 - 3*x2 + 7\n")
                                .spec;
    auto t0 = std::chrono::steady_clock::now();
    const auto serial = brute_zeros(spec, p, false);
    const double s = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    const auto parallel = brute_zeros(spec, p, true);
    const double q = ms_since(t0);
    const bool same = serial == parallel;
    all_same &= same;
    char name[64];
    std::snprintf(name, sizeof name, "brute_zeros p=%llu", static_cast<unsigned long long>(p));
    std::printf("%-28s %12.2f %12.2f %9.2f %s\n", name, s, q, q > 0 ? s / q : 0.0, same ? "yes" : "NO");
  }
  return all_same ? 0 : 1;
}

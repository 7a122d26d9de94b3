#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "kron/io/bench.hpp"
#include "kron/io/driver.hpp"
#include "kron/io/fiber_document.hpp"
#include "kron/io/system_file.hpp"

using namespace kron;
using json = nlohmann::ordered_json;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Structured error on stderr; the exit code follows the error kind.
int report_error(const Error& e) {
  json err;
  err["error"] = e.kind();
  err["cause"] = e.what();
  std::cerr << err.dump() << "\n";
  return exit_code_for(e);
}

struct SolveFlags {
  std::string file;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> epsilon;
  std::optional<std::uint64_t> delta_bound;
  std::optional<unsigned> retries;
  bool serial = false;
  bool strict = false;
};

SolveConfig make_config(const SolveFlags& f, const SystemSpec& spec) {
  SolveConfig cfg;
  cfg.epsilon = spec.epsilon;
  if (f.seed) cfg.seed = *f.seed;
  if (f.epsilon) {
    cfg.epsilon = parse_exact(*f.epsilon);
    if (cfg.epsilon <= 0 || cfg.epsilon >= 1) throw InvalidArgument("epsilon must lie in (0, 1)");
  }
  cfg.delta_bound = f.delta_bound;
  if (f.retries) cfg.max_retries = *f.retries;
  cfg.parallel = !f.serial;
  cfg.strict_sampling = f.strict;
  return cfg;
}

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("-f,--file", f.file, "system file ('-' for stdin)")->required();
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--epsilon", f.epsilon, "failure parameter, decimal or fraction");
  cmd->add_option("--delta-bound", f.delta_bound, "initial degree bound");
  cmd->add_option("--retries", f.retries, "resampling budget");
  cmd->add_flag("--serial", f.serial, "disable the OpenMP kernels");
  cmd->add_flag("--strict", f.strict, "fail instead of capping sample sets at the field size");
}

int cmd_solve(const SolveFlags& f) {
  const auto sys = parse_system_file(read_input(f.file));
  const auto doc = solve_document(sys.spec, make_config(f, sys.spec));
  std::cout << to_json_line(doc) << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& doc_path, const std::string& sys_path) {
  const auto sys = parse_system_file(read_input(sys_path));
  const std::string text = read_input(doc_path);
  const auto line_end = text.find('\n');
  const auto doc = parse_fiber_document(std::string_view(text).substr(0, line_end));
  const VerifyReport rep = verify_document(doc, sys.spec);
  json out;
  out["structure"] = rep.structure;
  out["a_square_free"] = rep.square_free;
  out["b_equations"] = rep.equations;
  out["c_g_nonvanishing"] = rep.g_nonvanishing;
  out["d_numerators"] = rep.numerators;
  out["ok"] = rep.ok();
  out["diagnostics"] = rep.diagnostics;
  std::cout << out.dump() << "\n";
  return rep.ok() ? kExitOk : kExitCheckFailed;
}

int cmd_oracle_check(const SolveFlags& f) {
  const auto sys = parse_system_file(read_input(f.file));
  const OracleReport rep = oracle_check(sys.spec, make_config(f, sys.spec));
  json out;
  out["result"] = to_string(rep.outcome);
  if (rep.outcome == OracleReport::Outcome::SolverFailure) {
    out["cause"] = rep.failure;
  } else {
    out["deg_m"] = rep.degree;
    out["rational_degree"] = rep.rational_degree;
    out["oracle_points"] = rep.oracle_points;
  }
  std::cout << out.dump() << "\n";
  switch (rep.outcome) {
    case OracleReport::Outcome::Match:
      return kExitOk;
    case OracleReport::Outcome::Mismatch:
      return kExitCheckFailed;
    case OracleReport::Outcome::SolverFailure:
      return rep.solver_exit;
  }
  return kExitInternal;
}

int cmd_bench(const std::string& sweep_text, bool serial) {
  const SweepSpec sw = parse_sweep(sweep_text);
  std::cout << bench_csv(sw, run_sweep(sw, !serial));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kronecker solver for polynomial systems over F_p, F_q and Q"};
  app.require_subcommand(1);

  SolveFlags solve_flags, oracle_flags;
  auto* solve = app.add_subcommand("solve", "print a FiberDocument for a system file");
  add_solve_flags(solve, solve_flags);

  std::string doc_path, sys_path;
  auto* verify = app.add_subcommand("verify", "check a FiberDocument against a system file");
  verify->add_option("-f,--file", doc_path, "FiberDocument ('-' for stdin)")->required();
  verify->add_option("-s,--system", sys_path, "system file")->required();

  auto* oracle = app.add_subcommand("oracle-check", "compare a solve with exhaustive enumeration");
  add_solve_flags(oracle, oracle_flags);

  std::string sweep;
  bool bench_serial = false;
  auto* bench = app.add_subcommand("bench", "timing sweep as CSV");
  bench->add_option("--sweep", sweep, "ladder, e.g. d=4,8,16;n=2;seed=1")->required();
  bench->add_flag("--serial", bench_serial, "disable the OpenMP kernels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*solve) return cmd_solve(solve_flags);
    if (*verify) return cmd_verify(doc_path, sys_path);
    if (*oracle) return cmd_oracle_check(oracle_flags);
    if (*bench) return cmd_bench(sweep, bench_serial);
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "InternalError"}, {"cause", e.what()}}.dump() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

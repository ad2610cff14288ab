#include "arcipm/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "arcipm/ipm_driver.hpp"
#include "arcipm/mps_io.hpp"
#include "arcipm/verification.hpp"

namespace arcipm::cli {

namespace {

/// Input problems that should surface as exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(fmt::format("cannot write '{}'", path));
  out << text;
}

LogFormat parse_log_format(const std::string& name) {
  if (name == "csv") return LogFormat::kCsv;
  if (name == "json") return LogFormat::kJson;
  throw InputError(fmt::format("unknown log format '{}' (expected csv or json)", name));
}

std::optional<Real> parse_init_scale(const std::string& text) {
  if (text == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return Real{v};
  } catch (const std::exception&) {
  }
  throw InputError(fmt::format("--init-scale expects a positive number or 'auto', got '{}'", text));
}

std::vector<std::pair<Index, Index>> parse_sizes(const std::string& text) {
  std::vector<std::pair<Index, Index>> sizes;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    const auto x = item.find('x');
    try {
      if (x == std::string::npos) throw std::invalid_argument(item);
      std::size_t used_m = 0;
      std::size_t used_n = 0;
      const std::string ms = item.substr(0, x);
      const std::string ns = item.substr(x + 1);
      const long m = std::stol(ms, &used_m);
      const long n = std::stol(ns, &used_n);
      if (used_m != ms.size() || used_n != ns.size() || m < 1 || n <= m) {
        throw std::invalid_argument(item);
      }
      sizes.emplace_back(m, n);
    } catch (const std::exception&) {
      throw InputError(fmt::format("--sizes entry '{}' is not MxN with 1 <= M < N", item));
    }
  }
  if (sizes.empty()) throw InputError("--sizes is empty");
  return sizes;
}

struct SolveArgs {
  std::string input;
  std::optional<double> theta;  // default kMaxTheta, kept in full precision
  double epsilon = 1e-8;
  int max_iters = 500;
  std::string init_scale = "auto";
  std::string log_path;
  std::string log_format = "csv";
  bool maximize = false;
  bool relative = false;
  bool verbose = false;
};

int run_solve(const SolveArgs& a, std::ostream& out) {
  GeneralLP lp;
  try {
    lp = parse_mps(read_file(a.input));
  } catch (const MpsParseError& e) {
    throw InputError(fmt::format("{}: {}", a.input, e.what()));
  }
  if (a.maximize) lp.sense = ObjectiveSense::kMaximize;
  const StandardFormResult std_form = to_standard_form(lp);

  SolverOptions opts;
  if (a.theta) opts.theta = *a.theta;
  opts.epsilon = a.epsilon;
  opts.max_iterations = a.max_iters;
  opts.init_scale = parse_init_scale(a.init_scale);
  opts.relative_tolerance = a.relative;
  opts.log_level = a.verbose ? LogLevel::kIterations : LogLevel::kSilent;
  opts.validate();
  const LogFormat log_format = parse_log_format(a.log_format);

  const SolveResult res = solve(std_form.problem, opts);
  const double objective =
      std_form.mapping.recover_objective(static_cast<double>(res.objective));
  out << "status: " << to_string(res.status) << '\n';
  out << "objective: " << format_real(objective) << '\n';
  out << "iterations: " << res.iterations() << '\n';
  out << "mu: " << format_real(static_cast<double>(res.iterate.mu())) << '\n';
  out << "norm_rb: " << format_real(static_cast<double>(res.iterate.rb().norm())) << '\n';
  out << "norm_rc: " << format_real(static_cast<double>(res.iterate.rc().norm())) << '\n';
  if (!res.note.empty()) out << "note: " << res.note << '\n';
  if (!a.log_path.empty()) write_file(a.log_path, write_iteration_log(res.records, log_format));
  return res.status == SolveStatus::kOptimal ? kExitOk : kExitNotOptimal;
}

struct GenerateArgs {
  long rows = 5;
  long cols = 10;
  std::uint64_t seed = 1;
  std::string output;
};

int run_generate(const GenerateArgs& a, std::ostream& out) {
  if (a.rows < 1 || a.cols <= a.rows) {
    throw InputError(fmt::format("generate needs 1 <= rows < cols, got {} and {}", a.rows, a.cols));
  }
  const GeneratedInstance inst = generate_random_lp(a.rows, a.cols, a.seed);
  const double optimum = static_cast<double>(inst.problem.c().dot(inst.x_star));
  const std::string text =
      write_mps(inst.problem, fmt::format("RAND_{}x{}_{}", a.rows, a.cols, a.seed),
                {fmt::format("random LP with planted optimum: m={} n={} seed={}", a.rows, a.cols,
                             a.seed),
                 fmt::format("optimal objective {}", format_real(optimum))});
  if (a.output.empty()) {
    out << text;
  } else {
    write_file(a.output, text);
  }
  return kExitOk;
}

struct BenchArgs {
  std::string sizes = "5x10,10x20,20x40";
  int seeds_per_size = 3;
  std::uint64_t seed = 1;
  double epsilon = 1e-8;
  std::string format = "csv";
  std::string output;
};

int run_bench(const BenchArgs& a, std::ostream& out) {
  ScalingOptions opts;
  opts.sizes = parse_sizes(a.sizes);
  if (a.seeds_per_size < 1) throw InputError("--seeds-per-size must be at least 1");
  if (!(a.epsilon > 0)) throw InputError("--epsilon must be positive");
  opts.seeds_per_size = a.seeds_per_size;
  opts.base_seed = a.seed;
  opts.epsilon = a.epsilon;
  const ScalingReport report = scaling_experiment(opts);
  std::string text;
  if (a.format == "csv") {
    text = report.to_csv();
  } else if (a.format == "table") {
    text = report.to_table();
  } else {
    throw InputError(fmt::format("unknown report format '{}' (expected csv or table)", a.format));
  }
  if (a.output.empty()) {
    out << text;
  } else {
    write_file(a.output, text);
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string input;
  std::string log_format;
  double theta = static_cast<double>(kMaxTheta);
};

int run_verify(const VerifyArgs& a, std::ostream& out) {
  std::string format = a.log_format;
  if (format.empty()) {
    format = a.input.size() >= 5 && a.input.substr(a.input.size() - 5) == ".json" ? "json" : "csv";
  }
  std::vector<IterationRecord> records;
  try {
    records = read_iteration_log(read_file(a.input), parse_log_format(format));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  const CheckReport rates = check_rate_identities(records);
  const CheckReport neigh = check_logged_neighborhood(records, a.theta);
  auto line = [&](const char* name, const CheckReport& r) {
    out << fmt::format("{} {}: {} checks, worst {:.3e}\n", r.pass ? "PASS" : "FAIL", name,
                       r.checked, r.worst);
    for (const auto& f : r.failures) out << "  " << f << '\n';
  };
  out << "records: " << records.size() << '\n';
  line("rate identities", rates);
  line("neighborhood", neigh);
  return rates.pass && neigh.pass ? kExitOk : kExitNotOptimal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arc-search infeasible interior-point LP solver", "arcipm"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an LP given as an MPS file");
  solve_cmd->add_option("input", solve_args.input, "MPS file")->required();
  solve_cmd->add_option("--theta", solve_args.theta, "Neighborhood radius in (0, 1/(2+sqrt 2)]");
  solve_cmd->add_option("--epsilon", solve_args.epsilon, "Stopping tolerance");
  solve_cmd->add_option("--max-iters", solve_args.max_iters, "Iteration limit");
  solve_cmd->add_option("--init-scale", solve_args.init_scale, "Starting scale or 'auto'");
  solve_cmd->add_option("--log", solve_args.log_path, "Write the iteration log here");
  solve_cmd->add_option("--log-format", solve_args.log_format, "csv or json");
  solve_cmd->add_flag("--maximize", solve_args.maximize, "Maximize the objective");
  solve_cmd->add_flag("--relative", solve_args.relative, "Scale tolerances by data norms");
  solve_cmd->add_flag("-v,--verbose", solve_args.verbose, "Print one line per iteration");

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "Write a random LP with a known optimum as MPS");
  gen_cmd->add_option("--rows", gen_args.rows, "Number of equality rows m");
  gen_cmd->add_option("--cols", gen_args.cols, "Number of columns n > m");
  gen_cmd->add_option("--seed", gen_args.seed, "Random seed");
  gen_cmd->add_option("-o,--output", gen_args.output, "Output path (default stdout)");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Iteration-growth experiment on random LPs");
  bench_cmd->add_option("--sizes", bench_args.sizes, "Comma-separated MxN list");
  bench_cmd->add_option("--seeds-per-size", bench_args.seeds_per_size, "Instances per size");
  bench_cmd->add_option("--seed", bench_args.seed, "Base seed");
  bench_cmd->add_option("--epsilon", bench_args.epsilon, "Stopping tolerance");
  bench_cmd->add_option("--format", bench_args.format, "csv or table");
  bench_cmd->add_option("-o,--output", bench_args.output, "Output path (default stdout)");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check the rate identities of an iteration log");
  verify_cmd->add_option("input", verify_args.input, "Log written by solve --log")->required();
  verify_cmd->add_option("--log-format", verify_args.log_format,
                         "csv or json (default from extension)");
  verify_cmd->add_option("--theta", verify_args.theta, "Neighborhood radius");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*solve_cmd) return run_solve(solve_args, out);
    if (*gen_cmd) return run_generate(gen_args, out);
    if (*bench_cmd) return run_bench(bench_args, out);
    if (*verify_cmd) return run_verify(verify_args, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const MpsParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotOptimal;
  }
  return kExitInputError;
}

}  // namespace arcipm::cli

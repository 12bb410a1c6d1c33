// meh-solve: command line front end.
//
// Exit codes: 0 sat (or success for non-solving commands), 1 unsat, 2 budget
// exhausted, 3 usage, parse or input errors.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "meh/analysis.hpp"
#include "meh/bench.hpp"
#include "meh/generators.hpp"
#include "meh/mehnf.hpp"
#include "meh/mixed_solver.hpp"
#include "meh/normal_form.hpp"
#include "meh/smtlib.hpp"

namespace {

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitBudget = 2;
constexpr int kExitError = 3;

double default_timeout() {
  if (const char* env = std::getenv("MEH_SOLVE_TIMEOUT")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring MEH_SOLVE_TIMEOUT=" << env << "\n";
    }
  }
  return 60.0;
}

std::chrono::milliseconds to_ms(double seconds) {
  return std::chrono::milliseconds(static_cast<long long>(seconds * 1000.0));
}

meh::Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return meh::read_matrix(in);
}

bool is_smt_file(const std::string& path) {
  return std::filesystem::path(path).extension() == ".smt2";
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string index_list(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t k : v) out += (out.empty() ? "" : " ") + std::to_string(k);
  return out;
}

int cmd_solve(const std::string& file, bool no_transform, bool no_interleave, bool model, bool cert,
              bool stats, std::size_t branch_limit, double timeout) {
  const meh::ConstraintSystem sys = meh::parse_file(file).system;
  meh::SolveOptions opt;
  opt.transforms_enabled = !no_transform;
  opt.interleave_plain = !no_interleave;
  opt.branch_limit = branch_limit;
  opt.time_budget = to_ms(timeout);
  const meh::SolveResult r = meh::solve(sys, opt);

  int code = kExitBudget;
  if (const auto* sat = std::get_if<meh::Sat>(&r.outcome)) {
    std::cout << "sat\n";
    if (model) std::cout << meh::format_model(sys, sat->model);
    code = kExitSat;
  } else if (const auto* unsat = std::get_if<meh::Unsat>(&r.outcome)) {
    std::cout << "unsat\n";
    if (cert) std::cout << meh::format_certificate(sys, unsat->certificate);
    code = kExitUnsat;
  } else {
    std::cout << "unknown\n";
    std::cerr << "budget: " << std::get<meh::Budget>(r.outcome).reason << "\n";
  }
  if (stats) {
    const meh::SolveStats& s = r.stats;
    std::cout << "; classification " << (s.verdict ? meh::to_string(*s.verdict) : "-") << "\n"
              << "; nodes " << s.nodes << "\n"
              << "; max-depth " << s.max_depth << "\n"
              << "; lp-pivots " << s.lp_pivots << "\n"
              << "; classification-lps " << s.classification_lps << "\n"
              << "; transform-seconds " << s.transform_seconds << "\n"
              << "; total-seconds " << s.total_seconds << "\n";
  }
  return code;
}

int cmd_classify(const std::string& file) {
  const meh::ConstraintSystem sys = meh::parse_file(file).system;
  try {
    const meh::Classification c = meh::classify(sys);
    std::cout << meh::to_string(c.verdict) << "\n";
    std::cout << "bounded-rows " << index_list(c.bounded_rows) << "\n";
    std::cout << "bounded-vars";
    for (std::size_t j : c.bounded_vars) std::cout << ' ' << sys.vars()[j].name;
    std::cout << "\n";
  } catch (const meh::InfeasibleSystemError&) {
    std::cout << "infeasible\n";
    return kExitUnsat;
  }
  return kExitSat;
}

int cmd_transform(const std::string& file, std::optional<std::size_t> n1) {
  meh::Matrix d;
  std::size_t rational_cols = n1.value_or(0);
  if (is_smt_file(file)) {
    const meh::ConstraintSystem sys = meh::parse_file(file).system;
    d = sys.A();
    if (!n1) rational_cols = sys.num_rational();
  } else {
    d = read_matrix_file(file);
  }
  if (rational_cols > d.cols()) throw std::invalid_argument("--n1 exceeds the column count");
  const meh::BatchMehnf form = meh::batch_mehnf(d, rational_cols);
  meh::Matrix perm(1, form.row_perm.size());
  for (std::size_t i = 0; i < form.row_perm.size(); ++i) perm(0, i) = static_cast<long>(form.row_perm[i]);
  std::cout << meh::format_matrix(form.H) << meh::format_matrix(form.V) << meh::format_matrix(perm);
  return kExitSat;
}

int cmd_check(const std::string& file, std::size_t n1) {
  const meh::Matrix h = read_matrix_file(file);
  if (n1 > h.cols()) throw std::invalid_argument("--n1 exceeds the column count");
  const bool ltwg = meh::is_lower_triangular_with_gaps(h);
  bool mehnf = false;
  for (std::size_t r = 0; r <= std::min(n1, h.rows()) && !mehnf; ++r) mehnf = meh::is_mehnf(h, n1, r);
  std::cout << "lower-triangular-with-gaps " << (ltwg ? "yes" : "no") << "\n";
  std::cout << "hermite-normal-form " << (meh::is_hermite_normal_form(h) ? "yes" : "no") << "\n";
  std::cout << "mehnf " << (mehnf ? "yes" : "no") << "\n";
  if (h.rows() == h.cols()) {
    std::cout << "mctm " << (meh::is_mctm(h, n1, h.cols() - n1) ? "yes" : "no") << "\n";
  }
  return kExitSat;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for mixed integer/rational linear constraint systems"};
  app.require_subcommand(1);

  std::string file;
  std::string output;

  auto* solve = app.add_subcommand("solve", "Decide satisfiability of an SMT-LIB file");
  bool no_transform = false, no_interleave = false, want_model = false, want_cert = false, want_stats = false;
  std::size_t branch_limit = meh::SolveOptions{}.branch_limit;
  double timeout = default_timeout();
  solve->add_flag("--no-transform", no_transform, "Plain branch-and-bound on the input system");
  solve->add_flag("--no-interleave", no_interleave,
                  "Only search the transformed system of a partially unbounded input");
  solve->add_flag("--model", want_model, "Print a model when sat");
  solve->add_flag("--cert", want_cert, "Print a certificate when unsat");
  solve->add_flag("--stats", want_stats, "Print solver statistics");
  solve->add_option("--branch-limit", branch_limit, "Maximum branch-and-bound nodes");
  solve->add_option("--timeout", timeout, "Time budget in seconds (default: MEH_SOLVE_TIMEOUT or 60)");
  solve->add_option("FILE", file, "Input file")->required();

  auto* classify = app.add_subcommand("classify", "Print the boundedness classification");
  classify->add_option("FILE", file, "Input file")->required();

  auto* transform = app.add_subcommand("transform", "Print H, V and the row permutation");
  std::optional<std::size_t> transform_n1;
  transform->add_option("--n1", transform_n1, "Number of rational columns (matrix input)");
  transform->add_option("FILE", file, "SMT-LIB file or matrix file")->required();

  auto* check = app.add_subcommand("check", "Report the normal-form properties of a matrix");
  std::size_t check_n1 = 0;
  check->add_option("--n1", check_n1, "Number of rational columns");
  check->add_option("MATRIX", file, "Matrix file")->required();

  auto* gen = app.add_subcommand("gen", "Generate benchmark instances");
  gen->require_subcommand(1);
  auto* gen_slack = gen->add_subcommand("slack", "Replace every variable by x+ - x-");
  gen_slack->add_option("FILE", file, "Input file")->required();
  gen_slack->add_option("-o,--output", output, "Output file (default stdout)");

  auto* gen_flip = gen->add_subcommand("flip", "Turn integer variables rational at random");
  double flip_p = 0.2;
  std::uint64_t seed = 1;
  gen_flip->add_option("FILE", file, "Input file")->required();
  gen_flip->add_option("-p,--probability", flip_p, "Flip probability")->check(CLI::Range(0.0, 1.0));
  gen_flip->add_option("--seed", seed, "Random seed");
  gen_flip->add_option("-o,--output", output, "Output file (default stdout)");

  auto* gen_random = gen->add_subcommand("random", "Random satisfiable partially unbounded system");
  meh::GenParams params;
  gen_random->add_option("--vars", params.vars, "Number of variables");
  gen_random->add_option("--bounded", params.bounded_dirs, "Number of bounded directions");
  gen_random->add_option("--unbounded", params.unbounded_rows, "Number of unbounded rows");
  gen_random->add_option("--coef", params.coef, "Coefficient magnitude bound");
  gen_random->add_option("--flip", params.flip, "Probability of a rational variable")
      ->check(CLI::Range(0.0, 1.0));
  gen_random->add_option("--seed", params.seed, "Random seed");
  gen_random->add_option("-o,--output", output, "Output file (default stdout)");

  auto* bench = app.add_subcommand("bench", "Solve every .smt2 file in a directory");
  meh::BenchOptions bench_opt;
  double bench_timeout = default_timeout();
  bool bench_no_transform = false;
  bench->add_option("DIR", file, "Directory")->required();
  bench->add_option("--jobs", bench_opt.jobs, "Worker threads");
  bench->add_option("--timeout", bench_timeout, "Per-instance time budget in seconds");
  bench->add_flag("--no-transform", bench_no_transform, "Plain branch-and-bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*solve) {
      return cmd_solve(file, no_transform, no_interleave, want_model, want_cert, want_stats, branch_limit, timeout);
    }
    if (*classify) return cmd_classify(file);
    if (*transform) return cmd_transform(file, transform_n1);
    if (*check) return cmd_check(file, check_n1);
    if (*gen_slack) {
      write_output(meh::emit_smtlib(meh::gen_slack(meh::parse_file(file).system)), output);
    } else if (*gen_flip) {
      write_output(meh::emit_smtlib(meh::gen_flip(meh::parse_file(file).system, flip_p, seed)), output);
    } else if (*gen_random) {
      write_output(meh::emit_smtlib(meh::gen_random_unbounded(params)), output);
    } else if (*bench) {
      bench_opt.timeout = to_ms(bench_timeout);
      bench_opt.transforms = !bench_no_transform;
      const meh::BenchReport report = meh::bench(file, bench_opt);
      std::cout << report.csv() << "\n" << report.summary();
    }
    return kExitSat;
  } catch (const meh::ParseError& e) {
    std::cerr << file << ":" << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitError;
}

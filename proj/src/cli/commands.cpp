#include "nbbl1/cli/commands.hpp"

#include "nbbl1/cli/csv.hpp"
#include "nbbl1/cli/manifest.hpp"
#include "nbbl1/cs_harness.hpp"
#include "nbbl1/objectives.hpp"
#include "nbbl1/presets.hpp"
#include "nbbl1/solver.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

namespace nbbl1::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kDefaultSeed = 7;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::optional<std::uint64_t> seed;
  std::string out_dir = "runs";
  std::optional<std::string> run_dir;
};

struct SolverOverrides {
  std::optional<std::string> preset;
  std::optional<double> h, rho, delta, lambda_min, lambda_max, tol_d, tol_x,
      lambda0;
  std::optional<std::size_t> m_tilde, max_iter, max_backtracks;
  std::optional<std::string> bb;
};

void add_common(CLI::App* sub, CommonOptions& c) {
  sub->add_option("--seed", c.seed,
                  "RNG seed (default: $NBBL1_SEED, else 7)");
  sub->add_option("--out-dir", c.out_dir,
                  "Parent directory for <command>-<seed>-<timestamp> run dirs")
      ->capture_default_str();
  sub->add_option("--run-dir", c.run_dir,
                  "Write outputs to exactly this directory instead");
}

void add_solver(CLI::App* sub, SolverOverrides& o) {
  sub->add_option("--preset", o.preset, "Parameter preset: cuter, cs, cs-dct");
  sub->add_option("--h", o.h, "Model scale h in (0,1]; also the initial step");
  sub->add_option("--rho", o.rho, "Backtracking factor in (0,1)");
  sub->add_option("--delta", o.delta, "Sufficient-decrease constant in (0,1)");
  sub->add_option("--m-tilde", o.m_tilde, "Nonmonotone window size");
  sub->add_option("--lambda-min", o.lambda_min, "Lower clamp for lambda");
  sub->add_option("--lambda-max", o.lambda_max, "Upper clamp for lambda");
  sub->add_option("--tol-d", o.tol_d, "Stop when ||d_k|| <= tol-d");
  sub->add_option("--tol-x", o.tol_x,
                  "Stop when ||x_k - x_{k-1}|| / ||x_{k-1}|| < tol-x");
  sub->add_option("--max-iter", o.max_iter, "Iteration cap");
  sub->add_option("--max-backtracks", o.max_backtracks, "Backtracking cap");
  sub->add_option("--bb", o.bb, "BB coefficient: bb1 or bb2");
  sub->add_option("--lambda0", o.lambda0, "Initial lambda");
}

Preset resolve_preset(const SolverOverrides& o, Preset fallback) {
  if (!o.preset) return fallback;
  auto p = parse_preset(*o.preset);
  if (!p) throw UsageError("unknown preset '" + *o.preset + "'");
  return *p;
}

SolverConfig resolve_config(Preset preset, const SolverOverrides& o) {
  SolverConfig cfg = preset_config(preset);
  if (o.h) cfg.h = *o.h;
  if (o.rho) cfg.rho = *o.rho;
  if (o.delta) cfg.delta = *o.delta;
  if (o.m_tilde) cfg.m_tilde = *o.m_tilde;
  if (o.lambda_min) cfg.lambda_min = *o.lambda_min;
  if (o.lambda_max) cfg.lambda_max = *o.lambda_max;
  if (o.tol_d) cfg.tol_d = *o.tol_d;
  if (o.tol_x) cfg.tol_x = *o.tol_x;
  if (o.max_iter) cfg.max_iter = *o.max_iter;
  if (o.max_backtracks) cfg.max_backtracks = *o.max_backtracks;
  if (o.lambda0) cfg.lambda0 = *o.lambda0;
  if (o.bb) {
    if (*o.bb == "bb1") {
      cfg.bb_variant = BBVariant::BB1;
    } else if (*o.bb == "bb2") {
      cfg.bb_variant = BBVariant::BB2;
    } else {
      throw UsageError("--bb must be bb1 or bb2");
    }
  }
  try {
    cfg.validate();
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

void record_config(RunManifest& m, Preset preset, const SolverConfig& cfg) {
  m.set("preset", std::string(to_string(preset)));
  m.set("h", exact_real(cfg.h));
  m.set("rho", exact_real(cfg.rho));
  m.set("delta", exact_real(cfg.delta));
  m.set("m-tilde", std::to_string(cfg.m_tilde));
  m.set("lambda-min", exact_real(cfg.lambda_min));
  m.set("lambda-max", exact_real(cfg.lambda_max));
  m.set("tol-d", exact_real(cfg.tol_d));
  m.set("tol-x", exact_real(cfg.tol_x));
  m.set("max-iter", std::to_string(cfg.max_iter));
  m.set("max-backtracks", std::to_string(cfg.max_backtracks));
  m.set("bb", std::string(to_string(cfg.bb_variant)));
  m.set("lambda0", exact_real(cfg.lambda0));
}

std::uint64_t resolve_seed(const CommonOptions& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("NBBL1_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::char_traits<char>::length(env)) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("NBBL1_SEED is not an unsigned integer: ") + env);
  }
  return kDefaultSeed;
}

std::string utc_timestamp(const char* fmt) {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, fmt, &tm);
  return buf;
}

fs::path make_run_dir(const CommonOptions& c, std::string_view command,
                      std::uint64_t seed) {
  fs::path dir;
  if (c.run_dir) {
    dir = *c.run_dir;
  } else {
    const std::string base = std::string(command) + "-" + std::to_string(seed) +
                             "-" + utc_timestamp("%Y%m%dT%H%M%SZ");
    dir = fs::path(c.out_dir) / base;
    for (int suffix = 1; fs::exists(dir); ++suffix) {
      dir = fs::path(c.out_dir) / (base + "-" + std::to_string(suffix));
    }
  }
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  body(out);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

RunManifest new_manifest(std::string command, std::uint64_t seed) {
  RunManifest m;
  m.command = std::move(command);
  m.seed = seed;
  m.version = std::string(kVersion);
  m.timestamp = utc_timestamp("%Y-%m-%dT%H:%M:%SZ");
  return m;
}

std::size_t default_dimension(CuterName name) {
  return name == CuterName::GENROSE ? 200 : 1000;
}

const std::vector<std::string>& table_header() {
  static const std::vector<std::string> h = {"Problem", "Dim",  "mu",
                                             "Iter",    "Nf",   "Time",
                                             "Fun",     "Normg", "Normd"};
  return h;
}

void table_row(CsvWriter& csv, const std::string& name, std::size_t n, double mu,
               const RunResult& r) {
  csv.field(name).field(n).field(mu).field(r.iterations).field(r.nf);
  csv.field(r.elapsed).field(r.F).field(r.norm_grad).field(r.norm_d);
}

std::string presets_help() {
  std::ostringstream os;
  os << "Presets (defaults < preset < individual flags):\n";
  for (Preset p : all_presets()) {
    const SolverConfig c = preset_config(p);
    os << "  " << to_string(p) << ": tol_d=" << c.tol_d << " tol_x=" << c.tol_x
       << " h=" << c.h << " rho=" << c.rho << " delta=" << c.delta
       << " m_tilde=" << c.m_tilde << " lambda=[" << c.lambda_min << ","
       << c.lambda_max << "] max_iter=" << c.max_iter
       << " max_backtracks=" << c.max_backtracks << " lambda0=" << c.lambda0
       << "\n";
  }
  os << "Gaussian encoders use i.i.d. N(0,1)/sqrt(m) entries (row-norm "
        "normalization).\n";
  return os.str();
}

// solve -----------------------------------------------------------------------

struct SolveArgs {
  std::string problem;
  std::optional<std::size_t> n;
  double mu = 0.0;
  std::string reg = "l1";
};

int cmd_solve(const SolveArgs& a, const SolverOverrides& so,
              const CommonOptions& common, std::ostream& out) {
  const auto name = parse_cuter_name(a.problem);
  if (!name) throw UsageError("unknown problem '" + a.problem + "'");
  if (a.reg != "l1" && a.reg != "l2") throw UsageError("--reg must be l1 or l2");
  if (!(a.mu >= 0.0)) throw UsageError("--mu must be >= 0");
  const std::size_t n = a.n.value_or(default_dimension(*name));
  const Preset preset = resolve_preset(so, Preset::Cuter);
  const SolverConfig cfg = resolve_config(preset, so);
  const std::uint64_t seed = resolve_seed(common);

  TestProblem tp;
  try {
    tp = cuter_problem(*name, n);
  } catch (const DimensionError& e) {
    throw UsageError(e.what());
  }
  const RegularizerSpec reg =
      a.reg == "l1" ? RegularizerSpec::l1(a.mu) : RegularizerSpec::l2(a.mu);
  const RunResult r = run(CompositeProblem{tp.evaluator, reg}, tp.x0, cfg);

  RunManifest m = new_manifest("solve", seed);
  m.set("problem", tp.name);
  m.set("n", std::to_string(n));
  m.set("mu", exact_real(a.mu));
  m.set("reg", a.reg);
  record_config(m, preset, cfg);

  const fs::path dir = make_run_dir(common, "solve", seed);
  write_file(dir / "trace.csv", [&](std::ostream& os) { write_trace(os, r.records, false); });
  std::ostringstream summary;
  {
    CsvWriter csv(summary, table_header());
    table_row(csv, tp.name, n, a.mu, r);
    csv.end_row();
  }
  write_file(dir / "summary.csv", [&](std::ostream& os) { os << summary.str(); });
  write_file(dir / "manifest.txt", [&](std::ostream& os) { m.write(os); });

  out << summary.str();
  out << "status: " << to_string(r.reason) << "\n";
  out << "run_dir: " << dir.string() << "\n";
  return converged(r.reason) ? kExitOk : kExitNotConverged;
}

// cs-recover ------------------------------------------------------------------

struct CsArgs {
  std::size_t n = 2048;
  std::size_t m = 512;
  std::size_t p = 64;
  double sigma = 1e-3;
  double mu = 0.00390625;
  std::string encoder = "gaussian";
  std::string amplitude = "positive-unit";
  std::string x0 = "zero";
};

CsParams to_params(const CsArgs& a, std::uint64_t seed) {
  CsParams p;
  p.n = a.n;
  p.m = a.m;
  p.p = a.p;
  p.sigma = a.sigma;
  p.mu = a.mu;
  p.seed = seed;
  const auto enc = parse_encoder(a.encoder);
  if (!enc) throw UsageError("--encoder must be gaussian or dct");
  p.encoder = *enc;
  const auto amp = parse_amplitude(a.amplitude);
  if (!amp) throw UsageError("--amplitude must be positive-unit or gaussian");
  p.amplitude = *amp;
  const auto start = parse_start(a.x0);
  if (!start) throw UsageError("--x0 must be zero or atb");
  p.start = *start;
  try {
    p.validate();
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
  return p;
}

void record_cs(RunManifest& m, const CsArgs& a) {
  m.set("n", std::to_string(a.n));
  m.set("m", std::to_string(a.m));
  m.set("p", std::to_string(a.p));
  m.set("sigma", exact_real(a.sigma));
  m.set("mu", exact_real(a.mu));
  m.set("encoder", a.encoder);
  m.set("amplitude", a.amplitude);
  m.set("x0", a.x0);
}

void add_cs_options(CLI::App* sub, CsArgs& a) {
  sub->add_option("--n", a.n, "Signal length")->capture_default_str();
  sub->add_option("--m", a.m, "Number of measurements")->capture_default_str();
  sub->add_option("--p", a.p, "Number of nonzeros")->capture_default_str();
  sub->add_option("--sigma", a.sigma, "Noise standard deviation")
      ->capture_default_str();
  sub->add_option("--mu", a.mu, "l1 weight (default 2^-8)")->capture_default_str();
  sub->add_option("--encoder", a.encoder, "gaussian or dct")->capture_default_str();
  sub->add_option("--amplitude", a.amplitude, "positive-unit or gaussian")
      ->capture_default_str();
  sub->add_option("--x0", a.x0, "Starting point: zero or atb (A^T b)")
      ->capture_default_str();
}

Preset default_cs_preset(const CsParams& p) {
  return p.encoder == Encoder::Dct ? Preset::CsDct : Preset::Cs;
}

int cmd_cs_recover(const CsArgs& a, const SolverOverrides& so,
                   const CommonOptions& common, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(common);
  const CsParams params = to_params(a, seed);
  const Preset preset = resolve_preset(so, default_cs_preset(params));
  const SolverConfig cfg = resolve_config(preset, so);

  const RecoveryReport rep = run_recovery(params, cfg);

  RunManifest m = new_manifest("cs-recover", seed);
  record_cs(m, a);
  record_config(m, preset, cfg);

  const fs::path dir = make_run_dir(common, "cs-recover", seed);
  write_file(dir / "trace.csv", [&](std::ostream& os) { write_trace(os, rep.trace, true); });
  write_file(dir / "signals.csv", [&](std::ostream& os) {
    CsvWriter csv(os, {"index", "x_bar", "x_star"});
    for (Eigen::Index i = 0; i < rep.x_bar.size(); ++i) {
      csv.field(static_cast<std::size_t>(i)).field(rep.x_bar[i]).field(rep.x_star[i]);
      csv.end_row();
    }
  });
  std::ostringstream summary;
  {
    CsvWriter csv(summary, {"n", "m", "p", "sigma", "mu", "encoder", "h",
                            "iterations", "nf", "elapsed", "F", "rel_err",
                            "reason"});
    csv.field(a.n).field(a.m).field(a.p).field(a.sigma).field(a.mu);
    csv.field(a.encoder).field(cfg.h).field(rep.iterations).field(rep.nf);
    csv.field(rep.elapsed).field(rep.F).field(rep.rel_err);
    csv.field(std::string(to_string(rep.reason)));
    csv.end_row();
  }
  write_file(dir / "summary.csv", [&](std::ostream& os) { os << summary.str(); });
  write_file(dir / "manifest.txt", [&](std::ostream& os) { m.write(os); });

  out << summary.str();
  out << "status: " << to_string(rep.reason) << "\n";
  out << "run_dir: " << dir.string() << "\n";
  return converged(rep.reason) ? kExitOk : kExitNotConverged;
}

// h-sweep ---------------------------------------------------------------------

struct SweepArgs {
  CsArgs cs;
  std::vector<double> h_values;
  double h_min = 0.01;
  double h_max = 1.0;
  std::size_t points = 20;
  std::size_t jobs = 1;
};

int cmd_h_sweep(const SweepArgs& a, const SolverOverrides& so,
                const CommonOptions& common, std::ostream& out) {
  std::vector<double> grid = a.h_values;
  if (grid.empty()) {
    if (a.points == 0) throw UsageError("--points must be positive");
    if (!(a.h_min > 0.0 && a.h_min <= a.h_max && a.h_max <= 1.0)) {
      throw UsageError("h grid must satisfy 0 < h-min <= h-max <= 1");
    }
    grid = log_grid(a.h_min, a.h_max, a.points);
  }
  for (double h : grid) {
    if (!(h > 0.0 && h <= 1.0)) {
      throw UsageError("h value " + exact_real(h) + " outside (0, 1]");
    }
  }
  std::sort(grid.begin(), grid.end());

  const std::uint64_t seed = resolve_seed(common);
  const CsParams params = to_params(a.cs, seed);
  const Preset preset = resolve_preset(so, default_cs_preset(params));
  const SolverConfig cfg = resolve_config(preset, so);

  const auto rows = run_h_sweep(grid, params, cfg, std::max<std::size_t>(1, a.jobs));

  RunManifest m = new_manifest("h-sweep", seed);
  record_cs(m, a.cs);
  std::string joined;
  for (double h : grid) joined += (joined.empty() ? "" : ",") + exact_real(h);
  m.set("h-values", joined);
  m.set("jobs", std::to_string(a.jobs));
  record_config(m, preset, cfg);

  const fs::path dir = make_run_dir(common, "h-sweep", seed);
  std::ostringstream sweep;
  {
    CsvWriter csv(sweep, {"h", "iterations", "nf", "elapsed", "rel_err"});
    for (const auto& r : rows) {
      csv.field(r.h).field(r.iterations).field(r.nf).field(r.elapsed).field(r.rel_err);
      csv.end_row();
    }
  }
  write_file(dir / "sweep.csv", [&](std::ostream& os) { os << sweep.str(); });
  write_file(dir / "manifest.txt", [&](std::ostream& os) { m.write(os); });

  out << sweep.str();
  out << "run_dir: " << dir.string() << "\n";
  const bool all_ok = std::all_of(rows.begin(), rows.end(),
                                  [](const SweepRow& r) { return converged(r.reason); });
  return all_ok ? kExitOk : kExitNotConverged;
}

// bench -----------------------------------------------------------------------

struct BenchArgs {
  std::vector<double> mu_values = {0.0, 0.25, 0.5, 2.0};
  std::size_t cosine_n = 1000;
  std::size_t jobs = 1;
};

struct BenchRow {
  std::string name;
  std::size_t n = 0;
  double mu = 0.0;
  std::optional<RunResult> result;
  std::string status;
};

int cmd_bench(const BenchArgs& a, const SolverOverrides& so,
              const CommonOptions& common, std::ostream& out) {
  const Preset preset = resolve_preset(so, Preset::Cuter);
  const SolverConfig cfg = resolve_config(preset, so);
  const std::uint64_t seed = resolve_seed(common);
  for (double mu : a.mu_values) {
    if (!(mu >= 0.0)) throw UsageError("mu values must be >= 0");
  }

  std::vector<BenchRow> rows;
  for (double mu : a.mu_values) {
    for (CuterName name : all_cuter_names()) {
      BenchRow row;
      row.name = std::string(to_string(name));
      row.n = name == CuterName::COSINE ? a.cosine_n : default_dimension(name);
      row.mu = mu;
      rows.push_back(std::move(row));
    }
  }

  const auto solve_row = [&](BenchRow& row) {
    try {
      const TestProblem tp = cuter_problem(*parse_cuter_name(row.name), row.n);
      row.result = run(CompositeProblem{tp.evaluator, RegularizerSpec::l1(row.mu)},
                       tp.x0, cfg);
      row.status = std::string(to_string(row.result->reason));
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, a.jobs);
  for (std::size_t start = 0; start < rows.size(); start += jobs) {
    std::vector<std::future<void>> batch;
    const std::size_t end = std::min(rows.size(), start + jobs);
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                 solve_row, std::ref(rows[i])));
    }
    for (auto& f : batch) f.get();
  }

  RunManifest m = new_manifest("bench", seed);
  std::string joined;
  for (double mu : a.mu_values) joined += (joined.empty() ? "" : ",") + exact_real(mu);
  m.set("mu-values", joined);
  m.set("cosine-n", std::to_string(a.cosine_n));
  m.set("jobs", std::to_string(a.jobs));
  record_config(m, preset, cfg);

  std::ostringstream summary;
  bool all_ok = true;
  {
    std::vector<std::string> header = table_header();
    header.push_back("status");
    CsvWriter csv(summary, header);
    for (const auto& row : rows) {
      if (row.result) {
        table_row(csv, row.name, row.n, row.mu, *row.result);
      } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        csv.field(row.name).field(row.n).field(row.mu).field(std::size_t{0});
        csv.field(std::size_t{0}).field(nan).field(nan).field(nan).field(nan);
      }
      csv.field(row.status);
      csv.end_row();
      const bool ok = row.result && (row.result->reason == TerminationReason::DirectionSmall ||
                                     row.result->reason == TerminationReason::MaxIterations);
      all_ok = all_ok && ok;
    }
  }
  const fs::path dir = make_run_dir(common, "bench", seed);
  write_file(dir / "summary.csv", [&](std::ostream& os) { os << summary.str(); });
  write_file(dir / "manifest.txt", [&](std::ostream& os) { m.write(os); });

  out << summary.str();
  out << "run_dir: " << dir.string() << "\n";
  return all_ok ? kExitOk : kExitNotConverged;
}

std::vector<char*> as_argv(std::vector<std::string>& storage) {
  std::vector<char*> argv;
  argv.reserve(storage.size());
  for (auto& s : storage) argv.push_back(s.data());
  return argv;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Nonmonotone Barzilai-Borwein shrinkage solver: experiments"};
  app.name("nbbl1");
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");
  app.footer(presets_help());
  app.set_version_flag("--version", std::string(kVersion));

  CommonOptions common;
  SolverOverrides so;

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve one CUTEr-style problem");
  solve->add_option("--problem", solve_args.problem,
                    "VARDIM, COSINE, GENROSE, WOODS or CHAINWOO")
      ->required();
  solve->add_option("--n", solve_args.n, "Dimension (default per problem)");
  solve->add_option("--mu", solve_args.mu, "Regularization weight")
      ->capture_default_str();
  solve->add_option("--reg", solve_args.reg, "Regularizer: l1 or l2")
      ->capture_default_str();
  add_common(solve, common);
  add_solver(solve, so);

  CsArgs cs_args;
  auto* cs = app.add_subcommand("cs-recover", "Compressive-sensing recovery run");
  add_cs_options(cs, cs_args);
  add_common(cs, common);
  add_solver(cs, so);

  SweepArgs sweep_args;
  sweep_args.cs.n = 1024;
  auto* sweep = app.add_subcommand("h-sweep", "Recovery quality versus h");
  add_cs_options(sweep, sweep_args.cs);
  auto* hv = sweep->add_option("--h-values", sweep_args.h_values,
                               "Explicit comma-separated h grid")
                 ->delimiter(',');
  sweep->add_option("--h-min", sweep_args.h_min, "Log grid start")
      ->capture_default_str()
      ->excludes(hv);
  sweep->add_option("--h-max", sweep_args.h_max, "Log grid end")
      ->capture_default_str()
      ->excludes(hv);
  sweep->add_option("--points", sweep_args.points, "Log grid size")
      ->capture_default_str()
      ->excludes(hv);
  sweep->add_option("--jobs", sweep_args.jobs, "Concurrent runs")
      ->capture_default_str();
  add_common(sweep, common);
  add_solver(sweep, so);

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Table of five problems x mu values");
  bench->add_option("--mu-values", bench_args.mu_values, "Comma-separated mu list")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--cosine-n", bench_args.cosine_n, "COSINE dimension")
      ->capture_default_str();
  bench->add_option("--jobs", bench_args.jobs, "Concurrent runs")
      ->capture_default_str();
  add_common(bench, common);
  add_solver(bench, so);

  std::string manifest_path;
  CommonOptions replay_common;
  auto* replay = app.add_subcommand("replay", "Re-run a command from manifest.txt");
  replay->add_option("manifest", manifest_path, "Path to manifest.txt")->required();
  replay->add_option("--out-dir", replay_common.out_dir, "Parent directory for run dirs")
      ->capture_default_str();
  replay->add_option("--run-dir", replay_common.run_dir, "Exact output directory");

  std::vector<std::string> storage = {"nbbl1"};
  storage.insert(storage.end(), args.begin(), args.end());
  auto argv = as_argv(storage);
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_args, so, common, out);
    if (cs->parsed()) return cmd_cs_recover(cs_args, so, common, out);
    if (sweep->parsed()) return cmd_h_sweep(sweep_args, so, common, out);
    if (bench->parsed()) return cmd_bench(bench_args, so, common, out);
    if (replay->parsed()) {
      RunManifest m;
      try {
        m = RunManifest::read_file(manifest_path);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
      if (m.command == "replay") throw UsageError("manifest cannot replay itself");
      std::vector<std::string> replay_args = m.to_args();
      replay_args.push_back("--out-dir");
      replay_args.push_back(replay_common.out_dir);
      if (replay_common.run_dir) {
        replay_args.push_back("--run-dir");
        replay_args.push_back(*replay_common.run_dir);
      }
      return run_cli(replay_args, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNotConverged;
  }
  return kExitUsage;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace nbbl1::cli

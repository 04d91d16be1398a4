#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "io.hpp"
#include "simplexforge/rng.hpp"

namespace simplexforge::cli {

namespace {

using io::Json;

class Clock {
 public:
  Clock() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string join_command(const std::vector<std::string>& args) {
  std::string s = "simplexforge";
  for (const auto& a : args) s += ' ' + a;
  return s;
}

io::RunManifest base_manifest(const std::vector<std::string>& args) {
  io::RunManifest m;
  m.command_line = join_command(args);
  m.tool_version = io::tool_version();
  m.environment_digest = io::environment_digest();
  return m;
}

void emit(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(1) << '\n';
  } else {
    io::write_json_file(path, j);
  }
}

std::vector<BlochVector> vertices_of(const PovmFamilyResult& r,
                                     const GellMannBasis& basis) {
  if (r.vertices.size() == r.matrices.size() && !r.vertices.empty()) {
    return r.vertices;
  }
  std::vector<BlochVector> v;
  for (const auto& m : r.matrices) v.push_back(to_bloch(m, basis));
  return v;
}

RotationState start_rotation(const ObjectiveContext& ctx,
                             const std::string& start_file,
                             std::uint64_t seed) {
  if (!start_file.empty()) {
    const PovmFamilyResult r =
        io::result_from_json(io::read_json_file(start_file));
    if (r.dim != ctx.dim()) {
      throw DimensionMismatch("start file has dim " + std::to_string(r.dim) +
                              ", expected " + std::to_string(ctx.dim()));
    }
    return rotation_from_vertices(ctx, vertices_of(r, ctx.basis()));
  }
  if (ctx.dim() == 2 || ctx.dim() == 3) {
    return rotation_from_vertices(ctx, seed_sic(ctx.dim()).bloch_vertices);
  }
  CounterRng rng(seed);
  return RotationState(random_rotation(ctx.ambient_dim(), rng));
}

unsigned thread_cap() {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SIMPLEXFORGE_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) {
      threads = std::min<unsigned>(threads, static_cast<unsigned>(cap));
    }
  }
  return threads;
}

struct OptimizeArgs {
  int dim = 3;
  double f0 = 0.0;
  int power = 3;
  double tol = 1e-18;
  int max_iter = 500;
  std::uint64_t seed = 0;
  std::string start;
  std::string output;
};

struct ScanArgs {
  OptimizeArgs base;
  double f0_min = 0.0;
  double f0_max = 0.0;
  int steps = 0;
  bool parallel = false;
};

OptimizerConfig make_config(const OptimizeArgs& a) {
  OptimizerConfig cfg;
  cfg.power = a.power;
  cfg.f0 = a.f0;
  cfg.tol_residual = a.tol;
  cfg.max_iters = a.max_iter;
  cfg.seed = a.seed;
  cfg.validate();
  return cfg;
}

Json config_json(const OptimizeArgs& a, const OptimizerConfig& cfg) {
  return Json{{"dim", a.dim},
              {"f0", cfg.f0},
              {"power", cfg.power},
              {"tol_residual", cfg.tol_residual},
              {"max_iters", cfg.max_iters},
              {"lm_damping", cfg.lm_damping},
              {"start", a.start.empty() ? "default" : a.start}};
}

Json tolerance_json(const OptimizerConfig& cfg) {
  return Json{{"residual_sum", cfg.tol_residual}, {"psd", 1e-10}};
}

void add_optimizer_options(CLI::App* sub, OptimizeArgs& a) {
  sub->add_option("--dim", a.dim, "Hilbert-space dimension n")
      ->required()
      ->check(CLI::Range(2, 16));
  sub->add_option("--power", a.power, "trace power m (3 uses the cubic form)")
      ->check(CLI::Range(3, 64));
  sub->add_option("--tol", a.tol, "target sum of squared residuals")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-iter", a.max_iter, "LM iterations per segment")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--seed", a.seed, "generator seed");
  sub->add_option("--start", a.start, "result or SIC JSON used as start")
      ->check(CLI::ExistingFile);
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const ConvergenceError*>(&e)) return kNotConverged;
  if (dynamic_cast<const io::ParseError*>(&e) ||
      dynamic_cast<const io::IoError*>(&e) ||
      dynamic_cast<const InvalidDimension*>(&e) ||
      dynamic_cast<const Unsupported*>(&e) ||
      dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const DimensionMismatch*>(&e)) {
    return kUsage;
  }
  return kVerificationFailed;
}

int cmd_basis(int dim, const std::string& output, std::ostream& out) {
  emit(io::basis_to_json(GellMannBasis(dim)), output, out);
  return kOk;
}

int cmd_simplex(int dim, const std::string& output, std::ostream& out) {
  emit(io::simplex_to_json(regular_simplex(dim)), output, out);
  return kOk;
}

int cmd_seed_sic(const std::vector<std::string>& args, int dim,
                 const std::string& fiducial, const std::string& output,
                 std::ostream& out, std::ostream& err) {
  Clock clock;
  SicCandidate sic;
  if (fiducial.empty()) {
    sic = seed_sic(dim);
  } else {
    const ComplexVector psi =
        io::fiducial_from_json(io::read_json_file(fiducial));
    if (psi.size() != dim) {
      throw DimensionMismatch("fiducial file has dim " +
                              std::to_string(psi.size()) + ", expected " +
                              std::to_string(dim));
    }
    try {
      sic = seed_sic_from_fiducial(psi);
      sic.source = SicSource::kFile;
    } catch (const DomainError& e) {
      err << "seed-sic: " << e.what() << '\n';
      return kVerificationFailed;
    }
  }
  io::RunManifest m = base_manifest(args);
  m.config = Json{{"dim", dim},
                  {"fiducial", fiducial.empty() ? "builtin" : fiducial}};
  m.tolerances = Json{{"sic", 1e-10}};
  m.wall_time_s = clock.seconds();
  emit(io::sic_to_json(sic, m), output, out);
  return kOk;
}

int cmd_optimize(const std::vector<std::string>& args, const OptimizeArgs& a,
                 std::ostream& out, std::ostream& err) {
  Clock clock;
  const OptimizerConfig cfg = make_config(a);
  const ObjectiveContext ctx(a.dim);
  const RotationState start = start_rotation(ctx, a.start, a.seed);
  const PovmFamilyResult r = optimize(start, ctx, cfg);

  io::RunManifest m = base_manifest(args);
  m.config = config_json(a, cfg);
  m.seed = a.seed;
  m.tolerances = tolerance_json(cfg);
  m.wall_time_s = clock.seconds();
  emit(io::result_to_json(r, m), a.output, out);
  if (!r.converged) {
    err << "optimize: not converged, residual_sum "
        << io::format_double(r.residual_sum) << '\n';
    return kNotConverged;
  }
  return kOk;
}

int cmd_scan(const std::vector<std::string>& args, const ScanArgs& s,
             std::ostream& out, std::ostream& err) {
  if (s.steps < 1) throw DomainError("--steps must be >= 1");
  if (s.f0_max < s.f0_min) throw DomainError("--f0-max must be >= --f0-min");
  Clock clock;
  OptimizeArgs a = s.base;
  a.f0 = s.f0_min;
  const OptimizerConfig cfg = make_config(a);
  const ObjectiveContext ctx(a.dim);
  const RotationState start = start_rotation(ctx, a.start, a.seed);

  ScanOptions options;
  options.parallel = s.parallel;
  options.threads = thread_cap();

  io::RunManifest m = base_manifest(args);
  m.config = config_json(a, cfg);
  m.config["f0_min"] = s.f0_min;
  m.config["f0_max"] = s.f0_max;
  m.config["steps"] = s.steps;
  m.config["parallel"] = s.parallel;
  m.seed = a.seed;
  m.tolerances = tolerance_json(cfg);
  m.nondeterministic = s.parallel;

  std::optional<std::ofstream> jsonl;
  if (!a.output.empty()) {
    const std::string path = a.output + ".jsonl";
    jsonl.emplace(path, std::ios::binary | std::ios::trunc);
    if (!*jsonl) throw io::IoError("cannot open '" + path + "' for writing");
  }
  // Callbacks arrive on the calling thread, so writes stay serialized.
  auto on_result = [&](const PovmFamilyResult& r) {
    if (!jsonl) return;
    io::RunManifest job = m;
    job.config["f0"] = r.f0;
    job.wall_time_s = r.wall_time_s;
    *jsonl << io::result_to_json(r, job).dump() << '\n';
    jsonl->flush();
  };
  const auto results =
      scan_f0(ctx, start, s.f0_min, s.f0_max, s.steps, cfg, options, on_result);

  std::string csv = io::scan_csv_header();
  int converged = 0;
  for (const auto& r : results) {
    csv += io::scan_csv_row(r);
    converged += r.converged ? 1 : 0;
  }
  if (a.output.empty()) {
    out << csv;
  } else {
    io::write_text_file(a.output + ".csv", csv);
    out << "scan: " << converged << "/" << results.size()
        << " converged in " << clock.seconds() << " s\n";
  }
  if (converged != static_cast<int>(results.size())) {
    err << "scan: " << results.size() - converged
        << " target(s) did not converge\n";
    return kNotConverged;
  }
  return kOk;
}

int cmd_circle(const std::string& input, const std::vector<int>& indices,
               int samples, const std::string& output, std::ostream& out,
               std::ostream& err) {
  const PovmFamilyResult r = io::result_from_json(io::read_json_file(input));
  const int count = static_cast<int>(r.matrices.size());
  for (int i : indices) {
    if (i < 0 || i >= count) {
      throw DomainError("index " + std::to_string(i) + " outside [0, " +
                        std::to_string(count) + ")");
    }
  }
  try {
    const CircleProfile p =
        circle_profile(r.matrices[indices[0]], r.matrices[indices[1]],
                       r.matrices[indices[2]], samples);
    emit(io::circle_to_json(p), output, out);
  } catch (const PreconditionError& e) {
    err << "circle: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kOk;
}

int cmd_verify(const std::string& input, double tol, const std::string& output,
               std::ostream& out) {
  const PovmFamilyResult r = io::result_from_json(io::read_json_file(input));
  const VerificationReport rep = verify_family(r, tol);
  out << io::report_table(rep);
  const Json j = io::report_to_json(rep);
  if (output.empty()) {
    out << j.dump(1) << '\n';
  } else {
    io::write_json_file(output, j);
  }
  return rep.verdict ? kOk : kVerificationFailed;
}

int cmd_knaster(const std::string& function, int points, double tol,
                const std::string& output, std::ostream& out,
                std::ostream& err) {
  try {
    const KnasterS1Result r =
        knaster_s1(named_circle_function(function), points, tol);
    Json j = io::knaster_to_json(r);
    j["function"] = function;
    emit(j, output, out);
  } catch (const ConvergenceError& e) {
    err << "knaster-s1: " << e.what() << '\n';
    return kNotConverged;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Numerical construction and verification of SIC-POVMs",
               "simplexforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", io::tool_version());

  int basis_dim = 0;
  std::string basis_out;
  auto* basis = app.add_subcommand("basis", "dump the Gell-Mann basis");
  basis->add_option("--dim", basis_dim)->required()->check(CLI::Range(2, 64));
  basis->add_option("--output", basis_out, "JSON file (default stdout)");

  int simplex_dim = 0;
  std::string simplex_out;
  auto* simplex =
      app.add_subcommand("simplex", "dump the regular simplex in R^N");
  simplex->add_option("--dim", simplex_dim, "ambient dimension N")
      ->required()
      ->check(CLI::Range(1, 4096));
  simplex->add_option("--output", simplex_out, "JSON file (default stdout)");

  int sic_dim = 0;
  std::string sic_fiducial;
  std::string sic_out;
  auto* sic = app.add_subcommand("seed-sic", "emit a verified seed SIC");
  sic->add_option("--dim", sic_dim)->required()->check(CLI::Range(2, 64));
  sic->add_option("--fiducial", sic_fiducial, "fiducial JSON file")
      ->check(CLI::ExistingFile);
  sic->add_option("--output", sic_out, "JSON file (default stdout)");

  OptimizeArgs opt;
  auto* optimize_cmd =
      app.add_subcommand("optimize", "equalize trace powers on one simplex");
  add_optimizer_options(optimize_cmd, opt);
  optimize_cmd->add_option("--f0", opt.f0, "target value")->required();
  optimize_cmd->add_option("--output", opt.output,
                           "result JSON file (default stdout)");

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "warm-started sweep over f0");
  add_optimizer_options(scan_cmd, scan.base);
  scan_cmd->add_option("--f0-min", scan.f0_min)->required();
  scan_cmd->add_option("--f0-max", scan.f0_max)->required();
  scan_cmd->add_option("--steps", scan.steps)->required()->check(
      CLI::PositiveNumber);
  scan_cmd->add_flag("--parallel", scan.parallel,
                     "independent parallel jobs (nondeterministic)");
  scan_cmd->add_option("--output", scan.base.output,
                       "prefix for PREFIX.csv and PREFIX.jsonl "
                       "(default: CSV on stdout)");

  std::string circle_in;
  std::vector<int> circle_idx;
  int circle_samples = 64;
  std::string circle_out;
  auto* circle = app.add_subcommand("circle", "trace profile on the circle");
  circle->add_option("--input", circle_in)->required()->check(
      CLI::ExistingFile);
  circle->add_option("--indices", circle_idx, "three element indices a,b,c")
      ->required()
      ->delimiter(',')
      ->expected(3);
  circle->add_option("--samples", circle_samples)->check(CLI::Range(3, 1 << 20));
  circle->add_option("--output", circle_out, "JSON file (default stdout)");

  std::string verify_in;
  double verify_tol = 1e-8;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "verify a result file");
  verify->add_option("--input", verify_in)->required()->check(
      CLI::ExistingFile);
  verify->add_option("--tol", verify_tol)->check(CLI::PositiveNumber);
  verify->add_option("--output", verify_out,
                     "report JSON file (default: after the table on stdout)");

  std::string kn_function;
  int kn_points = 3;
  double kn_tol = 1e-12;
  std::string kn_out;
  auto* knaster = app.add_subcommand("knaster-s1", "S^1 base case");
  knaster->add_option("--function", kn_function)
      ->required()
      ->check(CLI::IsMember({"sin3", "height", "const"}));
  knaster->add_option("--points", kn_points)->check(CLI::IsMember({2, 3}));
  knaster->add_option("--tol", kn_tol)->check(CLI::PositiveNumber);
  knaster->add_option("--output", kn_out, "JSON file (default stdout)");

  std::vector<std::string> argv_store{"simplexforge"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*basis) return cmd_basis(basis_dim, basis_out, out);
    if (*simplex) return cmd_simplex(simplex_dim, simplex_out, out);
    if (*sic) {
      return cmd_seed_sic(args, sic_dim, sic_fiducial, sic_out, out, err);
    }
    if (*optimize_cmd) return cmd_optimize(args, opt, out, err);
    if (*scan_cmd) return cmd_scan(args, scan, out, err);
    if (*circle) {
      return cmd_circle(circle_in, circle_idx, circle_samples, circle_out,
                        out, err);
    }
    if (*verify) return cmd_verify(verify_in, verify_tol, verify_out, out);
    if (*knaster) {
      return cmd_knaster(kn_function, kn_points, kn_tol, kn_out, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kUsage;
  }
  err << app.help();
  return kUsage;
}

}  // namespace simplexforge::cli

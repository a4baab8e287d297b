#include "rddr/cli.hpp"

#include "rddr/csv.hpp"
#include "rddr/error.hpp"
#include "rddr/norms.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <type_traits>

namespace rddr::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

json gen_spec_json(const GenSpec& g) {
  return {{"m", g.m},
          {"k", g.k},
          {"n", g.n},
          {"corruption_fraction", g.corruption_fraction},
          {"corruption_magnitude", g.corruption_magnitude},
          {"clean_coeff_sparsity", g.clean_coeff_sparsity},
          {"noise_sigma", g.noise_sigma},
          {"seed", g.seed}};
}

json options_json(const SolverOptions& o) {
  return {{"mu0", o.mu0},
          {"mu_max", o.mu_max},
          {"rho", o.rho},
          {"eps_tol", o.eps_tol},
          {"max_iter", o.max_iter},
          {"irls_mu_scale", o.irls_mu_scale},
          {"weighted_outer_iters", o.weighted_outer_iters},
          {"weight_floor", o.weight_floor}};
}

void write_json(const json& doc, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
}

CorruptionGroundTruth truth_from_json(const json& doc) {
  try {
    CorruptionGroundTruth truth;
    truth.corrupted_indices = doc.at("corrupted_indices").get<std::vector<std::size_t>>();
    truth.corruption_magnitude = doc.at("corruption_magnitude").get<double>();
    truth.seed = doc.at("seed").get<std::uint64_t>();
    truth.orthogonal = doc.value("orthogonal", true);
    return truth;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed truth file: ") + e.what());
  }
}

Variant variant_for(SolverKind kind) {
  switch (kind) {
    case SolverKind::Weighted: return Variant::Weighted;
    case SolverKind::Sparse: return Variant::Sparse;
    default: return Variant::Plain;
  }
}

SolveReport dispatch_solve(SolverKind kind, const ProblemSpec& spec,
                           const SolverOptions& opts) {
  switch (kind) {
    case SolverKind::Ladmap: return solve_ladmap(spec, opts);
    case SolverKind::Irls: return solve_irls(spec, opts);
    case SolverKind::Weighted: return solve_weighted_ladmap(spec, opts);
    case SolverKind::Sparse: return solve_sparse_ladmap(spec, opts);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown solver");
}

double relative_fit_error(const ProblemSpec& spec, const DenseMatrix& z) {
  const double residual = (spec.X().eigen() - spec.D().eigen() * z.eigen()).norm();
  const double scale = spec.X().eigen().norm();
  return scale > 0.0 ? residual / scale : residual;
}

json report_json(const SolveReport& r, const ProblemSpec& spec,
                 const SolverOptions& opts) {
  json doc = {{"schema_version", kSchemaVersion},
              {"solver", r.solver_name},
              {"variant", std::string(variant_name(spec.variant()))},
              {"lambda", spec.lambda()},
              {"beta", spec.beta()},
              {"options", options_json(opts)},
              {"converged", r.converged},
              {"iterations", r.iterations},
              {"final_objective", objective_value(spec, r.Z, r.E)},
              {"unconstrained_objective", unconstrained_objective(spec, r.Z)},
              {"final_residual", r.residual_trace.empty() ? 0.0 : r.residual_trace.back()},
              {"relative_fit_error", relative_fit_error(spec, r.Z)},
              {"objective_trace", r.objective_trace},
              {"residual_trace", r.residual_trace}};
  if (!r.column_weights.empty()) doc["column_weights"] = r.column_weights;
  return doc;
}

int run_generate(const RunConfig& cfg) {
  const GeneratedInstance inst = generate_instance(cfg.gen);
  write_matrix_csv(inst.spec.X(), cfg.out_dir / "X.csv");
  write_matrix_csv(inst.spec.D(), cfg.out_dir / "D.csv");
  write_matrix_csv(inst.z_true, cfg.out_dir / "Z_true.csv");
  write_json({{"schema_version", kSchemaVersion},
              {"corrupted_indices", inst.truth.corrupted_indices},
              {"corruption_magnitude", inst.truth.corruption_magnitude},
              {"seed", inst.truth.seed},
              {"orthogonal", inst.truth.orthogonal},
              {"gen_spec", gen_spec_json(cfg.gen)}},
             cfg.out_dir / "truth.json");
  return 0;
}

int run_solve(const RunConfig& cfg) {
  const ProblemSpec spec(read_matrix_csv(cfg.x_path), read_matrix_csv(cfg.d_path),
                         variant_for(cfg.solver), cfg.lambda, cfg.beta);
  const SolverOptions opts = resolve_options(cfg.solver, cfg.overrides);
  try {
    const SolveReport report = dispatch_solve(cfg.solver, spec, opts);
    write_matrix_csv(report.Z, cfg.out_dir / "Z.csv");
    write_matrix_csv(report.E, cfg.out_dir / "E.csv");
    write_json(report_json(report, spec, opts), cfg.out_dir / "report.json");
    return 0;
  } catch (const SolverDiverged& diverged) {
    const SolveReport& partial = diverged.partial_report();
    json doc = report_json(partial, spec, opts);
    doc["aborted"] = true;
    doc["error"] = {{"code", std::string(error_code_name(diverged.code()))},
                    {"message", diverged.what()}};
    write_matrix_csv(partial.Z, cfg.out_dir / "Z.csv");
    write_matrix_csv(partial.E, cfg.out_dir / "E.csv");
    write_json(doc, cfg.out_dir / "report.json");
    return 2;
  }
}

int run_detect(const RunConfig& cfg) {
  const DenseMatrix z = read_matrix_csv(cfg.z_path);
  const std::vector<double> scores = score_columns(z);
  const DetectionResult result = flag_corrupted(scores, cfg.strategy);
  json doc = {{"schema_version", kSchemaVersion},
              {"strategy", strategy_label(cfg.strategy)},
              {"scores", result.scores},
              {"flagged", result.flagged},
              {"threshold", result.threshold_used}};
  if (cfg.truth_path) {
    const CorruptionGroundTruth truth = truth_from_json(read_json(*cfg.truth_path));
    if (std::any_of(truth.corrupted_indices.begin(), truth.corrupted_indices.end(),
                    [&](std::size_t i) { return i >= scores.size(); })) {
      throw Error(ErrorCode::ShapeMismatch, "truth indices exceed column count of Z");
    }
    const DetectionMetrics metrics = detection_metrics(result, truth);
    doc["precision"] = metrics.precision;
    doc["recall"] = metrics.recall;
  }
  write_json(doc, cfg.out_dir / "detection.json");
  return 0;
}

int run_bench(const RunConfig& cfg) {
  const GeneratedInstance inst = generate_instance(cfg.gen, cfg.lambda);
  const ProblemSpec& spec = inst.spec;
  json doc = {{"schema_version", kSchemaVersion},
              {"gen_spec", gen_spec_json(cfg.gen)},
              {"lambda", cfg.lambda}};
  std::vector<double> objectives;
  for (SolverKind kind : {SolverKind::Ladmap, SolverKind::Irls}) {
    const SolverOptions opts = resolve_options(kind, cfg.overrides);
    const auto start = std::chrono::steady_clock::now();
    const SolveReport report = dispatch_solve(kind, spec, opts);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    const double objective = unconstrained_objective(spec, report.Z);
    objectives.push_back(objective);
    doc[solver_label(kind)] = {{"objective", objective},
                               {"iterations", report.iterations},
                               {"converged", report.converged},
                               {"wall_time_s", elapsed.count()}};
  }
  const double scale = std::max(std::abs(objectives[0]), std::abs(objectives[1]));
  doc["relative_objective_gap"] =
      scale > 0.0 ? std::abs(objectives[0] - objectives[1]) / scale : 0.0;
  write_json(doc, cfg.out_dir / "bench.json");
  return 0;
}

json error_object(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

SolverKind parse_solver(const std::string& name) {
  if (name == "ladmap") return SolverKind::Ladmap;
  if (name == "irls") return SolverKind::Irls;
  if (name == "weighted") return SolverKind::Weighted;
  if (name == "sparse") return SolverKind::Sparse;
  throw Error(ErrorCode::InvalidArgument, "unknown solver '" + name + "'");
}

std::string solver_label(SolverKind kind) {
  switch (kind) {
    case SolverKind::Ladmap: return "ladmap";
    case SolverKind::Irls: return "irls";
    case SolverKind::Weighted: return "weighted";
    case SolverKind::Sparse: return "sparse";
  }
  return "unknown";
}

FlagStrategy parse_strategy(const std::string& text) {
  if (text == "gap") return LargestGap{};
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  if (colon == std::string::npos || (head != "median" && head != "abs")) {
    throw Error(ErrorCode::InvalidArgument,
                "strategy must be gap, median:<fraction> or abs:<tau>");
  }
  const std::string tail = text.substr(colon + 1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), value);
  if (tail.empty() || ec != std::errc() || ptr != tail.data() + tail.size()) {
    throw Error(ErrorCode::InvalidArgument, "bad strategy parameter '" + tail + "'");
  }
  if (head == "median") return RelativeMedian{value};
  return AbsoluteThreshold{value};
}

std::string strategy_label(const FlagStrategy& strategy) {
  return std::visit(
      overloaded{
          [](const LargestGap&) { return std::string("gap"); },
          [](const RelativeMedian& s) {
            std::ostringstream os;
            os << "median:" << std::setprecision(17) << s.fraction;
            return os.str();
          },
          [](const AbsoluteThreshold& s) {
            std::ostringstream os;
            os << "abs:" << std::setprecision(17) << s.tau;
            return os.str();
          },
      },
      strategy);
}

SolverOptions resolve_options(SolverKind kind, const OptionOverrides& ov) {
  SolverOptions o = kind == SolverKind::Irls ? SolverOptions::irls_defaults()
                                             : SolverOptions::ladmap_defaults();
  if (ov.rho) o.rho = *ov.rho;
  if (ov.mu0) o.mu0 = *ov.mu0;
  if (ov.mu_max) o.mu_max = *ov.mu_max;
  if (ov.eps) o.eps_tol = *ov.eps;
  if (ov.max_iter) o.max_iter = *ov.max_iter;
  if (ov.outer_iters) o.weighted_outer_iters = *ov.outer_iters;
  if (ov.weight_floor) o.weight_floor = *ov.weight_floor;
  o.validate();
  return o;
}

void RunConfig::validate() const {
  auto require_file = [](const fs::path& p, const char* what) {
    if (p.empty()) {
      throw Error(ErrorCode::InvalidArgument, std::string("missing ") + what + " path");
    }
    if (!fs::is_regular_file(p)) {
      throw Error(ErrorCode::IoError, std::string(what) + " file not found: " + p.string());
    }
  };
  switch (command) {
    case Command::Generate:
      gen.validate();
      break;
    case Command::Bench:
      gen.validate();
      if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
      break;
    case Command::Solve:
      require_file(x_path, "X");
      require_file(d_path, "D");
      if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
      if (solver == SolverKind::Sparse && !(beta > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "the sparse solver requires beta > 0");
      }
      resolve_options(solver, overrides);
      break;
    case Command::Detect:
      require_file(z_path, "Z");
      if (truth_path) require_file(*truth_path, "truth");
      break;
  }
}

int run_command(const RunConfig& config) {
  config.validate();
  fs::create_directories(config.out_dir);
  switch (config.command) {
    case Command::Generate: return run_generate(config);
    case Command::Solve: return run_solve(config);
    case Command::Detect: return run_detect(config);
    case Command::Bench: return run_bench(config);
  }
  return 1;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust dictionary-based representation: generate, solve, detect, bench"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string solver = "ladmap";
  std::string strategy = "gap";
  std::string truth;
  std::string out_dir = ".";
  std::uint64_t seed = 0;

  auto add_shared = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Random seed")->capture_default_str();
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
  };
  auto add_gen = [&](CLI::App* sub) {
    sub->add_option("--m", cfg.gen.m, "Ambient dimension")->capture_default_str();
    sub->add_option("--k", cfg.gen.k, "Dictionary size")->capture_default_str();
    sub->add_option("--n", cfg.gen.n, "Sample count")->capture_default_str();
    sub->add_option("--corruption-fraction", cfg.gen.corruption_fraction)
        ->capture_default_str();
    sub->add_option("--corruption-magnitude", cfg.gen.corruption_magnitude)
        ->capture_default_str();
    sub->add_option("--noise-sigma", cfg.gen.noise_sigma)->capture_default_str();
    sub->add_option("--coeff-sparsity", cfg.gen.clean_coeff_sparsity)
        ->capture_default_str();
    sub->add_flag("--require-orthogonal", cfg.gen.require_orthogonal,
                  "Fail instead of falling back to unprojected corruption");
  };
  auto add_overrides = [&](CLI::App* sub) {
    auto& ov = cfg.overrides;
    sub->add_option("--rho", ov.rho, "Penalty growth (LADMAP) or smoothing decay (IRLS)");
    sub->add_option("--mu0", ov.mu0, "Initial penalty");
    sub->add_option("--mu-max", ov.mu_max, "Penalty cap");
    sub->add_option("--eps", ov.eps, "Stopping tolerance");
    sub->add_option("--max-iter", ov.max_iter, "Iteration cap");
    sub->add_option("--outer-iters", ov.outer_iters, "Weighted solver outer rounds");
    sub->add_option("--weight-floor", ov.weight_floor, "Weighted solver weight floor");
  };

  auto* gen = app.add_subcommand("generate", "Write a synthetic corrupted instance");
  add_shared(gen);
  add_gen(gen);

  auto* solve = app.add_subcommand("solve", "Solve an instance from X.csv and D.csv");
  add_shared(solve);
  solve->add_option("--solver", solver, "ladmap | irls | weighted | sparse")
      ->capture_default_str()
      ->check(CLI::IsMember({"ladmap", "irls", "weighted", "sparse"}));
  solve->add_option("--lambda", cfg.lambda, "Loss weight")->capture_default_str();
  solve->add_option("--beta", cfg.beta, "Group weight of the sparse variant")
      ->capture_default_str();
  solve->add_option("--x", cfg.x_path, "Data matrix CSV")->required();
  solve->add_option("--d", cfg.d_path, "Dictionary CSV")->required();
  add_overrides(solve);

  auto* detect = app.add_subcommand("detect", "Flag corrupted columns of Z.csv");
  add_shared(detect);
  detect->add_option("--z", cfg.z_path, "Coefficient matrix CSV")->required();
  detect->add_option("--truth", truth, "Ground truth JSON from generate");
  detect->add_option("--strategy", strategy, "gap | median:<frac> | abs:<tau>")
      ->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Compare LADMAP and IRLS on one instance");
  add_shared(bench);
  add_gen(bench);
  bench->add_option("--lambda", cfg.lambda, "Loss weight")->capture_default_str();
  add_overrides(bench);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_object("UsageError", e.what()).dump() << '\n';
    return 1;
  }

  try {
    cfg.out_dir = out_dir;
    cfg.gen.seed = seed;
    if (app.got_subcommand(gen)) {
      cfg.command = Command::Generate;
    } else if (app.got_subcommand(solve)) {
      cfg.command = Command::Solve;
      cfg.solver = parse_solver(solver);
    } else if (app.got_subcommand(detect)) {
      cfg.command = Command::Detect;
      cfg.strategy = parse_strategy(strategy);
      if (!truth.empty()) cfg.truth_path = truth;
    } else {
      cfg.command = Command::Bench;
    }
    const int status = run_command(cfg);
    if (status == 2) {
      err << error_object("NonFinite",
                          "solver diverged; partial report written to " +
                              (cfg.out_dir / "report.json").string())
                 .dump()
          << '\n';
    }
    return status;
  } catch (const ParseError& e) {
    json doc = error_object(std::string(error_code_name(e.code())), e.what());
    doc["error"]["line"] = e.line();
    doc["error"]["column"] = e.column();
    err << doc.dump() << '\n';
    return 1;
  } catch (const Error& e) {
    err << error_object(std::string(error_code_name(e.code())), e.what()).dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << error_object("InternalError", e.what()).dump() << '\n';
    return 1;
  }
}

}  // namespace rddr::cli

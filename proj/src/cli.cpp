#include "minply/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "minply/bench.hpp"
#include "minply/decomposition.hpp"
#include "minply/error.hpp"
#include "minply/render.hpp"
#include "minply/slab.hpp"

namespace minply {

namespace fs = std::filesystem;

const char* to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::kLine1: return "line1";
    case SolveMode::kLine2: return "line2";
    case SolveMode::kSlab: return "slab";
    case SolveMode::kFull: return "full";
  }
  return "?";
}

SolveMode parse_solve_mode(const std::string& name) {
  for (SolveMode m : {SolveMode::kLine1, SolveMode::kLine2, SolveMode::kSlab, SolveMode::kFull}) {
    if (name == to_string(m)) return m;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown solve mode " + name);
}

namespace {

void require_kind(const Instance& inst, InstanceMode kind, SolveMode mode) {
  if (inst.mode != kind) {
    throw Error(ErrorCode::kModeMismatch, std::string(to_string(inst.mode)) +
                                              " instance cannot be solved with --mode " +
                                              to_string(mode));
  }
}

Side side_of(const Instance& inst) {
  const bool all_below = std::all_of(inst.points.begin(), inst.points.end(),
                                     [&](const Point& p) { return p.y <= inst.line_y; });
  if (all_below) return Side::kBelow;
  for (const Point& p : inst.points) {
    if (p.y < inst.line_y) {
      throw Error(ErrorCode::kPointOffSide,
                  "points lie on both sides of the line (point " + std::to_string(p.id) + ")",
                  p.id);
    }
  }
  return Side::kAbove;
}

void take_merged(Solution& sol, const MergedCover& merged, TableStats* stats) {
  sol.ply = merged.global_ply;
  sol.squares = merged.squares;
  sol.parts = merged.parts;
  sol.witness = merged.witness;
  if (stats) *stats += merged.stats;
}

BoundMode bound_mode(SolveMode mode) {
  switch (mode) {
    case SolveMode::kLine1: return BoundMode::kLineExact;
    case SolveMode::kLine2: return BoundMode::kLine2Approx;
    case SolveMode::kSlab: return BoundMode::kSlab;
    case SolveMode::kFull: return BoundMode::kFull;
  }
  return BoundMode::kFull;
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

}  // namespace

Solution solve_instance(const Instance& inst, SolveMode mode, TableStats* stats) {
  Solution sol;
  sol.instance = inst.name;
  sol.instance_hash = instance_hash(inst);
  sol.mode = to_string(mode);
  switch (mode) {
    case SolveMode::kLine1: {
      require_kind(inst, InstanceMode::kLine, mode);
      const Side side = side_of(inst);
      const CoverEntry e = solve_mpcsihl1(inst.line_y, inst.squares, inst.points, side, stats);
      sol.ply = e.ply;
      sol.squares = e.squares;
      sol.witness = e.region;
      sol.parts.push_back(
          {side == Side::kBelow ? "below" : "above", std::nullopt, std::nullopt, e.squares, e.ply});
      break;
    }
    case SolveMode::kLine2:
      require_kind(inst, InstanceMode::kLine, mode);
      take_merged(sol, solve_line_2approx(inst.line_y, inst.squares, inst.points), stats);
      break;
    case SolveMode::kSlab: {
      require_kind(inst, InstanceMode::kSlab, mode);
      const SlabContext ctx{inst.slab_low, inst.slab_high};
      const CoverEntry e = solve_slab(ctx, inst.squares, inst.points, stats);
      sol.ply = e.ply;
      sol.squares = e.squares;
      sol.witness = e.region;
      sol.parts.push_back({"slab", 0, ctx, e.squares, e.ply});
      break;
    }
    case SolveMode::kFull:
      take_merged(sol, solve_full(inst.points, inst.squares), stats);
      break;
  }
  return sol;
}

ClipRegion clip_for(const Instance& inst, SolveMode mode) {
  switch (mode) {
    case SolveMode::kLine1:
      require_kind(inst, InstanceMode::kLine, mode);
      return side_of(inst) == Side::kBelow ? ClipRegion::below(inst.line_y)
                                           : ClipRegion::above(inst.line_y);
    case SolveMode::kSlab:
      require_kind(inst, InstanceMode::kSlab, mode);
      return ClipRegion::slab(inst.slab_low, inst.slab_high);
    case SolveMode::kLine2:
      require_kind(inst, InstanceMode::kLine, mode);
      return ClipRegion::none();
    case SolveMode::kFull:
      return ClipRegion::none();
  }
  return ClipRegion::none();
}

CaseResult run_case(const Instance& inst, SolveMode mode, int cap,
                    const std::optional<Solution>& given) {
  CaseResult r;
  TableStats stats;
  const ClipRegion clip = clip_for(inst, mode);
  const auto start = std::chrono::steady_clock::now();
  if (given) {
    if (given->mode != to_string(mode)) {
      throw Error(ErrorCode::kModeMismatch,
                  "solution was produced with mode " + given->mode + ", not " + to_string(mode));
    }
    if (given->instance_hash != instance_hash(inst)) {
      throw Error(ErrorCode::kValidationError,
                  "instance_hash: solution does not belong to instance " + inst.name);
    }
    for (SquareId id : given->squares) {
      if (id < 0 || id >= static_cast<SquareId>(inst.squares.size())) {
        throw Error(ErrorCode::kValidationError, "solution names unknown square " +
                                                     std::to_string(id), id);
      }
    }
    r.solution = *given;
  } else {
    r.solution = solve_instance(inst, mode, &stats);
  }
  r.solve_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  r.oracle = brute_force_opt(inst.points, inst.squares, clip, cap);
  const int measured = compute_ply(select_squares(inst.squares, r.solution.squares), clip).ply;
  const bool feasible = is_feasible(r.solution.squares, inst.points, inst.squares);

  BoundContext ctx;
  ctx.instance = inst.name;
  if (!given) ctx.row_bound_violations = stats.row_bound_violations;

  std::optional<SlabCliqueInputs> clique;
  if (mode == SolveMode::kSlab && feasible) {
    clique = slab_clique_inputs(r.solution.squares, {inst.slab_low, inst.slab_high}, inst.points,
                              inst.squares);
    ctx.pruned_max_clique = clique->max_clique;
    ctx.exclusive_cover_minimum = clique->exclusive_cover_minimum;
  }
  if (mode == SolveMode::kFull) {
    MergedCover merged;
    merged.parts = r.solution.parts;
    if (std::any_of(merged.parts.begin(), merged.parts.end(),
                    [](const SubCover& p) { return p.slab_index.has_value(); })) {
      ctx.triple_sum = triple_sum_bound(merged);
    }
  }

  r.report = check_bounds(measured, r.oracle, bound_mode(mode), ctx);
  r.report.checks.push_back({"feasible", feasible, true, feasible ? "all points covered" : "uncovered point"});
  r.report.checks.push_back({"reported_ply", r.solution.ply == measured, true,
                             std::to_string(r.solution.ply) + " vs measured " +
                                 std::to_string(measured)});
  if (clique) {
    const ViolationReport structure = validate_structure(
        clique->pruned, {inst.slab_low, inst.slab_high}, inst.points, inst.squares);
    std::string detail = std::to_string(structure.violations.size()) + " violations";
    for (const Violation& v : structure.violations) detail += "; " + v.detail;
    r.report.checks.push_back({"structure", structure.empty(), true, detail});
  }
  return r;
}

namespace {

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInvalidArgument: return kExitUsage;
    case ErrorCode::kGenerationFailed: return kExitGeneration;
    default: return kExitInput;
  }
}

void append_record(const std::string& log, const Instance& inst, const std::string& mode,
                   int solver_ply, std::optional<int> oracle_ply, double wall_ms,
                   const std::string& summary) {
  if (log.empty()) return;
  nlohmann::json rec;
  rec["instance"] = inst.name;
  rec["instance_hash"] = hex(instance_hash(inst));
  rec["mode"] = mode;
  rec["solver_ply"] = solver_ply;
  rec["oracle_ply"] = oracle_ply ? nlohmann::json(*oracle_ply) : nlohmann::json(nullptr);
  rec["wall_ms"] = wall_ms;
  rec["summary"] = summary;
  rec["version"] = kVersion;
  const fs::path path(log);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::app);
  out << rec.dump() << "\n";
}

Instance generate(const std::string& kind, const GenParams& params, std::uint64_t seed) {
  if (kind == "line") return gen_line_instance(params, seed);
  if (kind == "slab") return gen_slab_instance(params, seed);
  if (kind == "general") return gen_general_instance(params, seed);
  throw Error(ErrorCode::kInvalidArgument, "unknown instance mode " + kind);
}

struct GenFlags {
  std::string mode = "line";
  GenParams params;
  std::uint64_t seed = 1;
  std::string out;
  std::string name;
};

struct SolveFlags {
  std::string mode;
  std::string in;
  std::string out;
  std::string log;
};

struct CompareFlags {
  std::string mode;
  int count = 0;
  int n = 8;
  int m = 8;
  std::uint64_t seed = 1;
  double x_span = 3.0;
  std::vector<std::string> instances;
  std::string solution;
  std::string fixtures = "fixtures";
  std::string log;
  int cap = kDefaultOracleCap;
  bool verbose = false;
};

struct RenderFlags {
  std::string in;
  std::string solution;
  std::string out;
  double scale = 80.0;
};

int cmd_gen(const GenFlags& f, std::ostream& out) {
  Instance inst = generate(f.mode, f.params, f.seed);
  if (!f.name.empty()) inst.name = f.name;
  write_instance(inst, f.out);
  out << "wrote " << f.out << " (" << inst.points.size() << " points, " << inst.squares.size()
      << " squares)\n";
  return kExitOk;
}

int cmd_solve(const SolveFlags& f, std::ostream& out) {
  const SolveMode mode = parse_solve_mode(f.mode);
  const Instance inst = read_instance(f.in);
  const auto start = std::chrono::steady_clock::now();
  const Solution sol = solve_instance(inst, mode);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (!f.out.empty()) write_solution(sol, f.out);
  std::ostringstream line;
  line << "ply=" << sol.ply << " squares=" << sol.squares.size() << " time=" << std::fixed
       << std::setprecision(3) << ms;
  out << line.str() << "\n";
  append_record(f.log, inst, f.mode, sol.ply, std::nullopt, ms, line.str());
  return kExitOk;
}

void emit_fixture(const fs::path& dir, const Instance& inst, const CaseResult& r,
                  bool with_solution, std::ostream& out) {
  fs::create_directories(dir);
  const fs::path inst_path = dir / (inst.name + ".json");
  write_instance(inst, inst_path);
  if (with_solution) write_solution(r.solution, dir / (inst.name + ".solution.json"));
  std::ofstream report(dir / (inst.name + ".report.txt"));
  report << r.report.summary() << "\n";
  for (const auto& c : r.report.checks) {
    report << c.name << ": " << (c.pass ? "ok" : "FAIL") << (c.gating ? "" : " (info)") << "  "
           << c.detail << "\n";
  }
  out << "fixture: " << inst_path.string() << "\n";
}

int cmd_compare(const CompareFlags& f, std::ostream& out) {
  const SolveMode mode = parse_solve_mode(f.mode);
  if (!f.solution.empty() && f.instances.size() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "--solution needs exactly one --instances file");
  }
  if (f.count == 0 && f.instances.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "nothing to compare: give --count or --instances");
  }

  std::vector<Instance> batch;
  for (const auto& path : f.instances) batch.push_back(read_instance(path));
  GenParams params;
  params.n = f.n;
  params.m = f.m;
  params.x_span = f.x_span;
  params.two_sided = mode == SolveMode::kLine2;
  const std::string kind = mode == SolveMode::kSlab   ? "slab"
                           : mode == SolveMode::kFull ? "general"
                                                      : "line";
  for (int i = 0; i < f.count; ++i) batch.push_back(generate(kind, params, f.seed + i));

  std::optional<Solution> given;
  if (!f.solution.empty()) given = read_solution(f.solution);

  int failures = 0;
  double max_ratio = 0.0;
  for (const Instance& inst : batch) {
    const CaseResult r = run_case(inst, mode, f.cap, given);
    if (r.report.ratio) max_ratio = std::max(max_ratio, *r.report.ratio);
    const bool pass = r.report.pass();
    if (f.verbose || !pass) out << r.report.summary() << "\n";
    if (!pass) {
      ++failures;
      emit_fixture(f.fixtures, inst, r, given.has_value(), out);
    }
    append_record(f.log, inst, f.mode, r.report.sol_ply, r.oracle.ply, r.solve_ms,
                  r.report.summary());
  }
  out << "instances=" << batch.size() << " failures=" << failures << " max_ratio=" << max_ratio
      << "\n";
  return failures == 0 ? kExitOk : kExitBound;
}

int cmd_render(const RenderFlags& f, std::ostream& out) {
  const Instance inst = read_instance(f.in);
  std::optional<Solution> sol;
  if (!f.solution.empty()) sol = read_solution(f.solution);
  RenderOptions opt;
  opt.scale = f.scale;
  const std::string svg = render_svg(inst, sol, opt);
  const fs::path path(f.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write " + f.out);
  file << svg;
  out << "wrote " << f.out << "\n";
  return kExitOk;
}

int cmd_bench(const BenchSpec& spec, std::ostream& out) {
  const BenchResult result = run_bench(spec);
  out << format_table(result);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum ply covers with axis-parallel unit squares", "minply"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--mode", gen.mode, "line, slab or general")
      ->check(CLI::IsMember({"line", "slab", "general"}));
  gen_cmd->add_option("--n", gen.params.n, "number of points")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--m", gen.params.m, "number of squares")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", gen.out, "instance file to write")->required();
  gen_cmd->add_option("--x-span", gen.params.x_span)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--y-span", gen.params.y_span)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--jitter", gen.params.jitter);
  gen_cmd->add_option("--retry-limit", gen.params.retry_limit)->check(CLI::PositiveNumber);
  gen_cmd->add_flag("--two-sided", gen.params.two_sided, "line mode: points on both sides");
  gen_cmd->add_flag("--allow-degenerate", gen.params.allow_degenerate);
  gen_cmd->add_option("--name", gen.name);

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  solve_cmd->add_option("--mode", solve.mode, "line1, line2, slab or full")
      ->required()
      ->check(CLI::IsMember({"line1", "line2", "slab", "full"}));
  solve_cmd->add_option("--in", solve.in)->required();
  solve_cmd->add_option("--out", solve.out, "solution file to write");
  solve_cmd->add_option("--log", solve.log, "results log to append to");

  CompareFlags cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Check solver output against the exact oracle");
  cmp_cmd->add_option("--mode", cmp.mode)
      ->required()
      ->check(CLI::IsMember({"line1", "line2", "slab", "full"}));
  cmp_cmd->add_option("--count", cmp.count, "generated instances")->check(CLI::NonNegativeNumber);
  cmp_cmd->add_option("--n", cmp.n)->check(CLI::NonNegativeNumber);
  cmp_cmd->add_option("--m", cmp.m)->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--seed", cmp.seed);
  cmp_cmd->add_option("--x-span", cmp.x_span)->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--instances", cmp.instances, "instance files")->expected(1, -1);
  cmp_cmd->add_option("--solution", cmp.solution, "check this solution instead of solving");
  cmp_cmd->add_option("--fixtures", cmp.fixtures, "directory for failing cases");
  cmp_cmd->add_option("--log", cmp.log);
  cmp_cmd->add_option("--cap", cmp.cap, "oracle square cap")->check(CLI::Range(1, 30));
  cmp_cmd->add_flag("--verbose", cmp.verbose);

  RenderFlags render;
  auto* render_cmd = app.add_subcommand("render", "Draw an instance and solution as SVG");
  render_cmd->add_option("--in", render.in)->required();
  render_cmd->add_option("--solution", render.solution);
  render_cmd->add_option("--out", render.out)->required();
  render_cmd->add_option("--scale", render.scale)->check(CLI::PositiveNumber);

  BenchSpec bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time the solver over a size grid");
  bench_cmd->add_option("--n", bench.ns)->delimiter(',')->check(CLI::PositiveNumber);
  bench_cmd->add_option("--m", bench.ms)->delimiter(',')->check(CLI::PositiveNumber);
  bench_cmd->add_option("--reps", bench.reps)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--x-span", bench.x_span)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--mode", bench.mode)->check(CLI::IsMember({"line1", "slab", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, out);
    if (*solve_cmd) return cmd_solve(solve, out);
    if (*cmp_cmd) return cmd_compare(cmp, out);
    if (*render_cmd) return cmd_render(render, out);
    if (*bench_cmd) return cmd_bench(bench, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace minply

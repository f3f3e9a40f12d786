#include "minply/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "minply/decomposition.hpp"
#include "minply/error.hpp"
#include "minply/greedy.hpp"
#include "minply/instances.hpp"
#include "minply/slab.hpp"

namespace minply {

namespace {

std::uint64_t mix(std::uint64_t seed, int n, int m, int rep) {
  std::uint64_t h = seed * 0x9E3779B97F4A7C15ull;
  for (std::uint64_t v : {std::uint64_t(n), std::uint64_t(m), std::uint64_t(rep)}) {
    h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  }
  return h;
}

int timed_solve(const BenchSpec& spec, int n, int m, std::uint64_t seed, double& seconds) {
  GenParams params;
  params.n = n;
  params.m = m;
  params.x_span = spec.x_span;
  params.y_span = 2.0;
  Instance inst;
  if (spec.mode == "line1") inst = gen_line_instance(params, seed);
  else if (spec.mode == "slab") inst = gen_slab_instance(params, seed);
  else if (spec.mode == "full") inst = gen_general_instance(params, seed);
  else throw Error(ErrorCode::kInvalidArgument, "unknown bench mode " + spec.mode);

  const auto start = std::chrono::steady_clock::now();
  int ply = 0;
  if (spec.mode == "line1") {
    ply = solve_mpcsihl1(inst.line_y, inst.squares, inst.points, Side::kBelow).ply;
  } else if (spec.mode == "slab") {
    ply = solve_slab({inst.slab_low, inst.slab_high}, inst.squares, inst.points).ply;
  } else {
    ply = solve_full(inst.points, inst.squares).global_ply;
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return ply;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : (v[k - 1] + v[k]) / 2.0;
}

}  // namespace

std::optional<double> fit_exponent(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

BenchResult run_bench(const BenchSpec& spec) {
  if (spec.reps < 1) throw Error(ErrorCode::kInvalidArgument, "reps must be >= 1");
  BenchResult result;
  for (int n : spec.ns) {
    for (int m : spec.ms) result.rows.push_back(BenchRow{n, m, {}, 0.0, 0});
  }
  // Repetitions are interleaved across sizes so a burst of machine load does
  // not land on a single size and skew the ratios.
  for (int rep = 0; rep < spec.reps; ++rep) {
    for (auto& row : result.rows) {
      double seconds = 0.0;
      row.ply = timed_solve(spec, row.n, row.m, mix(spec.seed, row.n, row.m, rep), seconds);
      row.seconds.push_back(seconds);
    }
  }
  for (auto& row : result.rows) row.median = median(row.seconds);

  if (!spec.ns.empty()) {
    const int n_max = *std::max_element(spec.ns.begin(), spec.ns.end());
    std::vector<double> xs, ys;
    for (const auto& row : result.rows) {
      if (row.n == n_max && row.median > 0) {
        xs.push_back(row.m);
        ys.push_back(row.median);
      }
    }
    result.m_exponent = fit_exponent(xs, ys);
  }
  std::vector<double> xs, ys;
  for (const auto& row : result.rows) {
    if (row.median > 0) {
      xs.push_back(double(row.n) * row.m);
      ys.push_back(row.median);
    }
  }
  result.nm_exponent = fit_exponent(xs, ys);
  return result;
}

const BenchRow* find_row(const BenchResult& result, int n, int m) {
  for (const auto& row : result.rows) {
    if (row.n == n && row.m == m) return &row;
  }
  return nullptr;
}

std::string format_table(const BenchResult& result) {
  std::ostringstream os;
  os << "n\tm\tmedian_ms\tply\n";
  for (const auto& row : result.rows) {
    os << row.n << "\t" << row.m << "\t" << row.median * 1e3 << "\t" << row.ply << "\n";
  }
  if (result.m_exponent) os << "m_exponent\t" << *result.m_exponent << "\n";
  if (result.nm_exponent) os << "nm_exponent\t" << *result.nm_exponent << "\n";
  return os.str();
}

}  // namespace minply

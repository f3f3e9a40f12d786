#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace minply {

struct BenchSpec {
  std::vector<int> ns = {100, 200};
  std::vector<int> ms = {100, 200};
  int reps = 3;
  std::uint64_t seed = 1;
  double x_span = 5.0;
  std::string mode = "line1";  // line1, slab or full
};

struct BenchRow {
  int n = 0;
  int m = 0;
  std::vector<double> seconds;  // one per repetition
  double median = 0.0;
  int ply = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::optional<double> m_exponent;   // log-log slope in m at the largest n
  std::optional<double> nm_exponent;  // log-log slope in n*m over all rows
};

// Times the solver (instance generation excluded) over the grid ns x ms.
// Each repetition uses a fresh instance drawn from a seed derived from
// (seed, n, m, repetition).
BenchResult run_bench(const BenchSpec& spec);

const BenchRow* find_row(const BenchResult& result, int n, int m);

// Least-squares slope of log(y) against log(x); needs two distinct x values.
std::optional<double> fit_exponent(const std::vector<double>& xs, const std::vector<double>& ys);

std::string format_table(const BenchResult& result);

}  // namespace minply

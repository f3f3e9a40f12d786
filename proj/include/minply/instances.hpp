#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minply/decomposition.hpp"
#include "minply/geometry.hpp"

namespace minply {

enum class InstanceMode { kLine, kSlab, kGeneral };

const char* to_string(InstanceMode mode);

// Point and square ids equal their positions in the vectors.
struct Instance {
  std::string name;
  InstanceMode mode = InstanceMode::kGeneral;
  double line_y = 0.0;     // kLine
  double slab_low = 0.0;   // kSlab
  double slab_high = 1.0;  // kSlab
  std::optional<std::uint64_t> seed;
  std::vector<Point> points;
  std::vector<UnitSquare> squares;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct GenParams {
  int n = 8;
  int m = 8;
  double x_span = 3.0;
  double y_span = 2.0;   // general instances only
  double jitter = 0.9;   // points stay within this fraction of a square around its centre
  int retry_limit = 1000;
  bool two_sided = false;  // line instances: points on both sides of the line
  bool allow_degenerate = false;
};

// Throws kInvalidArgument.
void validate_params(const GenParams& params);

// Squares meet y = 0; points lie strictly below (or on both sides when
// two_sided). Throws kGenerationFailed when the retry limit is hit.
Instance gen_line_instance(const GenParams& params, std::uint64_t seed);
// Slab [0, 1]; even-indexed squares meet y = 0, odd-indexed ones y = 1.
Instance gen_slab_instance(const GenParams& params, std::uint64_t seed);
// Square lower-left corners scattered over [0, x_span] x [0, y_span].
Instance gen_general_instance(const GenParams& params, std::uint64_t seed);

// Throws Error(kValidationError) naming the first violated invariant.
void validate_instance(const Instance& instance);

std::string to_json(const Instance& instance);
// Throws kParseError (subject = 1-based line, or -1) and kValidationError.
Instance instance_from_json(std::string_view text);

void write_instance(const Instance& instance, const std::filesystem::path& path);
Instance read_instance(const std::filesystem::path& path);

// FNV-1a over the canonical serialization.
std::uint64_t instance_hash(const Instance& instance);

struct Solution {
  std::string instance;
  std::uint64_t instance_hash = 0;
  std::string mode;  // line1, line2, slab or full
  int ply = 0;
  std::vector<SquareId> squares;
  std::vector<SubCover> parts;
  std::optional<PlyRegion> witness;

  friend bool operator==(const Solution&, const Solution&) = default;
};

std::string to_json(const Solution& solution);
Solution solution_from_json(std::string_view text);

void write_solution(const Solution& solution, const std::filesystem::path& path);
Solution read_solution(const std::filesystem::path& path);

// Shortest decimal that parses back to `value`.
std::string format_number(double value);

}  // namespace minply

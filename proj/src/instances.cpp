#include "minply/instances.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "minply/error.hpp"

namespace minply {

using nlohmann::json;

const char* to_string(InstanceMode mode) {
  switch (mode) {
    case InstanceMode::kLine: return "line";
    case InstanceMode::kSlab: return "slab";
    case InstanceMode::kGeneral: return "general";
  }
  return "?";
}

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error(ErrorCode::kInvalidArgument, "cannot format number");
  return std::string(buf, end);
}

void validate_params(const GenParams& p) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (p.n < 0) bad("n must be >= 0");
  if (p.m < 1) bad("m must be >= 1");
  if (!(p.x_span > 0.0)) bad("x_span must be > 0");
  if (!(p.y_span >= 0.0)) bad("y_span must be >= 0");
  if (!(p.jitter > 0.0 && p.jitter < 1.0)) bad("jitter must lie in (0, 1)");
  if (p.retry_limit < 1) bad("retry_limit must be >= 1");
}

namespace {

constexpr double kGrid = 1e4;  // generated coordinates carry four decimals

double snap(double v) { return std::round(v * kGrid) / kGrid; }

bool on_boundary(const UnitSquare& s, const Point& p) {
  if (!contains(s, p)) return false;
  return p.x == s.x_left || p.x == s.x_right() || p.y == s.y_bottom() || p.y == s.y_top;
}

class Generator {
 public:
  Generator(const GenParams& params, std::uint64_t seed) : params_(params), rng_(seed) {
    validate_params(params);
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  // Draws x_left values until it finds one not used yet.
  double fresh_x_left(const std::vector<UnitSquare>& squares) {
    for (int attempt = 0; attempt < params_.retry_limit; ++attempt) {
      const double x = snap(uniform(0.0, params_.x_span));
      const bool taken = std::any_of(squares.begin(), squares.end(),
                                     [x](const UnitSquare& s) { return s.x_left == x; });
      if (!taken || params_.allow_degenerate) return x;
    }
    throw Error(ErrorCode::kGenerationFailed, "no free x_left within the retry limit");
  }

  // Places n points inside random squares, keeping those accepted by `keep`.
  template <typename Keep>
  std::vector<Point> points(const std::vector<UnitSquare>& squares, Keep keep) {
    std::vector<Point> out;
    std::uniform_int_distribution<std::size_t> pick(0, squares.size() - 1);
    const double half = params_.jitter / 2.0;
    for (int i = 0; i < params_.n; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < params_.retry_limit && !placed; ++attempt) {
        const UnitSquare& s = squares[pick(rng_)];
        Point p{snap(s.x_left + 0.5 + uniform(-half, half)),
                snap(s.y_top - 0.5 + uniform(-half, half)), i};
        if (!keep(p)) continue;
        const bool duplicate = std::any_of(out.begin(), out.end(), [&](const Point& q) {
          return q.x == p.x && q.y == p.y;
        });
        if (duplicate) continue;
        if (!params_.allow_degenerate &&
            std::any_of(squares.begin(), squares.end(),
                        [&](const UnitSquare& t) { return on_boundary(t, p); })) {
          continue;
        }
        out.push_back(p);
        placed = true;
      }
      if (!placed) {
        throw Error(ErrorCode::kGenerationFailed,
                    "point " + std::to_string(i) + " not placed within the retry limit", i);
      }
    }
    return out;
  }

 private:
  GenParams params_;
  std::mt19937_64 rng_;
};

std::string default_name(const char* kind, const GenParams& p, std::uint64_t seed) {
  return std::string(kind) + "-n" + std::to_string(p.n) + "-m" + std::to_string(p.m) + "-s" +
         std::to_string(seed);
}

}  // namespace

Instance gen_line_instance(const GenParams& params, std::uint64_t seed) {
  Generator gen(params, seed);
  Instance inst;
  inst.name = default_name(params.two_sided ? "line2" : "line", params, seed);
  inst.mode = InstanceMode::kLine;
  inst.seed = seed;
  for (int k = 0; k < params.m; ++k) {
    const double x = gen.fresh_x_left(inst.squares);
    inst.squares.push_back({x, snap(gen.uniform(0.0, 1.0)), k});
  }
  inst.points = gen.points(inst.squares, [&](const Point& p) {
    return params.two_sided ? p.y != 0.0 : p.y < 0.0;
  });
  validate_instance(inst);
  return inst;
}

Instance gen_slab_instance(const GenParams& params, std::uint64_t seed) {
  Generator gen(params, seed);
  Instance inst;
  inst.name = default_name("slab", params, seed);
  inst.mode = InstanceMode::kSlab;
  inst.seed = seed;
  for (int k = 0; k < params.m; ++k) {
    const double x = gen.fresh_x_left(inst.squares);
    // Even squares straddle y = 0, odd ones y = 1.
    const double y_top = k % 2 == 0 ? snap(gen.uniform(0.0, 1.0)) : snap(gen.uniform(1.0, 2.0));
    inst.squares.push_back({x, y_top, k});
  }
  inst.points = gen.points(inst.squares, [&](const Point& p) {
    return params.allow_degenerate ? (0.0 <= p.y && p.y <= 1.0) : (0.0 < p.y && p.y < 1.0);
  });
  validate_instance(inst);
  return inst;
}

Instance gen_general_instance(const GenParams& params, std::uint64_t seed) {
  Generator gen(params, seed);
  Instance inst;
  inst.name = default_name("general", params, seed);
  inst.mode = InstanceMode::kGeneral;
  inst.seed = seed;
  for (int k = 0; k < params.m; ++k) {
    const double x = gen.fresh_x_left(inst.squares);
    inst.squares.push_back({x, snap(gen.uniform(0.0, params.y_span)) + 1.0, k});
  }
  inst.points = gen.points(inst.squares, [](const Point&) { return true; });
  validate_instance(inst);
  return inst;
}

void validate_instance(const Instance& inst) {
  auto fail = [&](const std::string& invariant, const std::string& detail, long subject = -1) {
    throw Error(ErrorCode::kValidationError,
                invariant + ": " + detail + " (instance " + inst.name + ")", subject);
  };
  for (std::size_t k = 0; k < inst.squares.size(); ++k) {
    const UnitSquare& s = inst.squares[k];
    if (s.id != static_cast<SquareId>(k)) fail("ids_sequential", "square id " + std::to_string(s.id), s.id);
    if (!std::isfinite(s.x_left) || !std::isfinite(s.y_top)) {
      fail("finite_coordinates", "square " + std::to_string(s.id), s.id);
    }
  }
  for (std::size_t i = 0; i < inst.points.size(); ++i) {
    const Point& p = inst.points[i];
    if (p.id != static_cast<PointId>(i)) fail("ids_sequential", "point id " + std::to_string(p.id), p.id);
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      fail("finite_coordinates", "point " + std::to_string(p.id), p.id);
    }
  }

  switch (inst.mode) {
    case InstanceMode::kLine:
      for (const auto& s : inst.squares) {
        if (!square_meets_line(s, inst.line_y)) {
          fail("square_meets_line", "square " + std::to_string(s.id), s.id);
        }
      }
      break;
    case InstanceMode::kSlab:
      if (inst.slab_high - inst.slab_low != 1.0) {
        fail("slab_height", "slab lines must be one unit apart");
      }
      for (const auto& s : inst.squares) {
        if (!square_meets_line(s, inst.slab_low) && !square_meets_line(s, inst.slab_high)) {
          fail("square_meets_slab", "square " + std::to_string(s.id), s.id);
        }
      }
      for (const auto& p : inst.points) {
        if (p.y < inst.slab_low || p.y > inst.slab_high) {
          fail("point_in_slab", "point " + std::to_string(p.id), p.id);
        }
      }
      break;
    case InstanceMode::kGeneral:
      break;
  }

  for (const auto& p : inst.points) {
    if (std::none_of(inst.squares.begin(), inst.squares.end(),
                     [&](const UnitSquare& s) { return contains(s, p); })) {
      fail("point_covered", "point " + std::to_string(p.id) + " is in no square", p.id);
    }
  }
  std::set<double> lefts;
  for (const auto& s : inst.squares) {
    if (!lefts.insert(s.x_left).second) {
      fail("distinct_x_left", "square " + std::to_string(s.id) + " repeats x_left " +
                                  format_number(s.x_left), s.id);
    }
  }
  std::set<std::pair<double, double>> seen;
  for (const auto& p : inst.points) {
    if (!seen.insert({p.x, p.y}).second) {
      fail("distinct_points", "point " + std::to_string(p.id) + " repeats an earlier point", p.id);
    }
  }
}

namespace {

constexpr const char* kInstanceFormat = "minply-instance/1";
constexpr const char* kSolutionFormat = "minply-solution/1";

[[noreturn]] void parse_fail(const std::string& reason, long line = -1) {
  throw Error(ErrorCode::kParseError,
              (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + reason, line);
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const long line = 1 + static_cast<long>(std::count(text.begin(), text.begin() + upto, '\n'));
    parse_fail(e.what(), line);
  }
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return doc.at(key);
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) parse_fail(what + " is not a number");
  return v.get<double>();
}

std::pair<double, double> pair_of(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2) parse_fail(what + " must be a two-element array");
  return {number(v[0], what), number(v[1], what)};
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

}  // namespace

std::string to_json(const Instance& inst) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"format\": \"" << kInstanceFormat << "\",\n";
  os << "  \"name\": " << json(inst.name).dump() << ",\n";
  os << "  \"mode\": \"" << to_string(inst.mode) << "\",\n";
  if (inst.mode == InstanceMode::kLine) os << "  \"line_y\": " << format_number(inst.line_y) << ",\n";
  if (inst.mode == InstanceMode::kSlab) {
    os << "  \"slab\": [" << format_number(inst.slab_low) << ", " << format_number(inst.slab_high)
       << "],\n";
  }
  if (inst.seed) os << "  \"seed\": " << *inst.seed << ",\n";
  os << "  \"points\": [";
  for (std::size_t i = 0; i < inst.points.size(); ++i) {
    os << (i ? ",\n    " : "\n    ") << "[" << format_number(inst.points[i].x) << ", "
       << format_number(inst.points[i].y) << "]";
  }
  os << (inst.points.empty() ? "],\n" : "\n  ],\n");
  os << "  \"squares\": [";
  for (std::size_t k = 0; k < inst.squares.size(); ++k) {
    os << (k ? ",\n    " : "\n    ") << "[" << format_number(inst.squares[k].x_left) << ", "
       << format_number(inst.squares[k].y_top) << "]";
  }
  os << (inst.squares.empty() ? "]\n" : "\n  ]\n");
  os << "}\n";
  return os.str();
}

Instance instance_from_json(std::string_view text) {
  const json doc = parse_document(text);
  if (field(doc, "format") != kInstanceFormat) parse_fail("unsupported format");
  Instance inst;
  const json& name = field(doc, "name");
  if (!name.is_string()) parse_fail("name is not a string");
  inst.name = name.get<std::string>();

  const json& mode = field(doc, "mode");
  if (mode == "line") {
    inst.mode = InstanceMode::kLine;
    inst.line_y = number(field(doc, "line_y"), "line_y");
  } else if (mode == "slab") {
    inst.mode = InstanceMode::kSlab;
    std::tie(inst.slab_low, inst.slab_high) = pair_of(field(doc, "slab"), "slab");
  } else if (mode == "general") {
    inst.mode = InstanceMode::kGeneral;
  } else {
    parse_fail("unknown mode " + mode.dump());
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) parse_fail("seed is not an unsigned integer");
    inst.seed = doc["seed"].get<std::uint64_t>();
  }

  const json& points = field(doc, "points");
  if (!points.is_array()) parse_fail("points is not an array");
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto [x, y] = pair_of(points[i], "point " + std::to_string(i));
    inst.points.push_back({x, y, static_cast<PointId>(i)});
  }
  const json& squares = field(doc, "squares");
  if (!squares.is_array()) parse_fail("squares is not an array");
  for (std::size_t k = 0; k < squares.size(); ++k) {
    auto [x, y] = pair_of(squares[k], "square " + std::to_string(k));
    inst.squares.push_back({x, y, static_cast<SquareId>(k)});
  }
  validate_instance(inst);
  return inst;
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  out << text;
}

}  // namespace

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  spill(path, to_json(instance));
}

Instance read_instance(const std::filesystem::path& path) { return instance_from_json(slurp(path)); }

std::uint64_t instance_hash(const Instance& instance) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : to_json(instance)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

json rect_json(const Rect& r) { return json::array({r.x_lo, r.x_hi, r.y_lo, r.y_hi}); }

Anchor anchor_from(const std::string& s) {
  for (Anchor a : {Anchor::kTop, Anchor::kBottom, Anchor::kFloating, Anchor::kUnanchored}) {
    if (s == to_string(a)) return a;
  }
  parse_fail("unknown anchor " + s);
}

std::vector<int> ids_of(const json& v, const std::string& what) {
  if (!v.is_array()) parse_fail(what + " is not an array");
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) parse_fail(what + " holds a non-integer");
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

std::string to_json(const Solution& sol) {
  json doc;
  doc["format"] = kSolutionFormat;
  doc["instance"] = sol.instance;
  doc["instance_hash"] = hex(sol.instance_hash);
  doc["mode"] = sol.mode;
  doc["ply"] = sol.ply;
  doc["squares"] = sol.squares;
  json parts = json::array();
  for (const SubCover& part : sol.parts) {
    json p;
    p["label"] = part.label;
    if (part.slab_index) p["slab_index"] = *part.slab_index;
    if (part.slab) p["slab"] = json::array({part.slab->y_low, part.slab->y_high});
    p["squares"] = part.squares;
    p["ply"] = part.ply;
    parts.push_back(std::move(p));
  }
  doc["parts"] = std::move(parts);
  if (sol.witness) {
    doc["witness"] = {{"rect", rect_json(sol.witness->rect)},
                      {"depth", sol.witness->depth},
                      {"clique", sol.witness->clique},
                      {"anchor", to_string(sol.witness->anchor)}};
  }
  return doc.dump(2) + "\n";
}

Solution solution_from_json(std::string_view text) {
  const json doc = parse_document(text);
  if (field(doc, "format") != kSolutionFormat) parse_fail("unsupported format");
  Solution sol;
  try {
    sol.instance = field(doc, "instance").get<std::string>();
    sol.instance_hash = std::stoull(field(doc, "instance_hash").get<std::string>(), nullptr, 16);
    sol.mode = field(doc, "mode").get<std::string>();
    sol.ply = field(doc, "ply").get<int>();
    sol.squares = ids_of(field(doc, "squares"), "squares");
    if (doc.contains("parts")) {
      for (const json& p : doc["parts"]) {
        SubCover part;
        part.label = field(p, "label").get<std::string>();
        if (p.contains("slab_index")) part.slab_index = p["slab_index"].get<int>();
        if (p.contains("slab")) {
          auto [lo, hi] = pair_of(p["slab"], "slab");
          part.slab = SlabContext{lo, hi};
        }
        part.squares = ids_of(field(p, "squares"), "part squares");
        part.ply = field(p, "ply").get<int>();
        sol.parts.push_back(std::move(part));
      }
    }
    if (doc.contains("witness")) {
      const json& w = doc["witness"];
      const json& r = field(w, "rect");
      if (!r.is_array() || r.size() != 4) parse_fail("witness rect must have four numbers");
      PlyRegion region;
      region.rect = {number(r[0], "rect"), number(r[1], "rect"), number(r[2], "rect"),
                     number(r[3], "rect")};
      region.depth = field(w, "depth").get<int>();
      region.clique = ids_of(field(w, "clique"), "clique");
      region.anchor = anchor_from(field(w, "anchor").get<std::string>());
      sol.witness = std::move(region);
    }
  } catch (const json::exception& e) {
    parse_fail(e.what());
  } catch (const std::logic_error& e) {
    parse_fail(std::string("bad instance_hash: ") + e.what());
  }
  return sol;
}

void write_solution(const Solution& solution, const std::filesystem::path& path) {
  spill(path, to_json(solution));
}

Solution read_solution(const std::filesystem::path& path) { return solution_from_json(slurp(path)); }

}  // namespace minply

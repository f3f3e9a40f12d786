#include "minply/greedy.hpp"

#include <algorithm>

#include "minply/error.hpp"

namespace minply {

namespace {

// A square added for point p has x_left >= p.x - 1, so an earlier square can
// only overlap it if its x_left >= p.x - 2.
constexpr double kFrontierReach = 2.0;
constexpr double kFrontierSlack = 1e-9;

std::weak_ordering compare_regions(int ply_a, const PlyRegion& a, int ply_b,
                                   const PlyRegion& b, CriteriaMode mode) {
  if (ply_a != ply_b) return ply_a <=> ply_b;
  if (mode == CriteriaMode::kSlab) {
    const bool fa = a.anchor == Anchor::kFloating;
    const bool fb = b.anchor == Anchor::kFloating;
    if (fa != fb) return fa ? std::weak_ordering::less : std::weak_ordering::greater;
  }
  if (a.rect.x_hi != b.rect.x_hi) {
    return a.rect.x_hi < b.rect.x_hi ? std::weak_ordering::less : std::weak_ordering::greater;
  }
  if (a.rect.width() != b.rect.width()) {
    return a.rect.width() < b.rect.width() ? std::weak_ordering::less
                                           : std::weak_ordering::greater;
  }
  if (a.clique != b.clique) {
    return a.clique < b.clique ? std::weak_ordering::less : std::weak_ordering::greater;
  }
  return std::weak_ordering::equivalent;
}

}  // namespace

std::weak_ordering compare_covers(const CoverEntry& a, const CoverEntry& b, CriteriaMode mode) {
  if (!a.feasible || !b.feasible || !a.region || !b.region) {
    throw Error(ErrorCode::kInvalidArgument, "compare_covers needs two feasible entries");
  }
  return compare_regions(a.ply, *a.region, b.ply, *b.region, mode);
}

TableStats& TableStats::operator+=(const TableStats& other) {
  cells += other.cells;
  candidates += other.candidates;
  row_bound_checks += other.row_bound_checks;
  row_bound_violations += other.row_bound_violations;
  return *this;
}

GreedyTable::GreedyTable(std::span<const UnitSquare> squares, std::span<const Point> points,
                         ClipRegion clip, CriteriaMode mode)
    : squares_(squares.begin(), squares.end()),
      points_(points.begin(), points.end()),
      clip_(clip),
      mode_(mode) {
  std::sort(points_.begin(), points_.end(), [](const Point& a, const Point& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.id < b.id;
  });
  for (int c = 0; c < cols(); ++c) col_of_id_[squares_[c].id] = c;
}

bool GreedyTable::prefer(int ply_a, const PlyRegion& a, int ply_b, const PlyRegion& b) const {
  return compare_regions(ply_a, a, ply_b, b, mode_) < 0;
}

GreedyTable::Extension GreedyTable::extend(const Slot& parent, int col) const {
  const UnitSquare& s = squares_[col];
  if (std::find(parent.frontier.begin(), parent.frontier.end(), col) != parent.frontier.end()) {
    return {parent.ply, parent.region};
  }

  const Rect local_clip = intersect(clip_.bounds(), rect_of(s));
  std::vector<UnitSquare> overlapping;
  for (int f : parent.frontier) {
    if (!intersect(rect_of(squares_[f]), local_clip).empty()) {
      overlapping.push_back(squares_[f]);
    }
  }
  DepthCliques local = max_depth_cliques(overlapping, local_clip);
  if (local.depth == 0) local.cliques.push_back({local_clip, {}});
  const int depth = local.depth + 1;
  if (depth < parent.ply) return {parent.ply, parent.region};

  bool have_best = false;
  PlyRegion best_region;
  for (auto& [rect, clique] : local.cliques) {
    clique.insert(std::upper_bound(clique.begin(), clique.end(), s.id), s.id);
    PlyRegion candidate{rect, depth, clique, Anchor::kUnanchored};
    if (!have_best || more_representative(candidate, best_region)) {
      have_best = true;
      best_region = std::move(candidate);
    }
  }
  std::vector<UnitSquare> members;
  for (SquareId id : best_region.clique) members.push_back(squares_[col_of_id_.at(id)]);
  best_region.anchor = anchor_of(members, clip_);

  if (depth > parent.ply || more_representative(best_region, parent.region)) {
    return {depth, std::move(best_region)};
  }
  return {parent.ply, parent.region};
}

GreedyTable::Slot GreedyTable::evaluate(int row, int col) const {
  Slot slot;
  const Point& p = points_[row];
  const UnitSquare& s = squares_[col];
  if (!contains(s, p)) return slot;

  if (row == 0) {
    slot.feasible = true;
    slot.ply = 1;
    const UnitSquare single[] = {s};
    slot.region = {intersect(clip_.bounds(), rect_of(s)), 1, {s.id}, anchor_of(single, clip_)};
    slot.frontier = {col};
    return slot;
  }

  const auto& prev = slots_[row - 1];
  for (int k = 0; k < cols(); ++k) {
    if (!prev[k].feasible) continue;
    Extension ext = extend(prev[k], col);
    if (!slot.feasible || prefer(ext.ply, ext.region, slot.ply, slot.region)) {
      slot.feasible = true;
      slot.ply = ext.ply;
      slot.region = std::move(ext.region);
      slot.parent_col = k;
    }
  }
  if (!slot.feasible) return slot;

  const double threshold = p.x - kFrontierReach - kFrontierSlack;
  for (int f : prev[slot.parent_col].frontier) {
    if (f != col && squares_[f].x_left >= threshold) slot.frontier.push_back(f);
  }
  slot.frontier.push_back(col);
  std::sort(slot.frontier.begin(), slot.frontier.end(), [this](int a, int b) {
    if (squares_[a].x_left != squares_[b].x_left) return squares_[a].x_left < squares_[b].x_left;
    return a < b;
  });
  return slot;
}

CoverEntry GreedyTable::materialize(int row, int col, const Slot& slot) const {
  CoverEntry entry;
  if (!slot.feasible) return entry;
  entry.feasible = true;
  entry.ply = slot.ply;
  entry.region = slot.region;
  entry.squares.push_back(squares_[col].id);
  if (row > 0) {
    entry.parent = Cell{row - 1, slot.parent_col};
    for (const Cell& c : trace_parents(*entry.parent)) {
      entry.squares.push_back(squares_[c.col].id);
    }
  }
  std::sort(entry.squares.begin(), entry.squares.end());
  entry.squares.erase(std::unique(entry.squares.begin(), entry.squares.end()),
                      entry.squares.end());
  return entry;
}

CoverEntry GreedyTable::compute_entry(int row, int col) const {
  if (row < 0 || row >= rows() || row > filled_rows() || col < 0 || col >= cols()) {
    throw Error(ErrorCode::kInvalidArgument, "compute_entry outside the fillable table");
  }
  return materialize(row, col, evaluate(row, col));
}

void GreedyTable::fill_next_row() {
  const int row = filled_rows();
  if (row >= rows()) return;
  std::vector<Slot> current(cols());
  for (int c = 0; c < cols(); ++c) {
    current[c] = evaluate(row, c);
    ++stats_.cells;
    if (row > 0 && current[c].feasible) {
      for (const Slot& s : slots_[row - 1]) stats_.candidates += s.feasible ? 1 : 0;
    }
  }

  if (row > 0) {
    int prev_min = -1;
    for (const Slot& s : slots_[row - 1]) {
      if (s.feasible && (prev_min < 0 || s.ply < prev_min)) prev_min = s.ply;
    }
    for (const Slot& s : current) {
      if (!s.feasible) continue;
      ++stats_.row_bound_checks;
      if (s.ply < prev_min || s.ply > prev_min + 1) ++stats_.row_bound_violations;
    }
  }

  slots_.push_back(std::move(current));
}

void GreedyTable::fill() {
  while (filled_rows() < rows()) fill_next_row();
}

CoverEntry GreedyTable::entry(int row, int col) const {
  if (row < 0 || row >= filled_rows() || col < 0 || col >= cols()) {
    throw Error(ErrorCode::kInvalidArgument, "entry outside the filled table");
  }
  return materialize(row, col, slots_[row][col]);
}

std::vector<Cell> GreedyTable::trace_parents(Cell cell) const {
  if (cell.row < 0 || cell.row >= filled_rows() || cell.col < 0 || cell.col >= cols() ||
      !slots_[cell.row][cell.col].feasible) {
    throw Error(ErrorCode::kInvalidArgument, "trace_parents from an infeasible cell");
  }
  std::vector<Cell> chain;
  chain.reserve(cell.row + 1);
  chain.push_back(cell);
  while (cell.row > 0) {
    cell = Cell{cell.row - 1, slots_[cell.row][cell.col].parent_col};
    chain.push_back(cell);
  }
  return chain;
}

std::optional<Cell> GreedyTable::best_in_row(int row) const {
  if (row < 0 || row >= filled_rows()) return std::nullopt;
  std::optional<Cell> best;
  for (int c = 0; c < cols(); ++c) {
    const Slot& s = slots_[row][c];
    if (!s.feasible) continue;
    if (!best) {
      best = Cell{row, c};
      continue;
    }
    const Slot& b = slots_[row][best->col];
    if (prefer(s.ply, s.region, b.ply, b.region)) best = Cell{row, c};
  }
  return best;
}

CoverEntry solve_greedy(std::span<const UnitSquare> squares, std::span<const Point> points,
                        const ClipRegion& clip, CriteriaMode mode, TableStats* stats) {
  CoverEntry empty;
  empty.feasible = true;
  if (points.empty()) return empty;

  GreedyTable table(squares, points, clip, mode);
  table.fill();
  if (stats != nullptr) *stats += table.stats();
  const auto best = table.best_in_row(table.rows() - 1);
  if (!best) {
    // Only reachable when some point lies in no square.
    for (const Point& p : points) {
      if (std::none_of(squares.begin(), squares.end(),
                       [&](const UnitSquare& s) { return contains(s, p); })) {
        throw Error(ErrorCode::kUncoveredPoint, "point " + std::to_string(p.id) + " is in no square",
                    p.id);
      }
    }
    throw Error(ErrorCode::kInfeasibleInput, "no feasible cover");
  }
  return table.entry(*best);
}

namespace {

Rect reflect(const Rect& r, double line_y) {
  return {r.x_lo, r.x_hi, 2.0 * line_y - r.y_hi, 2.0 * line_y - r.y_lo};
}

}  // namespace

CoverEntry solve_mpcsihl1(double line_y, std::span<const UnitSquare> squares,
                          std::span<const Point> points, Side side, TableStats* stats) {
  for (const auto& s : squares) {
    if (!square_meets_line(s, line_y)) {
      throw Error(ErrorCode::kSquareMissesLine,
                  "square " + std::to_string(s.id) + " misses the stabbing line", s.id);
    }
  }
  for (const auto& p : points) {
    const bool on_side = side == Side::kBelow ? p.y <= line_y : p.y >= line_y;
    if (!on_side) {
      throw Error(ErrorCode::kPointOffSide,
                  "point " + std::to_string(p.id) + " is on the wrong side of the line", p.id);
    }
    if (std::none_of(squares.begin(), squares.end(),
                     [&](const UnitSquare& s) { return contains(s, p); })) {
      throw Error(ErrorCode::kUncoveredPoint, "point " + std::to_string(p.id) + " is in no square",
                  p.id);
    }
  }

  if (side == Side::kBelow) {
    return solve_greedy(squares, points, ClipRegion::below(line_y), CriteriaMode::kLine, stats);
  }

  std::vector<UnitSquare> mirrored(squares.begin(), squares.end());
  for (auto& s : mirrored) s.y_top = 2.0 * line_y - s.y_top + 1.0;
  std::vector<Point> mirrored_points(points.begin(), points.end());
  for (auto& p : mirrored_points) p.y = 2.0 * line_y - p.y;

  CoverEntry entry = solve_greedy(mirrored, mirrored_points, ClipRegion::below(line_y),
                                  CriteriaMode::kLine, stats);
  if (entry.region) entry.region->rect = reflect(entry.region->rect, line_y);
  return entry;
}

}  // namespace minply

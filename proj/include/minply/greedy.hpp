#pragma once

#include <compare>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "minply/geometry.hpp"

namespace minply {

// kLine: min ply, leftmost ply-region right side, narrowest region, smallest
// clique. kSlab additionally prefers floating regions right after min ply.
enum class CriteriaMode { kLine, kSlab };

struct Cell {
  int row = 0;
  int col = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// One table entry T[row, col]: a cover of the first row+1 points (in sorted
// order) that uses the column's square for the last of them.
struct CoverEntry {
  bool feasible = false;
  std::vector<SquareId> squares;  // sorted ascending
  int ply = 0;
  std::optional<PlyRegion> region;  // representative (rightmost) ply region
  std::optional<Cell> parent;
};

// Throws Error(kInvalidArgument) if either entry is infeasible.
std::weak_ordering compare_covers(const CoverEntry& a, const CoverEntry& b, CriteriaMode mode);

struct TableStats {
  long cells = 0;
  long candidates = 0;
  long row_bound_checks = 0;
  long row_bound_violations = 0;

  TableStats& operator+=(const TableStats& other);
};

class GreedyTable {
 public:
  // Points are sorted by (x, y, id); columns follow the order of `squares`.
  GreedyTable(std::span<const UnitSquare> squares, std::span<const Point> points,
              ClipRegion clip, CriteriaMode mode);

  int rows() const { return static_cast<int>(points_.size()); }
  int cols() const { return static_cast<int>(squares_.size()); }
  int filled_rows() const { return static_cast<int>(slots_.size()); }

  std::span<const Point> sorted_points() const { return points_; }
  std::span<const UnitSquare> squares() const { return squares_; }
  const ClipRegion& clip() const { return clip_; }
  CriteriaMode mode() const { return mode_; }

  // Computes T[row, col] from the already filled rows. Requires
  // row == filled_rows() or row < filled_rows().
  CoverEntry compute_entry(int row, int col) const;

  void fill_next_row();
  void fill();

  CoverEntry entry(int row, int col) const;
  CoverEntry entry(Cell cell) const { return entry(cell.row, cell.col); }

  // Parent chain from `cell` back to row 0, one cell per row.
  std::vector<Cell> trace_parents(Cell cell) const;

  std::optional<Cell> best_in_row(int row) const;

  const TableStats& stats() const { return stats_; }

 private:
  struct Slot {
    bool feasible = false;
    int ply = 0;
    PlyRegion region;
    int parent_col = -1;
    // Columns of chosen squares that can still overlap a square added for a
    // later point, sorted by x_left.
    std::vector<int> frontier;
  };
  struct Extension {
    int ply = 0;
    PlyRegion region;
  };

  Slot evaluate(int row, int col) const;
  Extension extend(const Slot& parent, int col) const;
  CoverEntry materialize(int row, int col, const Slot& slot) const;
  bool prefer(int ply_a, const PlyRegion& a, int ply_b, const PlyRegion& b) const;

  std::vector<UnitSquare> squares_;
  std::vector<Point> points_;
  ClipRegion clip_;
  CriteriaMode mode_;
  std::unordered_map<SquareId, int> col_of_id_;
  std::vector<std::vector<Slot>> slots_;
  TableStats stats_;
};

// Runs the table to completion and returns the best last-row entry; an
// instance without points yields a feasible empty cover of ply 0.
CoverEntry solve_greedy(std::span<const UnitSquare> squares, std::span<const Point> points,
                        const ClipRegion& clip, CriteriaMode mode, TableStats* stats = nullptr);

enum class Side { kBelow, kAbove };

// All squares meet the line y = line_y and all points lie on `side` of it.
// Points above are handled by reflecting the instance through the line.
// Throws kSquareMissesLine, kPointOffSide or kUncoveredPoint.
CoverEntry solve_mpcsihl1(double line_y, std::span<const UnitSquare> squares,
                          std::span<const Point> points, Side side,
                          TableStats* stats = nullptr);

}  // namespace minply

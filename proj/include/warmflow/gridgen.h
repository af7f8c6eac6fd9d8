#ifndef WARMFLOW_GRIDGEN_H_
#define WARMFLOW_GRIDGEN_H_

#include <cstdint>
#include <variant>
#include <vector>

#include "warmflow/flow_core.h"

namespace warmflow {

// Region membership of the cells of a side x side grid, row-major. Cells
// inside the region are on the sink side.
class PartitionMask {
 public:
  PartitionMask() = default;
  explicit PartitionMask(int side);
  PartitionMask(int side, std::vector<std::uint8_t> cells);

  // Axis-aligned rectangle [row, row + height) x [col, col + width).
  static PartitionMask rectangle(int side, int row, int col, int height,
                                 int width);

  int side() const { return side_; }
  int cell_count() const { return side_ * side_; }
  int index(int row, int col) const { return row * side_ + col; }
  bool contains(int cell) const { return cells_[cell] != 0; }
  bool contains(int row, int col) const { return contains(index(row, col)); }
  void set(int cell, bool in_region) { cells_[cell] = in_region ? 1 : 0; }
  int region_size() const;

  bool operator==(const PartitionMask&) const = default;

 private:
  int side_ = 0;
  std::vector<std::uint8_t> cells_;
};

enum class Attachment {
  kDense,    // every region cell -> t, every other cell <- s
  kWitness,  // only the listed cells
};

struct GridSpec {
  int side = 0;
  Amount big_capacity = 0;  // 0 selects side^4
  PartitionMask region;
  Attachment attachment = Attachment::kDense;
  std::vector<int> source_cells;  // kWitness: cells with an s -> y edge
  std::vector<int> sink_cells;    // kWitness: cells with an x -> t edge
};

Amount grid_big_capacity(const GridSpec& spec);

// Node ids: cell index for cells, s = side^2, t = side^2 + 1. Edge order:
// for each cell in row-major order, (u, right), (right, u), (u, down),
// (down, u); then s -> y edges and x -> t edges in ascending cell order.
// Edges whose endpoints lie on different sides of the region get capacity
// 1; all others get the big capacity. Throws Error if there is no sink cell
// inside the region or no source cell outside it, or (kWitness) a listed
// cell lies on the wrong side.
FlowNetwork make_separable_grid(const GridSpec& spec);

// Grid edges (both directions) that cross the partition.
int boundary_edge_count(const PartitionMask& mask);
// Directed crossing edges that enter the region.
int boundary_edges_into_region(const PartitionMask& mask);

// Shortest-path distance between cells in the 4-neighbour grid.
int grid_distance(int side, int a, int b);

struct Translation {
  int drow = 0;
  int dcol = 0;
};

struct PatchEdit {
  std::vector<int> cells;
  bool in_region = true;
};

// Adds every outside cell with a 4-neighbour inside the region.
struct GrowRing {};

using MaskEdit = std::variant<Translation, PatchEdit, GrowRing>;

struct ShiftResult {
  PartitionMask mask;
  std::vector<int> changed;  // ascending
  int d = 0;                 // max pairwise grid distance among changed
};

ShiftResult d_local_shift(const PartitionMask& mask, const MaskEdit& edit);

std::vector<int> changed_cells(const PartitionMask& before,
                               const PartitionMask& after);
int max_pairwise_distance(int side, const std::vector<int>& cells);

// True iff every pair of changed cells is within grid distance d.
bool verify_d_local(const PartitionMask& before, const PartitionMask& after,
                    int d);

struct LocalSweepConfig {
  int side = 20;
  int steps = 10;  // instances in the sequence
  int d = 3;
  std::uint64_t seed = 1;
};

// A sequence of witness-attached grids sharing one edge list. The region
// starts as the centred side/2 square; each step adds or removes one
// straight run of d + 1 cells on or just outside its edge, so consecutive
// masks are d-local. Edits that change nothing, disconnect the region or enclose an
// outside pocket are redrawn. s attaches to every border cell, t to the
// centre cell.
std::vector<GridSpec> local_sweep(const LocalSweepConfig& config);

}  // namespace warmflow

#endif  // WARMFLOW_GRIDGEN_H_

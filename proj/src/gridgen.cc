#include "warmflow/gridgen.h"

#include <algorithm>
#include <cstdlib>
#include <random>

namespace warmflow {

PartitionMask::PartitionMask(int side)
    : side_(side), cells_(static_cast<std::size_t>(side) * side, 0) {
  if (side <= 0) throw Error("grid side must be positive");
}

PartitionMask::PartitionMask(int side, std::vector<std::uint8_t> cells)
    : side_(side), cells_(std::move(cells)) {
  if (side <= 0) throw Error("grid side must be positive");
  if (cells_.size() != static_cast<std::size_t>(side) * side) {
    throw Error("mask size does not match grid side");
  }
  for (auto& c : cells_) c = c ? 1 : 0;
}

PartitionMask PartitionMask::rectangle(int side, int row, int col, int height,
                                       int width) {
  PartitionMask mask(side);
  for (int r = std::max(row, 0); r < std::min(row + height, side); ++r) {
    for (int c = std::max(col, 0); c < std::min(col + width, side); ++c) {
      mask.set(mask.index(r, c), true);
    }
  }
  return mask;
}

int PartitionMask::region_size() const {
  return static_cast<int>(std::count(cells_.begin(), cells_.end(), 1));
}

Amount grid_big_capacity(const GridSpec& spec) {
  if (spec.big_capacity > 0) return spec.big_capacity;
  const Amount n = spec.side;
  return n * n * n * n;
}

FlowNetwork make_separable_grid(const GridSpec& spec) {
  const int side = spec.side;
  const PartitionMask& mask = spec.region;
  if (side <= 0 || mask.side() != side) {
    throw Error("grid spec: mask side does not match grid side");
  }
  const Amount big = grid_big_capacity(spec);
  if (big <= 1) throw Error("grid spec: big capacity must exceed 1");

  std::vector<int> sources;
  std::vector<int> sinks;
  if (spec.attachment == Attachment::kDense) {
    for (int cell = 0; cell < mask.cell_count(); ++cell) {
      (mask.contains(cell) ? sinks : sources).push_back(cell);
    }
  } else {
    sources = spec.source_cells;
    sinks = spec.sink_cells;
    std::sort(sources.begin(), sources.end());
    std::sort(sinks.begin(), sinks.end());
    for (int cell : sources) {
      if (cell < 0 || cell >= mask.cell_count() || mask.contains(cell)) {
        throw Error("grid spec: source-attached cell must lie outside region");
      }
    }
    for (int cell : sinks) {
      if (cell < 0 || cell >= mask.cell_count() || !mask.contains(cell)) {
        throw Error("grid spec: sink-attached cell must lie inside region");
      }
    }
  }
  if (sinks.empty()) throw Error("grid spec: no sink witness inside region");
  if (sources.empty()) {
    throw Error("grid spec: no source witness outside region");
  }

  const NodeId s = side * side;
  const NodeId t = s + 1;
  std::vector<Edge> edges;
  edges.reserve(4 * static_cast<std::size_t>(side) * side + sources.size() +
                sinks.size());
  auto add_pair = [&](int u, int v) {
    const Amount cap = mask.contains(u) != mask.contains(v) ? 1 : big;
    edges.push_back({u, v, cap});
    edges.push_back({v, u, cap});
  };
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const int u = mask.index(r, c);
      if (c + 1 < side) add_pair(u, u + 1);
      if (r + 1 < side) add_pair(u, u + side);
    }
  }
  for (int cell : sources) edges.push_back({s, cell, big});
  for (int cell : sinks) edges.push_back({cell, t, big});
  return FlowNetwork(side * side + 2, s, t, std::move(edges));
}

int boundary_edge_count(const PartitionMask& mask) {
  return 2 * boundary_edges_into_region(mask);
}

int boundary_edges_into_region(const PartitionMask& mask) {
  const int side = mask.side();
  int count = 0;
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const bool in = mask.contains(r, c);
      if (c + 1 < side && in != mask.contains(r, c + 1)) ++count;
      if (r + 1 < side && in != mask.contains(r + 1, c)) ++count;
    }
  }
  return count;
}

int grid_distance(int side, int a, int b) {
  return std::abs(a / side - b / side) + std::abs(a % side - b % side);
}

std::vector<int> changed_cells(const PartitionMask& before,
                               const PartitionMask& after) {
  if (before.side() != after.side()) throw Error("mask sides differ");
  std::vector<int> out;
  for (int cell = 0; cell < before.cell_count(); ++cell) {
    if (before.contains(cell) != after.contains(cell)) out.push_back(cell);
  }
  return out;
}

int max_pairwise_distance(int side, const std::vector<int>& cells) {
  int best = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      best = std::max(best, grid_distance(side, cells[i], cells[j]));
    }
  }
  return best;
}

bool verify_d_local(const PartitionMask& before, const PartitionMask& after,
                    int d) {
  return max_pairwise_distance(before.side(), changed_cells(before, after)) <=
         d;
}

namespace {

PartitionMask apply_edit(const PartitionMask& mask, const Translation& t) {
  const int side = mask.side();
  PartitionMask out(side);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const int from_r = r - t.drow;
      const int from_c = c - t.dcol;
      if (from_r >= 0 && from_r < side && from_c >= 0 && from_c < side) {
        out.set(out.index(r, c), mask.contains(from_r, from_c));
      }
    }
  }
  return out;
}

PartitionMask apply_edit(const PartitionMask& mask, const PatchEdit& patch) {
  PartitionMask out = mask;
  for (int cell : patch.cells) {
    if (cell < 0 || cell >= mask.cell_count()) {
      throw Error("patch cell out of range");
    }
    out.set(cell, patch.in_region);
  }
  return out;
}

PartitionMask apply_edit(const PartitionMask& mask, const GrowRing&) {
  const int side = mask.side();
  PartitionMask out = mask;
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      if (mask.contains(r, c)) continue;
      const bool touches = (r > 0 && mask.contains(r - 1, c)) ||
                           (r + 1 < side && mask.contains(r + 1, c)) ||
                           (c > 0 && mask.contains(r, c - 1)) ||
                           (c + 1 < side && mask.contains(r, c + 1));
      if (touches) out.set(out.index(r, c), true);
    }
  }
  return out;
}

}  // namespace

ShiftResult d_local_shift(const PartitionMask& mask, const MaskEdit& edit) {
  ShiftResult result;
  result.mask = std::visit([&](const auto& e) { return apply_edit(mask, e); },
                           edit);
  result.changed = changed_cells(mask, result.mask);
  result.d = max_pairwise_distance(mask.side(), result.changed);
  return result;
}

namespace {

// Cells reachable from `starts` through cells whose membership is `inside`.
std::vector<bool> flood(const PartitionMask& mask, const std::vector<int>& starts,
                        bool inside) {
  const int side = mask.side();
  std::vector<bool> seen(static_cast<std::size_t>(mask.cell_count()), false);
  std::vector<int> stack;
  for (int c : starts) {
    if (mask.contains(c) == inside && !seen[c]) {
      seen[c] = true;
      stack.push_back(c);
    }
  }
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    const int r = c / side, col = c % side;
    const int next[4][2] = {{r - 1, col}, {r + 1, col}, {r, col - 1}, {r, col + 1}};
    for (const auto& [nr, nc] : next) {
      if (nr < 0 || nc < 0 || nr >= side || nc >= side) continue;
      const int n = mask.index(nr, nc);
      if (!seen[n] && mask.contains(n) == inside) {
        seen[n] = true;
        stack.push_back(n);
      }
    }
  }
  return seen;
}

// Region connected and holding the centre; outside connected to the border.
bool well_shaped(const PartitionMask& mask, int centre,
                 const std::vector<int>& border) {
  if (!mask.contains(centre)) return false;
  const auto in = flood(mask, {centre}, true);
  const auto out = flood(mask, border, false);
  for (int c = 0; c < mask.cell_count(); ++c) {
    if (mask.contains(c) ? !in[c] : !out[c]) return false;
  }
  return true;
}

}  // namespace

std::vector<GridSpec> local_sweep(const LocalSweepConfig& config) {
  const int side = config.side;
  if (side < 8) throw Error("local sweep needs side >= 8");
  if (config.d < 0 || config.d + 1 > side / 2) {
    throw Error("local sweep: d out of range for this side");
  }
  if (config.steps < 1) throw Error("local sweep needs at least one step");

  const int lo = side / 4;
  const int width = side / 2;
  PartitionMask mask = PartitionMask::rectangle(side, lo, lo, width, width);

  GridSpec base;
  base.side = side;
  base.attachment = Attachment::kWitness;
  const int centre = mask.index(side / 2, side / 2);
  base.sink_cells = {centre};
  for (int cell = 0; cell < mask.cell_count(); ++cell) {
    const int r = cell / side;
    const int c = cell % side;
    if (r == 0 || c == 0 || r == side - 1 || c == side - 1) {
      base.source_cells.push_back(cell);
    }
  }

  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<int> pick_side(0, 3);
  std::uniform_int_distribution<int> pick_offset(0, width - (config.d + 1));
  std::bernoulli_distribution coin(0.5);

  std::vector<GridSpec> out;
  out.reserve(static_cast<std::size_t>(config.steps));
  for (int step = 0; step < config.steps; ++step) {
    // Edits that change nothing or break the region's shape are redrawn.
    for (int attempt = 0; step > 0; ++attempt) {
      if (attempt == 10000) throw Error("local sweep: no admissible edit");
      const int which = pick_side(rng);
      const int offset = pick_offset(rng);
      const bool outer = coin(rng);
      const bool in_region = coin(rng);
      // Row/column just outside or on the square's edge.
      int fixed = 0;
      switch (which) {
        case 0: fixed = outer ? lo - 1 : lo; break;
        case 1: fixed = outer ? lo + width : lo + width - 1; break;
        case 2: fixed = outer ? lo - 1 : lo; break;
        default: fixed = outer ? lo + width : lo + width - 1; break;
      }
      PatchEdit patch{{}, in_region};
      for (int i = 0; i <= config.d; ++i) {
        const int along = lo + offset + i;
        patch.cells.push_back(which < 2 ? mask.index(fixed, along)
                                        : mask.index(along, fixed));
      }
      ShiftResult next = d_local_shift(mask, patch);
      if (next.changed.empty() || !well_shaped(next.mask, centre, base.source_cells)) {
        continue;
      }
      mask = std::move(next.mask);
      break;
    }
    GridSpec spec = base;
    spec.region = mask;
    out.push_back(std::move(spec));
  }
  return out;
}

}  // namespace warmflow

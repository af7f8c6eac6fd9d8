#ifndef WARMFLOW_BENCH_H_
#define WARMFLOW_BENCH_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "warmflow/augment.h"
#include "warmflow/flow_core.h"
#include "warmflow/warmstart.h"

namespace warmflow {

enum class RunMode { kCold, kWarm };

std::string_view mode_name(RunMode mode);

// One solve. Cold runs leave the warm-only counters at zero.
struct BenchRecord {
  std::string instance;
  RunMode mode = RunMode::kCold;
  Subroutine subroutine = Subroutine::kEdmondsKarp;
  Amount value = 0;
  Amount clamp_total = 0;
  Amount post_clamp_excess = 0;
  Amount post_clamp_deficit = 0;
  PathStats projection;
  PathStats excess_to_deficit;  // first projection round alone
  Amount feasible_value = 0;
  PathStats augmenting;
  double clamp_seconds = 0;
  double projection_seconds = 0;
  double optimize_seconds = 0;

  std::int64_t node_expansions() const {
    return projection.node_expansions + augmenting.node_expansions;
  }
  double total_seconds() const {
    return clamp_seconds + projection_seconds + optimize_seconds;
  }
};

// Fixed column order; csv_header() ends without a newline.
std::string csv_header();
std::string csv_row(const BenchRecord& record);
void write_csv(std::ostream& out, std::span<const BenchRecord> records);

struct SequenceInstance {
  std::string id;
  FlowNetwork network;
};

BenchRecord cold_record(const std::string& id, const FlowNetwork& net,
                        Subroutine sub, Flow* optimum = nullptr);
BenchRecord warm_record(const std::string& id, const FlowNetwork& net,
                        const Flow& prediction, Subroutine sub,
                        Flow* optimum = nullptr);

// For every instance and subroutine: a cold solve, and from the second
// instance on a warm solve seeded with the previous instance's cold optimum
// for the same subroutine. Throws Error if consecutive instances do not
// share an edge list.
std::vector<BenchRecord> run_sequence(std::span<const SequenceInstance> instances,
                                      std::span<const Subroutine> subroutines);

struct BenchConfig {
  std::vector<SequenceInstance> instances;
  std::vector<Subroutine> subroutines;
};

// JSON config. "source" selects the instance family:
//   "grid":             side, steps, d, seed
//   "synthetic-images": size, frames, object_size, shift, noise, seed, C, sigma
//   "images":           images (pgm paths), seeds (seed file), C, sigma
//   "dimacs":           networks (paths)
// plus optional "subroutines" (default ["ek"]). Relative paths resolve
// against base_dir. seed_override replaces the config's seed when set.
BenchConfig load_bench_config(std::string_view json_text,
                              const std::string& base_dir,
                              std::optional<std::uint64_t> seed_override = {});

}  // namespace warmflow

#endif  // WARMFLOW_BENCH_H_

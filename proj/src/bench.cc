#include "warmflow/bench.h"

#include <chrono>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "warmflow/gridgen.h"
#include "warmflow/io.h"
#include "warmflow/segment.h"

namespace warmflow {

std::string_view mode_name(RunMode mode) {
  return mode == RunMode::kCold ? "cold" : "warm";
}

std::string csv_header() {
  return "instance,mode,subroutine,value,clamp_total,post_clamp_excess,"
         "post_clamp_deficit,projection_paths,projection_mean_length,"
         "projection_max_length,excess_to_deficit_paths,"
         "excess_to_deficit_mean_length,feasible_value,augmenting_paths,"
         "augmenting_mean_length,augmenting_max_length,projection_expansions,"
         "augment_expansions,node_expansions,clamp_seconds,"
         "projection_seconds,optimize_seconds,total_seconds";
}

std::string csv_row(const BenchRecord& r) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  out << r.instance << ',' << mode_name(r.mode) << ','
      << subroutine_name(r.subroutine) << ',' << r.value << ','
      << r.clamp_total << ',' << r.post_clamp_excess << ','
      << r.post_clamp_deficit << ',' << r.projection.path_count << ','
      << r.projection.mean_length() << ',' << r.projection.max_length << ','
      << r.excess_to_deficit.path_count << ','
      << r.excess_to_deficit.mean_length() << ',' << r.feasible_value << ','
      << r.augmenting.path_count << ',' << r.augmenting.mean_length() << ','
      << r.augmenting.max_length << ',' << r.projection.node_expansions << ','
      << r.augmenting.node_expansions << ',' << r.node_expansions() << ','
      << r.clamp_seconds << ',' << r.projection_seconds << ','
      << r.optimize_seconds << ',' << r.total_seconds();
  return out.str();
}

void write_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << csv_header() << '\n';
  for (const BenchRecord& r : records) out << csv_row(r) << '\n';
}

namespace {

double seconds(std::chrono::nanoseconds d) {
  return std::chrono::duration<double>(d).count();
}

}  // namespace

BenchRecord cold_record(const std::string& id, const FlowNetwork& net,
                        Subroutine sub, Flow* optimum) {
  MaxFlowResult result = max_flow(net, sub);
  BenchRecord r;
  r.instance = id;
  r.mode = RunMode::kCold;
  r.subroutine = sub;
  r.value = result.report.value;
  r.augmenting = result.report.stats;
  r.optimize_seconds = seconds(result.report.duration);
  if (optimum) *optimum = std::move(result.flow);
  return r;
}

BenchRecord warm_record(const std::string& id, const FlowNetwork& net,
                        const Flow& prediction, Subroutine sub,
                        Flow* optimum) {
  WarmStartResult result = warm_start_solve(net, prediction, sub);
  const WarmStartReport& rep = result.report;
  BenchRecord r;
  r.instance = id;
  r.mode = RunMode::kWarm;
  r.subroutine = sub;
  r.value = rep.optimal_value;
  r.clamp_total = rep.clamp_total;
  r.post_clamp_excess = rep.post_clamp_excess;
  r.post_clamp_deficit = rep.post_clamp_deficit;
  r.projection = rep.projection_stats;
  r.excess_to_deficit =
      rep.round_stats[static_cast<int>(ProjectionRound::kExcessToDeficit)];
  r.feasible_value = rep.feasible_value;
  r.augmenting = rep.augment_stats;
  r.clamp_seconds = seconds(rep.phase_durations.clamp);
  r.projection_seconds = seconds(rep.phase_durations.projection);
  r.optimize_seconds = seconds(rep.phase_durations.optimize);
  if (optimum) *optimum = std::move(result.flow);
  return r;
}

std::vector<BenchRecord> run_sequence(std::span<const SequenceInstance> instances,
                                      std::span<const Subroutine> subroutines) {
  for (std::size_t i = 1; i < instances.size(); ++i) {
    if (!instances[i].network.same_structure(instances[i - 1].network)) {
      throw Error("instance '" + instances[i].id +
                  "' does not share the previous instance's edge list");
    }
  }
  std::vector<BenchRecord> records;
  std::vector<Flow> previous(subroutines.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const SequenceInstance& inst = instances[i];
    for (std::size_t k = 0; k < subroutines.size(); ++k) {
      Flow optimum;
      records.push_back(cold_record(inst.id, inst.network, subroutines[k], &optimum));
      if (i > 0) {
        records.push_back(
            warm_record(inst.id, inst.network, previous[k], subroutines[k]));
      }
      previous[k] = std::move(optimum);
    }
  }
  return records;
}

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

std::string frame_id(const char* prefix, std::size_t i) {
  std::ostringstream out;
  out << prefix;
  out.width(3);
  out.fill('0');
  out << i;
  return out.str();
}

SegConfig seg_config_from(const nlohmann::json& j) {
  SegConfig cfg;
  cfg.penalty = j.value("C", cfg.penalty);
  cfg.sigma = j.value("sigma", cfg.sigma);
  cfg.terminal = j.value("M", cfg.terminal);
  return cfg;
}

}  // namespace

BenchConfig load_bench_config(std::string_view json_text,
                              const std::string& base_dir,
                              std::optional<std::uint64_t> seed_override) {
  BenchConfig config;
  try {
    const auto j = nlohmann::json::parse(json_text);
    for (const auto& name :
         j.value("subroutines", std::vector<std::string>{"ek"})) {
      config.subroutines.push_back(parse_subroutine(name));
    }
    const std::string source = j.at("source").get<std::string>();
    const std::uint64_t seed =
        seed_override.value_or(j.value("seed", std::uint64_t{1}));

    if (source == "grid") {
      LocalSweepConfig sweep;
      sweep.side = j.value("side", sweep.side);
      sweep.steps = j.value("steps", sweep.steps);
      sweep.d = j.value("d", sweep.d);
      sweep.seed = seed;
      const auto specs = local_sweep(sweep);
      for (std::size_t i = 0; i < specs.size(); ++i) {
        config.instances.push_back(
            {frame_id("grid", i), make_separable_grid(specs[i])});
      }
    } else if (source == "synthetic-images") {
      SyntheticSequenceConfig sc;
      sc.size = j.value("size", sc.size);
      sc.frames = j.value("frames", sc.frames);
      sc.object_size = j.value("object_size", sc.object_size);
      sc.shift_per_frame = j.value("shift", sc.shift_per_frame);
      sc.noise = j.value("noise", sc.noise);
      sc.seed = seed;
      const SyntheticSequence seq = synthetic_sequence(sc);
      const SegConfig cfg = seg_config_from(j);
      for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        config.instances.push_back(
            {frame_id("frame", i),
             build_seg_network(seq.frames[i], seq.seeds, cfg).network});
      }
    } else if (source == "images") {
      const SeedSet seeds =
          read_seeds_file(resolve(base_dir, j.at("seeds").get<std::string>()));
      const SegConfig cfg = seg_config_from(j);
      for (const auto& path : j.at("images").get<std::vector<std::string>>()) {
        const GrayImage img = read_pgm_file(resolve(base_dir, path));
        config.instances.push_back(
            {path, build_seg_network(img, seeds, cfg).network});
      }
    } else if (source == "dimacs") {
      for (const auto& path : j.at("networks").get<std::vector<std::string>>()) {
        config.instances.push_back(
            {path, parse_dimacs(read_text_file(resolve(base_dir, path)))});
      }
    } else {
      throw Error("bench config: unknown source '" + source + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bench config: ") + e.what());
  }
  if (config.instances.empty()) throw Error("bench config: no instances");
  if (config.subroutines.empty()) throw Error("bench config: no subroutines");
  return config;
}

}  // namespace warmflow

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "warmflow/augment.h"
#include "warmflow/bench.h"
#include "warmflow/flow_core.h"
#include "warmflow/gridgen.h"
#include "warmflow/io.h"
#include "warmflow/learn.h"
#include "warmflow/segment.h"
#include "warmflow/warmstart.h"

namespace warmflow {
namespace {

const std::map<std::string, Subroutine> kSubroutines = {
    {"ek", Subroutine::kEdmondsKarp}, {"dinic", Subroutine::kDinic}};

void write_csv_file(const std::string& path,
                    const std::vector<BenchRecord>& records) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  write_csv(out, records);
}

struct SolveArgs {
  std::string network;
  std::string format = "dimacs";
  std::string prediction;
  std::string flow_out;
  std::string csv;
  Subroutine sub = Subroutine::kEdmondsKarp;
};

int run_solve(const SolveArgs& args, std::ostream& out) {
  const FlowNetwork net = parse_dimacs(read_text_file(args.network));
  Flow optimum;
  BenchRecord record;
  if (args.prediction.empty()) {
    record = cold_record(args.network, net, args.sub, &optimum);
    out << "value " << record.value << '\n';
  } else {
    const Flow prediction = parse_flow(read_text_file(args.prediction));
    require_indexed(net, prediction);
    record = warm_record(args.network, net, prediction, args.sub, &optimum);
    out << "value " << record.value << '\n';
    out << "clamped " << record.clamp_total << ", projection paths "
        << record.projection.path_count << ", augmenting paths "
        << record.augmenting.path_count << '\n';
  }
  if (!args.flow_out.empty()) write_text_file(args.flow_out, write_flow(optimum));
  if (!args.csv.empty()) write_csv_file(args.csv, {record});
  return 0;
}

struct BenchArgs {
  std::string config;
  std::vector<std::string> dimacs;
  std::string csv;
  std::optional<std::uint64_t> seed;
  std::vector<Subroutine> subs;
};

int run_bench(const BenchArgs& args, std::ostream& out) {
  BenchConfig config;
  if (!args.config.empty()) {
    const std::string dir =
        std::filesystem::path(args.config).parent_path().string();
    config = load_bench_config(read_text_file(args.config), dir, args.seed);
  } else if (!args.dimacs.empty()) {
    for (const auto& path : args.dimacs) {
      config.instances.push_back({path, parse_dimacs(read_text_file(path))});
    }
    config.subroutines = {Subroutine::kEdmondsKarp};
  } else {
    throw Error("bench needs --config or --dimacs");
  }
  if (!args.subs.empty()) config.subroutines = args.subs;
  const auto records = run_sequence(config.instances, config.subroutines);
  if (args.csv.empty()) {
    write_csv(out, records);
  } else {
    write_csv_file(args.csv, records);
    out << "wrote " << records.size() << " records to " << args.csv << '\n';
  }
  return 0;
}

struct GenGridArgs {
  LocalSweepConfig sweep;
  std::string out_dir = ".";
  bool dense = false;
};

int run_gen_grid(const GenGridArgs& args, std::ostream& out) {
  std::vector<GridSpec> specs;
  if (args.dense) {
    GridSpec spec;
    spec.side = args.sweep.side;
    const int lo = spec.side / 4;
    spec.region = PartitionMask::rectangle(spec.side, lo, lo, spec.side / 2,
                                           spec.side / 2);
    specs.push_back(spec);
  } else {
    specs = local_sweep(args.sweep);
  }
  std::filesystem::create_directories(args.out_dir);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    std::ostringstream stem;
    stem << "grid_";
    stem.width(3);
    stem.fill('0');
    stem << i;
    const auto base = std::filesystem::path(args.out_dir) / stem.str();
    const FlowNetwork net = make_separable_grid(specs[i]);
    write_text_file(base.string() + ".max", write_dimacs(net));
    write_text_file(base.string() + ".json", grid_spec_to_json(specs[i]));
    out << stem.str() << ": nodes " << net.node_count() << ", edges "
        << net.edge_count() << ", boundary edges into region "
        << boundary_edges_into_region(specs[i].region);
    if (i > 0) {
      out << ", d "
          << max_pairwise_distance(
                 specs[i].side,
                 changed_cells(specs[i - 1].region, specs[i].region));
    }
    out << '\n';
  }
  return 0;
}

struct SegmentArgs {
  std::string image;
  std::string seeds;
  std::string overlay;
  std::string mask;
  std::string network_out;
  std::string prediction;
  std::string flow_out;
  Subroutine sub = Subroutine::kEdmondsKarp;
  SegConfig cfg;
};

int run_segment(const SegmentArgs& args, std::ostream& out) {
  const GrayImage img = read_pgm_file(args.image);
  const SeedSet seeds = read_seeds_file(args.seeds);
  const SegNetwork seg = build_seg_network(img, seeds, args.cfg);
  if (!args.network_out.empty()) {
    write_text_file(args.network_out, write_dimacs(seg.network));
  }
  Flow optimum;
  BenchRecord record;
  if (args.prediction.empty()) {
    record = cold_record(args.image, seg.network, args.sub, &optimum);
  } else {
    const Flow prediction = parse_flow(read_text_file(args.prediction));
    require_indexed(seg.network, prediction);
    record = warm_record(args.image, seg.network, prediction, args.sub, &optimum);
  }
  const std::vector<bool> labels =
      extract_segmentation(seg, min_cut(seg.network, optimum));
  int object = 0;
  for (bool b : labels) object += b ? 1 : 0;
  out << "value " << record.value << '\n';
  out << "object pixels " << object << " of " << img.pixel_count() << '\n';
  if (record.mode == RunMode::kWarm) {
    out << "clamped " << record.clamp_total << ", projection paths "
        << record.projection.path_count << ", augmenting paths "
        << record.augmenting.path_count << '\n';
  }
  if (!args.flow_out.empty()) write_text_file(args.flow_out, write_flow(optimum));
  if (!args.overlay.empty()) {
    std::ofstream f(args.overlay, std::ios::binary);
    if (!f) throw Error("cannot write '" + args.overlay + "'");
    write_ppm(f, render_overlay(img, labels));
  }
  if (!args.mask.empty()) {
    GrayImage m(img.width(), img.height());
    for (int p = 0; p < img.pixel_count(); ++p) {
      m.set(p % img.width(), p / img.width(), labels[p] ? 255 : 0);
    }
    std::ofstream f(args.mask, std::ios::binary);
    if (!f) throw Error("cannot write '" + args.mask + "'");
    write_pgm(f, m);
  }
  return 0;
}

struct LearnArgs {
  std::string network;
  int samples = 10;
  std::uint64_t seed = 0;
  std::string law = "uniform";
  Amount k = 0;
  std::string out_path;
};

int run_learn(const LearnArgs& args, std::ostream& out) {
  InstanceDistribution dist{parse_dimacs(read_text_file(args.network))};
  if (args.law == "uniform") {
    dist.law = CapacityLaw::kUniform;
  } else if (args.law == "perturb") {
    dist.law = CapacityLaw::kPerturbation;
  } else {
    throw Error("unknown law '" + args.law + "'");
  }
  dist.k = args.k;
  dist.seed = args.seed;
  const SampleSet samples = sample_instances(dist, args.samples);
  const Flow prediction = median_erm(samples);
  const Rational risk = empirical_risk(prediction, samples);
  const std::string text = write_flow(prediction);
  if (args.out_path.empty()) {
    out << text;
  } else {
    write_text_file(args.out_path, text);
    out << "wrote prediction to " << args.out_path << " (empirical risk "
        << risk.numerator << '/' << risk.denominator << ")\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"warmflow: warm-started Ford-Fulkerson max-flow toolkit"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one max-flow instance");
  solve_cmd->add_option("network", solve.network, "DIMACS max-flow file")
      ->required()
      ->check(CLI::ExistingFile);
  solve_cmd->add_option("--format", solve.format, "Network format")
      ->check(CLI::IsMember({"dimacs"}));
  solve_cmd->add_option("--prediction", solve.prediction,
                        "Flow file to warm-start from")
      ->check(CLI::ExistingFile);
  solve_cmd->add_option("--subroutine", solve.sub, "ek or dinic")
      ->transform(CLI::CheckedTransformer(kSubroutines));
  solve_cmd->add_option("--flow-out", solve.flow_out, "Write the optimal flow");
  solve_cmd->add_option("--csv", solve.csv, "Write a one-row CSV report");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand(
      "bench", "Cold vs warm solves over an instance sequence");
  bench_cmd->add_option("--config", bench.config, "JSON sequence config")
      ->check(CLI::ExistingFile);
  bench_cmd->add_option("--dimacs", bench.dimacs,
                        "DIMACS files forming the sequence, in order")
      ->check(CLI::ExistingFile);
  bench_cmd->add_option("--csv", bench.csv, "CSV output path (default stdout)");
  bench_cmd->add_option("--seed", bench.seed, "Override the config seed");
  bench_cmd->add_option("--subroutine", bench.subs, "ek and/or dinic")
      ->transform(CLI::CheckedTransformer(kSubroutines));

  GenGridArgs gen;
  auto* gen_cmd = app.add_subcommand(
      "gen-grid", "Write a d-local separable grid sequence as DIMACS");
  gen_cmd->add_option("--side", gen.sweep.side, "Grid side n")
      ->check(CLI::Range(8, 4096));
  gen_cmd->add_option("--steps", gen.sweep.steps, "Instances in the sequence")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--d", gen.sweep.d, "Locality radius");
  gen_cmd->add_option("--seed", gen.sweep.seed, "RNG seed");
  gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory");
  gen_cmd->add_flag("--dense", gen.dense,
                    "Single grid with dense terminal attachment");

  SegmentArgs seg;
  auto* seg_cmd = app.add_subcommand(
      "segment", "Segment a graymap with object/background seeds");
  seg_cmd->add_option("image", seg.image, "PGM image")
      ->required()
      ->check(CLI::ExistingFile);
  seg_cmd->add_option("seeds", seg.seeds, "Seed file")
      ->required()
      ->check(CLI::ExistingFile);
  seg_cmd->add_option("--overlay", seg.overlay, "PPM overlay output");
  seg_cmd->add_option("--mask", seg.mask, "PGM label mask output");
  seg_cmd->add_option("--network", seg.network_out, "DIMACS network output");
  seg_cmd->add_option("--prediction", seg.prediction, "Warm-start flow file")
      ->check(CLI::ExistingFile);
  seg_cmd->add_option("--flow-out", seg.flow_out, "Write the optimal flow");
  seg_cmd->add_option("--subroutine", seg.sub, "ek or dinic")
      ->transform(CLI::CheckedTransformer(kSubroutines));
  seg_cmd->add_option("--C", seg.cfg.penalty, "Boundary penalty scale")
      ->check(CLI::PositiveNumber);
  seg_cmd->add_option("--sigma", seg.cfg.sigma, "Contrast scale")
      ->check(CLI::PositiveNumber);

  LearnArgs learn;
  auto* learn_cmd = app.add_subcommand(
      "learn", "Sample capacities and write the median prediction");
  learn_cmd->add_option("network", learn.network,
                        "DIMACS network giving capacity upper bounds")
      ->required()
      ->check(CLI::ExistingFile);
  learn_cmd->add_option("--samples", learn.samples, "Number of samples")
      ->check(CLI::PositiveNumber);
  learn_cmd->add_option("--seed", learn.seed, "RNG seed");
  learn_cmd->add_option("--law", learn.law, "uniform or perturb")
      ->check(CLI::IsMember({"uniform", "perturb"}));
  learn_cmd->add_option("--k", learn.k, "Perturbation radius")
      ->check(CLI::NonNegativeNumber);
  learn_cmd->add_option("-o,--out", learn.out_path, "Output flow file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*solve_cmd) return run_solve(solve, out);
    if (*bench_cmd) return run_bench(bench, out);
    if (*gen_cmd) return run_gen_grid(gen, out);
    if (*seg_cmd) return run_segment(seg, out);
    if (*learn_cmd) return run_learn(learn, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace warmflow

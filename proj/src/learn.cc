#include "warmflow/learn.h"

#include <algorithm>
#include <random>

#include "warmflow/augment.h"

namespace warmflow {

Flow canonical_optimum(const FlowNetwork& net) {
  return max_flow(net, Subroutine::kEdmondsKarp).flow;
}

std::vector<Amount> sample_capacities(const InstanceDistribution& dist,
                                      std::uint64_t index) {
  const FlowNetwork& base = dist.base;
  const auto m = static_cast<std::size_t>(base.edge_count());
  if (!dist.pattern.empty() && dist.pattern.size() != m) {
    throw Error("capacity pattern length does not match edge count");
  }
  if (dist.k < 0) throw Error("perturbation radius must be non-negative");

  std::seed_seq seq{static_cast<std::uint32_t>(dist.seed),
                    static_cast<std::uint32_t>(dist.seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<Amount> caps(m);
  for (std::size_t e = 0; e < m; ++e) {
    const Amount upper = base.capacity(static_cast<EdgeId>(e));
    if (dist.law == CapacityLaw::kUniform) {
      caps[e] = std::uniform_int_distribution<Amount>(0, upper)(rng);
    } else {
      const Amount center = dist.pattern.empty() ? upper : dist.pattern[e];
      const Amount delta =
          std::uniform_int_distribution<Amount>(-dist.k, dist.k)(rng);
      caps[e] = std::clamp<Amount>(center + delta, 0, upper);
    }
  }
  return caps;
}

SampleSet sample_instances(const InstanceDistribution& dist, int count) {
  if (count < 1) throw Error("sample count must be at least 1");
  SampleSet out;
  out.capacities.reserve(static_cast<std::size_t>(count));
  out.optima.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.capacities.push_back(
        sample_capacities(dist, static_cast<std::uint64_t>(i)));
    out.optima.push_back(
        canonical_optimum(dist.base.with_capacities(out.capacities.back())));
  }
  return out;
}

Flow median_erm(std::span<const Flow> optima) {
  if (optima.empty()) throw Error("median_erm needs at least one sample");
  const std::size_t m = optima.front().size();
  for (const Flow& f : optima) {
    if (f.size() != m) throw Error("sample flows differ in length");
  }
  // Lower median: index (s - 1) / 2 of the sorted column.
  const std::size_t mid = (optima.size() - 1) / 2;
  std::vector<Amount> column(optima.size());
  std::vector<Amount> out(m);
  for (std::size_t e = 0; e < m; ++e) {
    for (std::size_t j = 0; j < optima.size(); ++j) {
      column[j] = optima[j][static_cast<EdgeId>(e)];
    }
    std::nth_element(column.begin(), column.begin() + mid, column.end());
    out[e] = column[mid];
  }
  return Flow(std::move(out));
}

Rational empirical_risk(const Flow& f, std::span<const Flow> optima) {
  if (optima.empty()) throw Error("empirical_risk needs at least one sample");
  Rational risk{0, static_cast<std::int64_t>(optima.size())};
  for (const Flow& g : optima) risk.numerator += l1_distance(f, g);
  return risk;
}

}  // namespace warmflow

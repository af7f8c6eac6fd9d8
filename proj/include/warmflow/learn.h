#ifndef WARMFLOW_LEARN_H_
#define WARMFLOW_LEARN_H_

#include <cstdint>
#include <span>
#include <vector>

#include "warmflow/flow_core.h"

namespace warmflow {

// The maximum flow found by Edmonds-Karp from zero with fixed tie-breaking.
// Bit-identical for identical inputs.
Flow canonical_optimum(const FlowNetwork& net);

enum class CapacityLaw {
  kUniform,       // c_e^i ~ U{0..c_e}
  kPerturbation,  // c_e^i = clamp(pattern_e + U{-k..k}, 0, c_e)
};

struct InstanceDistribution {
  FlowNetwork base;  // capacities act as per-edge upper bounds
  CapacityLaw law = CapacityLaw::kUniform;
  Amount k = 0;
  std::vector<Amount> pattern;  // empty means the base capacities
  std::uint64_t seed = 0;
};

struct SampleSet {
  std::vector<std::vector<Amount>> capacities;
  std::vector<Flow> optima;

  std::size_t size() const { return optima.size(); }
};

// Capacity vector of sample `index`. Each sample draws from its own stream
// seeded by (seed, index), so samples can be generated independently.
std::vector<Amount> sample_capacities(const InstanceDistribution& dist,
                                      std::uint64_t index);

SampleSet sample_instances(const InstanceDistribution& dist, int count);

// Per-edge lower median of the sample optima.
Flow median_erm(std::span<const Flow> optima);
inline Flow median_erm(const SampleSet& samples) {
  return median_erm(samples.optima);
}

struct Rational {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  bool operator==(const Rational&) const = default;
};

// sum_j ||f - f*(c^j)||_1 over s, left unreduced.
Rational empirical_risk(const Flow& f, std::span<const Flow> optima);
inline Rational empirical_risk(const Flow& f, const SampleSet& samples) {
  return empirical_risk(f, samples.optima);
}

}  // namespace warmflow

#endif  // WARMFLOW_LEARN_H_

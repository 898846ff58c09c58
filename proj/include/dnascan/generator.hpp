#pragma once

#include <iosfwd>

#include "dnascan/core.hpp"
#include "dnascan/rng.hpp"

namespace dnascan {

/// All scenario generation knobs. prob_t is the remainder 1 - (a + c + g).
struct ScenarioParams {
  std::uint64_t seq_length = 0;
  double prob_a = 0.25;
  double prob_c = 0.25;
  double prob_g = 0.25;
  std::uint64_t n_random_patterns = 0;
  std::uint64_t rand_len_mean = 0;
  std::uint64_t rand_len_dev = 0;
  std::uint64_t n_sample_patterns = 0;
  std::uint64_t samp_len_mean = 0;
  std::uint64_t samp_len_dev = 0;
  std::uint64_t samp_loc_mean = 0;
  std::uint64_t samp_loc_dev = 0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

struct Scenario {
  Sequence sequence;
  PatternSet patterns;
};

/// Draw budget reserved per pattern in the global stream. Every pattern p
/// reads its draws from offset seq_length + p * stride: the length draw at
/// +0, the location draw at +1 (reserved but unused for random patterns),
/// and content draws from +2. The stride is sized for the longest length
/// any configured pattern family can draw, so budgets never overlap.
std::uint64_t pattern_stream_stride(const ScenarioParams& params);

/// Uniform integer in [mean - dev, mean + dev], clamped below at 1.
/// Consumes exactly one draw.
std::uint64_t draw_bounded_deviate(Rng& rng, std::uint64_t mean, std::uint64_t dev);

/// Position i takes its base from draw i via cumulative probability
/// thresholds. Bit-identical for any worker count: each worker skips to its
/// block's offset in the one global stream.
Sequence generate_sequence(const ScenarioParams& params, unsigned workers = 1);

/// pattern_index is the pattern's global index in the scenario's PatternSet.
Pattern generate_random_pattern(std::uint64_t pattern_index, const ScenarioParams& params);
Pattern extract_sample_pattern(std::uint64_t pattern_index, const ScenarioParams& params,
                               const Sequence& seq);

/// Sequence plus patterns in fixed order: all random patterns first, then
/// all sample patterns. Pure function of params.
Scenario build_scenario(const ScenarioParams& params, unsigned workers = 1);

/// Debug dump: line 1 the sequence as ACGT text, then one pattern per line.
void dump_scenario(const Scenario& scenario, std::ostream& out);

}  // namespace dnascan

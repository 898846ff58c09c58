#include "dnascan/generator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace dnascan {

namespace {

constexpr std::uint64_t kMaxLength = 1ULL << 48;
constexpr std::uint64_t kMaxCount = 1ULL << 32;

struct BaseThresholds {
  u128 a, c, g;
};

BaseThresholds thresholds_of(const ScenarioParams& params) {
  BaseThresholds t;
  t.a = prob_threshold(params.prob_a);
  t.c = prob_threshold(params.prob_a + params.prob_c);
  t.g = prob_threshold(params.prob_a + params.prob_c + params.prob_g);
  return t;
}

Nucleotide pick_base(std::uint64_t draw, const BaseThresholds& t) {
  const u128 v = draw;
  if (v < t.a) return kBaseA;
  if (v < t.c) return kBaseC;
  if (v < t.g) return kBaseG;
  return kBaseT;
}

void check_prob(double p, const char* name) {
  if (!(p >= 0.0) || !(p <= 1.0) || !std::isfinite(p))
    throw std::invalid_argument(std::string(name) + " must be in [0, 1]");
}

}  // namespace

void ScenarioParams::validate() const {
  if (seq_length == 0) throw std::invalid_argument("seq_length must be >= 1");
  if (seq_length > kMaxLength) throw std::invalid_argument("seq_length too large");
  check_prob(prob_a, "prob_a");
  check_prob(prob_c, "prob_c");
  check_prob(prob_g, "prob_g");
  if (prob_a + prob_c + prob_g > 1.0 + 1e-9)
    throw std::invalid_argument("base probabilities must sum to at most 1");
  if (n_random_patterns > kMaxCount || n_sample_patterns > kMaxCount)
    throw std::invalid_argument("pattern count too large");
  if (n_random_patterns > 0 && rand_len_mean == 0)
    throw std::invalid_argument("rand_len_mean must be >= 1 when random patterns are requested");
  if (n_sample_patterns > 0 && samp_len_mean == 0)
    throw std::invalid_argument("samp_len_mean must be >= 1 when sample patterns are requested");
  if (rand_len_mean > kMaxCount || rand_len_dev > kMaxCount || samp_len_mean > kMaxCount ||
      samp_len_dev > kMaxCount)
    throw std::invalid_argument("pattern length parameter too large");
  if (samp_loc_mean > kMaxLength || samp_loc_dev > kMaxLength)
    throw std::invalid_argument("sample location parameter too large");
}

std::uint64_t pattern_stream_stride(const ScenarioParams& params) {
  std::uint64_t bound = 1;
  if (params.n_random_patterns > 0)
    bound = std::max(bound, params.rand_len_mean + params.rand_len_dev);
  if (params.n_sample_patterns > 0)
    bound = std::max(bound, params.samp_len_mean + params.samp_len_dev);
  return 2 + bound;
}

std::uint64_t draw_bounded_deviate(Rng& rng, std::uint64_t mean, std::uint64_t dev) {
  const std::uint64_t u = rng.uniform(2 * dev + 1);
  const std::int64_t raw = static_cast<std::int64_t>(mean) - static_cast<std::int64_t>(dev) +
                           static_cast<std::int64_t>(u);
  return raw < 1 ? 1u : static_cast<std::uint64_t>(raw);
}

Sequence generate_sequence(const ScenarioParams& params, unsigned workers) {
  params.validate();
  const std::uint64_t L = params.seq_length;
  const BaseThresholds t = thresholds_of(params);
  Sequence seq(L);
  if (workers == 0) workers = 1;

  auto fill_block = [&](std::uint64_t lo, std::uint64_t hi) {
    Rng rng(params.seed);
    rng.skip(lo);
    for (std::uint64_t i = lo; i < hi; ++i) seq[i] = pick_base(rng.next(), t);
  };

  if (workers == 1) {
    fill_block(0, L);
    return seq;
  }
  const auto bounds = balanced_bounds(L, workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back(fill_block, bounds[w], bounds[w + 1]);
  for (auto& th : pool) th.join();
  return seq;
}

Pattern generate_random_pattern(std::uint64_t pattern_index, const ScenarioParams& params) {
  const BaseThresholds t = thresholds_of(params);
  Rng rng(params.seed);
  rng.skip(params.seq_length + pattern_index * pattern_stream_stride(params));
  const std::uint64_t len = draw_bounded_deviate(rng, params.rand_len_mean, params.rand_len_dev);
  rng.skip(1);  // unused location slot, keeps the per-pattern layout uniform
  std::vector<Nucleotide> data(len);
  for (std::uint64_t k = 0; k < len; ++k) data[k] = pick_base(rng.next(), t);
  return Pattern::random(std::move(data));
}

Pattern extract_sample_pattern(std::uint64_t pattern_index, const ScenarioParams& params,
                               const Sequence& seq) {
  const std::uint64_t L = seq.size();
  if (L == 0) throw std::invalid_argument("extract_sample_pattern: empty sequence");
  Rng rng(params.seed);
  rng.skip(params.seq_length + pattern_index * pattern_stream_stride(params));
  const std::uint64_t len =
      std::min(draw_bounded_deviate(rng, params.samp_len_mean, params.samp_len_dev), L);
  const std::uint64_t loc =
      std::min(draw_bounded_deviate(rng, params.samp_loc_mean, params.samp_loc_dev), L - len);
  std::vector<Nucleotide> data(seq.begin() + loc, seq.begin() + loc + len);
  return Pattern::sample(std::move(data), loc);
}

Scenario build_scenario(const ScenarioParams& params, unsigned workers) {
  params.validate();
  Scenario sc;
  sc.sequence = generate_sequence(params, workers);
  sc.patterns.reserve(params.n_random_patterns + params.n_sample_patterns);
  for (std::uint64_t p = 0; p < params.n_random_patterns; ++p)
    sc.patterns.push_back(generate_random_pattern(p, params));
  for (std::uint64_t s = 0; s < params.n_sample_patterns; ++s)
    sc.patterns.push_back(
        extract_sample_pattern(params.n_random_patterns + s, params, sc.sequence));
  return sc;
}

void dump_scenario(const Scenario& scenario, std::ostream& out) {
  out << nucleotides_to_string(scenario.sequence) << "\n";
  for (const Pattern& pat : scenario.patterns) out << nucleotides_to_string(pat.data) << "\n";
}

}  // namespace dnascan

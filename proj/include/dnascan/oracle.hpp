#pragma once

#include "dnascan/core.hpp"

namespace dnascan {

/// Work accounting, exposing per-pattern load imbalance and cancellation
/// savings. comparisons counts symbol comparisons, positions_tested counts
/// start positions attempted.
struct WorkCounter {
  std::uint64_t comparisons = 0;
  std::uint64_t positions_tested = 0;
};

/// Smallest start position where pat occurs, or kNotFound. Scanning stops at
/// the first match; patterns longer than the sequence are never found.
std::uint64_t find_first(const Sequence& seq, const Pattern& pat, WorkCounter* counter = nullptr);

/// The reference engine: single-threaded brute force over patterns in index
/// order. Its report defines correctness for every other engine.
SearchReport search_all_sequential(const Sequence& seq, const PatternSet& patterns,
                                   WorkCounter* counter = nullptr);

}  // namespace dnascan

#pragma once

#include <atomic>
#include <cstddef>
#include <vector>

#include "dnascan/core.hpp"
#include "dnascan/oracle.hpp"

namespace dnascan {

enum class Decomposition { OverPatterns, OverPositions, Nested };
enum class Accumulation { SerializedUpdates, PerWorkerMerge };

struct Strategy {
  Decomposition decomposition = Decomposition::OverPatterns;
  unsigned workers = 1;
  std::uint64_t chunk = 4096;  // start positions per claimed block
  Accumulation accumulation = Accumulation::SerializedUpdates;

  // Consult the board while scanning. Off by default: results are identical
  // either way, but with cancellation the work counters depend on thread
  // scheduling, and the default configuration keeps them reproducible.
  bool cancellation = false;

  void validate() const;  // throws std::invalid_argument
};

/// Per-pattern upper bound on the first match, shared by all workers.
/// Entries only ever decrease (monotone min via compare-exchange), and a
/// finite entry is always a real match position, so abandoning starts at or
/// above board[p] never loses the first match.
class CancellationBoard {
 public:
  explicit CancellationBoard(std::size_t n_patterns);

  std::size_t size() const { return slots_.size(); }
  std::uint64_t load(std::size_t p) const;
  void publish(std::size_t p, std::uint64_t pos);

 private:
  std::vector<std::atomic<std::uint64_t>> slots_;
};

/// Multi-worker first-match scan of one pattern. Workers claim fixed-size
/// chunks of start positions from a shared counter in ascending order; a
/// chunk hit is published to the board, and (when strategy.cancellation is
/// set) workers abandon starts at or above the published bound. Chunks below
/// a published hit still complete, which preserves first-match semantics.
/// Always equals find_first(seq, pat).
std::uint64_t speculative_find_first(const Sequence& seq, const Pattern& pat,
                                     std::size_t pattern_index, CancellationBoard& board,
                                     const Strategy& strategy, WorkCounter* counter = nullptr);

/// Min-merge of full-length partial reports: pat_found takes the per-pattern
/// minimum, then seq_matches is rebuilt from the winning positions only, so
/// a pattern found in several parts contributes exactly once.
SearchReport merge_partial_reports(const std::vector<SearchReport>& parts,
                                   const PatternSet& patterns);

/// Shared-memory parallel search. For every strategy and worker count the
/// report is exactly equal to search_all_sequential(seq, patterns).
SearchReport search_all_parallel(const Sequence& seq, const PatternSet& patterns,
                                 const Strategy& strategy, WorkCounter* counter = nullptr);

}  // namespace dnascan

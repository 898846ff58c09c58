#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "dnascan/core.hpp"
#include "dnascan/oracle.hpp"

namespace dnascan {

/// Distributed splits the sequence across ranks and completes boundary
/// matches through the pipeline; Replicated gives every rank the whole
/// sequence and splits the pattern index space instead (no messages).
enum class DistMode { Distributed, Replicated };

/// Balanced contiguous tiling of [0, L): block sizes differ by at most one,
/// the first L mod n_ranks blocks take the extra element.
struct BlockPartition {
  std::vector<std::uint64_t> bounds;  // n_ranks + 1 fenceposts

  std::size_t ranks() const { return bounds.size() - 1; }
  std::uint64_t lo(std::size_t r) const { return bounds[r]; }
  std::uint64_t hi(std::size_t r) const { return bounds[r + 1]; }
};

BlockPartition partition_sequence(std::uint64_t length, std::uint32_t n_ranks);

/// A match attempt that ran off the sender's block with `matched` symbols
/// verified. Invariant: start + matched equals the receiving rank's lo.
struct ContinuationMsg {
  std::uint32_t pattern = 0;
  std::uint64_t start = 0;    // global originating start position
  std::uint64_t matched = 0;  // symbols already verified upstream
};

/// FIFO point-to-point edge between neighbouring ranks. The sender posts
/// continuations and finally one DONE marker; receive blocks until a message
/// or the marker arrives.
class MessageChannel {
 public:
  void send(const ContinuationMsg& msg);
  void send_done();

  /// Blocks. Returns false once DONE is received and the queue is empty.
  bool receive(ContinuationMsg& out);

  /// Conservation check after termination: every sent message consumed.
  bool drained() const;
  std::uint64_t sent() const;
  std::uint64_t consumed() const;

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<ContinuationMsg> queue_;
  bool done_ = false;
  std::uint64_t sent_ = 0;
  std::uint64_t consumed_ = 0;
};

struct TraceEntry {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  ContinuationMsg msg;
};

/// Thread-safe message log: `rank_src -> rank_dst p=<p> s=<s> k=<k>` lines.
class TraceLog {
 public:
  void record(const TraceEntry& entry);
  std::vector<TraceEntry> entries() const;
  void write(std::ostream& out) const;

 private:
  mutable std::mutex mu_;
  std::vector<TraceEntry> entries_;
};

/// Every optimistic seq_matches increment a rank applies is tagged with the
/// match it belongs to, so the reducer can retract losing candidates.
struct IncrementTag {
  std::uint32_t pattern = 0;
  std::uint64_t origin = 0;  // global start of the credited match
  std::uint64_t lo = 0;      // covered global range inside this rank's block
  std::uint64_t hi = 0;
};

struct RankResult {
  std::uint64_t seq_lo = 0;
  std::uint64_t seq_hi = 0;
  std::vector<std::uint64_t> candidates;    // per-pattern min completed origin
  std::vector<std::uint32_t> local_matches; // seq_matches slice, pre-retraction
  std::vector<IncrementTag> tags;
  WorkCounter counter;
};

/// Raised when message conservation fails after termination.
struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Everything one rank may see. In Distributed mode `slice` holds only the
/// rank's own block, so out-of-block reads are impossible by construction.
struct RankTask {
  std::uint32_t rank = 0;
  std::uint32_t n_ranks = 1;
  std::uint64_t seq_lo = 0;
  std::uint64_t seq_hi = 0;
  std::vector<Nucleotide> slice;
  std::uint64_t pattern_lo = 0;  // owned pattern range (Replicated mode)
  std::uint64_t pattern_hi = 0;
  DistMode mode = DistMode::Distributed;
};

/// One rank's work. Distributed mode: every local start of every pattern is
/// tested; attempts that exhaust the block are forwarded downstream as
/// continuations; incoming continuations resume at local offset 0 and may
/// re-emit. Completed matches credit the originating start. A DONE marker is
/// forwarded after local starts and the upstream inbox are exhausted.
RankResult rank_search(const RankTask& task, const PatternSet& patterns, MessageChannel* inbox,
                       MessageChannel* outbox, TraceLog* trace = nullptr);

/// Global assembly: per-pattern minimum origin wins; losing candidates'
/// tagged increments are retracted from each rank's slice before the slices
/// enter the global seq_matches array; then the report is finalized.
SearchReport reduce_reports(std::vector<RankResult> results, std::uint64_t seq_length);

/// Runs n_ranks rank workers over FIFO channels and reduces their results.
/// The report equals search_all_sequential for every rank count and mode.
/// Throws ProtocolError if a channel is not drained at termination.
SearchReport run_distributed(const Sequence& seq, const PatternSet& patterns,
                             std::uint32_t n_ranks, DistMode mode, TraceLog* trace = nullptr,
                             WorkCounter* counter = nullptr);

}  // namespace dnascan

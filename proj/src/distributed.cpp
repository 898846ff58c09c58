#include "dnascan/distributed.hpp"

#include <algorithm>
#include <exception>
#include <ostream>
#include <thread>

namespace dnascan {

BlockPartition partition_sequence(std::uint64_t length, std::uint32_t n_ranks) {
  if (n_ranks == 0) throw std::invalid_argument("partition_sequence: n_ranks must be >= 1");
  if (n_ranks > length)
    throw std::invalid_argument("partition_sequence: more ranks than sequence positions");
  return BlockPartition{balanced_bounds(length, n_ranks)};
}

void MessageChannel::send(const ContinuationMsg& msg) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    queue_.push_back(msg);
    ++sent_;
  }
  cv_.notify_one();
}

void MessageChannel::send_done() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    done_ = true;
  }
  cv_.notify_one();
}

bool MessageChannel::receive(ContinuationMsg& out) {
  std::unique_lock<std::mutex> lock(mu_);
  cv_.wait(lock, [this] { return !queue_.empty() || done_; });
  if (queue_.empty()) return false;  // done_ set and nothing left
  out = queue_.front();
  queue_.pop_front();
  ++consumed_;
  return true;
}

bool MessageChannel::drained() const {
  std::lock_guard<std::mutex> lock(mu_);
  return queue_.empty() && sent_ == consumed_;
}

std::uint64_t MessageChannel::sent() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sent_;
}

std::uint64_t MessageChannel::consumed() const {
  std::lock_guard<std::mutex> lock(mu_);
  return consumed_;
}

void TraceLog::record(const TraceEntry& entry) {
  std::lock_guard<std::mutex> lock(mu_);
  entries_.push_back(entry);
}

std::vector<TraceEntry> TraceLog::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_;
}

void TraceLog::write(std::ostream& out) const {
  for (const TraceEntry& e : entries())
    out << e.src << " -> " << e.dst << " p=" << e.msg.pattern << " s=" << e.msg.start
        << " k=" << e.msg.matched << "\n";
}

RankResult rank_search(const RankTask& task, const PatternSet& patterns, MessageChannel* inbox,
                       MessageChannel* outbox, TraceLog* trace) {
  const std::size_t n_patterns = patterns.size();
  const std::uint64_t block_len = task.slice.size();
  if (task.seq_hi - task.seq_lo != block_len)
    throw std::invalid_argument("rank_search: slice does not match block bounds");
  if (task.pattern_hi > n_patterns || task.pattern_lo > task.pattern_hi)
    throw std::invalid_argument("rank_search: bad pattern range");

  RankResult res;
  res.seq_lo = task.seq_lo;
  res.seq_hi = task.seq_hi;
  res.candidates.assign(n_patterns, kNotFound);
  res.local_matches.assign(block_len, 0);

  const bool last = task.rank + 1 == task.n_ranks;

  // Increments are optimistic: applied for every completed or still-pending
  // candidate and tagged with its origin, so the reducer can retract every
  // candidate that loses the per-pattern minimum.
  auto apply_increments = [&](std::uint32_t p, std::uint64_t origin, std::uint64_t lo,
                              std::uint64_t hi) {
    for (std::uint64_t i = lo; i < hi; ++i) res.local_matches[i - task.seq_lo] += 1;
    res.tags.push_back(IncrementTag{p, origin, lo, hi});
  };
  auto complete = [&](std::uint32_t p, std::uint64_t origin, std::uint64_t lo, std::uint64_t hi) {
    res.candidates[p] = std::min(res.candidates[p], origin);
    apply_increments(p, origin, lo, hi);
  };

  if (task.mode == DistMode::Replicated) {
    for (std::uint64_t p = task.pattern_lo; p < task.pattern_hi; ++p) {
      const std::uint64_t pos = find_first(task.slice, patterns[p], &res.counter);
      if (pos != kNotFound)
        complete(static_cast<std::uint32_t>(p), pos, pos, pos + patterns[p].size());
    }
    return res;
  }

  // Local starts. Every start in the block is tested for every pattern; an
  // attempt that runs off the block with k symbols verified is forwarded.
  for (std::uint64_t p = task.pattern_lo; p < task.pattern_hi; ++p) {
    const auto& pat = patterns[p].data;
    const std::size_t len = pat.size();
    for (std::uint64_t sl = 0; sl < block_len; ++sl) {
      ++res.counter.positions_tested;
      std::size_t k = 0;
      bool ran_off_block = false;
      while (k < len) {
        if (sl + k >= block_len) {
          ran_off_block = true;
          break;
        }
        ++res.counter.comparisons;
        if (task.slice[sl + k] != pat[k]) break;
        ++k;
      }
      const std::uint64_t s = task.seq_lo + sl;
      if (k == len) {
        complete(static_cast<std::uint32_t>(p), s, s, s + len);
      } else if (ran_off_block && !last) {
        const ContinuationMsg msg{static_cast<std::uint32_t>(p), s, k};
        outbox->send(msg);
        if (trace) trace->record(TraceEntry{task.rank, task.rank + 1, msg});
        apply_increments(static_cast<std::uint32_t>(p), s, s, task.seq_hi);
      }
      // Running off the block at the last rank is running off the sequence:
      // no match, nothing to forward.
    }
  }

  // Continuations resume at local offset 0 and may re-emit downstream.
  // Comparisons are counted, the start position was already counted by its
  // originating rank.
  if (task.rank > 0 && inbox != nullptr) {
    ContinuationMsg msg;
    while (inbox->receive(msg)) {
      if (msg.pattern >= n_patterns || msg.matched == 0 ||
          msg.start + msg.matched != task.seq_lo)
        throw ProtocolError("rank_search: malformed continuation");
      const auto& pat = patterns[msg.pattern].data;
      const std::size_t len = pat.size();
      if (msg.matched >= len) throw ProtocolError("rank_search: continuation already complete");
      std::uint64_t j = 0;
      bool ran_off_block = false;
      while (msg.matched + j < len) {
        if (j >= block_len) {
          ran_off_block = true;
          break;
        }
        ++res.counter.comparisons;
        if (task.slice[j] != pat[msg.matched + j]) break;
        ++j;
      }
      if (msg.matched + j == len) {
        complete(msg.pattern, msg.start, task.seq_lo, task.seq_lo + j);
      } else if (ran_off_block && !last) {
        const ContinuationMsg fwd{msg.pattern, msg.start, msg.matched + j};
        outbox->send(fwd);
        if (trace) trace->record(TraceEntry{task.rank, task.rank + 1, fwd});
        apply_increments(msg.pattern, msg.start, task.seq_lo, task.seq_hi);
      }
    }
  }
  if (!last && outbox != nullptr) outbox->send_done();
  return res;
}

SearchReport reduce_reports(std::vector<RankResult> results, std::uint64_t seq_length) {
  if (results.empty()) throw std::invalid_argument("reduce_reports: no results");
  const std::size_t n_patterns = results[0].candidates.size();
  for (const RankResult& res : results) {
    if (res.candidates.size() != n_patterns)
      throw std::invalid_argument("reduce_reports: pattern count mismatch");
    if (res.seq_lo > res.seq_hi || res.seq_hi > seq_length)
      throw std::invalid_argument("reduce_reports: block out of range");
    if (res.local_matches.size() != res.seq_hi - res.seq_lo)
      throw std::invalid_argument("reduce_reports: slice length mismatch");
  }

  std::vector<std::uint64_t> winner(n_patterns, kNotFound);
  for (const RankResult& res : results)
    for (std::size_t p = 0; p < n_patterns; ++p)
      winner[p] = std::min(winner[p], res.candidates[p]);

  SearchReport out = make_report(seq_length, n_patterns);
  for (RankResult& res : results) {
    for (const IncrementTag& tag : res.tags) {
      if (tag.pattern >= n_patterns || tag.lo < res.seq_lo || tag.hi > res.seq_hi ||
          tag.lo > tag.hi)
        throw ProtocolError("reduce_reports: increment tag outside its rank block");
      if (winner[tag.pattern] == tag.origin) continue;
      for (std::uint64_t i = tag.lo; i < tag.hi; ++i) {
        std::uint32_t& cell = res.local_matches[i - res.seq_lo];
        if (cell == 0) throw ProtocolError("reduce_reports: retraction underflow");
        cell -= 1;
      }
    }
    for (std::uint64_t i = res.seq_lo; i < res.seq_hi; ++i)
      out.seq_matches[i] += res.local_matches[i - res.seq_lo];
  }
  out.pat_found = std::move(winner);
  finalize_report(out);
  return out;
}

SearchReport run_distributed(const Sequence& seq, const PatternSet& patterns,
                             std::uint32_t n_ranks, DistMode mode, TraceLog* trace,
                             WorkCounter* counter) {
  if (n_ranks == 0) throw std::invalid_argument("run_distributed: n_ranks must be >= 1");
  const std::uint64_t seq_len = seq.size();
  const std::size_t n_patterns = patterns.size();

  std::vector<RankTask> tasks(n_ranks);
  if (mode == DistMode::Distributed) {
    const BlockPartition part = partition_sequence(seq_len, n_ranks);
    for (std::uint32_t r = 0; r < n_ranks; ++r) {
      RankTask& t = tasks[r];
      t.rank = r;
      t.n_ranks = n_ranks;
      t.seq_lo = part.lo(r);
      t.seq_hi = part.hi(r);
      t.slice.assign(seq.begin() + static_cast<std::ptrdiff_t>(t.seq_lo),
                     seq.begin() + static_cast<std::ptrdiff_t>(t.seq_hi));
      t.pattern_lo = 0;
      t.pattern_hi = n_patterns;
      t.mode = mode;
    }
  } else {
    const auto pattern_bounds = balanced_bounds(n_patterns, n_ranks);
    for (std::uint32_t r = 0; r < n_ranks; ++r) {
      RankTask& t = tasks[r];
      t.rank = r;
      t.n_ranks = n_ranks;
      t.seq_lo = 0;
      t.seq_hi = seq_len;
      t.slice = seq;
      t.pattern_lo = pattern_bounds[r];
      t.pattern_hi = pattern_bounds[r + 1];
      t.mode = mode;
    }
  }

  const std::size_t n_edges =
      (mode == DistMode::Distributed && n_ranks > 1) ? n_ranks - 1 : 0;
  std::vector<MessageChannel> channels(n_edges);
  std::vector<RankResult> results(n_ranks);
  std::vector<std::exception_ptr> errors(n_ranks);
  std::vector<std::thread> pool;
  pool.reserve(n_ranks);
  for (std::uint32_t r = 0; r < n_ranks; ++r) {
    MessageChannel* inbox = (n_edges > 0 && r > 0) ? &channels[r - 1] : nullptr;
    MessageChannel* outbox = (n_edges > 0 && r + 1 < n_ranks) ? &channels[r] : nullptr;
    pool.emplace_back([&tasks, &patterns, &results, &errors, trace, r, inbox, outbox] {
      try {
        results[r] = rank_search(tasks[r], patterns, inbox, outbox, trace);
      } catch (...) {
        errors[r] = std::current_exception();
        // Unblock downstream so the whole pipeline can terminate.
        if (outbox) outbox->send_done();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (const MessageChannel& ch : channels)
    if (!ch.drained()) throw ProtocolError("run_distributed: undrained continuation channel");

  if (counter) {
    for (const RankResult& res : results) {
      counter->comparisons += res.counter.comparisons;
      counter->positions_tested += res.counter.positions_tested;
    }
  }
  return reduce_reports(std::move(results), seq_len);
}

}  // namespace dnascan

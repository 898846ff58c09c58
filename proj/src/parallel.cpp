#include "dnascan/parallel.hpp"

#include <algorithm>
#include <barrier>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace dnascan {

namespace {

constexpr unsigned kMaxWorkers = 4096;

std::uint64_t starts_of(std::uint64_t seq_len, std::uint64_t pat_len) {
  return pat_len <= seq_len ? seq_len - pat_len + 1 : 0;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0 ? 1 : 0); }

// Joins all workers, then rethrows the first worker exception if any.
template <typename Fn>
void run_workers(unsigned workers, Fn&& body) {
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&errors, &body, w] {
      try {
        body(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Ascending scan of starts [begin, end) for pattern p. Publishes a hit to
// the board and returns it, or returns kNotFound. With cancel set, starts at
// or above the board's bound are abandoned; since the bound is always a real
// match position, nothing below the true first match is ever skipped.
std::uint64_t scan_chunk(const Sequence& seq, const Pattern& pat, std::size_t p,
                         std::uint64_t begin, std::uint64_t end, CancellationBoard& board,
                         bool cancel, WorkCounter& wc) {
  const std::size_t len = pat.data.size();
  for (std::uint64_t s = begin; s < end; ++s) {
    if (cancel && s >= board.load(p)) break;
    ++wc.positions_tested;
    std::size_t k = 0;
    for (; k < len; ++k) {
      ++wc.comparisons;
      if (seq[s + k] != pat.data[k]) break;
    }
    if (k == len) {
      board.publish(p, s);
      return s;
    }
  }
  return kNotFound;
}

// Collects worker hits. SerializedUpdates maintains one shared report under
// a mutex with improve-min updates; PerWorkerMerge keeps per-worker minima
// and builds private reports that merge at the end. Both resolve every race
// to a per-pattern minimum, so the result is schedule-independent.
class Accumulator {
 public:
  Accumulator(const Strategy& strategy, const PatternSet& patterns, std::size_t seq_len)
      : mode_(strategy.accumulation),
        patterns_(patterns),
        seq_len_(seq_len),
        local_best_(strategy.workers,
                    std::vector<std::uint64_t>(patterns.size(), kNotFound)) {
    if (mode_ == Accumulation::SerializedUpdates) shared_ = make_report(seq_len, patterns.size());
  }

  void record(unsigned w, std::size_t p, std::uint64_t pos) {
    auto& best = local_best_[w][p];
    if (pos < best) best = pos;
    if (mode_ != Accumulation::SerializedUpdates) return;
    const std::size_t len = patterns_[p].size();
    std::lock_guard<std::mutex> lock(mu_);
    const std::uint64_t cur = shared_.pat_found[p];
    if (cur == kNotFound) {
      accumulate_match(shared_, p, pos, len);
    } else if (pos < cur) {
      retract_match(shared_, p, cur, len);
      accumulate_match(shared_, p, pos, len);
    }
  }

  SearchReport finish() {
    if (mode_ == Accumulation::SerializedUpdates) {
      finalize_report(shared_);
      return std::move(shared_);
    }
    std::vector<SearchReport> parts;
    parts.reserve(local_best_.size());
    for (const auto& best : local_best_) {
      SearchReport part = make_report(seq_len_, patterns_.size());
      for (std::size_t p = 0; p < best.size(); ++p)
        if (best[p] != kNotFound) accumulate_match(part, p, best[p], patterns_[p].size());
      finalize_report(part);
      parts.push_back(std::move(part));
    }
    return merge_partial_reports(parts, patterns_);
  }

 private:
  Accumulation mode_;
  const PatternSet& patterns_;
  std::size_t seq_len_;
  std::vector<std::vector<std::uint64_t>> local_best_;
  std::mutex mu_;
  SearchReport shared_;
};

}  // namespace

void Strategy::validate() const {
  if (workers == 0 || workers > kMaxWorkers)
    throw std::invalid_argument("strategy: workers must be in [1, 4096]");
  if (chunk == 0) throw std::invalid_argument("strategy: chunk must be >= 1");
}

CancellationBoard::CancellationBoard(std::size_t n_patterns) : slots_(n_patterns) {
  for (auto& slot : slots_) slot.store(kNotFound, std::memory_order_relaxed);
}

std::uint64_t CancellationBoard::load(std::size_t p) const {
  return slots_[p].load(std::memory_order_relaxed);
}

void CancellationBoard::publish(std::size_t p, std::uint64_t pos) {
  // Monotone min. Relaxed ordering suffices: a stale read is always an
  // overestimate, which only delays cancellation and never skips a start
  // below the true first match.
  std::uint64_t cur = slots_[p].load(std::memory_order_relaxed);
  while (pos < cur &&
         !slots_[p].compare_exchange_weak(cur, pos, std::memory_order_relaxed)) {
  }
}

std::uint64_t speculative_find_first(const Sequence& seq, const Pattern& pat,
                                     std::size_t pattern_index, CancellationBoard& board,
                                     const Strategy& strategy, WorkCounter* counter) {
  strategy.validate();
  if (pattern_index >= board.size())
    throw std::invalid_argument("speculative_find_first: pattern index out of board range");
  const std::uint64_t n_starts = starts_of(seq.size(), pat.data.size());
  const std::uint64_t n_chunks = ceil_div(n_starts, strategy.chunk);
  std::atomic<std::uint64_t> next_chunk{0};
  std::vector<std::uint64_t> best(strategy.workers, kNotFound);
  std::vector<WorkCounter> counters(strategy.workers);

  run_workers(strategy.workers, [&](unsigned w) {
    for (;;) {
      const std::uint64_t c = next_chunk.fetch_add(1);
      if (c >= n_chunks) break;
      const std::uint64_t begin = c * strategy.chunk;
      const std::uint64_t end = std::min(begin + strategy.chunk, n_starts);
      const std::uint64_t hit = scan_chunk(seq, pat, pattern_index, begin, end, board,
                                           strategy.cancellation, counters[w]);
      if (hit < best[w]) best[w] = hit;
    }
  });

  std::uint64_t result = kNotFound;
  for (std::uint64_t b : best) result = std::min(result, b);
  if (counter) {
    for (const auto& c : counters) {
      counter->comparisons += c.comparisons;
      counter->positions_tested += c.positions_tested;
    }
  }
  return result;
}

SearchReport merge_partial_reports(const std::vector<SearchReport>& parts,
                                   const PatternSet& patterns) {
  if (parts.empty()) throw std::invalid_argument("merge_partial_reports: no parts");
  const std::size_t n_patterns = parts[0].pat_found.size();
  const std::size_t seq_len = parts[0].seq_matches.size();
  if (n_patterns != patterns.size())
    throw std::invalid_argument("merge_partial_reports: pattern count mismatch");
  for (const auto& part : parts)
    if (part.pat_found.size() != n_patterns || part.seq_matches.size() != seq_len)
      throw std::invalid_argument("merge_partial_reports: misaligned parts");

  SearchReport out = make_report(seq_len, n_patterns);
  for (std::size_t p = 0; p < n_patterns; ++p) {
    std::uint64_t winner = kNotFound;
    for (const auto& part : parts) winner = std::min(winner, part.pat_found[p]);
    if (winner != kNotFound) accumulate_match(out, p, winner, patterns[p].size());
  }
  finalize_report(out);
  return out;
}

SearchReport search_all_parallel(const Sequence& seq, const PatternSet& patterns,
                                 const Strategy& strategy, WorkCounter* counter) {
  strategy.validate();
  const std::size_t n_patterns = patterns.size();
  const std::uint64_t seq_len = seq.size();
  const unsigned workers = strategy.workers;

  CancellationBoard board(n_patterns);
  Accumulator acc(strategy, patterns, seq_len);
  std::vector<WorkCounter> counters(workers);

  switch (strategy.decomposition) {
    case Decomposition::OverPatterns: {
      // Whole patterns claimed dynamically; each has a single owner, so the
      // plain first-match loop applies and the board is never consulted.
      std::atomic<std::uint64_t> next_pattern{0};
      run_workers(workers, [&](unsigned w) {
        for (;;) {
          const std::uint64_t p = next_pattern.fetch_add(1);
          if (p >= n_patterns) break;
          const std::uint64_t pos = find_first(seq, patterns[p], &counters[w]);
          if (pos != kNotFound) {
            board.publish(p, pos);
            acc.record(w, p, pos);
          }
        }
      });
      break;
    }
    case Decomposition::OverPositions: {
      // One pattern at a time: all workers share its chunk space, and a
      // barrier whose completion step resets the claim counter separates
      // consecutive patterns.
      std::atomic<std::uint64_t> next_chunk{0};
      std::barrier phase(static_cast<std::ptrdiff_t>(workers),
                         [&next_chunk]() noexcept { next_chunk.store(0); });
      run_workers(workers, [&](unsigned w) {
        for (std::size_t p = 0; p < n_patterns; ++p) {
          const std::uint64_t n_starts = starts_of(seq_len, patterns[p].size());
          const std::uint64_t n_chunks = ceil_div(n_starts, strategy.chunk);
          for (;;) {
            const std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= n_chunks) break;
            const std::uint64_t begin = c * strategy.chunk;
            const std::uint64_t end = std::min(begin + strategy.chunk, n_starts);
            const std::uint64_t hit = scan_chunk(seq, patterns[p], p, begin, end, board,
                                                 strategy.cancellation, counters[w]);
            if (hit != kNotFound) acc.record(w, p, hit);
          }
          phase.arrive_and_wait();
        }
      });
      break;
    }
    case Decomposition::Nested: {
      // Flattened (pattern, chunk) item space claimed dynamically, so both
      // loops parallelize together and skews in either dimension spread out.
      std::vector<std::uint64_t> item_offset(n_patterns + 1, 0);
      for (std::size_t p = 0; p < n_patterns; ++p)
        item_offset[p + 1] =
            item_offset[p] + ceil_div(starts_of(seq_len, patterns[p].size()), strategy.chunk);
      const std::uint64_t n_items = item_offset[n_patterns];
      std::atomic<std::uint64_t> next_item{0};
      run_workers(workers, [&](unsigned w) {
        for (;;) {
          const std::uint64_t item = next_item.fetch_add(1);
          if (item >= n_items) break;
          const std::size_t p =
              static_cast<std::size_t>(
                  std::upper_bound(item_offset.begin(), item_offset.end(), item) -
                  item_offset.begin()) -
              1;
          const std::uint64_t c = item - item_offset[p];
          const std::uint64_t n_starts = starts_of(seq_len, patterns[p].size());
          const std::uint64_t begin = c * strategy.chunk;
          const std::uint64_t end = std::min(begin + strategy.chunk, n_starts);
          const std::uint64_t hit = scan_chunk(seq, patterns[p], p, begin, end, board,
                                               strategy.cancellation, counters[w]);
          if (hit != kNotFound) acc.record(w, p, hit);
        }
      });
      break;
    }
  }

  SearchReport report = acc.finish();
  if (counter) {
    for (const auto& c : counters) {
      counter->comparisons += c.comparisons;
      counter->positions_tested += c.positions_tested;
    }
  }
  return report;
}

}  // namespace dnascan

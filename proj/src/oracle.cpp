#include "dnascan/oracle.hpp"

namespace dnascan {

std::uint64_t find_first(const Sequence& seq, const Pattern& pat, WorkCounter* counter) {
  const std::size_t len = pat.data.size();
  std::uint64_t result = kNotFound;
  std::uint64_t tested = 0;
  std::uint64_t compared = 0;
  if (len <= seq.size()) {
    const std::uint64_t n_starts = seq.size() - len + 1;
    for (std::uint64_t s = 0; s < n_starts; ++s) {
      ++tested;
      std::size_t k = 0;
      for (; k < len; ++k) {
        ++compared;
        if (seq[s + k] != pat.data[k]) break;
      }
      if (k == len) {
        result = s;
        break;
      }
    }
  }
  if (counter) {
    counter->comparisons += compared;
    counter->positions_tested += tested;
  }
  return result;
}

SearchReport search_all_sequential(const Sequence& seq, const PatternSet& patterns,
                                   WorkCounter* counter) {
  SearchReport report = make_report(seq.size(), patterns.size());
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    const std::uint64_t pos = find_first(seq, patterns[p], counter);
    if (pos != kNotFound) accumulate_match(report, p, pos, patterns[p].data.size());
  }
  finalize_report(report);
  return report;
}

}  // namespace dnascan

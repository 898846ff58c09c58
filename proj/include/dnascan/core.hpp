#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dnascan {

/// Nucleotide code. The mapping is fixed: A=0, C=1, G=2, T=3.
using Nucleotide = std::uint8_t;

inline constexpr Nucleotide kBaseA = 0;
inline constexpr Nucleotide kBaseC = 1;
inline constexpr Nucleotide kBaseG = 2;
inline constexpr Nucleotide kBaseT = 3;

/// Marker for "pattern not found". Serialized as -1 in reports.
inline constexpr std::uint64_t kNotFound = std::numeric_limits<std::uint64_t>::max();

char nucleotide_to_char(Nucleotide code);
Nucleotide nucleotide_from_char(char c);  // throws std::invalid_argument on other characters

std::string nucleotides_to_string(const std::vector<Nucleotide>& data);
std::vector<Nucleotide> nucleotides_from_string(std::string_view text);

/// The main DNA string, one code per position.
using Sequence = std::vector<Nucleotide>;

/// A pattern to search for, with its generation provenance.
struct Pattern {
  enum class Provenance { Random, Sample };

  std::vector<Nucleotide> data;
  Provenance provenance = Provenance::Random;
  std::uint64_t source_location = 0;  // meaningful only for Sample

  static Pattern random(std::vector<Nucleotide> data);
  static Pattern sample(std::vector<Nucleotide> data, std::uint64_t source_location);

  std::size_t size() const { return data.size(); }
};

using PatternSet = std::vector<Pattern>;

/// Result of one multi-pattern search. seq_matches counts, per position, how
/// many found patterns cover that position with their first match.
struct SearchReport {
  std::vector<std::uint64_t> pat_found;    // first-match start per pattern, kNotFound if missing
  std::vector<std::uint32_t> seq_matches;  // per-position cover count
  std::uint64_t pat_matches = 0;           // number of found patterns
  std::uint64_t checksum_found = 0;        // sum of found positions mod 2^32
  std::uint64_t multi_match_positions = 0; // positions with seq_matches > 1

  bool operator==(const SearchReport&) const = default;
};

SearchReport make_report(std::size_t seq_length, std::size_t n_patterns);

/// True iff pat occurs at start. Caller must guarantee start + len <= seq length.
bool match_at(const Sequence& seq, const Pattern& pat, std::uint64_t start);

/// Credits pattern p with a first match at pos: sets pat_found[p], bumps
/// pat_matches and the covered range of seq_matches. A second accumulation
/// for the same pattern is an engine bug and throws std::logic_error.
void accumulate_match(SearchReport& report, std::size_t p, std::uint64_t pos, std::size_t len);

/// Exact inverse of accumulate_match. Used when a better (smaller) match
/// position supersedes one already credited.
void retract_match(SearchReport& report, std::size_t p, std::uint64_t pos, std::size_t len);

/// Recomputes pat_matches, checksum_found and multi_match_positions from the
/// accumulated arrays.
void finalize_report(SearchReport& report);

/// Text form: "Matches: n" / "Checksum: c" / "Multi: m" lines, plus one
/// "Pattern <p>: <pos|-1>" line per pattern when per_pattern is set.
std::string report_text(const SearchReport& report, bool per_pattern = false);

/// Name and values of the first differing field, or nullopt when equal.
std::optional<std::string> report_diff(const SearchReport& expected, const SearchReport& actual);

/// Fenceposts of a balanced split of [0, count) into parts blocks; the first
/// count % parts blocks get one extra element.
std::vector<std::uint64_t> balanced_bounds(std::uint64_t count, std::uint32_t parts);

}  // namespace dnascan

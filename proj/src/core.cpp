#include "dnascan/core.hpp"

#include <sstream>
#include <stdexcept>

namespace dnascan {

char nucleotide_to_char(Nucleotide code) {
  switch (code) {
    case kBaseA: return 'A';
    case kBaseC: return 'C';
    case kBaseG: return 'G';
    case kBaseT: return 'T';
  }
  throw std::invalid_argument("nucleotide_to_char: code out of range");
}

Nucleotide nucleotide_from_char(char c) {
  switch (c) {
    case 'A': return kBaseA;
    case 'C': return kBaseC;
    case 'G': return kBaseG;
    case 'T': return kBaseT;
  }
  throw std::invalid_argument(std::string("nucleotide_from_char: invalid character '") + c + "'");
}

std::string nucleotides_to_string(const std::vector<Nucleotide>& data) {
  std::string out;
  out.reserve(data.size());
  for (Nucleotide n : data) out.push_back(nucleotide_to_char(n));
  return out;
}

std::vector<Nucleotide> nucleotides_from_string(std::string_view text) {
  std::vector<Nucleotide> out;
  out.reserve(text.size());
  for (char c : text) out.push_back(nucleotide_from_char(c));
  return out;
}

Pattern Pattern::random(std::vector<Nucleotide> data) {
  if (data.empty()) throw std::invalid_argument("Pattern: empty pattern");
  Pattern p;
  p.data = std::move(data);
  p.provenance = Provenance::Random;
  return p;
}

Pattern Pattern::sample(std::vector<Nucleotide> data, std::uint64_t source_location) {
  if (data.empty()) throw std::invalid_argument("Pattern: empty pattern");
  Pattern p;
  p.data = std::move(data);
  p.provenance = Provenance::Sample;
  p.source_location = source_location;
  return p;
}

SearchReport make_report(std::size_t seq_length, std::size_t n_patterns) {
  SearchReport r;
  r.pat_found.assign(n_patterns, kNotFound);
  r.seq_matches.assign(seq_length, 0);
  return r;
}

bool match_at(const Sequence& seq, const Pattern& pat, std::uint64_t start) {
  for (std::size_t k = 0; k < pat.data.size(); ++k)
    if (seq[start + k] != pat.data[k]) return false;
  return true;
}

void accumulate_match(SearchReport& report, std::size_t p, std::uint64_t pos, std::size_t len) {
  if (p >= report.pat_found.size())
    throw std::logic_error("accumulate_match: pattern index out of range");
  if (report.pat_found[p] != kNotFound)
    throw std::logic_error("accumulate_match: pattern already credited");
  if (pos + len > report.seq_matches.size())
    throw std::logic_error("accumulate_match: covered range out of bounds");
  report.pat_found[p] = pos;
  report.pat_matches += 1;
  for (std::uint64_t i = pos; i < pos + len; ++i) report.seq_matches[i] += 1;
}

void retract_match(SearchReport& report, std::size_t p, std::uint64_t pos, std::size_t len) {
  if (p >= report.pat_found.size())
    throw std::logic_error("retract_match: pattern index out of range");
  if (report.pat_found[p] != pos)
    throw std::logic_error("retract_match: pattern not credited at this position");
  report.pat_found[p] = kNotFound;
  report.pat_matches -= 1;
  for (std::uint64_t i = pos; i < pos + len; ++i) {
    if (report.seq_matches[i] == 0)
      throw std::logic_error("retract_match: cover count underflow");
    report.seq_matches[i] -= 1;
  }
}

void finalize_report(SearchReport& report) {
  std::uint64_t found = 0;
  std::uint64_t sum = 0;
  for (std::uint64_t pos : report.pat_found) {
    if (pos == kNotFound) continue;
    found += 1;
    sum = (sum + (pos & 0xffffffffULL)) & 0xffffffffULL;
  }
  std::uint64_t multi = 0;
  for (std::uint32_t c : report.seq_matches)
    if (c > 1) multi += 1;
  report.pat_matches = found;
  report.checksum_found = sum;
  report.multi_match_positions = multi;
}

std::string report_text(const SearchReport& report, bool per_pattern) {
  std::ostringstream out;
  out << "Matches: " << report.pat_matches << "\n";
  out << "Checksum: " << report.checksum_found << "\n";
  out << "Multi: " << report.multi_match_positions << "\n";
  if (per_pattern) {
    for (std::size_t p = 0; p < report.pat_found.size(); ++p) {
      out << "Pattern " << p << ": ";
      if (report.pat_found[p] == kNotFound)
        out << "-1";
      else
        out << report.pat_found[p];
      out << "\n";
    }
  }
  return out.str();
}

namespace {

std::string signed_pos(std::uint64_t pos) {
  return pos == kNotFound ? std::string("-1") : std::to_string(pos);
}

}  // namespace

std::optional<std::string> report_diff(const SearchReport& expected, const SearchReport& actual) {
  std::ostringstream out;
  if (expected.pat_found.size() != actual.pat_found.size()) {
    out << "pat_found size: expected " << expected.pat_found.size() << ", got "
        << actual.pat_found.size();
    return out.str();
  }
  if (expected.seq_matches.size() != actual.seq_matches.size()) {
    out << "seq_matches size: expected " << expected.seq_matches.size() << ", got "
        << actual.seq_matches.size();
    return out.str();
  }
  for (std::size_t p = 0; p < expected.pat_found.size(); ++p) {
    if (expected.pat_found[p] != actual.pat_found[p]) {
      out << "pat_found[" << p << "]: expected " << signed_pos(expected.pat_found[p]) << ", got "
          << signed_pos(actual.pat_found[p]);
      return out.str();
    }
  }
  for (std::size_t i = 0; i < expected.seq_matches.size(); ++i) {
    if (expected.seq_matches[i] != actual.seq_matches[i]) {
      out << "seq_matches[" << i << "]: expected " << expected.seq_matches[i] << ", got "
          << actual.seq_matches[i];
      return out.str();
    }
  }
  if (expected.pat_matches != actual.pat_matches) {
    out << "pat_matches: expected " << expected.pat_matches << ", got " << actual.pat_matches;
    return out.str();
  }
  if (expected.checksum_found != actual.checksum_found) {
    out << "checksum_found: expected " << expected.checksum_found << ", got "
        << actual.checksum_found;
    return out.str();
  }
  if (expected.multi_match_positions != actual.multi_match_positions) {
    out << "multi_match_positions: expected " << expected.multi_match_positions << ", got "
        << actual.multi_match_positions;
    return out.str();
  }
  return std::nullopt;
}

std::vector<std::uint64_t> balanced_bounds(std::uint64_t count, std::uint32_t parts) {
  if (parts == 0) throw std::invalid_argument("balanced_bounds: parts must be >= 1");
  std::vector<std::uint64_t> bounds(parts + 1, 0);
  const std::uint64_t base = count / parts;
  const std::uint64_t extra = count % parts;
  for (std::uint32_t r = 0; r < parts; ++r)
    bounds[r + 1] = bounds[r] + base + (r < extra ? 1 : 0);
  return bounds;
}

}  // namespace dnascan

#include <doctest.h>

#include <algorithm>
#include <random>

#include "dnascan/distributed.hpp"
#include "dnascan/generator.hpp"
#include "dnascan/oracle.hpp"

using namespace dnascan;

namespace {

Pattern pat(const char* text) { return Pattern::random(nucleotides_from_string(text)); }

ScenarioParams sweep_params(std::mt19937_64& g) {
  ScenarioParams p;
  p.seq_length = 64 + g() % 3000;
  p.prob_a = 0.25;
  p.prob_c = 0.25;
  p.prob_g = 0.25;
  p.n_random_patterns = g() % 6;
  p.rand_len_mean = 1 + g() % 12;
  p.rand_len_dev = g() % 6;
  p.n_sample_patterns = g() % 6;
  p.samp_len_mean = 1 + g() % 16;
  p.samp_len_dev = g() % 8;
  p.samp_loc_mean = g() % p.seq_length;
  p.samp_loc_dev = g() % p.seq_length;
  p.seed = g();
  return p;
}

}  // namespace

TEST_CASE("partition_sequence balanced tiling") {
  CHECK(partition_sequence(7, 2).bounds == std::vector<std::uint64_t>{0, 4, 7});
  CHECK(partition_sequence(10, 3).bounds == std::vector<std::uint64_t>{0, 4, 7, 10});
  const BlockPartition singles = partition_sequence(7, 7);
  REQUIRE(singles.ranks() == 7);
  for (std::size_t r = 0; r < 7; ++r) CHECK(singles.hi(r) - singles.lo(r) == 1);
  CHECK_THROWS_AS(partition_sequence(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(partition_sequence(3, 0), std::invalid_argument);
}

TEST_CASE("message channel is FIFO with a terminal marker") {
  MessageChannel ch;
  ch.send(ContinuationMsg{1, 10, 2});
  ch.send(ContinuationMsg{2, 20, 4});
  CHECK_FALSE(ch.drained());
  ch.send_done();

  ContinuationMsg m;
  REQUIRE(ch.receive(m));
  CHECK(m.pattern == 1);
  CHECK(m.start == 10);
  CHECK(m.matched == 2);
  REQUIRE(ch.receive(m));
  CHECK(m.pattern == 2);
  CHECK_FALSE(ch.receive(m));
  CHECK(ch.drained());
  CHECK(ch.sent() == 2);
  CHECK(ch.consumed() == 2);
}

TEST_CASE("rank_search forwards a boundary-straddling attempt") {
  // GATTACA split as [0,4) "GATT" and [4,7) "ACA"; TACA starts at 3.
  const PatternSet patterns = {pat("TACA")};
  TraceLog trace;
  MessageChannel edge;

  RankTask t0;
  t0.rank = 0;
  t0.n_ranks = 2;
  t0.seq_lo = 0;
  t0.seq_hi = 4;
  t0.slice = nucleotides_from_string("GATT");
  t0.pattern_lo = 0;
  t0.pattern_hi = 1;
  const RankResult r0 = rank_search(t0, patterns, nullptr, &edge, &trace);
  CHECK(r0.candidates[0] == kNotFound);
  CHECK(r0.local_matches == std::vector<std::uint32_t>{0, 0, 0, 1});
  REQUIRE(r0.tags.size() == 1);
  CHECK(r0.tags[0].origin == 3);
  CHECK(edge.sent() == 1);

  RankTask t1 = t0;
  t1.rank = 1;
  t1.seq_lo = 4;
  t1.seq_hi = 7;
  t1.slice = nucleotides_from_string("ACA");
  const RankResult r1 = rank_search(t1, patterns, &edge, nullptr, &trace);
  CHECK(r1.candidates[0] == 3);
  CHECK(r1.local_matches == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(edge.drained());

  const auto entries = trace.entries();
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].src == 0);
  CHECK(entries[0].dst == 1);
  CHECK(entries[0].msg.pattern == 0);
  CHECK(entries[0].msg.start == 3);
  CHECK(entries[0].msg.matched == 1);

  const SearchReport reduced = reduce_reports({r0, r1}, 7);
  CHECK(reduced == search_all_sequential(nucleotides_from_string("GATTACA"), patterns));
}

TEST_CASE("fixture is oracle-equal for several rank counts") {
  const Sequence seq = nucleotides_from_string("GATTACA");
  const PatternSet patterns = {pat("TTA"), pat("CA"), pat("A"), pat("ACA"), pat("GG")};
  const SearchReport oracle = search_all_sequential(seq, patterns);
  for (std::uint32_t ranks : {1u, 2u, 3u, 7u})
    CHECK(run_distributed(seq, patterns, ranks, DistMode::Distributed) == oracle);
  for (std::uint32_t ranks : {1u, 2u, 5u})
    CHECK(run_distributed(seq, patterns, ranks, DistMode::Replicated) == oracle);
}

TEST_CASE("a pattern spanning every block is completed through the chain") {
  std::mt19937_64 g(31337);
  Sequence seq(32);
  for (auto& n : seq) n = static_cast<Nucleotide>(g() % 4);
  const PatternSet patterns = {Pattern::random(seq)};  // the whole sequence

  TraceLog trace;
  const SearchReport report = run_distributed(seq, patterns, 4, DistMode::Distributed, &trace);
  CHECK(report.pat_found[0] == 0);
  CHECK(report.pat_matches == 1);

  // The start-0 attempt must hop across all three boundaries.
  int hops = 0;
  for (const TraceEntry& e : trace.entries())
    if (e.msg.start == 0) ++hops;
  CHECK(hops == 3);
}

TEST_CASE("losing candidates are retracted in the reduction") {
  Sequence seq(1200, kBaseA);
  const auto put = [&](std::uint64_t at, const char* text) {
    const auto v = nucleotides_from_string(text);
    std::copy(v.begin(), v.end(), seq.begin() + static_cast<std::ptrdiff_t>(at));
  };
  put(100, "CGT");
  put(900, "CGT");
  const PatternSet patterns = {pat("CGT")};

  // Blocks of 400: the two occurrences complete in different ranks.
  const SearchReport report = run_distributed(seq, patterns, 3, DistMode::Distributed);
  const SearchReport oracle = search_all_sequential(seq, patterns);
  CHECK(report == oracle);
  CHECK(report.pat_found[0] == 100);
  CHECK(report.seq_matches[100] == 1);
  CHECK(report.seq_matches[900] == 0);
}

TEST_CASE("random scenarios are oracle-equal across ranks and modes") {
  std::mt19937_64 g(2718);
  for (int trial = 0; trial < 15; ++trial) {
    const Scenario sc = build_scenario(sweep_params(g));
    const SearchReport oracle = search_all_sequential(sc.sequence, sc.patterns);
    for (std::uint32_t ranks : {1u, 2u, 3u, 4u, 8u}) {
      CHECK(run_distributed(sc.sequence, sc.patterns, ranks, DistMode::Distributed) == oracle);
      CHECK(run_distributed(sc.sequence, sc.patterns, ranks, DistMode::Replicated) == oracle);
    }
  }
}

TEST_CASE("replicated mode tolerates more ranks than patterns") {
  const Sequence seq = nucleotides_from_string("GATTACA");
  const PatternSet patterns = {pat("TTA")};
  CHECK(run_distributed(seq, patterns, 5, DistMode::Replicated) ==
        search_all_sequential(seq, patterns));
}

TEST_CASE("distributed mode rejects more ranks than positions") {
  const Sequence seq = nucleotides_from_string("GAT");
  CHECK_THROWS_AS(run_distributed(seq, {pat("A")}, 8, DistMode::Distributed),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_distributed(seq, {pat("A")}, 0, DistMode::Distributed),
                  std::invalid_argument);
}

TEST_CASE("reduce_reports validates its inputs") {
  RankResult res;
  res.seq_lo = 0;
  res.seq_hi = 4;
  res.candidates.assign(1, kNotFound);
  res.local_matches.assign(3, 0);  // wrong slice length
  CHECK_THROWS_AS(reduce_reports({res}, 4), std::invalid_argument);
  CHECK_THROWS_AS(reduce_reports({}, 4), std::invalid_argument);

  res.local_matches.assign(4, 0);
  RankResult other = res;
  other.candidates.assign(2, kNotFound);
  CHECK_THROWS_AS(reduce_reports({res, other}, 4), std::invalid_argument);
}

TEST_CASE("tag outside its block is a protocol violation") {
  RankResult res;
  res.seq_lo = 4;
  res.seq_hi = 8;
  res.candidates.assign(1, 2);
  res.local_matches.assign(4, 1);
  res.tags.push_back(IncrementTag{0, 2, 0, 8});
  CHECK_THROWS_AS(reduce_reports({res}, 8), ProtocolError);
}

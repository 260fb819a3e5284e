#include <doctest.h>

#include <random>
#include <sstream>

#include "gcsa/alignment.hpp"
#include "gcsa/construction.hpp"
#include "gcsa/error.hpp"
#include "gcsa/matcher.hpp"
#include "support/oracles.hpp"

using namespace gcsa;

namespace {

const Alphabet kDna = Alphabet::dna();

struct Built {
  SortedAutomaton sorted;
  GcsaIndex index;
};

Built build(const std::vector<std::string>& rows, std::size_t m, std::uint32_t d = 4) {
  auto sa = build_prefix_sorted(build_automaton(AlignmentMatrix(rows), m));
  auto ix = GcsaIndex::from_automaton(sa, d);
  return {std::move(sa), std::move(ix)};
}

SymbolString enc(const std::string& s) { return kDna.encode_string(s); }

// Smallest edit distance between p and any substring (possibly empty) of a
// recognized path label, ignoring the sentinels.
std::uint32_t substring_distance(const Automaton& a, const SymbolString& p) {
  std::uint32_t best = static_cast<std::uint32_t>(p.size());
  auto suffixes = all_suffix_sets(a);
  for (NodeId v = 0; v < a.node_count(); ++v) {
    if (a.label(v) == kEndMarker || a.label(v) == a.alphabet().start_marker()) continue;
    for (const auto& s : suffixes[v]) {
      best = std::min(best, oracle::best_prefix_distance(p, s.substr(0, s.size() - 1)));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("reverse complement") {
  CHECK(reverse_complement("ACGT") == "ACGT");
  CHECK(reverse_complement("AAA") == "TTT");
  CHECK(reverse_complement("GATTACA") == "TGTAATC");
  CHECK(reverse_complement("acgN") == "NCGT");
  CHECK(reverse_complement("") == "");
  CHECK_THROWS_AS(reverse_complement("ACXT"), InputError);
}

TEST_CASE("read parsing") {
  auto fasta = parse_reads(">r1 first read\nACGT\nTT\n>r2\nGGA\n");
  REQUIRE(fasta.size() == 2);
  CHECK(fasta[0].name == "r1");
  CHECK(fasta[0].sequence == "ACGTTT");
  CHECK(fasta[1].sequence == "GGA");

  auto fastq = parse_reads("@q1\nACGT\n+\nIIII\n@q2 x\nNNAC\n+q2\n!!!!\n");
  REQUIRE(fastq.size() == 2);
  CHECK(fastq[1].name == "q2");
  CHECK(fastq[1].sequence == "NNAC");

  CHECK(parse_reads("").empty());
  CHECK_THROWS_WITH_AS(parse_reads("@q1\nACGT\n+\nII\n"), doctest::Contains("line"), InputError);
  CHECK_THROWS_AS(parse_reads("ACGT\n"), InputError);
}

TEST_CASE("exact batch") {
  Built b = build({"ACGTACGGTC", "ACGTTCGGTC"}, 1);
  std::vector<Read> reads = {{"fwd", "GTACG"},    {"rc", reverse_complement("GTTCGG")},
                             {"miss", "GGGGG"},   {"n", "NNNN"},
                             {"recomb", "ACGTTC"}, {"empty", ""}};
  auto results = exact_batch(b.index, reads);
  REQUIRE(results.size() == reads.size());
  CHECK(results[0].matched());
  CHECK(results[0].hits[0].strand == Strand::forward);
  CHECK(results[0].hits[0].ids == std::vector<std::uint64_t>{3});
  CHECK(results[1].matched());
  CHECK(results[1].hits.size() == 1);
  CHECK(results[1].hits[0].strand == Strand::reverse_complement);
  CHECK_FALSE(results[2].matched());
  CHECK(results[3].unmatchable);
  CHECK_FALSE(results[3].matched());
  CHECK(results[4].matched());
  CHECK_FALSE(results[5].matched());

  auto forward_only = exact_batch(b.index, reads, false);
  CHECK_FALSE(forward_only[1].matched());

  std::ostringstream out;
  for (const auto& r : results) write_tsv(out, r);
  std::string tsv = out.str();
  CHECK(tsv.find("fwd\t+\t0\t1\t3\n") != std::string::npos);
  CHECK(tsv.find("miss\t*\t*\t0\t*\n") != std::string::npos);
}

TEST_CASE("occurrence cap") {
  Built b = build({"ACACACACAC"}, 2);
  MatchOptions options;
  options.max_occurrences = 2;
  auto r = match_read(b.index, {"r", "AC"}, options);
  REQUIRE(r.matched());
  CHECK(r.hits[0].occurrences == 5);
  CHECK(r.hits[0].ids.size() == 2);
}

TEST_CASE("lower bounds") {
  Built b = build({"ACGTTGCAAGGCTTAC"}, 2);
  auto present = lower_bound_array(b.index, enc("GTTGCAAG"));
  CHECK(present == std::vector<std::uint32_t>(9, 0));
  // One planted mismatch: the bound must reach 1 by the end.
  auto planted = lower_bound_array(b.index, enc("GTTGGAAGGCT"));
  CHECK(planted.back() >= 1);
  CHECK(std::is_sorted(planted.begin(), planted.end()));

  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    Built f = build(oracle::random_alignment(rng, 1 + rng() % 3, 4 + rng() % 12), rng() % 3);
    if (count_paths(f.sorted.automaton) > 500) continue;
    for (int q = 0; q < 10; ++q) {
      SymbolString p = enc(oracle::random_string(rng, 1 + rng() % 8));
      auto bound = lower_bound_array(f.index, p);
      REQUIRE(bound.size() == p.size() + 1);
      for (std::size_t i = 0; i <= p.size(); ++i) {
        CHECK(bound[i] <= substring_distance(f.sorted.automaton, p.substr(0, i)));
      }
    }
  }
}

TEST_CASE("approximate search") {
  SUBCASE("k = 0 is find") {
    Built b = build({"ACGTACGGTC", "ACGTTCGGTC"}, 1);
    for (const auto& q : oracle::all_patterns(4)) {
      auto r = approximate_find(b.index, enc(q), 0);
      NodeRange exact = b.index.find(q);
      CHECK(r.distance.has_value() == !exact.empty());
      if (!exact.empty()) CHECK(oracle::nodes_in(b.index, r.ranges) == oracle::nodes_in(b.index, {exact}));
    }
    CHECK_THROWS_AS(approximate_find(b.index, enc("AC"), -1), InputError);
  }
  SUBCASE("one substitution in a single string") {
    std::string x = "TTGACCATGCAGT";
    Built b = build({x}, 3);
    auto r = approximate_find(b.index, enc("ACGATG"), 2);  // x has ACCATG
    REQUIRE(r.distance);
    CHECK(*r.distance == 1);
    CHECK(b.index.locate_all(r.ranges.front()) == std::vector<std::uint64_t>{4});
  }
  SUBCASE("fuzzed against path enumeration") {
    std::mt19937_64 rng(23);
    int compared = 0;
    for (int t = 0; t < 40; ++t) {
      Built b = build(oracle::random_alignment(rng, 1 + rng() % 4, 3 + rng() % 12), rng() % 3);
      const Automaton& a = b.sorted.automaton;
      if (count_paths(a) > 300) continue;
      for (int q = 0; q < 12; ++q) {
        SymbolString p = enc(oracle::random_string(rng, 1 + rng() % 8));
        std::optional<std::uint32_t> previous;
        for (int k = 0; k <= 2; ++k) {
          auto got = approximate_find(b.index, p, k);
          auto want = oracle::approximate_oracle(a, p, static_cast<std::uint32_t>(k));
          CHECK(got.distance == want.distance);
          std::set<std::uint64_t> want_nodes;
          for (NodeId v : want.nodes) want_nodes.insert(v + 1);
          CHECK(oracle::nodes_in(b.index, got.ranges) == want_nodes);
          // Found at k implies found with the same distance at k + 1.
          if (previous) CHECK(got.distance == previous);
          previous = got.distance;
          for (auto node : oracle::nodes_in(b.index, got.ranges)) {
            auto d = best_distance_from(b.index, b.index.node_range(node), p, *got.distance);
            CHECK(d == got.distance);
          }
          ++compared;
        }
      }
    }
    CHECK(compared > 300);
  }
}

TEST_CASE("N forces a substitution") {
  Built b = build({"ACGTACGGTC"}, 1);
  MatchOptions options;
  options.max_edit = 1;
  options.reverse_complement = false;
  auto r = match_read(b.index, {"r", "ACNTA"}, options);
  CHECK(r.unmatchable);
  REQUIRE(r.matched());
  CHECK(*r.distance == 1);
  CHECK(r.hits[0].ids == std::vector<std::uint64_t>{1});
}

TEST_CASE("reads matching a row are found") {
  std::mt19937_64 rng(29);
  auto rows = oracle::random_alignment(rng, 4, 200, 0.05, 0.02);
  Built b = build(rows, 4, 16);
  std::vector<Read> reads;
  for (int i = 0; i < 200; ++i) {
    AlignmentMatrix matrix(rows);
    std::string seq = matrix.sequence(rng() % rows.size());
    std::size_t len = 5 + rng() % 30;
    if (seq.size() < len) continue;
    std::string read = seq.substr(rng() % (seq.size() - len + 1), len);
    reads.push_back({"r" + std::to_string(i), i % 2 ? read : reverse_complement(read)});
  }
  for (const auto& r : exact_batch(b.index, reads)) {
    CHECK(r.matched());
    CHECK(*r.distance == 0);
  }
}

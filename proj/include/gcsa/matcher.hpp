#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcsa/index.hpp"

namespace gcsa {

/// Read positions holding characters outside the alphabet (N and friends)
/// are encoded as this symbol, which matches nothing.
inline constexpr Symbol kNoMatch = 0xFF;

struct Read {
  std::string name;
  std::string sequence;
};

/// FASTA or FASTQ, detected from the first record marker. Qualities are
/// ignored. Throws InputError with a line number on malformed input.
std::vector<Read> parse_reads(std::string_view text);
std::vector<Read> read_reads_file(const std::string& path);

/// Watson-Crick reverse complement of a DNA string; N maps to N. Throws
/// InputError on any other character.
std::string reverse_complement(std::string_view s);

/// Encodes a read, mapping unknown characters to kNoMatch.
SymbolString encode_read(const Alphabet& alphabet, std::string_view read);

/// bound[i] is a lower bound on the edits needed to align p[0, i) to a
/// substring of a path label. Built by greedy left-to-right segmentation:
/// each maximal segment absent from the index costs at least one edit.
/// Segment ends are found by exponential plus binary search over find.
std::vector<std::uint32_t> lower_bound_array(const GcsaIndex& ix, const SymbolString& p);

/// Nodes from which some path label has a nonempty prefix within edit
/// distance `distance` of p, at the smallest distance <= k that has any.
struct ApproximateResult {
  std::optional<std::uint32_t> distance;
  std::vector<NodeRange> ranges;  // disjoint, in BWT order
};

ApproximateResult approximate_find(const GcsaIndex& ix, const SymbolString& p, int k);

/// Smallest edit distance between p and a nonempty prefix of a path label
/// from the node, exploring paths up to |p| + limit characters. Returns
/// nullopt when every alignment costs more than limit. Used to re-validate
/// reported matches.
std::optional<std::uint32_t> best_distance_from(const GcsaIndex& ix, const NodeRange& node,
                                                const SymbolString& p, std::uint32_t limit);

enum class Strand : std::uint8_t { forward, reverse_complement };
char strand_char(Strand s);

struct StrandHit {
  Strand strand;
  std::vector<NodeRange> ranges;
  std::uint64_t occurrences = 0;    // nodes covered by the ranges
  std::vector<std::uint64_t> ids;  // located node values, possibly capped
};

struct MatchResult {
  std::string read;
  bool unmatchable = false;  // read holds characters outside the alphabet
  std::optional<std::uint32_t> distance;
  std::vector<StrandHit> hits;  // strands reaching the best distance

  bool matched() const { return !hits.empty(); }
};

struct MatchOptions {
  std::uint32_t max_edit = 0;
  bool reverse_complement = true;
  std::optional<std::uint64_t> max_occurrences;
};

MatchResult match_read(const GcsaIndex& ix, const Read& read, const MatchOptions& options = {});
std::vector<MatchResult> match_batch(const GcsaIndex& ix, const std::vector<Read>& reads,
                                     const MatchOptions& options = {});
/// match_batch with max_edit forced to 0.
std::vector<MatchResult> exact_batch(const GcsaIndex& ix, const std::vector<Read>& reads,
                                     bool with_reverse_complement = true);

/// read, strand, distance, count, comma-separated ids. One line per strand
/// hit; an unmatched read prints "name\t*\t*\t0\t*".
void write_tsv(std::ostream& out, const MatchResult& result);

}  // namespace gcsa

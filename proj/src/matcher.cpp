#include "gcsa/matcher.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gcsa/error.hpp"

namespace gcsa {

namespace {

char complement(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'A': return 'T';
    case 'C': return 'G';
    case 'G': return 'C';
    case 'T': return 'A';
    case 'N': return 'N';
    default: return 0;
  }
}

std::string tolerant_reverse_complement(std::string_view s) {
  std::string out(s.rbegin(), s.rend());
  for (char& c : out) {
    char m = complement(c);
    c = m ? m : 'N';
  }
  return out;
}

bool occurs(const GcsaIndex& ix, const SymbolString& p, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i) {
    if (static_cast<Symbol>(p[i]) == kNoMatch) return false;
  }
  return !ix.find_symbols(p.substr(from, to - from)).empty();
}

// Node ranks covered by the ranges, merged into disjoint BWT ranges.
std::vector<NodeRange> merge_ranges(const GcsaIndex& ix, std::vector<NodeRange> ranges) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> spans;
  for (const auto& r : ranges) {
    if (!r.empty()) spans.emplace_back(ix.first_node(r), ix.last_node(r));
  }
  std::sort(spans.begin(), spans.end());
  std::vector<NodeRange> out;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  for (std::size_t i = 0; i <= spans.size(); ++i) {
    if (i < spans.size() && i > 0 && spans[i].first <= hi + 1) {
      hi = std::max(hi, spans[i].second);
      continue;
    }
    if (i > 0) out.push_back({ix.node_range(lo).sp, ix.node_range(hi).ep});
    if (i < spans.size()) std::tie(lo, hi) = spans[i];
  }
  return out;
}

class ApproximateSearch {
 public:
  ApproximateSearch(const GcsaIndex& ix, const SymbolString& p)
      : ix_(ix), p_(p), bound_(lower_bound_array(ix, p)) {}

  std::vector<NodeRange> run(std::uint32_t budget) {
    budget_ = budget;
    found_.clear();
    search(ix_.full_range(), p_.size(), 0, Op::none, false);
    return found_;
  }

 private:
  enum class Op { none, substitution, insertion, deletion };

  // Backward search state: p[0, i) still to align, r the nodes whose path
  // labels start with the text aligned so far to p[i, |p|).
  void search(const NodeRange& r, std::size_t i, std::uint32_t errors, Op last, bool extended) {
    if (errors + bound_[i] > budget_) return;
    if (i == 0) {
      if (extended) found_.push_back(r);
      return;
    }
    const Symbol sigma = static_cast<Symbol>(ix_.alphabet().sigma());
    const auto want = static_cast<Symbol>(p_[i - 1]);
    for (Symbol c = 1; c <= sigma; ++c) {
      std::uint32_t cost = c == want ? 0 : 1;
      if (errors + cost > budget_) continue;
      NodeRange next = ix_.extend(r, c);
      if (!next.empty()) search(next, i - 1, errors + cost, Op::substitution, true);
    }
    if (errors + 1 > budget_) return;
    // An insertion next to a deletion is never better than one substitution.
    if (last != Op::deletion) search(r, i - 1, errors + 1, Op::insertion, extended);
    // Text characters after the end of the pattern are never needed.
    if (last != Op::insertion && i < p_.size()) {
      for (Symbol c = 1; c <= sigma; ++c) {
        NodeRange next = ix_.extend(r, c);
        if (!next.empty()) search(next, i, errors + 1, Op::deletion, true);
      }
    }
  }

  const GcsaIndex& ix_;
  const SymbolString& p_;
  std::vector<std::uint32_t> bound_;
  std::uint32_t budget_ = 0;
  std::vector<NodeRange> found_;
};

void best_distance_walk(const GcsaIndex& ix, const NodeRange& node, const SymbolString& p,
                        std::vector<std::uint32_t> column, std::size_t depth, std::uint32_t limit,
                        std::optional<std::uint32_t>& best) {
  // column[i] = edit distance between p[0, i) and the text read so far.
  Symbol c = ix.node_label(node);
  if (c == kEndMarker || c == ix.alphabet().start_marker()) return;
  std::vector<std::uint32_t> next(column.size());
  next[0] = column[0] + 1;
  std::uint32_t lowest = next[0];
  for (std::size_t i = 1; i < column.size(); ++i) {
    std::uint32_t sub = column[i - 1] + (static_cast<Symbol>(p[i - 1]) == c ? 0 : 1);
    next[i] = std::min({sub, column[i] + 1, next[i - 1] + 1});
    lowest = std::min(lowest, next[i]);
  }
  if (next.back() <= limit && (!best || next.back() < *best)) best = next.back();
  if (lowest > limit || depth + 1 >= p.size() + limit) return;
  for (const NodeRange& succ : ix.psi(node)) {
    best_distance_walk(ix, succ, p, next, depth + 1, limit, best);
  }
}

}  // namespace

std::vector<Read> parse_reads(std::string_view text) {
  std::vector<Read> reads;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  enum class Format { unknown, fasta, fastq } format = Format::unknown;
  auto trim = [](std::string& s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  };
  while (std::getline(in, line)) {
    ++line_no;
    trim(line);
    if (line.empty()) continue;
    if (format == Format::unknown) {
      if (line[0] == '>') {
        format = Format::fasta;
      } else if (line[0] == '@') {
        format = Format::fastq;
      } else {
        throw InputError("reads line " + std::to_string(line_no) +
                         ": expected a FASTA '>' or FASTQ '@' header");
      }
    }
    if (format == Format::fasta) {
      if (line[0] == '>') {
        reads.push_back({line.substr(1), {}});
      } else {
        reads.back().sequence += line;
      }
      continue;
    }
    if (line[0] != '@') {
      throw InputError("reads line " + std::to_string(line_no) + ": expected a FASTQ '@' header");
    }
    Read read{line.substr(1), {}};
    std::string seq;
    std::string plus;
    std::string qual;
    if (!std::getline(in, seq) || !std::getline(in, plus) || !std::getline(in, qual)) {
      throw InputError("reads line " + std::to_string(line_no) + ": truncated FASTQ record");
    }
    line_no += 3;
    trim(seq);
    trim(plus);
    trim(qual);
    if (plus.empty() || plus[0] != '+') {
      throw InputError("reads line " + std::to_string(line_no - 1) + ": expected a FASTQ '+' line");
    }
    if (qual.size() != seq.size()) {
      throw InputError("reads line " + std::to_string(line_no) +
                       ": quality length differs from sequence length");
    }
    read.sequence = std::move(seq);
    reads.push_back(std::move(read));
  }
  for (auto& r : reads) {
    auto space = r.name.find_first_of(" \t");
    if (space != std::string::npos) r.name.resize(space);
  }
  return reads;
}

std::vector<Read> read_reads_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open reads file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_reads(buf.str());
}

std::string reverse_complement(std::string_view s) {
  std::string out(s.rbegin(), s.rend());
  for (char& c : out) {
    char m = complement(c);
    if (!m) throw InputError(std::string("cannot complement non-DNA character '") + c + "'");
    c = m;
  }
  return out;
}

SymbolString encode_read(const Alphabet& alphabet, std::string_view read) {
  SymbolString out;
  out.reserve(read.size());
  for (char c : read) {
    auto s = alphabet.encode_base(c);
    out.push_back(static_cast<char>(s ? *s : kNoMatch));
  }
  return out;
}

std::vector<std::uint32_t> lower_bound_array(const GcsaIndex& ix, const SymbolString& p) {
  const std::size_t m = p.size();
  std::vector<std::uint32_t> bound(m + 1, 0);
  std::uint32_t errors = 0;
  std::size_t start = 0;
  while (start < m) {
    // Longest end such that p[start, end) occurs. Occurrence is monotone in
    // end, so grow the step exponentially and then bisect.
    // p[start, lo) occurs; p[start, hi) does not, or hi == m + 1.
    std::size_t lo = start;
    std::size_t hi = m + 1;
    for (std::size_t step = 1; lo + step <= m; step *= 2) {
      if (!occurs(ix, p, start, lo + step)) {
        hi = lo + step;
        break;
      }
      lo += step;
    }
    while (hi - lo > 1) {
      std::size_t mid = lo + (hi - lo) / 2;
      if (occurs(ix, p, start, mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    for (std::size_t i = start + 1; i <= lo; ++i) bound[i] = errors;
    if (lo == m) break;
    // p[start, lo + 1) is absent: one edit lies inside it.
    ++errors;
    bound[lo + 1] = errors;
    start = lo + 1;
  }
  return bound;
}

ApproximateResult approximate_find(const GcsaIndex& ix, const SymbolString& p, int k) {
  if (k < 0) throw InputError("maximum edit distance must be non-negative");
  ApproximateResult result;
  ApproximateSearch search(ix, p);
  for (std::uint32_t budget = 0; budget <= static_cast<std::uint32_t>(k); ++budget) {
    auto found = search.run(budget);
    if (found.empty()) continue;
    result.distance = budget;
    result.ranges = merge_ranges(ix, std::move(found));
    break;
  }
  return result;
}

std::optional<std::uint32_t> best_distance_from(const GcsaIndex& ix, const NodeRange& node,
                                                const SymbolString& p, std::uint32_t limit) {
  std::vector<std::uint32_t> column(p.size() + 1);
  for (std::size_t i = 0; i <= p.size(); ++i) column[i] = static_cast<std::uint32_t>(i);
  std::optional<std::uint32_t> best;
  best_distance_walk(ix, node, p, column, 0, limit, best);
  return best;
}

char strand_char(Strand s) { return s == Strand::forward ? '+' : '-'; }

MatchResult match_read(const GcsaIndex& ix, const Read& read, const MatchOptions& options) {
  MatchResult result;
  result.read = read.name;
  SymbolString forward = encode_read(ix.alphabet(), read.sequence);
  result.unmatchable = read.sequence.empty() ||
                       std::any_of(forward.begin(), forward.end(),
                                   [](char c) { return static_cast<Symbol>(c) == kNoMatch; });
  if (read.sequence.empty() || (result.unmatchable && options.max_edit == 0)) return result;

  std::vector<std::pair<Strand, SymbolString>> strands{{Strand::forward, forward}};
  if (options.reverse_complement) {
    strands.emplace_back(Strand::reverse_complement,
                         encode_read(ix.alphabet(), tolerant_reverse_complement(read.sequence)));
  }
  std::vector<std::pair<Strand, ApproximateResult>> found;
  for (const auto& [strand, pattern] : strands) {
    ApproximateResult r;
    if (options.max_edit == 0) {
      NodeRange range = ix.find_symbols(pattern);
      if (!range.empty()) r = {0, {range}};
    } else {
      r = approximate_find(ix, pattern, static_cast<int>(options.max_edit));
    }
    if (r.distance) {
      if (!result.distance || *r.distance < *result.distance) result.distance = r.distance;
      found.emplace_back(strand, std::move(r));
    }
  }
  for (auto& [strand, r] : found) {
    if (r.distance != result.distance) continue;
    StrandHit hit{strand, std::move(r.ranges), 0, {}};
    for (const auto& range : hit.ranges) {
      std::uint64_t first = ix.first_node(range);
      std::uint64_t last = ix.last_node(range);
      for (std::uint64_t node = first; node <= last; ++node) {
        ++hit.occurrences;
        if (options.max_occurrences && hit.ids.size() >= *options.max_occurrences) continue;
        hit.ids.push_back(ix.locate(ix.node_range(node)));
      }
    }
    result.hits.push_back(std::move(hit));
  }
  return result;
}

std::vector<MatchResult> match_batch(const GcsaIndex& ix, const std::vector<Read>& reads,
                                     const MatchOptions& options) {
  std::vector<MatchResult> out;
  out.reserve(reads.size());
  for (const auto& read : reads) out.push_back(match_read(ix, read, options));
  return out;
}

std::vector<MatchResult> exact_batch(const GcsaIndex& ix, const std::vector<Read>& reads,
                                     bool with_reverse_complement) {
  MatchOptions options;
  options.reverse_complement = with_reverse_complement;
  return match_batch(ix, reads, options);
}

void write_tsv(std::ostream& out, const MatchResult& result) {
  if (!result.matched()) {
    out << result.read << "\t*\t*\t0\t*\n";
    return;
  }
  for (const auto& hit : result.hits) {
    out << result.read << '\t' << strand_char(hit.strand) << '\t' << *result.distance << '\t'
        << hit.occurrences << '\t';
    if (hit.ids.empty()) out << '*';
    for (std::size_t i = 0; i < hit.ids.size(); ++i) out << (i ? "," : "") << hit.ids[i];
    out << '\n';
  }
}

}  // namespace gcsa

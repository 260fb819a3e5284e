#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gcsa/alphabet.hpp"
#include "gcsa/automaton.hpp"

namespace gcsa {

inline constexpr std::size_t kDefaultContextLength = 4;

/// r rows of equal length over the alphabet plus '-'. Rows are upper-cased.
class AlignmentMatrix {
 public:
  /// Validates row lengths and characters; throws InputError naming the row.
  AlignmentMatrix(std::vector<std::string> rows, Alphabet alphabet = Alphabet::dna());

  const std::vector<std::string>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t width() const { return rows_.empty() ? 0 : rows_.front().size(); }
  const Alphabet& alphabet() const { return alphabet_; }

  /// Row i with gaps removed.
  std::string sequence(std::size_t i) const;

 private:
  std::vector<std::string> rows_;
  Alphabet alphabet_;
};

/// Reads one row per line; blank lines and '>' header lines are skipped.
/// When headers are present, the lines following a header are joined into
/// one row (multi-line FASTA). Errors carry the line number.
AlignmentMatrix parse_alignment(std::string_view text, const Alphabet& alphabet = Alphabet::dna());
AlignmentMatrix read_alignment_file(const std::string& path, const Alphabet& alphabet = Alphabet::dna());

/// Alignment after gap normalization: every row is #S$, all-gap columns are
/// gone, and equal characters with equal preceding characters sit at equal
/// distances from them.
struct NormalizedAlignment {
  std::vector<std::string> rows;
  Alphabet alphabet;

  std::size_t width() const { return rows.empty() ? 0 : rows.front().size(); }
};

NormalizedAlignment normalize_alignment(const AlignmentMatrix& a);

/// T_i[j] followed by the next m non-gap characters of the row, padded with '$'.
std::string context_label(const NormalizedAlignment& a, std::size_t row, std::size_t col,
                          std::size_t m);

/// Reverse-deterministic automaton recognizing every path through the
/// alignment that switches rows only where context labels agree. Node
/// positions are normalized column numbers ('#' at column 0).
Automaton build_automaton(const AlignmentMatrix& a, std::size_t context_length = kDefaultContextLength);
Automaton build_automaton(const NormalizedAlignment& a, std::size_t context_length);

}  // namespace gcsa

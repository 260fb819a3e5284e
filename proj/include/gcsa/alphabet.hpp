#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace gcsa {

/// Symbol code. 0 is the end marker '$', 1..sigma the alphabet characters in
/// lexicographic order, sigma + 1 the start marker '#'.
using Symbol = std::uint8_t;

/// A string of symbol codes, one code per char. std::string compares chars
/// as unsigned, so ordinary string comparison is the lexicographic order of
/// the codes ('$' < alphabet < '#').
using SymbolString = std::string;

inline constexpr Symbol kEndMarker = 0;
inline constexpr char kEndChar = '$';
inline constexpr char kStartChar = '#';
inline constexpr char kGapChar = '-';

class Alphabet {
 public:
  /// Characters in lexicographic order; upper-cased, must be distinct and
  /// must not include '$', '#' or '-'.
  explicit Alphabet(std::string_view chars = "ACGT");

  static Alphabet dna() { return Alphabet("ACGT"); }

  std::size_t sigma() const { return chars_.size(); }
  Symbol start_marker() const { return static_cast<Symbol>(chars_.size() + 1); }
  const std::string& characters() const { return chars_; }

  /// Maps a character (case-insensitive) to its code, including '$' and '#'.
  std::optional<Symbol> encode(char c) const;
  /// Alphabet characters only: '$' and '#' are rejected.
  std::optional<Symbol> encode_base(char c) const;
  char decode(Symbol s) const;

  /// Encodes a string over the alphabet plus the two markers. Throws InputError.
  SymbolString encode_string(std::string_view text) const;
  std::string decode_string(std::string_view codes) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.chars_ == b.chars_; }

 private:
  std::string chars_;
  std::array<std::int16_t, 256> lookup_{};
};

}  // namespace gcsa

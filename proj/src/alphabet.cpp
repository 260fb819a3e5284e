#include "gcsa/alphabet.hpp"

#include <cctype>

#include "gcsa/error.hpp"

namespace gcsa {

Alphabet::Alphabet(std::string_view chars) {
  lookup_.fill(-1);
  if (chars.empty() || chars.size() > 250) {
    throw InputError("alphabet must have between 1 and 250 characters");
  }
  for (char raw : chars) {
    char c = static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
    if (c == kEndChar || c == kStartChar || c == kGapChar || !std::isgraph(static_cast<unsigned char>(c))) {
      throw InputError(std::string("invalid alphabet character '") + raw + "'");
    }
    if (!chars_.empty() && c <= chars_.back()) {
      throw InputError("alphabet characters must be distinct and in increasing order");
    }
    chars_.push_back(c);
  }
  lookup_[static_cast<unsigned char>(kEndChar)] = kEndMarker;
  lookup_[static_cast<unsigned char>(kStartChar)] = start_marker();
  for (std::size_t i = 0; i < chars_.size(); ++i) {
    auto code = static_cast<std::int16_t>(i + 1);
    lookup_[static_cast<unsigned char>(chars_[i])] = code;
    lookup_[static_cast<unsigned char>(std::tolower(static_cast<unsigned char>(chars_[i])))] = code;
  }
}

std::optional<Symbol> Alphabet::encode(char c) const {
  std::int16_t v = lookup_[static_cast<unsigned char>(c)];
  if (v < 0) return std::nullopt;
  return static_cast<Symbol>(v);
}

std::optional<Symbol> Alphabet::encode_base(char c) const {
  auto s = encode(c);
  if (!s || *s == kEndMarker || *s == start_marker()) return std::nullopt;
  return s;
}

char Alphabet::decode(Symbol s) const {
  if (s == kEndMarker) return kEndChar;
  if (s == start_marker()) return kStartChar;
  if (s > chars_.size()) throw InputError("symbol code " + std::to_string(s) + " out of range");
  return chars_[s - 1];
}

SymbolString Alphabet::encode_string(std::string_view text) const {
  SymbolString out;
  out.reserve(text.size());
  for (char c : text) {
    auto s = encode(c);
    if (!s) throw InputError(std::string("character '") + c + "' is not in the alphabet");
    out.push_back(static_cast<char>(*s));
  }
  return out;
}

std::string Alphabet::decode_string(std::string_view codes) const {
  std::string out;
  out.reserve(codes.size());
  for (char c : codes) out.push_back(decode(static_cast<Symbol>(c)));
  return out;
}

}  // namespace gcsa

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gcsa/byte_io.hpp"

namespace gcsa {

/*
 * Static bit vectors with rank/select.
 *
 * Positions are 1-based: a vector of universe size n holds bits 1..n, and
 * rank1(0) == 0. Three encodings share one interface:
 *
 *   plain       one bit per position, rank directory per block
 *   gap         LEB128 deltas between consecutive 1-bit positions
 *   run_length  LEB128 (zeros, ones - 1) pairs, one per run of 1-bits
 *
 * The compressed encodings cut their byte stream into blocks of at most
 * block_size bytes with no code straddling a boundary. Each block keeps an
 * anchor (byte offset, last 1-bit position before the block, rank before
 * the block); queries binary-search the anchors and scan one block.
 */
enum class Encoding : std::uint8_t { plain = 0, gap = 1, run_length = 2 };

std::string to_string(Encoding e);

inline constexpr std::uint32_t kDefaultBlockBytes = 32;

/// Counts queries issued against any BitVector on the current thread.
/// Every public query (rank1, select1, access, pred1, succ1) counts once.
class BitOpCounter {
 public:
  static std::uint64_t value();
  static void reset();
};

class BitVector {
 public:
  BitVector() = default;

  /// Builds from strictly increasing 1-based positions of the 1-bits.
  static BitVector from_ones(std::uint64_t universe, std::span<const std::uint64_t> ones,
                             Encoding encoding, std::uint32_t block_bytes = kDefaultBlockBytes);
  static BitVector from_bits(const std::vector<bool>& bits, Encoding encoding,
                             std::uint32_t block_bytes = kDefaultBlockBytes);

  std::uint64_t size() const { return universe_; }
  std::uint64_t ones() const { return ones_; }
  Encoding encoding() const { return encoding_; }
  std::uint32_t block_bytes() const { return block_bytes_; }

  /// Number of 1-bits in [1, i]. Requires 0 <= i <= size().
  std::uint64_t rank1(std::uint64_t i) const;
  /// Position of the j-th 1-bit. Requires 1 <= j <= ones().
  std::uint64_t select1(std::uint64_t j) const;
  /// Requires 1 <= i <= size().
  bool access(std::uint64_t i) const;
  /// Position of the last 1-bit in [1, i], or 0 if there is none.
  std::uint64_t pred1(std::uint64_t i) const;
  /// Position of the first 1-bit in [i, size()], or size() + 1 if there is none.
  /// Accepts 1 <= i <= size() + 1.
  std::uint64_t succ1(std::uint64_t i) const;

  /// All 1-bit positions in increasing order.
  std::vector<std::uint64_t> one_positions() const;

  void serialize(ByteWriter& out) const;
  static BitVector deserialize(ByteReader& in);
  std::size_t serialized_size() const;

  friend bool operator==(const BitVector& a, const BitVector& b);

 private:
  struct Anchor {
    std::uint64_t offset;    // byte offset of the block in payload_
    std::uint64_t prev_pos;  // last 1-bit position before the block (0 if none)
    std::uint64_t rank;      // 1-bits before the block
  };

  // Decoding cursor over the compressed payload; yields runs of 1-bits
  // [start, start + length - 1]. Gap encoding yields runs of length 1.
  struct Run {
    std::uint64_t start;
    std::uint64_t length;
  };
  class Cursor;

  void build_directory();
  std::size_t block_for_position(std::uint64_t i) const;
  std::size_t block_for_rank(std::uint64_t j) const;
  std::uint64_t block_end(std::size_t b) const;

  std::uint64_t plain_rank(std::uint64_t i) const;
  std::uint64_t plain_select(std::uint64_t j) const;
  std::uint64_t coded_rank(std::uint64_t i) const;
  std::uint64_t coded_select(std::uint64_t j) const;
  std::uint64_t coded_pred(std::uint64_t i) const;
  std::uint64_t coded_succ(std::uint64_t i) const;

  Encoding encoding_ = Encoding::plain;
  std::uint32_t block_bytes_ = kDefaultBlockBytes;
  std::uint64_t universe_ = 0;
  std::uint64_t ones_ = 0;

  std::vector<std::uint64_t> words_;      // plain
  std::vector<std::uint64_t> block_rank_;  // plain: 1-bits before each block
  std::vector<std::uint8_t> payload_;     // gap / run_length
  std::vector<Anchor> anchors_;           // gap / run_length
};

}  // namespace gcsa

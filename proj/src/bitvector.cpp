#include "gcsa/bitvector.hpp"

#include <algorithm>
#include <bit>

#include "gcsa/error.hpp"

namespace gcsa {

namespace {

thread_local std::uint64_t tl_bit_ops = 0;

void put_varint(std::vector<std::uint8_t>& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

// Position of the k-th (0-based) set bit of a word; the word must have > k set bits.
unsigned select_in_word(std::uint64_t w, unsigned k) {
  for (unsigned i = 0; i < k; ++i) w &= w - 1;
  return static_cast<unsigned>(std::countr_zero(w));
}

}  // namespace

std::string to_string(Encoding e) {
  switch (e) {
    case Encoding::plain:
      return "plain";
    case Encoding::gap:
      return "gap";
    case Encoding::run_length:
      return "run_length";
  }
  return "unknown";
}

std::uint64_t BitOpCounter::value() { return tl_bit_ops; }
void BitOpCounter::reset() { tl_bit_ops = 0; }

class BitVector::Cursor {
 public:
  Cursor(const BitVector& bv, std::size_t block)
      : bv_(bv),
        pos_(bv.anchors_[block].offset),
        end_(bv.block_end(block)),
        last_(bv.anchors_[block].prev_pos),
        rank_(bv.anchors_[block].rank) {}

  bool next(Run& run) {
    if (pos_ >= end_) return false;
    if (bv_.encoding_ == Encoding::gap) {
      run.start = last_ + read();
      run.length = 1;
    } else {
      std::uint64_t zeros = read();
      run.start = last_ + zeros + 1;
      run.length = read() + 1;
    }
    last_ = run.start + run.length - 1;
    return true;
  }

  // 1-bits before the block; callers add up run lengths from here.
  std::uint64_t base_rank() const { return rank_; }

 private:
  std::uint64_t read() {
    std::uint64_t v = 0;
    int shift = 0;
    while (true) {
      std::uint8_t byte = bv_.payload_[pos_++];
      v |= static_cast<std::uint64_t>(byte & 0x7F) << shift;
      if ((byte & 0x80) == 0) break;
      shift += 7;
    }
    return v;
  }

  const BitVector& bv_;
  std::uint64_t pos_;
  std::uint64_t end_;
  std::uint64_t last_;
  std::uint64_t rank_;
};

BitVector BitVector::from_ones(std::uint64_t universe, std::span<const std::uint64_t> ones,
                               Encoding encoding, std::uint32_t block_bytes) {
  if (block_bytes < 8 || block_bytes % 8 != 0) {
    throw InputError("block size must be a positive multiple of 8 bytes, got " +
                     std::to_string(block_bytes));
  }
  std::uint64_t prev = 0;
  for (std::uint64_t p : ones) {
    if (p <= prev || p > universe) {
      throw InputError("bit positions must be strictly increasing within [1, " +
                       std::to_string(universe) + "]");
    }
    prev = p;
  }

  BitVector bv;
  bv.encoding_ = encoding;
  bv.block_bytes_ = block_bytes;
  bv.universe_ = universe;
  bv.ones_ = ones.size();

  switch (encoding) {
    case Encoding::plain:
      bv.words_.assign((universe + 63) / 64, 0);
      for (std::uint64_t p : ones) bv.words_[(p - 1) / 64] |= std::uint64_t{1} << ((p - 1) % 64);
      break;
    case Encoding::gap: {
      std::uint64_t last = 0;
      for (std::uint64_t p : ones) {
        put_varint(bv.payload_, p - last);
        last = p;
      }
      break;
    }
    case Encoding::run_length: {
      std::uint64_t last = 0;
      for (std::size_t k = 0; k < ones.size();) {
        std::size_t e = k;
        while (e + 1 < ones.size() && ones[e + 1] == ones[e] + 1) ++e;
        put_varint(bv.payload_, ones[k] - last - 1);
        put_varint(bv.payload_, e - k);
        last = ones[e];
        k = e + 1;
      }
      break;
    }
    default:
      throw InputError("unknown bit vector encoding");
  }
  bv.build_directory();
  return bv;
}

BitVector BitVector::from_bits(const std::vector<bool>& bits, Encoding encoding,
                               std::uint32_t block_bytes) {
  std::vector<std::uint64_t> ones;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) ones.push_back(i + 1);
  }
  return from_ones(bits.size(), ones, encoding, block_bytes);
}

// Blocks of the coded payload are cut greedily at code boundaries; a run
// code (one delta, or one zeros/ones pair) never straddles two blocks.
void BitVector::build_directory() {
  anchors_.clear();
  block_rank_.clear();
  if (encoding_ == Encoding::plain) {
    const std::size_t words_per_block = block_bytes_ / 8;
    std::uint64_t rank = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (w % words_per_block == 0) block_rank_.push_back(rank);
      rank += static_cast<std::uint64_t>(std::popcount(words_[w]));
    }
    if (rank != ones_) throw FormatError("bit vector payload disagrees with its 1-bit count");
    return;
  }

  std::uint64_t offset = 0;
  std::uint64_t last = 0;
  std::uint64_t rank = 0;
  std::uint64_t block_start = 0;
  bool open = false;
  while (offset < payload_.size()) {
    // Decode one code unit (and its size) starting at offset.
    std::uint64_t unit_start = offset;
    auto read = [&]() {
      std::uint64_t v = 0;
      int shift = 0;
      while (true) {
        if (offset >= payload_.size() || shift > 63) {
          throw FormatError("corrupt bit vector payload: unterminated code");
        }
        std::uint8_t byte = payload_[offset++];
        v |= static_cast<std::uint64_t>(byte & 0x7F) << shift;
        if ((byte & 0x80) == 0) break;
        shift += 7;
      }
      return v;
    };
    std::uint64_t start = 0;
    std::uint64_t length = 0;
    if (encoding_ == Encoding::gap) {
      std::uint64_t delta = read();
      if (delta == 0) throw FormatError("corrupt gap-encoded payload: zero delta");
      start = last + delta;
      length = 1;
    } else {
      std::uint64_t zeros = read();
      start = last + zeros + 1;
      length = read() + 1;
    }
    std::uint64_t unit_size = offset - unit_start;
    if (!open || unit_start - block_start + unit_size > block_bytes_) {
      anchors_.push_back({unit_start, last, rank});
      block_start = unit_start;
      open = true;
    }
    if (start <= last || length > universe_ || start > universe_ - length + 1) {
      throw FormatError("corrupt bit vector payload: position past universe");
    }
    last = start + length - 1;
    rank += length;
  }
  if (rank != ones_) throw FormatError("bit vector payload disagrees with its 1-bit count");
}

std::uint64_t BitVector::block_end(std::size_t b) const {
  return b + 1 < anchors_.size() ? anchors_[b + 1].offset : payload_.size();
}

// Last block whose preceding 1-bits all lie before position i.
std::size_t BitVector::block_for_position(std::uint64_t i) const {
  auto it = std::partition_point(anchors_.begin(), anchors_.end(),
                                 [i](const Anchor& a) { return a.prev_pos < i; });
  return static_cast<std::size_t>(it - anchors_.begin()) - 1;
}

// Last block with fewer than j 1-bits before it.
std::size_t BitVector::block_for_rank(std::uint64_t j) const {
  auto it = std::partition_point(anchors_.begin(), anchors_.end(),
                                 [j](const Anchor& a) { return a.rank < j; });
  return static_cast<std::size_t>(it - anchors_.begin()) - 1;
}

std::uint64_t BitVector::plain_rank(std::uint64_t i) const {
  if (i == 0) return 0;
  const std::size_t words_per_block = block_bytes_ / 8;
  std::uint64_t word = (i - 1) / 64;
  std::size_t block = word / words_per_block;
  std::uint64_t r = block_rank_[block];
  for (std::uint64_t w = block * words_per_block; w < word; ++w) {
    r += static_cast<std::uint64_t>(std::popcount(words_[w]));
  }
  unsigned bit = static_cast<unsigned>((i - 1) % 64);
  std::uint64_t mask = bit == 63 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (bit + 1)) - 1);
  return r + static_cast<std::uint64_t>(std::popcount(words_[word] & mask));
}

std::uint64_t BitVector::plain_select(std::uint64_t j) const {
  const std::size_t words_per_block = block_bytes_ / 8;
  auto it = std::partition_point(block_rank_.begin(), block_rank_.end(),
                                 [j](std::uint64_t r) { return r < j; });
  std::size_t block = static_cast<std::size_t>(it - block_rank_.begin()) - 1;
  std::uint64_t r = block_rank_[block];
  for (std::size_t w = block * words_per_block; w < words_.size(); ++w) {
    auto c = static_cast<std::uint64_t>(std::popcount(words_[w]));
    if (r + c >= j) {
      return w * 64 + select_in_word(words_[w], static_cast<unsigned>(j - r - 1)) + 1;
    }
    r += c;
  }
  throw InternalError("plain select ran past the end of the vector");
}

std::uint64_t BitVector::coded_rank(std::uint64_t i) const {
  if (i == 0 || anchors_.empty()) return 0;
  std::size_t b = block_for_position(i);
  Cursor cur(*this, b);
  std::uint64_t r = cur.base_rank();
  Run run{};
  while (cur.next(run)) {
    if (i < run.start) break;
    if (i < run.start + run.length) return r + (i - run.start + 1);
    r += run.length;
  }
  return r;
}

std::uint64_t BitVector::coded_select(std::uint64_t j) const {
  std::size_t b = block_for_rank(j);
  Cursor cur(*this, b);
  std::uint64_t r = cur.base_rank();
  Run run{};
  while (cur.next(run)) {
    if (r + run.length >= j) return run.start + (j - r - 1);
    r += run.length;
  }
  throw InternalError("coded select ran past the end of its block");
}

std::uint64_t BitVector::coded_pred(std::uint64_t i) const {
  if (i == 0 || anchors_.empty()) return 0;
  std::size_t b = block_for_position(i);
  Cursor cur(*this, b);
  std::uint64_t best = anchors_[b].prev_pos;
  Run run{};
  while (cur.next(run)) {
    if (i < run.start) break;
    best = std::min(i, run.start + run.length - 1);
    if (i < run.start + run.length) break;
  }
  return best;
}

std::uint64_t BitVector::coded_succ(std::uint64_t i) const {
  if (anchors_.empty()) return universe_ + 1;
  std::size_t b = i == 0 ? 0 : block_for_position(i);
  for (; b < anchors_.size(); ++b) {
    Cursor cur(*this, b);
    Run run{};
    while (cur.next(run)) {
      if (i < run.start) return run.start;
      if (i < run.start + run.length) return i;
    }
  }
  return universe_ + 1;
}

std::uint64_t BitVector::rank1(std::uint64_t i) const {
  ++tl_bit_ops;
  if (i > universe_) {
    throw InputError("rank1 position " + std::to_string(i) + " out of bounds [0, " +
                     std::to_string(universe_) + "]");
  }
  return encoding_ == Encoding::plain ? plain_rank(i) : coded_rank(i);
}

std::uint64_t BitVector::select1(std::uint64_t j) const {
  ++tl_bit_ops;
  if (j == 0 || j > ones_) {
    throw InputError("select1 rank " + std::to_string(j) + " out of range [1, " +
                     std::to_string(ones_) + "]");
  }
  return encoding_ == Encoding::plain ? plain_select(j) : coded_select(j);
}

bool BitVector::access(std::uint64_t i) const {
  ++tl_bit_ops;
  if (i == 0 || i > universe_) {
    throw InputError("access position " + std::to_string(i) + " out of bounds [1, " +
                     std::to_string(universe_) + "]");
  }
  if (encoding_ == Encoding::plain) return (words_[(i - 1) / 64] >> ((i - 1) % 64)) & 1;
  return coded_pred(i) == i;
}

std::uint64_t BitVector::pred1(std::uint64_t i) const {
  ++tl_bit_ops;
  if (i > universe_) {
    throw InputError("pred1 position " + std::to_string(i) + " out of bounds");
  }
  if (encoding_ != Encoding::plain) return coded_pred(i);
  std::uint64_t r = plain_rank(i);
  return r == 0 ? 0 : plain_select(r);
}

std::uint64_t BitVector::succ1(std::uint64_t i) const {
  ++tl_bit_ops;
  if (i == 0 || i > universe_ + 1) {
    throw InputError("succ1 position " + std::to_string(i) + " out of bounds");
  }
  if (i == universe_ + 1) return universe_ + 1;
  if (encoding_ != Encoding::plain) return coded_succ(i);
  std::uint64_t r = plain_rank(i - 1);
  return r == ones_ ? universe_ + 1 : plain_select(r + 1);
}

std::vector<std::uint64_t> BitVector::one_positions() const {
  std::vector<std::uint64_t> out;
  out.reserve(ones_);
  if (encoding_ == Encoding::plain) {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        out.push_back(w * 64 + static_cast<std::uint64_t>(std::countr_zero(word)) + 1);
        word &= word - 1;
      }
    }
    return out;
  }
  for (std::size_t b = 0; b < anchors_.size(); ++b) {
    Cursor cur(*this, b);
    Run run{};
    while (cur.next(run)) {
      for (std::uint64_t k = 0; k < run.length; ++k) out.push_back(run.start + k);
    }
  }
  return out;
}

void BitVector::serialize(ByteWriter& out) const {
  out.put_u8(static_cast<std::uint8_t>(encoding_));
  out.put_u64(universe_);
  out.put_u64(ones_);
  out.put_u32(block_bytes_);
  if (encoding_ == Encoding::plain) {
    for (std::uint64_t w : words_) out.put_u64(w);
  } else {
    out.put_u64(payload_.size());
    out.put_bytes(payload_);
  }
}

std::size_t BitVector::serialized_size() const {
  std::size_t header = 1 + 8 + 8 + 4;
  return header + (encoding_ == Encoding::plain ? words_.size() * 8 : 8 + payload_.size());
}

BitVector BitVector::deserialize(ByteReader& in) {
  BitVector bv;
  std::uint8_t tag = in.get_u8();
  if (tag > static_cast<std::uint8_t>(Encoding::run_length)) {
    throw FormatError("unknown bit vector encoding tag " + std::to_string(tag));
  }
  bv.encoding_ = static_cast<Encoding>(tag);
  bv.universe_ = in.get_u64();
  bv.ones_ = in.get_u64();
  bv.block_bytes_ = in.get_u32();
  if (bv.block_bytes_ < 8 || bv.block_bytes_ % 8 != 0) {
    throw FormatError("invalid bit vector block size " + std::to_string(bv.block_bytes_));
  }
  if (bv.ones_ > bv.universe_) throw FormatError("bit vector has more 1-bits than positions");
  if (bv.encoding_ == Encoding::plain) {
    std::uint64_t words = (bv.universe_ + 63) / 64;
    if (words > in.remaining() / 8) throw FormatError("truncated plain bit vector");
    bv.words_.resize(words);
    for (auto& w : bv.words_) w = in.get_u64();
    if (bv.universe_ % 64 != 0 && !bv.words_.empty() &&
        (bv.words_.back() >> (bv.universe_ % 64)) != 0) {
      throw FormatError("plain bit vector has bits past its universe");
    }
  } else {
    std::uint64_t len = in.get_u64();
    if (len > in.remaining()) throw FormatError("truncated coded bit vector");
    auto bytes = in.get_bytes(len);
    bv.payload_.assign(bytes.begin(), bytes.end());
  }
  bv.build_directory();
  return bv;
}

bool operator==(const BitVector& a, const BitVector& b) {
  return a.encoding_ == b.encoding_ && a.block_bytes_ == b.block_bytes_ &&
         a.universe_ == b.universe_ && a.ones_ == b.ones_ && a.words_ == b.words_ &&
         a.payload_ == b.payload_;
}

}  // namespace gcsa

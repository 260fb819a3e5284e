#include "gcsa/index.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "gcsa/error.hpp"

namespace gcsa {

namespace {

constexpr std::string_view kMagic = "GCSA";

constexpr Encoding kOccEncoding = Encoding::gap;
constexpr Encoding kFEncoding = Encoding::run_length;
constexpr Encoding kMEncoding = Encoding::run_length;
constexpr Encoding kBEncoding = Encoding::gap;

std::size_t packed_words(std::uint64_t count, std::uint32_t width) {
  return static_cast<std::size_t>((count * width + 63) / 64);
}

std::vector<std::uint64_t> pack(const std::vector<std::uint64_t>& values, std::uint32_t width) {
  std::vector<std::uint64_t> words(packed_words(values.size(), width), 0);
  for (std::size_t j = 0; j < values.size(); ++j) {
    std::uint64_t bit = j * width;
    std::size_t w = bit / 64;
    unsigned off = bit % 64;
    words[w] |= values[j] << off;
    if (off + width > 64) words[w + 1] |= values[j] >> (64 - off);
  }
  return words;
}

}  // namespace

std::string to_string(Verification v) {
  switch (v) {
    case Verification::none: return "none";
    case Verification::edges: return "edges";
    case Verification::full: return "full";
  }
  return "?";
}

Verification parse_verification(const std::string& s) {
  if (s == "none") return Verification::none;
  if (s == "edges") return Verification::edges;
  if (s == "full") return Verification::full;
  throw InputError("unknown verification level '" + s + "' (expected none, edges or full)");
}

GcsaIndex GcsaIndex::from_layout(const Alphabet& alphabet, const std::vector<LayoutNode>& nodes,
                                 const std::vector<std::uint64_t>& ids,
                                 std::uint32_t sample_rate, Verification verify) {
  if (nodes.empty()) throw InputError("index layout has no nodes");
  if (ids.size() != nodes.size()) throw InputError("index layout needs one node value per node");
  if (sample_rate == 0) throw InputError("sample rate must be at least 1");

  const std::size_t sigma = alphabet.sigma();
  const Symbol start = alphabet.start_marker();
  std::vector<std::vector<std::uint64_t>> occ_ones(sigma + 1);
  std::vector<std::uint64_t> f_ones;
  std::vector<std::uint64_t> m_ones;
  std::vector<std::uint64_t> edges_by_label(sigma + 2, 0);
  std::vector<std::uint64_t> occurrences(sigma + 2, 0);

  std::uint64_t pos = 1;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const LayoutNode& v = nodes[k];
    if (v.label > start) throw InputError("layout node " + std::to_string(k) + " has an invalid label");
    if (v.out_bits == 0) {
      throw InputError("layout node " + std::to_string(k) + " has no outgoing edge bit");
    }
    f_ones.push_back(pos);
    for (std::size_t j = 0; j < v.in_labels.size(); ++j) {
      Symbol c = v.in_labels[j];
      if (c > start) throw InputError("layout node " + std::to_string(k) + " has an invalid in-label");
      ++occurrences[c];
      // '$' only closes the cycle into the start node and is left implicit.
      if (c == kEndMarker) {
        if (v.label != start) {
          throw InputError("layout node " + std::to_string(k) + " lists '$' but is not the start node");
        }
        continue;
      }
      occ_ones[c - 1].push_back(pos + j);
    }
    for (std::uint32_t j = 0; j < v.out_bits; ++j) m_ones.push_back(pos + j);
    edges_by_label[v.label] += v.out_bits;
    pos += std::max<std::uint64_t>(v.in_labels.size(), v.out_bits);
  }
  const std::uint64_t length = pos - 1;

  for (std::size_t c = 0; c < sigma + 2; ++c) {
    if (occurrences[c] != edges_by_label[c]) {
      throw BuildError("layout has " + std::to_string(occurrences[c]) + " in-labels '" +
                       std::string(1, alphabet.decode(static_cast<Symbol>(c))) + "' but " +
                       std::to_string(edges_by_label[c]) + " outgoing edge bits from such nodes");
    }
  }

  GcsaIndex ix;
  ix.alphabet_ = alphabet;
  ix.sample_rate_ = sample_rate;
  ix.c_.assign(sigma + 3, 0);
  for (std::size_t c = 0; c < sigma + 2; ++c) ix.c_[c + 1] = ix.c_[c] + edges_by_label[c];
  for (auto& ones : occ_ones) ix.occ_.push_back(BitVector::from_ones(length, ones, kOccEncoding));
  ix.f_ = BitVector::from_ones(length, f_ones, kFEncoding);
  ix.m_ = BitVector::from_ones(length, m_ones, kMEncoding);

  if (verify != Verification::none) {
    if (auto problem = ix.check_navigation()) throw BuildError("index verification failed: " + *problem);
  }
  ix.compute_samples(ids);
  return ix;
}

GcsaIndex GcsaIndex::from_automaton(const SortedAutomaton& sa, std::uint32_t sample_rate,
                                    Verification verify, const IdFunction& id) {
  const Automaton& a = sa.automaton;
  const std::size_t n = a.node_count();
  std::vector<LayoutNode> nodes(n);
  std::vector<std::uint64_t> ids(n);
  for (NodeId v = 0; v < n; ++v) {
    LayoutNode& node = nodes[v];
    node.label = a.label(v);
    if (v == a.initial()) node.in_labels.push_back(kEndMarker);
    for (NodeId u : a.predecessors(v)) node.in_labels.push_back(static_cast<char>(a.label(u)));
    // Predecessors come in rank order; a stable sort by label gives
    // (label, predecessor rank).
    std::stable_sort(node.in_labels.begin(), node.in_labels.end());
    node.out_bits = v == a.final_node() ? 1 : static_cast<std::uint32_t>(a.successors(v).size());
    if (id) {
      ids[v] = id(v);
    } else {
      ids[v] = a.has_positions() ? a.position(v) : v + 1;
    }
  }
  GcsaIndex ix = from_layout(a.alphabet(), nodes, ids, sample_rate, verify);
  if (verify == Verification::full) {
    if (auto problem = ix.check_against(a)) throw BuildError("index verification failed: " + *problem);
  }
  return ix;
}

NodeRange GcsaIndex::node_range(std::uint64_t rank) const {
  std::uint64_t sp = f_.select1(rank);
  std::uint64_t ep = rank == f_.ones() ? f_.size() : f_.select1(rank + 1) - 1;
  return {sp, ep};
}

NodeRange GcsaIndex::range_containing(std::uint64_t pos) const {
  return node_range(f_.rank1(pos));
}

std::uint64_t GcsaIndex::first_node(const NodeRange& r) const { return f_.rank1(r.sp); }
std::uint64_t GcsaIndex::last_node(const NodeRange& r) const { return f_.rank1(r.ep); }

Symbol GcsaIndex::char_of_edge(std::uint64_t edge_rank) const {
  auto it = std::lower_bound(c_.begin(), c_.end(), edge_rank);
  return static_cast<Symbol>(it - c_.begin() - 1);
}

NodeRange GcsaIndex::lf(const NodeRange& r, Symbol c) const {
  if (r.empty() || c == kEndMarker || c > alphabet_.start_marker()) return {};
  const BitVector& bwt_c = occ(c);
  std::uint64_t rc = bwt_c.rank1(r.ep);
  if (rc == 0 || bwt_c.select1(rc) < r.sp) return {};
  std::uint64_t i = m_.select1(c_[c] + rc);
  return range_containing(i);
}

std::vector<NodeRange> GcsaIndex::psi(const NodeRange& r) const {
  std::vector<NodeRange> res;
  Symbol c = node_label(r);
  if (c == kEndMarker) return res;  // the final node's M bit is the cycle-closing edge
  std::uint64_t low = m_.rank1(r.sp);
  std::uint64_t high = m_.rank1(r.ep);
  for (std::uint64_t i = low; i <= high; ++i) {
    std::uint64_t j = occ(c).select1(i - c_[c]);
    res.push_back(range_containing(j));
  }
  return res;
}

Symbol GcsaIndex::node_label(const NodeRange& r) const { return char_of_edge(m_.rank1(r.sp)); }

NodeRange GcsaIndex::find(const std::string& pattern) const {
  SymbolString symbols;
  symbols.reserve(pattern.size());
  for (char ch : pattern) {
    auto s = alphabet_.encode_base(ch);
    if (!s) {
      throw InputError("pattern character '" + std::string(1, ch) + "' is not in the alphabet " +
                       alphabet_.characters());
    }
    symbols.push_back(static_cast<char>(*s));
  }
  return find_symbols(symbols);
}

NodeRange GcsaIndex::find_symbols(const SymbolString& pattern) const {
  if (pattern.empty()) return full_range();
  for (char ch : pattern) {
    auto s = static_cast<Symbol>(ch);
    if (s == kEndMarker || s > alphabet_.sigma()) {
      throw InputError("pattern symbol " + std::to_string(s) + " is not an alphabet character");
    }
  }
  auto c = static_cast<Symbol>(pattern.back());
  std::uint64_t lo = c_[c] + 1;
  std::uint64_t hi = c_[c + 1];
  if (lo > hi) return {};
  NodeRange r{f_.pred1(m_.select1(lo)), f_.succ1(m_.select1(hi) + 1) - 1};
  for (std::size_t i = pattern.size() - 1; i-- > 0 && !r.empty();) {
    r = extend(r, static_cast<Symbol>(pattern[i]));
  }
  return r;
}

NodeRange GcsaIndex::extend(const NodeRange& r, Symbol c) const {
  if (r.empty() || c == kEndMarker || c > alphabet_.start_marker()) return {};
  const BitVector& bwt_c = occ(c);
  std::uint64_t lo = c_[c] + bwt_c.rank1(r.sp - 1) + 1;
  std::uint64_t hi = c_[c] + bwt_c.rank1(r.ep);
  if (lo > hi) return {};
  return {f_.pred1(m_.select1(lo)), f_.succ1(m_.select1(hi) + 1) - 1};
}

std::uint64_t GcsaIndex::sample(std::uint64_t j) const {
  std::uint64_t bit = j * sample_width_;
  std::size_t w = bit / 64;
  unsigned off = bit % 64;
  std::uint64_t v = sample_words_[w] >> off;
  if (off + sample_width_ > 64) v |= sample_words_[w + 1] << (64 - off);
  return sample_width_ == 64 ? v : v & ((std::uint64_t{1} << sample_width_) - 1);
}

std::uint64_t GcsaIndex::locate(const NodeRange& r) const {
  if (r.empty() || first_node(r) != last_node(r)) {
    throw InputError("locate needs the range of a single node");
  }
  NodeRange cur = r;
  std::uint64_t steps = 0;
  while (!b_.access(cur.sp)) {
    auto next = psi(cur);
    if (next.size() != 1 || steps >= sample_rate_) {
      throw InternalError("locate walked off the sampled path");
    }
    cur = next.front();
    ++steps;
  }
  return sample(b_.rank1(cur.sp) - 1) - steps;
}

std::vector<std::uint64_t> GcsaIndex::locate_all(const NodeRange& r) const {
  std::vector<std::uint64_t> out;
  if (r.empty()) return out;
  for (std::uint64_t k = first_node(r), last = last_node(r); k <= last; ++k) {
    out.push_back(locate(node_range(k)));
  }
  return out;
}

std::string GcsaIndex::display(const NodeRange& r, std::size_t k) const {
  std::string out;
  if (k == 0) return out;
  if (r.empty() || first_node(r) != last_node(r)) {
    throw InputError("display needs the range of a single node");
  }
  NodeRange cur = r;
  for (;;) {
    out.push_back(alphabet_.decode(node_label(cur)));
    if (out.size() == k) break;
    auto next = psi(cur);
    if (next.size() != 1) break;
    cur = next.front();
  }
  return out;
}

std::string GcsaIndex::bwt_string() const {
  std::string out(bwt_length(), kGapChar);
  for (Symbol c = 1; c <= alphabet_.start_marker(); ++c) {
    for (std::uint64_t p : occ(c).one_positions()) out[p - 1] = alphabet_.decode(c);
  }
  NodeRange last = node_range(node_count());
  if (node_label(last) == alphabet_.start_marker()) out[last.sp - 1] = kEndChar;
  return out;
}

std::optional<std::string> GcsaIndex::check_navigation() const {
  const std::uint64_t n = node_count();
  const Symbol start = alphabet_.start_marker();
  if (n < 2) return "index has fewer than two nodes";
  if (!f_.access(1)) return "F does not start with a node boundary";
  if (node_label(node_range(1)) != kEndMarker) return "first node is not the final node";
  if (node_label(node_range(n)) != start) return "last node is not the start node";

  std::uint64_t edges = 0;
  Symbol previous = kEndMarker;
  for (std::uint64_t k = 1; k <= n; ++k) {
    NodeRange u = node_range(k);
    Symbol c = node_label(u);
    if (c < previous) return "node labels are not sorted at node " + std::to_string(k);
    if (c == kEndMarker && k != 1) return "more than one node labeled '$'";
    previous = c;
    if (!m_.access(u.sp)) return "node " + std::to_string(k) + " has no outgoing edge bit";
    for (const NodeRange& v : psi(u)) {
      ++edges;
      if (lf(v, c) != u) {
        return "edge from node " + std::to_string(k) + " to node " + std::to_string(first_node(v)) +
               " does not map back through LF";
      }
    }
    // Backward direction: each in-label of u must lead to a node whose
    // successors include u. Two equal in-labels break reverse determinism.
    for (Symbol x = 1; x <= start; ++x) {
      std::uint64_t count = occ(x).rank1(u.ep) - occ(x).rank1(u.sp - 1);
      if (count == 0) continue;
      if (count > 1) return "node " + std::to_string(k) + " has two predecessors with the same label";
      NodeRange w = lf(u, x);
      if (w.empty()) return "LF lost an in-label of node " + std::to_string(k);
      auto succ = psi(w);
      if (std::find(succ.begin(), succ.end(), u) == succ.end()) {
        return "node " + std::to_string(k) + " is not a successor of its LF predecessor";
      }
    }
  }
  if (edges + 1 != m_.ones()) {
    return "psi reaches " + std::to_string(edges) + " edges, M marks " + std::to_string(m_.ones());
  }
  return std::nullopt;
}

std::optional<std::string> GcsaIndex::check_against(const Automaton& a) const {
  if (a.node_count() != node_count()) return "node count differs from the automaton";
  for (NodeId v = 0; v < a.node_count(); ++v) {
    NodeRange r = node_range(v + 1);
    if (node_label(r) != a.label(v)) return "label of node " + std::to_string(v) + " differs";
    std::vector<NodeId> succ;
    for (const NodeRange& s : psi(r)) succ.push_back(static_cast<NodeId>(first_node(s) - 1));
    std::sort(succ.begin(), succ.end());
    auto expected = a.successors(v);
    if (!std::equal(succ.begin(), succ.end(), expected.begin(), expected.end())) {
      return "successors of node " + std::to_string(v) + " differ from the automaton";
    }
  }
  return std::nullopt;
}

void GcsaIndex::compute_samples(const std::vector<std::uint64_t>& ids) {
  const std::size_t n = node_count();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> next(n, kNone);  // the single successor when id continues, else kNone
  for (std::size_t k = 0; k < n; ++k) {
    auto succ = psi(node_range(k + 1));
    if (succ.size() != 1) continue;
    std::size_t s = first_node(succ.front()) - 1;
    if (ids[s] == ids[k] + 1) next[k] = s;
  }

  // dist[k]: Ψ-steps from node k to its nearest sample. A node whose
  // distance would reach the sample rate becomes a sample itself.
  std::vector<std::int64_t> dist(n, -1);
  std::vector<std::size_t> stack;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t u = k;
    while (dist[u] < 0 && next[u] != kNone) {
      stack.push_back(u);
      if (stack.size() > n) throw BuildError("node values follow a cycle");
      u = next[u];
    }
    if (dist[u] < 0) dist[u] = 0;
    while (!stack.empty()) {
      std::size_t w = stack.back();
      stack.pop_back();
      std::int64_t d = dist[next[w]] + 1;
      dist[w] = d >= static_cast<std::int64_t>(sample_rate_) ? 0 : d;
    }
  }

  std::vector<std::uint64_t> marks;
  std::vector<std::uint64_t> values;
  std::uint64_t largest = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (dist[k] != 0) continue;
    marks.push_back(node_range(k + 1).sp);
    values.push_back(ids[k]);
    largest = std::max(largest, ids[k]);
  }
  b_ = BitVector::from_ones(bwt_length(), marks, kBEncoding);
  sample_width_ = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::bit_width(largest)));
  sample_count_ = values.size();
  sample_words_ = pack(values, sample_width_);
}

std::string GcsaIndex::serialize() const {
  ByteWriter w;
  w.put_bytes(kMagic);
  w.put_u32(kIndexFormatVersion);
  w.put_u32(static_cast<std::uint32_t>(alphabet_.sigma()));
  w.put_bytes(alphabet_.characters());
  w.put_u32(sample_rate_);
  for (std::uint64_t c : c_) w.put_u64(c);
  for (const auto& bv : occ_) bv.serialize(w);
  f_.serialize(w);
  m_.serialize(w);
  b_.serialize(w);
  w.put_u32(sample_width_);
  w.put_u64(sample_count_);
  for (std::uint64_t word : sample_words_) w.put_u64(word);
  return std::move(w).bytes();
}

GcsaIndex GcsaIndex::deserialize(std::string_view bytes) {
  if (bytes.empty()) throw FormatError("index data is empty");
  ByteReader in(bytes);
  if (bytes.size() < kMagic.size() || in.get_bytes(kMagic.size()) != kMagic) {
    throw FormatError("not a GCSA index (bad magic)");
  }
  std::uint32_t version = in.get_u32();
  if (version != kIndexFormatVersion) {
    throw FormatError("unsupported index format version " + std::to_string(version) + " (expected " +
                      std::to_string(kIndexFormatVersion) + ")");
  }
  GcsaIndex ix;
  std::uint32_t sigma = in.get_u32();
  if (sigma == 0 || sigma > 250) throw FormatError("bad alphabet size " + std::to_string(sigma));
  try {
    ix.alphabet_ = Alphabet(in.get_bytes(sigma));
  } catch (const InputError& e) {
    throw FormatError(std::string("bad alphabet: ") + e.what());
  }
  ix.sample_rate_ = in.get_u32();
  if (ix.sample_rate_ == 0) throw FormatError("sample rate is zero");
  ix.c_.resize(sigma + 3);
  for (auto& c : ix.c_) c = in.get_u64();
  if (ix.c_[0] != 0 || !std::is_sorted(ix.c_.begin(), ix.c_.end())) {
    throw FormatError("count array is not non-decreasing from zero");
  }
  for (std::uint32_t c = 0; c <= sigma; ++c) ix.occ_.push_back(BitVector::deserialize(in));
  ix.f_ = BitVector::deserialize(in);
  ix.m_ = BitVector::deserialize(in);
  ix.b_ = BitVector::deserialize(in);
  ix.sample_width_ = in.get_u32();
  ix.sample_count_ = in.get_u64();
  if (ix.sample_width_ == 0 || ix.sample_width_ > 64) throw FormatError("bad sample width");
  if (ix.sample_count_ != ix.b_.ones()) throw FormatError("sample count does not match B");
  const std::uint64_t words = packed_words(ix.sample_count_, ix.sample_width_);
  if (words > in.remaining() / 8) throw FormatError("truncated sample array");
  ix.sample_words_.resize(words);
  for (auto& word : ix.sample_words_) word = in.get_u64();
  if (!in.at_end()) throw FormatError("trailing bytes after index data");

  const std::uint64_t length = ix.f_.size();
  if (length == 0 || ix.f_.ones() < 2 || !ix.f_.access(1)) throw FormatError("bad node boundaries in F");
  if (ix.m_.size() != length || ix.b_.size() != length) throw FormatError("bit vector sizes differ");
  if (ix.m_.ones() != ix.c_.back()) throw FormatError("M does not match the count array");
  for (std::uint32_t c = 1; c <= sigma + 1; ++c) {
    const BitVector& bv = ix.occ_[c - 1];
    if (bv.size() != length) throw FormatError("bit vector sizes differ");
    if (bv.ones() != ix.c_[c + 1] - ix.c_[c]) throw FormatError("BWT counts do not match the count array");
  }
  return ix;
}

void GcsaIndex::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write index file '" + path + "'");
  std::string bytes = serialize();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("failed writing index file '" + path + "'");
}

GcsaIndex GcsaIndex::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open index file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

IndexStats GcsaIndex::stats() const {
  IndexStats s;
  s.nodes = node_count();
  s.edges = m_.ones();
  s.automaton_edges = m_.ones() - 1;
  s.bwt_length = bwt_length();
  s.samples = sample_count_;
  s.sample_width = sample_width_;
  s.sample_rate = sample_rate_;
  s.sigma = static_cast<std::uint32_t>(alphabet_.sigma());

  s.components.push_back({"header", kMagic.size() + 4 + 4 + alphabet_.sigma() + 4});
  s.components.push_back({"C", c_.size() * 8});
  for (Symbol c = 1; c <= alphabet_.start_marker(); ++c) {
    s.components.push_back({std::string("BWT_") + alphabet_.decode(c), occ(c).serialized_size()});
  }
  s.components.push_back({"F", f_.serialized_size()});
  s.components.push_back({"M", m_.serialized_size()});
  s.components.push_back({"B", b_.serialized_size()});
  s.components.push_back({"samples", 4 + 8 + sample_words_.size() * 8});
  for (const auto& c : s.components) s.total_bytes += c.bytes;
  return s;
}

}  // namespace gcsa

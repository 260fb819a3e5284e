#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gcsa/alphabet.hpp"
#include "gcsa/bitvector.hpp"
#include "gcsa/construction.hpp"

namespace gcsa {

inline constexpr std::uint32_t kDefaultSampleRate = 16;
inline constexpr std::uint32_t kIndexFormatVersion = 1;

/// BWT range [sp, ep] of a node or of a run of nodes; 1-based, inclusive.
/// sp > ep denotes the empty range.
struct NodeRange {
  std::uint64_t sp = 1;
  std::uint64_t ep = 0;

  bool empty() const { return sp > ep; }
  std::uint64_t length() const { return empty() ? 0 : ep - sp + 1; }
  friend auto operator<=>(const NodeRange&, const NodeRange&) = default;
};

/// One node of an explicit index layout, nodes given in rank order.
/// in_labels are the labels of the predecessors, written into the BWT in the
/// given order; the start node lists '$' for the edge closing the cycle.
/// out_bits is the number of M 1-bits: the out-degree, or 1 for the final node.
struct LayoutNode {
  Symbol label;
  std::vector<Symbol> in_labels;
  std::uint32_t out_bits;
};

enum class Verification { none, edges, full };

std::string to_string(Verification v);
Verification parse_verification(const std::string& s);

struct IndexStats {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;            // 1-bits in M: automaton edges plus the '$'-to-'#' edge
  std::uint64_t automaton_edges = 0;  // edges of the indexed automaton
  std::uint64_t bwt_length = 0;
  std::uint64_t samples = 0;
  std::uint32_t sample_width = 0;
  std::uint32_t sample_rate = 0;
  std::uint32_t sigma = 0;

  struct Component {
    std::string name;
    std::uint64_t bytes;
  };
  std::vector<Component> components;  // sizes sum to the serialized size
  std::uint64_t total_bytes = 0;
};

/*
 * Generalized compressed suffix array over a prefix-range-sorted automaton.
 *
 * Nodes occupy consecutive BWT ranges in prefix order. Ψ_c marks the BWT
 * positions holding c (padding slots are 0 in every Ψ_c), F marks range
 * starts, M marks outgoing edges, B marks sampled nodes.
 */
class GcsaIndex {
 public:
  using IdFunction = std::function<std::uint64_t(NodeId)>;

  GcsaIndex() = default;

  /// ids[i] is the node value of the i-th node in rank order.
  static GcsaIndex from_layout(const Alphabet& alphabet, const std::vector<LayoutNode>& nodes,
                               const std::vector<std::uint64_t>& ids,
                               std::uint32_t sample_rate = kDefaultSampleRate,
                               Verification verify = Verification::edges);

  /// Node values default to the automaton's positions, or to node ranks when
  /// the automaton has none. `full` verification also checks every edge
  /// against the automaton.
  static GcsaIndex from_automaton(const SortedAutomaton& sa,
                                  std::uint32_t sample_rate = kDefaultSampleRate,
                                  Verification verify = Verification::edges,
                                  const IdFunction& id = {});

  const Alphabet& alphabet() const { return alphabet_; }
  std::uint32_t sample_rate() const { return sample_rate_; }
  std::uint64_t node_count() const { return f_.ones(); }
  std::uint64_t bwt_length() const { return f_.size(); }
  const std::vector<std::uint64_t>& counts() const { return c_; }
  const BitVector& f() const { return f_; }
  const BitVector& m() const { return m_; }
  const BitVector& b() const { return b_; }

  /// Range of the node with the given 1-based rank.
  NodeRange node_range(std::uint64_t rank) const;
  /// 1-based ranks of the first and last node in a range.
  std::uint64_t first_node(const NodeRange& r) const;
  std::uint64_t last_node(const NodeRange& r) const;
  NodeRange full_range() const { return {1, bwt_length()}; }

  NodeRange lf(const NodeRange& r, Symbol c) const;
  std::vector<NodeRange> psi(const NodeRange& r) const;
  Symbol node_label(const NodeRange& r) const;

  /// Pattern over the alphabet characters; throws InputError otherwise.
  NodeRange find(const std::string& pattern) const;
  NodeRange find_symbols(const SymbolString& pattern) const;
  /// One backward-search step: nodes in `r` preceded by a node labeled c.
  NodeRange extend(const NodeRange& r, Symbol c) const;

  std::uint64_t locate(const NodeRange& r) const;
  std::vector<std::uint64_t> locate_all(const NodeRange& r) const;
  std::string display(const NodeRange& r, std::size_t k) const;

  /// BWT as characters, '-' for padding. Meant for inspection and tests.
  std::string bwt_string() const;

  /// Every edge found by psi must map back through lf and vice versa.
  /// Returns a description of the first inconsistency.
  std::optional<std::string> check_navigation() const;
  /// Edges reachable through psi must equal the automaton's edges.
  std::optional<std::string> check_against(const Automaton& a) const;

  std::string serialize() const;
  static GcsaIndex deserialize(std::string_view bytes);
  void save(const std::string& path) const;
  static GcsaIndex load(const std::string& path);

  IndexStats stats() const;

  friend bool operator==(const GcsaIndex&, const GcsaIndex&) = default;

 private:
  Symbol char_of_edge(std::uint64_t edge_rank) const;
  NodeRange range_containing(std::uint64_t pos) const;
  const BitVector& occ(Symbol c) const { return occ_[c - 1]; }
  std::uint64_t sample(std::uint64_t j) const;
  void compute_samples(const std::vector<std::uint64_t>& ids);

  Alphabet alphabet_;
  std::uint32_t sample_rate_ = kDefaultSampleRate;
  std::vector<std::uint64_t> c_;  // sigma + 3 entries
  std::vector<BitVector> occ_;    // Ψ_1 .. Ψ_sigma, Ψ_#
  BitVector f_;
  BitVector m_;
  BitVector b_;
  std::uint32_t sample_width_ = 1;
  std::uint64_t sample_count_ = 0;
  std::vector<std::uint64_t> sample_words_;
};

}  // namespace gcsa

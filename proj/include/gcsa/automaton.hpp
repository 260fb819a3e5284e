#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gcsa/alphabet.hpp"

namespace gcsa {

using NodeId = std::uint32_t;

struct Edge {
  NodeId from;
  NodeId to;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Default cap on the number of initial-to-final paths the brute-force
/// oracles below are willing to enumerate.
inline constexpr std::size_t kOracleCap = 10'000;

/*
 * A finite automaton with labels on nodes. Every string it recognizes has
 * the form #x$: the initial node carries '#', the final node '$'.
 *
 * Node ids are dense in [0, node_count()). Edges are kept sorted and
 * unique; successor and predecessor lists are available in O(1). Optional
 * per-node positions carry application node values (alignment columns for
 * automata built from alignments).
 *
 * The constructor only checks that ids are in range; structural invariants
 * are checked by validate().
 */
class Automaton {
 public:
  Automaton() = default;
  Automaton(Alphabet alphabet, std::vector<Symbol> labels, std::vector<Edge> edges, NodeId initial,
            NodeId final_node, std::vector<std::uint64_t> positions = {});

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t node_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  Symbol label(NodeId v) const { return labels_[v]; }
  std::span<const Symbol> labels() const { return labels_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const NodeId> successors(NodeId v) const;
  std::span<const NodeId> predecessors(NodeId v) const;

  NodeId initial() const { return initial_; }
  NodeId final_node() const { return final_; }

  bool has_positions() const { return !positions_.empty(); }
  std::uint64_t position(NodeId v) const { return positions_[v]; }
  std::span<const std::uint64_t> positions() const { return positions_; }

 private:
  Alphabet alphabet_;
  std::vector<Symbol> labels_;
  std::vector<Edge> edges_;
  NodeId initial_ = 0;
  NodeId final_ = 0;
  std::vector<std::uint64_t> positions_;

  std::vector<std::uint32_t> succ_offsets_;
  std::vector<NodeId> succ_;
  std::vector<std::uint32_t> pred_offsets_;
  std::vector<NodeId> pred_;
};

/// Checks the structural invariants; returns the first violation found.
std::optional<std::string> validate(const Automaton& a, bool require_acyclic = true);

bool is_acyclic(const Automaton& a);
/// Nodes in topological order; throws InputError on a cycle.
std::vector<NodeId> topological_order(const Automaton& a);
/// Number of initial-to-final paths, saturating at `cap + 1`.
std::size_t count_paths(const Automaton& a, std::size_t cap = kOracleCap);
/// Length of the longest recognized string, sentinels included.
std::size_t longest_string_length(const Automaton& a);

bool is_reverse_deterministic(const Automaton& a);

// ---------------------------------------------------------------------------
// Brute-force oracles. These enumerate paths and are meant for test-sized
// automata only; they refuse inputs with more than kOracleCap paths.

/// L(A) as symbol strings in lexicographic order. An acyclic automaton is
/// enumerated completely (error if it has more than `limit` paths, default
/// kOracleCap). A cyclic automaton needs an explicit limit and yields the
/// first `limit` strings in length-then-lexicographic order.
std::vector<SymbolString> enumerate_language(const Automaton& a,
                                             std::optional<std::size_t> limit = std::nullopt);

/// Labels of all paths from v to the final node, sorted and unique.
std::vector<SymbolString> suffixes_from(const Automaton& a, NodeId v);

/// Suffix sets of every node, sharing work across nodes.
std::vector<std::vector<SymbolString>> all_suffix_sets(const Automaton& a,
                                                       std::size_t cap = kOracleCap);

struct PrefixSortReport {
  bool sorted = false;
  /// p(v) for every prefix-sorted node, nullopt for the others.
  std::vector<std::optional<SymbolString>> prefixes;
};

PrefixSortReport prefix_sort_report(const Automaton& a);
bool is_prefix_sorted_naive(const Automaton& a);
bool is_prefix_range_sorted_naive(const Automaton& a);

/// Nodes from which some path label starts with `pattern`, in id order.
std::vector<NodeId> naive_find(const Automaton& a, const SymbolString& pattern);

// ---------------------------------------------------------------------------
// Text format:
//   node <id> <label>
//   edge <u> <v>
//   initial <id>
//   final <id>
// Lines starting with "#!" are comments.

Automaton parse_automaton(std::string_view text, const Alphabet& alphabet = Alphabet::dna());
std::string format_automaton(const Automaton& a);

}  // namespace gcsa

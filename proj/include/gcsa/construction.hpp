#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "gcsa/automaton.hpp"

namespace gcsa {

/*
 * Prefix-doubling construction. A node of the i-th state stands for a path
 * of length 2^i in the original automaton A (shorter if it reaches '$');
 * from/to are the first and last nodes of that path. A node is sorted when
 * its rank is unique. All ranks start at 1.
 */
struct DoublingNode {
  Symbol label;  // label of from in A
  std::uint64_t rank;
  NodeId from;
  NodeId to;
  bool sorted;
};

struct DoublingState {
  std::vector<DoublingNode> nodes;  // ordered by rank
  /// Full path labels, parallel to nodes. Empty unless label tracking is on.
  std::vector<SymbolString> labels;
  std::size_t round = 0;

  std::size_t unsorted() const;
  bool all_sorted() const { return unsorted() == 0; }
};

DoublingState init_doubling(const Automaton& a, bool track_labels = false);
DoublingState doubling_step(const DoublingState& state, const Automaton& a);
DoublingState prune_step(const DoublingState& state);

/// Edges of the path graph: node v receives one edge per predecessor of from(v).
std::size_t path_graph_edge_count(const DoublingState& state, const Automaton& a);

/// Unordered pairs of nodes whose full path labels are equal. Requires
/// tracked labels; hashes labels and compares strings exactly within buckets.
std::size_t count_colliding_pairs(const DoublingState& state);

struct RoundStats {
  std::size_t round;
  std::size_t nodes;
  std::size_t edges;
  std::size_t unsorted;
};

struct ConstructionStats {
  std::size_t doubling_rounds = 0;
  std::size_t peak_nodes = 0;
  std::size_t longest_string = 0;
  std::vector<RoundStats> rounds;  // round 0 is the initial state
};

struct ConstructionOptions {
  bool track_labels = false;
  /// Called with the initial state and after every doubling + pruning round.
  std::function<void(const DoublingState&)> on_round;
};

/// Doubling and pruning until every node is sorted. Throws InputError if A
/// is not a valid reverse-deterministic acyclic automaton, InternalError if
/// sorting does not finish within ceil(log2 n) + 1 rounds.
DoublingState build_sorted_nodes(const Automaton& a, const ConstructionOptions& options = {},
                                 ConstructionStats* stats = nullptr);

/// Merges runs of adjacent ranks that share from; ranks are re-densified.
std::vector<DoublingNode> merge_adjacent_ranks(const std::vector<DoublingNode>& nodes);

/// Prefix-range-sorted automaton equivalent to A. Node i has rank i + 1, so
/// node order is the lexicographic order of the nodes' prefixes.
struct SortedAutomaton {
  Automaton automaton;
  std::vector<NodeId> from;  // node of A each node was derived from
  ConstructionStats stats;
};

SortedAutomaton create_edges(const Automaton& a, const std::vector<DoublingNode>& nodes);

SortedAutomaton build_prefix_sorted(const Automaton& a, const ConstructionOptions& options = {});

/// round,nodes,edges,unsorted
void write_rounds_csv(std::ostream& out, const ConstructionStats& stats);

}  // namespace gcsa

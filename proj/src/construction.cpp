#include "gcsa/construction.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "gcsa/error.hpp"

namespace gcsa {

namespace {

struct RankKey {
  std::uint64_t first;
  std::uint64_t second;
  bool operator==(const RankKey&) const = default;
};

// Reorders nodes (and labels) by key, stably, and assigns dense ranks from 1.
// A node is sorted iff no other node shares its key.
DoublingState rerank(std::vector<DoublingNode> nodes, std::vector<SymbolString> labels,
                     const std::vector<RankKey>& keys, std::size_t round) {
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return keys[x].first != keys[y].first ? keys[x].first < keys[y].first
                                          : keys[x].second < keys[y].second;
  });

  DoublingState out;
  out.round = round;
  out.nodes.reserve(nodes.size());
  if (!labels.empty()) out.labels.reserve(labels.size());
  std::uint64_t rank = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::size_t i = order[k];
    if (k == 0 || !(keys[i] == keys[order[k - 1]])) ++rank;
    DoublingNode node = nodes[i];
    node.rank = rank;
    out.nodes.push_back(node);
    if (!labels.empty()) out.labels.push_back(std::move(labels[i]));
  }
  for (std::size_t lo = 0; lo < out.nodes.size();) {
    std::size_t hi = lo + 1;
    while (hi < out.nodes.size() && out.nodes[hi].rank == out.nodes[lo].rank) ++hi;
    for (std::size_t k = lo; k < hi; ++k) out.nodes[k].sorted = hi - lo == 1;
    lo = hi;
  }
  return out;
}

std::size_t ceil_log2(std::size_t n) {
  return n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1));
}

void check_input(const Automaton& a) {
  if (auto problem = validate(a, true)) throw InputError("invalid automaton: " + *problem);
  if (!is_reverse_deterministic(a)) {
    throw InputError("automaton is not reverse deterministic");
  }
}

}  // namespace

std::size_t DoublingState::unsorted() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const DoublingNode& v) { return !v.sorted; }));
}

DoublingState init_doubling(const Automaton& a, bool track_labels) {
  std::vector<DoublingNode> nodes;
  std::vector<SymbolString> labels;
  std::vector<RankKey> keys;
  nodes.reserve(a.node_count());
  for (NodeId v = 0; v < a.node_count(); ++v) {
    nodes.push_back({a.label(v), 0, v, v, false});
    keys.push_back({a.label(v), 0});
    if (track_labels) labels.emplace_back(1, static_cast<char>(a.label(v)));
  }
  return rerank(std::move(nodes), std::move(labels), keys, 0);
}

DoublingState doubling_step(const DoublingState& state, const Automaton& a) {
  const bool tracking = !state.labels.empty();

  // Current nodes bucketed by from, in rank order within each bucket.
  std::vector<std::uint32_t> offsets(a.node_count() + 1, 0);
  for (const auto& v : state.nodes) ++offsets[v.from + 1];
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<std::uint32_t> by_from(state.nodes.size());
  {
    std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::uint32_t i = 0; i < state.nodes.size(); ++i) by_from[fill[state.nodes[i].from]++] = i;
  }

  std::vector<DoublingNode> nodes;
  std::vector<SymbolString> labels;
  std::vector<RankKey> keys;
  for (std::size_t i = 0; i < state.nodes.size(); ++i) {
    const DoublingNode& u = state.nodes[i];
    if (u.sorted) {
      nodes.push_back(u);
      keys.push_back({u.rank, 0});
      if (tracking) labels.push_back(state.labels[i]);
      continue;
    }
    bool joined = false;
    for (NodeId y : a.successors(u.to)) {
      for (std::uint32_t k = offsets[y]; k < offsets[y + 1]; ++k) {
        const DoublingNode& v = state.nodes[by_from[k]];
        nodes.push_back({u.label, 0, u.from, v.to, false});
        keys.push_back({u.rank, v.rank});
        if (tracking) labels.push_back(state.labels[i] + state.labels[by_from[k]]);
        joined = true;
      }
    }
    if (!joined) {
      throw InternalError("unsorted doubling node (from " + std::to_string(u.from) + ", to " +
                          std::to_string(u.to) + ") has no join partner");
    }
  }
  return rerank(std::move(nodes), std::move(labels), keys, state.round + 1);
}

DoublingState prune_step(const DoublingState& state) {
  const bool tracking = !state.labels.empty();
  DoublingState out;
  out.round = state.round;
  out.nodes.reserve(state.nodes.size());
  for (std::size_t lo = 0; lo < state.nodes.size();) {
    std::size_t hi = lo + 1;
    bool same_from = true;
    while (hi < state.nodes.size() && state.nodes[hi].rank == state.nodes[lo].rank) {
      same_from = same_from && state.nodes[hi].from == state.nodes[lo].from;
      ++hi;
    }
    if (hi - lo > 1 && same_from) {
      DoublingNode merged = state.nodes[lo];
      merged.sorted = true;
      out.nodes.push_back(merged);
      if (tracking) out.labels.push_back(state.labels[lo]);
    } else {
      for (std::size_t k = lo; k < hi; ++k) {
        out.nodes.push_back(state.nodes[k]);
        if (tracking) out.labels.push_back(state.labels[k]);
      }
    }
    lo = hi;
  }
  return out;
}

std::size_t path_graph_edge_count(const DoublingState& state, const Automaton& a) {
  std::size_t edges = 0;
  for (const auto& v : state.nodes) edges += a.predecessors(v.from).size();
  return edges;
}

std::size_t count_colliding_pairs(const DoublingState& state) {
  if (state.labels.size() != state.nodes.size()) {
    throw InputError("collision counting needs tracked path labels");
  }
  // unordered_map compares keys with operator==, so equal hashes of distinct
  // labels never merge.
  std::unordered_map<std::string_view, std::size_t> counts;
  counts.reserve(state.labels.size());
  for (const auto& label : state.labels) ++counts[label];
  std::size_t pairs = 0;
  for (const auto& [label, count] : counts) pairs += count * (count - 1) / 2;
  return pairs;
}

DoublingState build_sorted_nodes(const Automaton& a, const ConstructionOptions& options,
                                 ConstructionStats* stats) {
  check_input(a);
  const std::size_t n = longest_string_length(a);
  const std::size_t max_rounds = ceil_log2(n) + 1;

  ConstructionStats local;
  ConstructionStats& s = stats ? *stats : local;
  s = ConstructionStats{};
  s.longest_string = n;

  auto record = [&](const DoublingState& st) {
    s.rounds.push_back({st.round, st.nodes.size(), path_graph_edge_count(st, a), st.unsorted()});
    s.peak_nodes = std::max(s.peak_nodes, st.nodes.size());
    if (options.on_round) options.on_round(st);
  };

  DoublingState state = init_doubling(a, options.track_labels);
  record(state);
  while (!state.all_sorted()) {
    if (state.round >= max_rounds) {
      throw InternalError("prefix doubling did not finish within " + std::to_string(max_rounds) +
                          " rounds (" + std::to_string(state.unsorted()) + " nodes unsorted)");
    }
    DoublingState joined = doubling_step(state, a);
    s.peak_nodes = std::max(s.peak_nodes, joined.nodes.size());
    state = prune_step(joined);
    record(state);
  }
  s.doubling_rounds = state.round;
  return state;
}

std::vector<DoublingNode> merge_adjacent_ranks(const std::vector<DoublingNode>& nodes) {
  std::vector<DoublingNode> out;
  out.reserve(nodes.size());
  for (const auto& v : nodes) {
    if (!out.empty() && out.back().from == v.from) continue;
    out.push_back(v);
    out.back().rank = out.size();
  }
  return out;
}

SortedAutomaton create_edges(const Automaton& a, const std::vector<DoublingNode>& nodes) {
  const std::size_t count = nodes.size();
  for (std::size_t i = 0; i < count; ++i) {
    if (nodes[i].from >= a.node_count()) {
      throw InternalError("node " + std::to_string(i) + " refers to a missing automaton node");
    }
  }

  // Incoming pairs (x, v) for x in pred(from(v)), generated in rank order of
  // v and then stably bucketed by label(x): the result is sorted by
  // (label(x), rank(v)), which is also the order of the edge sources.
  struct Pair {
    NodeId x;
    NodeId v;
  };
  const std::size_t symbols = a.alphabet().sigma() + 2;
  std::vector<std::size_t> start(symbols + 1, 0);
  std::size_t total = 0;
  for (const auto& v : nodes) {
    for (NodeId x : a.predecessors(v.from)) {
      ++start[a.label(x) + 1];
      ++total;
    }
  }
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<Pair> pairs(total);
  for (NodeId vi = 0; vi < count; ++vi) {
    for (NodeId x : a.predecessors(nodes[vi].from)) pairs[start[a.label(x)]++] = {x, vi};
  }

  std::vector<Edge> edges;
  edges.reserve(total);
  std::size_t k = 0;
  for (const auto& [x, v] : pairs) {
    while (k < count && nodes[k].from != x) ++k;
    if (k == count) {
      throw InternalError("edge pair from automaton node " + std::to_string(x) +
                          " has no source node");
    }
    edges.push_back({static_cast<NodeId>(k), v});
  }

  SortedAutomaton out;
  std::vector<Symbol> labels;
  std::vector<std::uint64_t> positions;
  std::optional<NodeId> initial;
  std::optional<NodeId> final_node;
  labels.reserve(count);
  out.from.reserve(count);
  for (NodeId i = 0; i < count; ++i) {
    NodeId x = nodes[i].from;
    labels.push_back(a.label(x));
    out.from.push_back(x);
    if (a.has_positions()) positions.push_back(a.position(x));
    if (x == a.initial()) initial = i;
    if (x == a.final_node()) final_node = i;
  }
  if (!initial || !final_node) throw InternalError("sorted node set lost the initial or final node");
  out.automaton = Automaton(a.alphabet(), std::move(labels), std::move(edges), *initial, *final_node,
                            std::move(positions));
  for (NodeId i = 0; i < count; ++i) {
    if (i != *final_node && out.automaton.successors(i).empty()) {
      throw InternalError("sorted node " + std::to_string(i) + " received no outgoing edge");
    }
  }
  return out;
}

SortedAutomaton build_prefix_sorted(const Automaton& a, const ConstructionOptions& options) {
  ConstructionStats stats;
  DoublingState state = build_sorted_nodes(a, options, &stats);
  SortedAutomaton out = create_edges(a, merge_adjacent_ranks(state.nodes));
  out.stats = std::move(stats);
  return out;
}

void write_rounds_csv(std::ostream& out, const ConstructionStats& stats) {
  out << "round,nodes,edges,unsorted\n";
  for (const auto& r : stats.rounds) {
    out << r.round << ',' << r.nodes << ',' << r.edges << ',' << r.unsorted << '\n';
  }
}

}  // namespace gcsa

#include "gcsa/automaton.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <set>
#include <sstream>

#include "gcsa/error.hpp"

namespace gcsa {

namespace {

void build_csr(std::size_t n, std::span<const Edge> edges, bool forward,
               std::vector<std::uint32_t>& offsets, std::vector<NodeId>& targets) {
  offsets.assign(n + 1, 0);
  for (const Edge& e : edges) ++offsets[(forward ? e.from : e.to) + 1];
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  targets.assign(edges.size(), 0);
  std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) {
    NodeId key = forward ? e.from : e.to;
    targets[fill[key]++] = forward ? e.to : e.from;
  }
  // Edges are sorted by (from, to), so successor lists come out sorted;
  // predecessor lists need their own sort.
  if (!forward) {
    for (std::size_t v = 0; v < n; ++v) {
      std::sort(targets.begin() + offsets[v], targets.begin() + offsets[v + 1]);
    }
  }
}

// Path counts from each node to the final node, saturating at cap + 1.
std::vector<std::size_t> paths_to_final(const Automaton& a, const std::vector<NodeId>& topo,
                                        std::size_t cap) {
  std::vector<std::size_t> count(a.node_count(), 0);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    NodeId v = *it;
    if (v == a.final_node()) {
      count[v] = 1;
      continue;
    }
    std::size_t c = 0;
    for (NodeId w : a.successors(v)) c = std::min(cap + 1, c + count[w]);
    count[v] = c;
  }
  return count;
}

void require_oracle_scale(const Automaton& a, const std::vector<NodeId>& topo, std::size_t cap) {
  auto counts = paths_to_final(a, topo, cap);
  for (std::size_t c : counts) {
    if (c > cap) {
      throw InputError("automaton has more than " + std::to_string(cap) +
                       " paths; too large for the brute-force oracles");
    }
  }
}

}  // namespace

Automaton::Automaton(Alphabet alphabet, std::vector<Symbol> labels, std::vector<Edge> edges,
                     NodeId initial, NodeId final_node, std::vector<std::uint64_t> positions)
    : alphabet_(std::move(alphabet)),
      labels_(std::move(labels)),
      edges_(std::move(edges)),
      initial_(initial),
      final_(final_node),
      positions_(std::move(positions)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw InputError("automaton has no nodes");
  if (initial_ >= n || final_ >= n) throw InputError("initial or final node id out of range");
  if (!positions_.empty() && positions_.size() != n) {
    throw InputError("automaton positions must cover every node");
  }
  for (Symbol s : labels_) {
    if (s > alphabet_.start_marker()) throw InputError("node label out of alphabet range");
  }
  for (const Edge& e : edges_) {
    if (e.from >= n || e.to >= n) throw InputError("edge endpoint out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  build_csr(n, edges_, true, succ_offsets_, succ_);
  build_csr(n, edges_, false, pred_offsets_, pred_);
}

std::span<const NodeId> Automaton::successors(NodeId v) const {
  return std::span<const NodeId>(succ_).subspan(succ_offsets_[v], succ_offsets_[v + 1] - succ_offsets_[v]);
}

std::span<const NodeId> Automaton::predecessors(NodeId v) const {
  return std::span<const NodeId>(pred_).subspan(pred_offsets_[v], pred_offsets_[v + 1] - pred_offsets_[v]);
}

std::optional<std::string> validate(const Automaton& a, bool require_acyclic) {
  const std::size_t n = a.node_count();
  const Symbol start = a.alphabet().start_marker();
  for (const Edge& e : a.edges()) {
    if (e.from == e.to) return "self-loop at node " + std::to_string(e.from);
  }
  if (a.label(a.initial()) != start) return std::string("initial node is not labeled '#'");
  if (a.label(a.final_node()) != kEndMarker) return std::string("final node is not labeled '$'");
  for (NodeId v = 0; v < n; ++v) {
    if (v != a.initial() && a.label(v) == start) {
      return "node " + std::to_string(v) + " carries '#' but is not the initial node";
    }
    if (v != a.final_node() && a.label(v) == kEndMarker) {
      return "node " + std::to_string(v) + " carries '$' but is not the final node";
    }
  }
  if (!a.predecessors(a.initial()).empty()) return std::string("initial node has incoming edges");
  if (!a.successors(a.final_node()).empty()) return std::string("final node has outgoing edges");

  // Forward reachability from the initial node, backward from the final node.
  auto reach = [&](NodeId root, bool forward) {
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : forward ? a.successors(v) : a.predecessors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    return seen;
  };
  auto from_initial = reach(a.initial(), true);
  auto to_final = reach(a.final_node(), false);
  for (NodeId v = 0; v < n; ++v) {
    if (!from_initial[v] || !to_final[v]) {
      return "node " + std::to_string(v) + " off all #->$ paths";
    }
  }
  if (require_acyclic && !is_acyclic(a)) return std::string("automaton has a cycle");
  return std::nullopt;
}

bool is_acyclic(const Automaton& a) {
  try {
    topological_order(a);
    return true;
  } catch (const InputError&) {
    return false;
  }
}

std::vector<NodeId> topological_order(const Automaton& a) {
  const std::size_t n = a.node_count();
  std::vector<std::size_t> indeg(n, 0);
  for (const Edge& e : a.edges()) ++indeg[e.to];
  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    if (indeg[v] == 0) order.push_back(v);
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (NodeId w : a.successors(order[k])) {
      if (--indeg[w] == 0) order.push_back(w);
    }
  }
  if (order.size() != n) throw InputError("automaton has a cycle");
  return order;
}

std::size_t count_paths(const Automaton& a, std::size_t cap) {
  auto topo = topological_order(a);
  return paths_to_final(a, topo, cap)[a.initial()];
}

std::size_t longest_string_length(const Automaton& a) {
  auto topo = topological_order(a);
  std::vector<std::size_t> len(a.node_count(), 0);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    std::size_t best = 0;
    for (NodeId w : a.successors(*it)) best = std::max(best, len[w]);
    len[*it] = best + 1;
  }
  return len[a.initial()];
}

bool is_reverse_deterministic(const Automaton& a) {
  for (NodeId v = 0; v < a.node_count(); ++v) {
    auto preds = a.predecessors(v);
    std::vector<Symbol> labels;
    labels.reserve(preds.size());
    for (NodeId u : preds) labels.push_back(a.label(u));
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) return false;
  }
  return true;
}

std::vector<std::vector<SymbolString>> all_suffix_sets(const Automaton& a, std::size_t cap) {
  auto topo = topological_order(a);
  require_oracle_scale(a, topo, cap);
  std::vector<std::vector<SymbolString>> sets(a.node_count());
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    NodeId v = *it;
    const char head = static_cast<char>(a.label(v));
    auto& out = sets[v];
    if (v == a.final_node()) {
      out.emplace_back(1, head);
      continue;
    }
    for (NodeId w : a.successors(v)) {
      for (const auto& s : sets[w]) out.push_back(head + s);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return sets;
}

std::vector<SymbolString> suffixes_from(const Automaton& a, NodeId v) {
  if (v >= a.node_count()) throw InputError("node id out of range");
  return all_suffix_sets(a)[v];
}

std::vector<SymbolString> enumerate_language(const Automaton& a, std::optional<std::size_t> limit) {
  if (is_acyclic(a)) return all_suffix_sets(a, limit.value_or(kOracleCap))[a.initial()];

  if (!limit) throw InputError("cyclic automaton: enumerate_language needs an explicit limit");
  // Shortlex best-first search over partial paths.
  using Item = std::pair<SymbolString, NodeId>;
  auto shortlex = [](const Item& x, const Item& y) {
    if (x.first.size() != y.first.size()) return x.first.size() > y.first.size();
    return x.first > y.first;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(shortlex)> queue(shortlex);
  queue.emplace(SymbolString(1, static_cast<char>(a.label(a.initial()))), a.initial());
  std::set<SymbolString> found;
  std::size_t pops = 0;
  while (!queue.empty() && found.size() < *limit) {
    auto [s, v] = queue.top();
    queue.pop();
    if (++pops > 10'000'000) throw InputError("language enumeration did not converge");
    if (v == a.final_node()) {
      found.insert(s);
      continue;
    }
    for (NodeId w : a.successors(v)) queue.emplace(s + static_cast<char>(a.label(w)), w);
  }
  std::vector<SymbolString> out(found.begin(), found.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Every recognized suffix tagged with its node, sorted by (suffix, node).
std::vector<std::pair<SymbolString, NodeId>> tagged_suffixes(
    const std::vector<std::vector<SymbolString>>& sets) {
  std::vector<std::pair<SymbolString, NodeId>> all;
  for (NodeId v = 0; v < sets.size(); ++v) {
    for (const auto& s : sets[v]) all.emplace_back(s, v);
  }
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

PrefixSortReport prefix_sort_report(const Automaton& a) {
  auto sets = all_suffix_sets(a);
  auto all = tagged_suffixes(sets);
  PrefixSortReport report;
  report.sorted = true;
  report.prefixes.resize(a.node_count());
  for (NodeId v = 0; v < a.node_count(); ++v) {
    const auto& mine = sets[v];
    if (mine.empty()) {
      report.sorted = false;
      continue;
    }
    // Common prefix of a sorted set = common prefix of its extremes.
    const auto& lo = mine.front();
    const auto& hi = mine.back();
    std::size_t lcp = 0;
    while (lcp < lo.size() && lcp < hi.size() && lo[lcp] == hi[lcp]) ++lcp;
    for (std::size_t len = 1; len <= lcp; ++len) {
      SymbolString q = lo.substr(0, len);
      auto it = std::lower_bound(all.begin(), all.end(), std::make_pair(q, NodeId{0}));
      bool owned = true;
      for (; it != all.end() && it->first.compare(0, len, q) == 0; ++it) {
        if (it->second != v) {
          owned = false;
          break;
        }
      }
      if (owned) {
        report.prefixes[v] = q;
        break;
      }
    }
    if (!report.prefixes[v]) report.sorted = false;
  }
  return report;
}

bool is_prefix_sorted_naive(const Automaton& a) { return prefix_sort_report(a).sorted; }

bool is_prefix_range_sorted_naive(const Automaton& a) {
  auto sets = all_suffix_sets(a);
  auto all = tagged_suffixes(sets);
  for (NodeId v = 0; v < a.node_count(); ++v) {
    const auto& mine = sets[v];
    if (mine.empty()) return false;
    auto first = std::lower_bound(all.begin(), all.end(), std::make_pair(mine.front(), NodeId{0}));
    for (auto it = first; it != all.end() && it->first <= mine.back(); ++it) {
      if (it->second != v) return false;
    }
  }
  return true;
}

std::vector<NodeId> naive_find(const Automaton& a, const SymbolString& pattern) {
  const std::size_t n = a.node_count();
  std::vector<NodeId> out;
  if (pattern.empty()) {
    out.resize(n);
    for (NodeId v = 0; v < n; ++v) out[v] = v;
    return out;
  }
  // good[v]: some path from v spells pattern[i..].
  std::vector<char> good(n, 0);
  std::vector<char> next(n, 0);
  for (NodeId v = 0; v < n; ++v) good[v] = a.label(v) == static_cast<Symbol>(pattern.back());
  for (std::size_t i = pattern.size() - 1; i-- > 0;) {
    const auto c = static_cast<Symbol>(pattern[i]);
    for (NodeId v = 0; v < n; ++v) {
      next[v] = 0;
      if (a.label(v) != c) continue;
      for (NodeId w : a.successors(v)) {
        if (good[w]) {
          next[v] = 1;
          break;
        }
      }
    }
    good.swap(next);
  }
  for (NodeId v = 0; v < n; ++v) {
    if (good[v]) out.push_back(v);
  }
  return out;
}

Automaton parse_automaton(std::string_view text, const Alphabet& alphabet) {
  std::vector<std::pair<NodeId, Symbol>> nodes;
  std::vector<Edge> edges;
  std::optional<NodeId> initial;
  std::optional<NodeId> final_node;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) -> InputError {
    return InputError("automaton text line " + std::to_string(line_no) + ": " + what);
  };
  auto parse_id = [&](const std::string& tok) {
    NodeId v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw fail("bad node id '" + tok + "'");
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw.rfind("#!", 0) == 0) continue;
    std::string a1, a2, extra;
    if (kw == "node") {
      if (!(ls >> a1 >> a2) || (ls >> extra)) throw fail("expected 'node <id> <label>'");
      if (a2.size() != 1) throw fail("label must be a single character");
      auto sym = alphabet.encode(a2[0]);
      if (!sym) throw fail("label '" + a2 + "' not in alphabet");
      nodes.emplace_back(parse_id(a1), *sym);
    } else if (kw == "edge") {
      if (!(ls >> a1 >> a2) || (ls >> extra)) throw fail("expected 'edge <u> <v>'");
      edges.push_back({parse_id(a1), parse_id(a2)});
    } else if (kw == "initial" || kw == "final") {
      if (!(ls >> a1) || (ls >> extra)) throw fail("expected '" + kw + " <id>'");
      (kw == "initial" ? initial : final_node) = parse_id(a1);
    } else {
      throw fail("unknown directive '" + kw + "'");
    }
  }
  if (!initial || !final_node) throw InputError("automaton text lacks initial or final node");
  std::sort(nodes.begin(), nodes.end());
  std::vector<Symbol> labels;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k].first != k) throw InputError("automaton node ids must be dense from 0");
    labels.push_back(nodes[k].second);
  }
  return Automaton(alphabet, std::move(labels), std::move(edges), *initial, *final_node);
}

std::string format_automaton(const Automaton& a) {
  std::ostringstream out;
  for (NodeId v = 0; v < a.node_count(); ++v) {
    out << "node " << v << ' ' << a.alphabet().decode(a.label(v)) << '\n';
  }
  for (const Edge& e : a.edges()) out << "edge " << e.from << ' ' << e.to << '\n';
  out << "initial " << a.initial() << '\n' << "final " << a.final_node() << '\n';
  return out.str();
}

}  // namespace gcsa

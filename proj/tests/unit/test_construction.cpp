#include <doctest.h>

#include <random>
#include <sstream>

#include "gcsa/alignment.hpp"
#include "gcsa/construction.hpp"
#include "gcsa/error.hpp"
#include "support/oracles.hpp"

using namespace gcsa;

namespace {

const Alphabet kDna = Alphabet::dna();

Automaton parse(const std::string& text) { return parse_automaton(text, kDna); }

const char* kDiamond =
    "node 0 #\nnode 1 A\nnode 2 C\nnode 3 T\nnode 4 $\n"
    "edge 0 1\nedge 0 2\nedge 1 3\nedge 2 3\nedge 3 4\ninitial 0\nfinal 4\n";

// #->{A1,A2}: A1->C->$, A2->G->$. The two A nodes tie at first.
const char* kTwinA =
    "node 0 #\nnode 1 A\nnode 2 A\nnode 3 C\nnode 4 G\nnode 5 $\n"
    "edge 0 1\nedge 0 2\nedge 1 3\nedge 2 4\nedge 3 5\nedge 4 5\ninitial 0\nfinal 5\n";

std::size_t ceil_log2(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

// Tracked labels must spell real paths from -> to, and ranks must order
// them: equal ranks carry equal labels, and a smaller rank never carries a
// larger label on the common length.
void check_state(const DoublingState& st, const Automaton& a,
                 const std::vector<std::vector<SymbolString>>& suffixes) {
  REQUIRE(st.labels.size() == st.nodes.size());
  std::set<NodeId> froms;
  for (std::size_t i = 0; i < st.nodes.size(); ++i) {
    const auto& v = st.nodes[i];
    const auto& label = st.labels[i];
    froms.insert(v.from);
    CHECK(v.label == a.label(v.from));
    CHECK(static_cast<Symbol>(label.back()) == a.label(v.to));
    CHECK(std::any_of(suffixes[v.from].begin(), suffixes[v.from].end(), [&](const SymbolString& s) {
      return s.compare(0, label.size(), label) == 0;
    }));
    if (!v.sorted) {
      CHECK((label.size() == (std::size_t{1} << st.round) || label.back() == kEndMarker));
    }
    if (i == 0) continue;
    const auto& u = st.nodes[i - 1];
    const auto& prev = st.labels[i - 1];
    CHECK(u.rank <= v.rank);
    std::size_t common = std::min(prev.size(), label.size());
    if (u.rank == v.rank) {
      CHECK(prev == label);
      CHECK_FALSE(u.sorted);
      CHECK_FALSE(v.sorted);
    } else {
      CHECK(prev.compare(0, common, label, 0, common) <= 0);
    }
  }
  CHECK(froms.size() == a.node_count());
}

Automaton fuzzed_automaton(std::mt19937_64& rng) {
  for (;;) {
    auto rows = oracle::random_alignment(rng, 1 + rng() % 4, 2 + rng() % 20, 0.2, 0.15);
    try {
      auto a = build_automaton(AlignmentMatrix(rows), rng() % 3);
      if (count_paths(a) <= 2000) return a;
    } catch (const InputError&) {
    }
  }
}

}  // namespace

TEST_CASE("initial ranks") {
  auto chain = parse("node 0 #\nnode 1 A\nnode 2 $\nedge 0 1\nedge 1 2\ninitial 0\nfinal 2\n");
  auto st = init_doubling(chain);
  REQUIRE(st.nodes.size() == 3);
  CHECK(st.all_sorted());
  CHECK(st.nodes[0].rank == 1);
  CHECK(st.nodes[2].rank == 3);
  CHECK(st.nodes[0].from == 2);  // '$' sorts first

  auto twin = init_doubling(parse(kTwinA));
  CHECK(twin.unsorted() == 2);
  CHECK(twin.nodes[1].rank == twin.nodes[2].rank);
  CHECK_FALSE(twin.nodes[1].sorted);

  std::mt19937_64 rng(1);
  auto a = build_automaton(AlignmentMatrix(oracle::random_alignment(rng, 4, 30)), 2);
  std::map<Symbol, std::size_t> by_label;
  std::map<std::uint64_t, std::size_t> by_rank;
  for (NodeId v = 0; v < a.node_count(); ++v) ++by_label[a.label(v)];
  for (const auto& v : init_doubling(a).nodes) ++by_rank[v.rank];
  std::vector<std::size_t> x;
  std::vector<std::size_t> y;
  for (auto [k, c] : by_label) x.push_back(c);
  for (auto [k, c] : by_rank) y.push_back(c);
  CHECK(x == y);
}

TEST_CASE("doubling and pruning steps") {
  SUBCASE("a sorted state is a fixpoint") {
    auto a = parse(kDiamond);
    auto st = init_doubling(a);
    REQUIRE(st.all_sorted());
    auto next = doubling_step(st, a);
    REQUIRE(next.nodes.size() == st.nodes.size());
    for (std::size_t i = 0; i < st.nodes.size(); ++i) {
      CHECK(next.nodes[i].rank == st.nodes[i].rank);
      CHECK(next.nodes[i].from == st.nodes[i].from);
    }
  }
  SUBCASE("tied nodes separate after one step") {
    auto a = parse(kTwinA);
    auto next = prune_step(doubling_step(init_doubling(a, true), a));
    CHECK(next.all_sorted());
    CHECK(kDna.decode_string(next.labels[1]) == "AC");
    CHECK(kDna.decode_string(next.labels[2]) == "AG");
  }
  SUBCASE("pruning") {
    DoublingState st;
    st.nodes = {{1, 1, 0, 0, true}, {1, 2, 3, 4, false}, {1, 2, 3, 5, false}, {2, 3, 6, 6, false},
                {2, 3, 7, 7, false}};
    auto out = prune_step(st);
    REQUIRE(out.nodes.size() == 4);
    CHECK(out.nodes[0].rank == 1);
    CHECK(out.nodes[1].from == 3);
    CHECK(out.nodes[1].sorted);
    CHECK(out.nodes[2].rank == 3);
    CHECK_FALSE(out.nodes[2].sorted);
  }
  SUBCASE("an unsorted node without a continuation is an internal error") {
    auto a = parse(kDiamond);
    DoublingState st;
    st.nodes = {{0, 1, 4, 4, false}, {0, 1, 4, 4, false}};
    CHECK_THROWS_AS(doubling_step(st, a), InternalError);
  }
}

TEST_CASE("merging adjacent ranks") {
  std::vector<DoublingNode> w = {{0, 1, 5, 5, true}, {1, 2, 1, 3, true}, {1, 3, 2, 4, true}};
  auto same = merge_adjacent_ranks(w);
  CHECK(same.size() == 3);
  w[2].from = 1;
  auto merged = merge_adjacent_ranks(w);
  REQUIRE(merged.size() == 2);
  CHECK(merged[1].from == 1);
  CHECK(merged[1].rank == 2);
}

TEST_CASE("small constructions") {
  auto chain = parse("node 0 #\nnode 1 A\nnode 2 C\nnode 3 $\nedge 0 1\nedge 1 2\nedge 2 3\ninitial 0\nfinal 3\n");
  auto sa = build_prefix_sorted(chain);
  CHECK(sa.automaton.node_count() == 4);
  CHECK(sa.automaton.edge_count() == 3);
  CHECK(oracle::decoded_language(sa.automaton) == std::set<std::string>{"#AC$"});

  auto diamond = build_prefix_sorted(parse(kDiamond));
  CHECK(diamond.automaton.edge_count() == 5);
  CHECK(oracle::decoded_language(diamond.automaton) == std::set<std::string>{"#AT$", "#CT$"});

  // Chain with 6 characters: longest string 8, so at most 3 doubling rounds.
  auto a = build_automaton(AlignmentMatrix({"AAAAAA"}), 0);
  ConstructionStats stats;
  build_sorted_nodes(a, {}, &stats);
  CHECK(stats.longest_string == 8);
  CHECK(stats.doubling_rounds <= 3);
  CHECK(stats.rounds.size() == stats.doubling_rounds + 1);

  auto twin = parse(
      "node 0 #\nnode 1 A\nnode 2 A\nnode 3 T\nnode 4 $\nedge 0 1\nedge 0 2\nedge 1 3\n"
      "edge 2 3\nedge 3 4\ninitial 0\nfinal 4\n");
  CHECK_THROWS_AS(build_prefix_sorted(twin), InputError);
}

TEST_CASE("rounds csv") {
  ConstructionStats stats;
  stats.rounds = {{0, 10, 12, 4}, {1, 11, 13, 0}};
  std::ostringstream out;
  write_rounds_csv(out, stats);
  CHECK(out.str() == "round,nodes,edges,unsorted\n0,10,12,4\n1,11,13,0\n");
}

TEST_CASE("single sequence ranks follow the suffix array") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    std::string x = oracle::random_string(rng, 1 + rng() % 200, t % 2 ? "ACGT" : "AT");
    auto sa = build_prefix_sorted(build_automaton(AlignmentMatrix({x}), rng() % 6));
    REQUIRE(sa.automaton.node_count() == x.size() + 2);
    auto order = oracle::naive_suffix_array(kDna.encode_string("#" + x + "$"));
    for (std::size_t k = 0; k < order.size(); ++k) CHECK(sa.automaton.position(k) == order[k]);
  }
}

TEST_CASE("fuzzed constructions") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 120; ++t) {
    Automaton a = fuzzed_automaton(rng);
    auto suffixes = all_suffix_sets(a);
    ConstructionOptions options;
    options.track_labels = true;
    // Joins can fork one unsorted node into several, so the unsorted count
    // may grow; the set of original nodes with unsorted copies cannot.
    std::vector<std::set<NodeId>> unsorted;
    options.on_round = [&](const DoublingState& st) {
      check_state(st, a, suffixes);
      std::set<NodeId> froms;
      for (const auto& v : st.nodes) {
        if (!v.sorted) froms.insert(v.from);
      }
      unsorted.push_back(froms);
    };
    ConstructionStats stats;
    auto w = build_sorted_nodes(a, options, &stats);
    CHECK(stats.doubling_rounds <= ceil_log2(longest_string_length(a)));
    for (std::size_t i = 1; i < unsorted.size(); ++i) {
      CHECK(std::includes(unsorted[i - 1].begin(), unsorted[i - 1].end(), unsorted[i].begin(),
                          unsorted[i].end()));
    }

    auto sa = create_edges(a, merge_adjacent_ranks(w.nodes));
    CHECK_FALSE(validate(sa.automaton));
    CHECK(enumerate_language(sa.automaton) == enumerate_language(a));
    CHECK(is_prefix_range_sorted_naive(sa.automaton));
    // Before merging, every node owns a prefix no other node's label extends.
    CHECK(w.all_sorted());
    std::vector<SymbolString> labels = w.labels;
    std::sort(labels.begin(), labels.end());
    for (std::size_t i = 1; i < labels.size(); ++i) {
      CHECK(labels[i].compare(0, labels[i - 1].size(), labels[i - 1]) != 0);
    }

    // Incoming edges of a node come from distinct original nodes.
    for (NodeId v = 0; v < sa.automaton.node_count(); ++v) {
      std::set<NodeId> sources;
      for (NodeId u : sa.automaton.predecessors(v)) CHECK(sources.insert(sa.from[u]).second);
    }
  }
}

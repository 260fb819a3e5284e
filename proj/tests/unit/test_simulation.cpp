#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gcsa/construction.hpp"
#include "gcsa/error.hpp"
#include "gcsa/simulation.hpp"

using namespace gcsa;

TEST_CASE("model automata") {
  RandomModelParams params;
  params.n = 50;
  params.p = 0.0;
  std::size_t mutated = 99;
  Automaton chain = generate_random_automaton(params, 7, &mutated);
  CHECK(mutated == 0);
  CHECK(chain.node_count() == 52);
  CHECK(chain.edge_count() == 51);
  CHECK_FALSE(validate(chain));

  params.p = 1.0;
  Automaton doubled = generate_random_automaton(params, 7, &mutated);
  CHECK(mutated == 50);
  CHECK(doubled.node_count() == 102);
  CHECK(doubled.edge_count() == 2 + 4 * 49 + 2);
  CHECK(is_reverse_deterministic(doubled));
  // The alternate node never repeats the reference label.
  for (NodeId v = 1; v + 1 < doubled.node_count(); v += 2) {
    CHECK(doubled.label(v) != doubled.label(v + 1));
  }

  params.sigma = 7;
  params.p = 0.3;
  Automaton wide = generate_random_automaton(params, 3);
  CHECK(wide.alphabet().characters() == "ABCDEFG");
  CHECK_FALSE(validate(wide));

  params.sigma = 1;
  CHECK_THROWS_AS(generate_random_automaton(params, 1), InputError);
  params.sigma = 4;
  params.p = 1.5;
  CHECK_THROWS_AS(generate_random_automaton(params, 1), InputError);
}

TEST_CASE("mutation count follows the binomial mean") {
  RandomModelParams params;
  params.n = 1000;
  params.p = 0.01;
  const int trials = 30;
  double sum = 0;
  for (int t = 0; t < trials; ++t) {
    std::size_t mutated = 0;
    generate_random_automaton(params, 100 + t, &mutated);
    sum += static_cast<double>(mutated);
  }
  double mean = sum / trials;
  double se = std::sqrt(1000 * 0.01 * 0.99 / trials);
  CHECK(std::abs(mean - 10.0) <= 3 * se);
}

TEST_CASE("closed-form bounds") {
  CHECK(node_bound(1000, 0.01, 16) == doctest::Approx(1174.58).epsilon(1e-4));
  CHECK(collision_bound(1000, 0.01, 4, 16) == doctest::Approx(3.75e-4).epsilon(1e-2));
  CHECK(edge_bound(1000, 0.01, 16) == doctest::Approx(node_bound(1000, 0.01, 16) * 1.01));
  CHECK(in_theorem_regime(0.05, 4));
  CHECK_FALSE(in_theorem_regime(0.6, 4));
  // k = 2 log_4(n^2 / eps) / (1 - 3 log_4(1 + p))
  double expected = 2 * (std::log(1e6 / 0.01) / std::log(4.0)) /
                    (1 - 3 * std::log(1.01) / std::log(4.0));
  CHECK(theorem_path_length(1000, 0.01, 4, 0.01) == doctest::Approx(expected));
}

TEST_CASE("collision counting matches all-pairs comparison") {
  RandomModelParams params;
  params.n = 120;
  params.p = 0.2;
  params.sigma = 2;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Automaton a = generate_random_automaton(params, seed);
    ConstructionOptions options;
    options.track_labels = true;
    options.on_round = [&](const DoublingState& st) {
      std::size_t pairs = 0;
      for (std::size_t i = 0; i < st.labels.size(); ++i) {
        for (std::size_t j = i + 1; j < st.labels.size(); ++j) pairs += st.labels[i] == st.labels[j];
      }
      CHECK(count_colliding_pairs(st) == pairs);
      if (st.all_sorted()) CHECK(pairs == 0);
    };
    build_sorted_nodes(a, options);
  }

  DoublingState two;
  two.nodes = {{1, 1, 1, 1, false}, {1, 1, 2, 2, false}};
  two.labels = {"\x01", "\x01"};
  CHECK(count_colliding_pairs(two) == 1);
  two.labels.clear();
  CHECK_THROWS_AS(count_colliding_pairs(two), InputError);
}

TEST_CASE("growth experiment") {
  RandomModelParams params;
  params.n = 300;
  params.p = 0.0;
  params.trials = 3;
  GrowthReport chain = run_growth_experiment(params);
  for (const auto& trial : chain.trials) {
    for (const auto& r : trial.rounds) CHECK(r.nodes == 302);
    CHECK(trial.rounds.back().colliding_pairs == 0);
  }

  params.p = 0.01;
  params.trials = 10;
  GrowthReport report = run_growth_experiment(params);
  REQUIRE_FALSE(report.records.empty());
  CHECK(report.records.size() == report.trials.front().rounds.size());
  for (const auto& trial : report.trials) CHECK(trial.rounds.size() == report.records.size());
  CHECK(report.records.back().sorted_fraction == 1.0);
  CHECK(report.records.front().mean_nodes == doctest::Approx(300 + 2 + 3.0).epsilon(0.02));
  for (const auto& rec : report.records) {
    double slack = 1 + 3 / std::sqrt(10.0);
    CHECK(rec.mean_nodes <= rec.node_bound * slack);
    CHECK(rec.mean_edges <= rec.edge_bound * slack);
    CHECK(rec.mean_colliding_pairs <= rec.collision_bound * slack + 0.1);
  }

  // Same seed, same report.
  GrowthReport again = run_growth_experiment(params);
  std::ostringstream a;
  std::ostringstream b;
  write_growth_csv(a, {report});
  write_growth_csv(b, {again});
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("kind,n,p,sigma,seed,trial,h,nodes,edges,colliding_pairs,sorted,", 0) == 0);
  CHECK(a.str().find("\nmean,300,0.01,4,1,*,0,") != std::string::npos);

  auto grid = run_growth_grid({100, 200}, {0.0, 0.05}, params);
  CHECK(grid.size() == 4);
  CHECK(grid[3].params.n == 200);
  CHECK(grid[3].params.p == 0.05);
}

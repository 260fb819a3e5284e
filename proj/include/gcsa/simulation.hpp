#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gcsa/automaton.hpp"

namespace gcsa {

/*
 * Random reference-with-mutations model. Each of n positions holds a
 * reference node with a uniform random label; with probability p it also
 * holds a mutant node with a different uniform random label. All nodes of
 * consecutive positions are connected; '#' feeds position 1 and position n
 * feeds '$'.
 */
struct RandomModelParams {
  std::size_t n = 1000;
  double p = 0.01;
  std::size_t sigma = 4;
  std::uint64_t seed = 1;
  std::size_t trials = 30;
};

/// Throws InputError unless n >= 1, 0 <= p <= 1, 2 <= sigma <= 26, trials >= 1.
void check_params(const RandomModelParams& params);
/// True when p < sigma^(1/3) - 1, the regime covered by the size theorem.
bool in_theorem_regime(double p, std::size_t sigma);

/// Automaton of one trial; node positions are reference positions ('#' at 0).
Automaton generate_random_automaton(const RandomModelParams& params, std::uint64_t trial_seed,
                                    std::size_t* mutated_positions = nullptr);

/// Expected-size bounds, with k = 2^h.
double node_bound(std::size_t n, double p, double k);
double edge_bound(std::size_t n, double p, double k);
double collision_bound(std::size_t n, double p, std::size_t sigma, double k);
/// Path length k by which all trials should be sorted with probability 1 - eps.
double theorem_path_length(std::size_t n, double p, std::size_t sigma, double eps);

struct TrialRound {
  std::size_t h;
  std::size_t nodes;
  std::size_t edges;
  std::size_t colliding_pairs;
  bool sorted;
};

struct TrialResult {
  std::uint64_t seed;
  std::size_t mutated_positions = 0;
  std::size_t termination_round = 0;
  std::size_t peak_nodes = 0;
  bool within_theorem = true;  // 2^termination_round <= theorem_path_length
  std::vector<TrialRound> rounds;  // padded to the report's last round
};

struct GrowthRecord {
  std::size_t h;
  double mean_nodes;
  double mean_edges;
  double mean_colliding_pairs;
  double sorted_fraction;
  double node_bound;
  double edge_bound;
  double collision_bound;
};

struct GrowthReport {
  RandomModelParams params;
  double theorem_k = 0;
  std::size_t theorem_violations = 0;
  std::vector<TrialResult> trials;
  std::vector<GrowthRecord> records;
};

inline constexpr double kTheoremEpsilon = 0.01;

GrowthReport run_growth_experiment(const RandomModelParams& params);

/// One report per (n, p) cell; every cell uses params.seed.
std::vector<GrowthReport> run_growth_grid(const std::vector<std::size_t>& ns,
                                          const std::vector<double>& ps,
                                          const RandomModelParams& base);

/// kind,n,p,sigma,seed,trial,h,nodes,edges,colliding_pairs,sorted,node_bound,edge_bound,collision_bound
/// "trial" rows carry one trial's counts, "mean" rows the averages over trials.
void write_growth_csv(std::ostream& out, const std::vector<GrowthReport>& reports);

}  // namespace gcsa

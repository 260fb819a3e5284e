#include "gcsa/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>

#include "gcsa/construction.hpp"
#include "gcsa/error.hpp"

namespace gcsa {

namespace {

Alphabet model_alphabet(std::size_t sigma) {
  if (sigma == 4) return Alphabet::dna();
  std::string chars;
  for (std::size_t i = 0; i < sigma; ++i) chars.push_back(static_cast<char>('A' + i));
  return Alphabet(chars);
}

// Uniform in [0, 1) from the top 53 bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

TrialResult run_trial(const RandomModelParams& params, std::uint64_t seed, double theorem_k) {
  TrialResult trial;
  trial.seed = seed;
  Automaton a = generate_random_automaton(params, seed, &trial.mutated_positions);

  ConstructionOptions options;
  options.track_labels = true;
  options.on_round = [&](const DoublingState& state) {
    trial.rounds.push_back({state.round, state.nodes.size(), path_graph_edge_count(state, a),
                            count_colliding_pairs(state), state.all_sorted()});
  };
  ConstructionStats stats;
  build_sorted_nodes(a, options, &stats);
  trial.termination_round = stats.doubling_rounds;
  trial.peak_nodes = stats.peak_nodes;
  trial.within_theorem = std::ldexp(1.0, static_cast<int>(trial.termination_round)) <= theorem_k;
  return trial;
}

}  // namespace

void check_params(const RandomModelParams& params) {
  if (params.n == 0) throw InputError("reference length n must be at least 1");
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw InputError("mutation rate p must lie in [0, 1]");
  if (params.sigma < 2 || params.sigma > 26) throw InputError("sigma must lie in [2, 26]");
  if (params.trials == 0) throw InputError("trials must be at least 1");
}

bool in_theorem_regime(double p, std::size_t sigma) {
  return p < std::cbrt(static_cast<double>(sigma)) - 1.0;
}

Automaton generate_random_automaton(const RandomModelParams& params, std::uint64_t trial_seed,
                                    std::size_t* mutated_positions) {
  check_params(params);
  std::mt19937_64 rng(trial_seed);
  const std::size_t n = params.n;
  const std::uint64_t sigma = params.sigma;
  Alphabet alphabet = model_alphabet(params.sigma);

  std::vector<Symbol> labels{alphabet.start_marker()};
  std::vector<std::uint64_t> positions{0};
  std::vector<Edge> edges;
  std::vector<NodeId> previous{0};
  std::size_t mutated = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<NodeId> here;
    auto reference = static_cast<Symbol>(rng() % sigma);
    here.push_back(static_cast<NodeId>(labels.size()));
    labels.push_back(static_cast<Symbol>(reference + 1));
    positions.push_back(i);
    if (unit(rng) < params.p) {
      auto other = static_cast<Symbol>((reference + 1 + rng() % (sigma - 1)) % sigma);
      here.push_back(static_cast<NodeId>(labels.size()));
      labels.push_back(static_cast<Symbol>(other + 1));
      positions.push_back(i);
      ++mutated;
    }
    for (NodeId u : previous) {
      for (NodeId v : here) edges.push_back({u, v});
    }
    previous = std::move(here);
  }
  auto final_node = static_cast<NodeId>(labels.size());
  labels.push_back(kEndMarker);
  positions.push_back(n + 1);
  for (NodeId u : previous) edges.push_back({u, final_node});
  if (mutated_positions) *mutated_positions = mutated;
  return Automaton(alphabet, std::move(labels), std::move(edges), 0, final_node, std::move(positions));
}

double node_bound(std::size_t n, double p, double k) {
  return static_cast<double>(n) * std::pow(1.0 + p, k) + 2.0;
}

double edge_bound(std::size_t n, double p, double k) { return node_bound(n, p, k) * (1.0 + p); }

double collision_bound(std::size_t n, double p, std::size_t sigma, double k) {
  double nn = static_cast<double>(n);
  return nn * nn * std::pow(1.0 + p, 3.0 * k) / std::pow(static_cast<double>(sigma), k);
}

double theorem_path_length(std::size_t n, double p, std::size_t sigma, double eps) {
  double log_sigma = std::log(static_cast<double>(sigma));
  double nn = static_cast<double>(n);
  double numerator = std::log(nn * nn / eps) / log_sigma;
  double denominator = 1.0 - 3.0 * std::log1p(p) / log_sigma;
  return 2.0 * numerator / denominator;
}

GrowthReport run_growth_experiment(const RandomModelParams& params) {
  check_params(params);
  GrowthReport report;
  report.params = params;
  report.theorem_k = in_theorem_regime(params.p, params.sigma)
                         ? theorem_path_length(params.n, params.p, params.sigma, kTheoremEpsilon)
                         : INFINITY;

  std::mt19937_64 seeds(params.seed);
  for (std::size_t t = 0; t < params.trials; ++t) {
    report.trials.push_back(run_trial(params, seeds(), report.theorem_k));
  }

  // A finished trial keeps its final state in later rounds.
  std::size_t last = 0;
  for (const auto& trial : report.trials) last = std::max(last, trial.rounds.back().h);
  for (auto& trial : report.trials) {
    while (trial.rounds.back().h < last) {
      TrialRound next = trial.rounds.back();
      ++next.h;
      trial.rounds.push_back(next);
    }
    if (!trial.within_theorem) ++report.theorem_violations;
  }

  const double count = static_cast<double>(report.trials.size());
  for (std::size_t h = 0; h <= last; ++h) {
    GrowthRecord rec{h, 0, 0, 0, 0, 0, 0, 0};
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t pairs = 0;
    std::size_t sorted = 0;
    for (const auto& trial : report.trials) {
      const TrialRound& r = trial.rounds[h];
      nodes += r.nodes;
      edges += r.edges;
      pairs += r.colliding_pairs;
      sorted += r.sorted ? 1 : 0;
    }
    rec.mean_nodes = static_cast<double>(nodes) / count;
    rec.mean_edges = static_cast<double>(edges) / count;
    rec.mean_colliding_pairs = static_cast<double>(pairs) / count;
    rec.sorted_fraction = static_cast<double>(sorted) / count;
    double k = std::ldexp(1.0, static_cast<int>(h));
    rec.node_bound = node_bound(params.n, params.p, k);
    rec.edge_bound = edge_bound(params.n, params.p, k);
    rec.collision_bound = collision_bound(params.n, params.p, params.sigma, k);
    report.records.push_back(rec);
  }
  return report;
}

std::vector<GrowthReport> run_growth_grid(const std::vector<std::size_t>& ns,
                                          const std::vector<double>& ps,
                                          const RandomModelParams& base) {
  std::vector<GrowthReport> out;
  for (std::size_t n : ns) {
    for (double p : ps) {
      RandomModelParams params = base;
      params.n = n;
      params.p = p;
      out.push_back(run_growth_experiment(params));
    }
  }
  return out;
}

void write_growth_csv(std::ostream& out, const std::vector<GrowthReport>& reports) {
  out << "kind,n,p,sigma,seed,trial,h,nodes,edges,colliding_pairs,sorted,node_bound,edge_bound,"
         "collision_bound\n";
  auto old_flags = out.flags();
  auto old_precision = out.precision();
  out << std::setprecision(10);
  for (const auto& report : reports) {
    const auto& pr = report.params;
    auto prefix = [&](const char* kind) {
      out << kind << ',' << pr.n << ',' << pr.p << ',' << pr.sigma << ',' << pr.seed << ',';
    };
    for (std::size_t t = 0; t < report.trials.size(); ++t) {
      for (const auto& r : report.trials[t].rounds) {
        const GrowthRecord& rec = report.records[r.h];
        prefix("trial");
        out << t << ',' << r.h << ',' << r.nodes << ',' << r.edges << ',' << r.colliding_pairs << ','
            << (r.sorted ? 1 : 0) << ',' << rec.node_bound << ',' << rec.edge_bound << ','
            << rec.collision_bound << '\n';
      }
    }
    for (const auto& rec : report.records) {
      prefix("mean");
      out << "*," << rec.h << ',' << rec.mean_nodes << ',' << rec.mean_edges << ','
          << rec.mean_colliding_pairs << ',' << rec.sorted_fraction << ',' << rec.node_bound << ','
          << rec.edge_bound << ',' << rec.collision_bound << '\n';
    }
  }
  out.flags(old_flags);
  out.precision(old_precision);
}

}  // namespace gcsa

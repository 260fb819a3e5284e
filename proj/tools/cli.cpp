#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "gcsa/alignment.hpp"
#include "gcsa/construction.hpp"
#include "gcsa/error.hpp"
#include "gcsa/index.hpp"
#include "gcsa/matcher.hpp"
#include "gcsa/simulation.hpp"

namespace gcsa::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct BuildArgs {
  std::string alignment;
  std::string output;
  std::size_t context_length = kDefaultContextLength;
  std::uint32_t sample_rate = kDefaultSampleRate;
  std::string verify = "edges";
  std::string alphabet = "ACGT";
  std::string dump_rounds;
  bool no_timestamps = false;
};

struct QueryArgs {
  std::string index;
  std::string reads;
  int max_edit = 0;
  bool no_reverse_complement = false;
  std::uint64_t max_occurrences = 0;
  bool no_timestamps = false;
};

struct StatsArgs {
  std::string index;
  bool json = false;
};

struct SimulateArgs {
  std::vector<std::size_t> n{500, 1000, 5000};
  std::vector<double> p{0.001, 0.01, 0.05};
  std::size_t sigma = 4;
  std::size_t trials = 30;
  std::uint64_t seed = 1;
  std::string output;
  bool assert_theorem = false;
};

int cmd_build(const BuildArgs& args, std::ostream& out, std::ostream& err) {
  auto start = Clock::now();
  Verification verify = parse_verification(args.verify);
  Alphabet alphabet(args.alphabet);
  AlignmentMatrix alignment = read_alignment_file(args.alignment, alphabet);
  Automaton automaton = build_automaton(alignment, args.context_length);
  SortedAutomaton sorted = build_prefix_sorted(automaton);

  if (verify == Verification::full) {
    if (count_paths(automaton) > kOracleCap) {
      err << "note: alignment too large for the language oracle; checking edges only\n";
    } else {
      if (enumerate_language(sorted.automaton) != enumerate_language(automaton)) {
        throw BuildError("sorted automaton recognizes a different language");
      }
      if (!is_prefix_range_sorted_naive(sorted.automaton)) {
        throw BuildError("sorted automaton is not prefix-range-sorted");
      }
    }
  }
  GcsaIndex index = GcsaIndex::from_automaton(sorted, args.sample_rate, verify);
  index.save(args.output);

  if (!args.dump_rounds.empty()) {
    std::ofstream csv(args.dump_rounds);
    if (!csv) throw InputError("cannot write '" + args.dump_rounds + "'");
    write_rounds_csv(csv, sorted.stats);
  }

  IndexStats s = index.stats();
  out << "rows\t" << alignment.row_count() << '\n'
      << "columns\t" << alignment.width() << '\n'
      << "automaton_nodes\t" << automaton.node_count() << '\n'
      << "nodes\t" << s.nodes << '\n'
      << "edges\t" << s.automaton_edges << '\n'
      << "bwt_length\t" << s.bwt_length << '\n'
      << "doubling_rounds\t" << sorted.stats.doubling_rounds << '\n'
      << "peak_nodes\t" << sorted.stats.peak_nodes << '\n'
      << "samples\t" << s.samples << '\n'
      << "index_bytes\t" << s.total_bytes << '\n';
  if (!args.no_timestamps) {
    out << "seconds\t" << std::fixed << std::setprecision(3) << seconds_since(start) << '\n';
  }
  return kExitOk;
}

int cmd_query(const QueryArgs& args, std::ostream& out, std::ostream& err) {
  auto start = Clock::now();
  if (args.max_edit < 0) throw InputError("--max-edit must be non-negative");
  GcsaIndex index = GcsaIndex::load(args.index);
  std::vector<Read> reads = read_reads_file(args.reads);
  MatchOptions options;
  options.max_edit = static_cast<std::uint32_t>(args.max_edit);
  options.reverse_complement = !args.no_reverse_complement;
  if (args.max_occurrences > 0) options.max_occurrences = args.max_occurrences;

  std::size_t matched = 0;
  std::size_t unmatchable = 0;
  std::vector<std::size_t> by_distance(options.max_edit + 1, 0);
  for (const auto& read : reads) {
    MatchResult result = match_read(index, read, options);
    write_tsv(out, result);
    if (result.unmatchable) ++unmatchable;
    if (result.matched()) {
      ++matched;
      ++by_distance[*result.distance];
    }
  }
  err << "reads\t" << reads.size() << '\n' << "matched\t" << matched << '\n';
  for (std::size_t d = 0; d < by_distance.size(); ++d) {
    err << "matched_distance_" << d << '\t' << by_distance[d] << '\n';
  }
  err << "unmatchable\t" << unmatchable << '\n';
  if (!args.no_timestamps) {
    err << "seconds\t" << std::fixed << std::setprecision(3) << seconds_since(start) << '\n';
  }
  return kExitOk;
}

int cmd_stats(const StatsArgs& args, std::ostream& out) {
  GcsaIndex index = GcsaIndex::load(args.index);
  IndexStats s = index.stats();
  if (args.json) {
    nlohmann::ordered_json j;
    j["nodes"] = s.nodes;
    j["edges"] = s.edges;
    j["automaton_edges"] = s.automaton_edges;
    j["bwt_length"] = s.bwt_length;
    j["bwt_bound"] = 2 * s.edges - s.nodes + 2;
    j["sigma"] = s.sigma;
    j["sample_rate"] = s.sample_rate;
    j["samples"] = s.samples;
    j["sample_width"] = s.sample_width;
    j["components"] = nlohmann::ordered_json::object();
    for (const auto& c : s.components) j["components"][c.name] = c.bytes;
    j["total_bytes"] = s.total_bytes;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "nodes            " << s.nodes << '\n'
      << "edges            " << s.edges << " (" << s.automaton_edges
      << " automaton edges + the $-to-# edge)\n"
      << "bwt length       " << s.bwt_length << " (bound 2|E|-|V|+2 = " << 2 * s.edges - s.nodes + 2
      << ")\n"
      << "alphabet size    " << s.sigma << '\n'
      << "sample rate      " << s.sample_rate << '\n'
      << "samples          " << s.samples << " x " << s.sample_width << " bits\n"
      << "bytes\n";
  for (const auto& c : s.components) {
    out << "  " << std::left << std::setw(15) << c.name << std::right << c.bytes << '\n';
  }
  out << "  " << std::left << std::setw(15) << "total" << std::right << s.total_bytes << '\n';
  return kExitOk;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  RandomModelParams base;
  base.sigma = args.sigma;
  base.trials = args.trials;
  base.seed = args.seed;
  for (double p : args.p) {
    base.p = p;
    check_params(base);
    if (args.assert_theorem && !in_theorem_regime(p, args.sigma)) {
      std::ostringstream msg;
      msg << "p = " << p << " violates p < sigma^(1/3) - 1 = " << std::cbrt(double(args.sigma)) - 1.0;
      throw InputError(msg.str());
    }
  }
  for (std::size_t n : args.n) {
    base.n = n;
    check_params(base);
  }

  std::vector<GrowthReport> reports = run_growth_grid(args.n, args.p, base);
  if (args.output.empty()) {
    write_growth_csv(out, reports);
  } else {
    std::ofstream file(args.output);
    if (!file) throw InputError("cannot write '" + args.output + "'");
    write_growth_csv(file, reports);
  }

  int status = kExitOk;
  for (const auto& r : reports) {
    err << "n=" << r.params.n << " p=" << r.params.p << ": sorted after";
    for (const auto& t : r.trials) err << ' ' << t.termination_round;
    err << " rounds; theorem k=" << r.theorem_k << ", " << r.theorem_violations << " of "
        << r.trials.size() << " trials beyond it\n";
    if (args.assert_theorem) {
      double trials = static_cast<double>(r.trials.size());
      double allowed =
          kTheoremEpsilon + 3.0 * std::sqrt(kTheoremEpsilon * (1 - kTheoremEpsilon) / trials);
      if (static_cast<double>(r.theorem_violations) / trials > allowed) status = kExitInternal;
    }
  }
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized compressed suffix array for multiple alignments", "gcsa"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Build an index from a multiple alignment");
  build_cmd->add_option("alignment", build.alignment, "Alignment file (one row per line or FASTA)")
      ->required();
  build_cmd->add_option("-o,--output", build.output, "Index file to write")->required();
  build_cmd->add_option("-m,--context-length", build.context_length,
                        "Characters of right context used to merge alignment cells")
      ->capture_default_str();
  build_cmd->add_option("-d,--sample-rate", build.sample_rate, "Maximum Psi steps in locate")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  build_cmd->add_option("--verify", build.verify, "Self-check after building")
      ->capture_default_str()
      ->check(CLI::IsMember({"none", "edges", "full"}));
  build_cmd->add_option("--alphabet", build.alphabet, "Alphabet characters in order")
      ->capture_default_str();
  build_cmd->add_option("--dump-rounds", build.dump_rounds,
                        "Write per-round doubling counts as CSV to this file");
  build_cmd->add_flag("--no-timestamps", build.no_timestamps, "Omit timings from the summary");

  QueryArgs query;
  auto* query_cmd = app.add_subcommand("query", "Match reads against an index");
  query_cmd->add_option("index", query.index, "Index file")->required();
  query_cmd->add_option("reads", query.reads, "Reads in FASTA or FASTQ")->required();
  query_cmd->add_option("-k,--max-edit", query.max_edit, "Maximum edit distance")
      ->capture_default_str();
  query_cmd->add_flag("--no-reverse-complement", query.no_reverse_complement,
                      "Search the forward strand only");
  query_cmd->add_option("--max-occurrences", query.max_occurrences,
                        "Locate at most this many nodes per strand (0 = all)")
      ->capture_default_str();
  query_cmd->add_flag("--no-timestamps", query.no_timestamps, "Omit timings from the summary");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Report index statistics");
  stats_cmd->add_option("index", stats.index, "Index file")->required();
  stats_cmd->add_flag("--json", stats.json, "Machine-readable output");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the random-mutation growth experiment");
  sim_cmd->add_option("--n", sim.n, "Reference lengths")->delimiter(',')->capture_default_str();
  sim_cmd->add_option("--p", sim.p, "Mutation rates")->delimiter(',')->capture_default_str();
  sim_cmd->add_option("--sigma", sim.sigma, "Alphabet size")->capture_default_str();
  sim_cmd->add_option("--trials", sim.trials, "Trials per cell")->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
  sim_cmd->add_option("-o,--output", sim.output, "CSV file (default: standard output)");
  sim_cmd->add_flag("--assert-theorem", sim.assert_theorem,
                    "Refuse rates outside the size theorem and fail if trials exceed its bound");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*build_cmd) return cmd_build(build, out, err);
    if (*query_cmd) return cmd_query(query, out, err);
    if (*stats_cmd) return cmd_stats(stats, out);
    if (*sim_cmd) return cmd_simulate(sim, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInput;
}

}  // namespace gcsa::cli

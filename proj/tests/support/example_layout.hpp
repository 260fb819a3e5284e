#pragma once

// Loader for the example GCSA layout in fixtures/example_layout.txt.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcsa/index.hpp"

#ifndef GCSA_FIXTURE_DIR
#error "GCSA_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace fixture {

struct LayoutRow {
  std::string prefix;
  std::string bwt;  // '-' for an empty slot
  std::string f;
  std::string m;
};

inline std::vector<LayoutRow> example_rows() {
  std::ifstream in(std::string(GCSA_FIXTURE_DIR) + "/example_layout.txt");
  if (!in) throw std::runtime_error("cannot open example layout fixture");
  std::vector<LayoutRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("##", 0) == 0) continue;
    std::istringstream fields(line);
    LayoutRow row;
    if (!(fields >> row.prefix >> row.bwt >> row.f >> row.m)) {
      throw std::runtime_error("bad example layout line: " + line);
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<gcsa::LayoutNode> example_layout(const gcsa::Alphabet& alphabet) {
  std::vector<gcsa::LayoutNode> nodes;
  for (const auto& row : example_rows()) {
    gcsa::LayoutNode v{*alphabet.encode(row.prefix[0]), {}, 0};
    for (char c : row.bwt) {
      if (c != '-') v.in_labels.push_back(*alphabet.encode(c));
    }
    for (char c : row.m) v.out_bits += c == '1';
    nodes.push_back(v);
  }
  return nodes;
}

inline gcsa::GcsaIndex example_index(gcsa::Verification verify = gcsa::Verification::edges) {
  gcsa::Alphabet dna = gcsa::Alphabet::dna();
  auto layout = example_layout(dna);
  std::vector<std::uint64_t> ids(layout.size());
  for (std::size_t k = 0; k < ids.size(); ++k) ids[k] = k + 1;
  return gcsa::GcsaIndex::from_layout(dna, layout, ids, gcsa::kDefaultSampleRate, verify);
}

}  // namespace fixture

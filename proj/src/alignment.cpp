#include "gcsa/alignment.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "gcsa/error.hpp"

namespace gcsa {

AlignmentMatrix::AlignmentMatrix(std::vector<std::string> rows, Alphabet alphabet)
    : rows_(std::move(rows)), alphabet_(std::move(alphabet)) {
  if (rows_.empty()) throw InputError("alignment has no rows");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    auto& row = rows_[i];
    for (char& c : row) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (c != kGapChar && !alphabet_.encode_base(c)) {
        throw InputError("alignment row " + std::to_string(i + 1) + ": character '" +
                         std::string(1, c) + "' is not in the alphabet " + alphabet_.characters());
      }
    }
    if (row.size() != rows_.front().size()) {
      throw InputError("alignment row " + std::to_string(i + 1) + " has length " +
                       std::to_string(row.size()) + ", expected " +
                       std::to_string(rows_.front().size()));
    }
  }
  if (rows_.front().empty()) throw InputError("alignment rows are empty");
}

std::string AlignmentMatrix::sequence(std::size_t i) const {
  std::string out;
  for (char c : rows_.at(i)) {
    if (c != kGapChar) out.push_back(c);
  }
  return out;
}

AlignmentMatrix parse_alignment(std::string_view text, const Alphabet& alphabet) {
  std::vector<std::string> rows;
  std::vector<std::size_t> row_lines;
  bool fasta = false;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t");
    std::string body = line.substr(first, last - first + 1);
    if (body[0] == '>') {
      fasta = true;
      rows.emplace_back();
      row_lines.push_back(line_no);
      continue;
    }
    for (char c : body) {
      char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (u != kGapChar && !alphabet.encode_base(u)) {
        throw InputError("alignment line " + std::to_string(line_no) + ": character '" +
                         std::string(1, c) + "' is not in the alphabet " + alphabet.characters() +
                         " or '-'");
      }
    }
    if (fasta) {
      rows.back() += body;
    } else {
      rows.push_back(body);
      row_lines.push_back(line_no);
    }
  }
  if (rows.empty()) throw InputError("alignment has no rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) {
      throw InputError("alignment line " + std::to_string(row_lines[i]) + ": row " +
                       std::to_string(i + 1) + " has length " + std::to_string(rows[i].size()) +
                       ", expected " + std::to_string(rows.front().size()));
    }
  }
  return AlignmentMatrix(std::move(rows), alphabet);
}

AlignmentMatrix read_alignment_file(const std::string& path, const Alphabet& alphabet) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open alignment file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_alignment(buf.str(), alphabet);
}

NormalizedAlignment normalize_alignment(const AlignmentMatrix& a) {
  std::vector<std::string> rows = a.rows();
  const std::size_t r = rows.size();
  const std::size_t n = a.width();
  // The pass also covers the '$' column, so the final node's predecessors
  // are shifted like any other.
  for (auto& row : rows) row.push_back(kEndChar);

  // One right-to-left pass. At column j, rows sharing (S[j], preceding
  // character) form an equivalence class; their preceding characters are
  // moved right to the largest preceding column in the class.
  struct Entry {
    char here;
    char before;  // '#' when the row has no earlier character
    std::size_t prev_col;
    std::size_t row;
  };
  std::vector<Entry> entries;
  for (std::size_t j = n + 1; j-- > 1;) {
    entries.clear();
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i][j] == kGapChar) continue;
      std::size_t p = j;
      while (p > 0 && rows[i][p - 1] == kGapChar) --p;
      if (p == 0) {
        entries.push_back({rows[i][j], kStartChar, 0, i});
      } else {
        entries.push_back({rows[i][j], rows[i][p - 1], p - 1, i});
      }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
      return std::tie(x.here, x.before, x.prev_col) < std::tie(y.here, y.before, y.prev_col);
    });
    for (std::size_t lo = 0; lo < entries.size();) {
      std::size_t hi = lo;
      while (hi < entries.size() && entries[hi].here == entries[lo].here &&
             entries[hi].before == entries[lo].before) {
        ++hi;
      }
      if (entries[lo].before != kStartChar) {
        std::size_t target = entries[hi - 1].prev_col;
        for (std::size_t k = lo; k < hi; ++k) {
          auto& row = rows[entries[k].row];
          if (entries[k].prev_col != target) std::swap(row[entries[k].prev_col], row[target]);
        }
      }
      lo = hi;
    }
  }

  std::vector<char> keep(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < r; ++i) keep[j] |= rows[i][j] != kGapChar;
  }
  NormalizedAlignment out{{}, a.alphabet()};
  out.rows.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::string t(1, kStartChar);
    for (std::size_t j = 0; j < n; ++j) {
      if (keep[j]) t.push_back(rows[i][j]);
    }
    t.push_back(kEndChar);
    out.rows.push_back(std::move(t));
  }
  return out;
}

std::string context_label(const NormalizedAlignment& a, std::size_t row, std::size_t col,
                          std::size_t m) {
  const std::string& t = a.rows.at(row);
  if (col >= t.size()) throw InputError("context label column out of range");
  if (t[col] == kGapChar) {
    throw InputError("context label requested at a gap (row " + std::to_string(row) +
                     ", column " + std::to_string(col) + ")");
  }
  std::string label(1, t[col]);
  for (std::size_t j = col + 1; j < t.size() && label.size() < m + 1; ++j) {
    if (t[j] != kGapChar) label.push_back(t[j]);
  }
  label.resize(m + 1, kEndChar);
  return label;
}

Automaton build_automaton(const AlignmentMatrix& a, std::size_t context_length) {
  return build_automaton(normalize_alignment(a), context_length);
}

Automaton build_automaton(const NormalizedAlignment& a, std::size_t context_length) {
  const std::size_t r = a.rows.size();
  const std::size_t width = a.width();
  if (r == 0 || width < 2) throw InputError("cannot build an automaton from an empty alignment");
  const std::size_t m = context_length;

  // Non-gap cells of each row, for O(m) context labels.
  std::vector<std::vector<std::size_t>> cells(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      if (a.rows[i][j] != kGapChar) cells[i].push_back(j);
    }
  }
  auto label_of = [&](std::size_t i, std::size_t k) {
    std::string label;
    for (std::size_t t = k; t < cells[i].size() && label.size() < m + 1; ++t) {
      label.push_back(a.rows[i][cells[i][t]]);
    }
    label.resize(m + 1, kEndChar);
    return label;
  };

  std::vector<Symbol> labels;
  std::vector<std::uint64_t> positions;
  std::vector<std::vector<NodeId>> node_at(r, std::vector<NodeId>(width, 0));
  std::vector<std::size_t> cursor(r, 0);
  std::map<std::string, NodeId> groups;
  for (std::size_t j = 0; j < width; ++j) {
    groups.clear();
    for (std::size_t i = 0; i < r; ++i) {
      if (a.rows[i][j] == kGapChar) continue;
      // Column 0 holds '#' in every row; those cells always merge.
      std::string key = j == 0 ? std::string(1, kStartChar) : label_of(i, cursor[i]);
      auto [it, inserted] = groups.emplace(std::move(key), 0);
      if (inserted) {
        it->second = static_cast<NodeId>(labels.size());
        auto sym = a.alphabet.encode(a.rows[i][j]);
        if (!sym) throw InputError("normalized alignment holds an unknown character");
        labels.push_back(*sym);
        positions.push_back(j);
      }
      node_at[i][j] = it->second;
      ++cursor[i];
    }
  }

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 1; k < cells[i].size(); ++k) {
      edges.push_back({node_at[i][cells[i][k - 1]], node_at[i][cells[i][k]]});
    }
  }
  // Every row ends in '$' at the last column and those cells share one label.
  NodeId final_node = node_at[0][width - 1];
  return Automaton(a.alphabet, std::move(labels), std::move(edges), 0, final_node,
                   std::move(positions));
}

}  // namespace gcsa

#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "eulerdag/graph.hpp"

namespace eulerdag {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// External label <-> dense VertexId, assigned in order of first appearance.
class VertexNameMap {
 public:
  VertexId intern(std::string_view label) {
    auto it = ids_.find(std::string(label));
    if (it != ids_.end()) return it->second;
    VertexId id = static_cast<VertexId>(labels_.size());
    labels_.emplace_back(label);
    ids_.emplace(labels_.back(), id);
    return id;
  }

  std::optional<VertexId> find(std::string_view label) const {
    auto it = ids_.find(std::string(label));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& label(VertexId v) const { return labels_.at(v); }
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, VertexId> ids_;
};

struct IngestStats {
  std::size_t lines = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

struct ParsedGraph {
  DirectedGraph graph;
  VertexNameMap names;
  IngestStats stats;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_ws(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_ws(line[j])) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

}  // namespace detail

inline ParsedGraph parse_edge_list(std::istream& in) {
  ParsedGraph out;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = detail::split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (tokens.size() != 2)
      throw ParseError(lineno, "expected 2 tokens, found " + std::to_string(tokens.size()));
    VertexId u = out.names.intern(tokens[0]);
    VertexId v = out.names.intern(tokens[1]);
    if (u == v) {
      ++out.stats.self_loops_dropped;
      continue;
    }
    if (!seen.insert(detail::pair_key(u, v)).second) {
      ++out.stats.duplicates_dropped;
      continue;
    }
    edges.push_back({u, v});
  }
  out.stats.lines = lineno;
  out.graph = DirectedGraph(out.names.size(), std::move(edges));
  return out;
}

inline ParsedGraph parse_edge_list_string(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

// Writes edges in index order under a "# n=<n> m=<m>" header.
inline void serialize_edge_list(std::ostream& out, const DirectedGraph& g,
                                const VertexNameMap& names) {
  out << "# n=" << g.num_vertices() << " m=" << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << names.label(e.source) << ' ' << names.label(e.target) << '\n';
}

struct SnapshotSeries {
  VertexNameMap names;
  std::vector<DirectedGraph> graphs;
};

// Re-indexes every snapshot into the union of their label sets. Labels are
// numbered by first appearance across the snapshots in order.
inline SnapshotSeries align_snapshots(const std::vector<ParsedGraph>& snapshots) {
  if (snapshots.size() < 2) throw std::invalid_argument("align_snapshots needs at least 2 snapshots");
  SnapshotSeries series;
  for (const ParsedGraph& s : snapshots)
    for (const std::string& label : s.names.labels()) series.names.intern(label);
  for (const ParsedGraph& s : snapshots) {
    std::vector<Edge> edges;
    edges.reserve(s.graph.num_edges());
    for (const Edge& e : s.graph.edges())
      edges.push_back({*series.names.find(s.names.label(e.source)),
                       *series.names.find(s.names.label(e.target))});
    series.graphs.emplace_back(series.names.size(), std::move(edges));
  }
  return series;
}

}  // namespace eulerdag

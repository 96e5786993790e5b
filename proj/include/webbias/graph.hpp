#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "webbias/domains.hpp"
#include "webbias/errors.hpp"
#include "webbias/io.hpp"

namespace webbias {

struct LoadStats {
  std::uint64_t lines = 0;           // nonempty, non-comment lines seen
  std::uint64_t malformed = 0;       // lines that failed to parse
  std::uint64_t self_loops = 0;      // dropped i->i edges
  std::uint64_t duplicates = 0;      // dropped repeated i->j edges
  std::uint64_t edges = 0;           // edges kept
  // first few malformed lines, for diagnostics
  std::vector<std::pair<std::uint64_t, std::string>> errors;
};

/// Directed domain graph in CSR form, with both adjacency directions.
/// Edges are deduplicated; in_links is the exact transpose of out_links.
struct DomainGraph {
  DomainIndex index;
  std::vector<std::uint32_t> out_offsets, out_targets;
  std::vector<std::uint32_t> in_offsets, in_sources;

  std::size_t size() const { return index.size(); }
  std::uint32_t out_degree(std::uint32_t i) const { return out_offsets[i + 1] - out_offsets[i]; }

  static DomainGraph from_edges(DomainIndex index, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                                LoadStats* stats = nullptr) {
    DomainGraph g;
    g.index = std::move(index);
    const std::size_t n = g.index.size();

    std::sort(edges.begin(), edges.end());
    std::size_t before = edges.size();
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (stats != nullptr) {
      stats->duplicates += before - edges.size();
      stats->edges = edges.size();
    }

    g.out_offsets.assign(n + 1, 0);
    g.in_offsets.assign(n + 1, 0);
    for (auto [s, t] : edges) {
      ++g.out_offsets[s + 1];
      ++g.in_offsets[t + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
      g.out_offsets[i + 1] += g.out_offsets[i];
      g.in_offsets[i + 1] += g.in_offsets[i];
    }
    g.out_targets.resize(edges.size());
    g.in_sources.resize(edges.size());
    std::vector<std::uint32_t> out_pos(g.out_offsets.begin(), g.out_offsets.end() - 1);
    std::vector<std::uint32_t> in_pos(g.in_offsets.begin(), g.in_offsets.end() - 1);
    for (auto [s, t] : edges) {
      g.out_targets[out_pos[s]++] = t;
      g.in_sources[in_pos[t]++] = s;
    }
    return g;
  }
};

/// Reads a "source<TAB>target" edge list. '#' lines are comments. Malformed
/// lines are counted and skipped; an input yielding no nodes is fatal.
inline DomainGraph load_edge_list(std::istream& in, LoadStats* stats = nullptr) {
  LoadStats local;
  LoadStats& st = stats != nullptr ? *stats : local;

  DomainIndex index;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  LineReader reader(in);
  std::string_view line;
  std::uint64_t line_no = 0;
  while (reader.next(line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    ++st.lines;
    auto tab = line.find('\t');
    bool bad = tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos;
    std::string src, dst;
    if (!bad) {
      src = normalize_domain(line.substr(0, tab));
      dst = normalize_domain(line.substr(tab + 1));
      bad = src.empty() || dst.empty();
    }
    if (bad) {
      ++st.malformed;
      if (st.errors.size() < 10) st.errors.emplace_back(line_no, std::string(line.substr(0, 120)));
      continue;
    }
    std::uint32_t s = index.intern(std::move(src));
    std::uint32_t t = index.intern(std::move(dst));
    if (s == t) {
      ++st.self_loops;
      continue;
    }
    edges.emplace_back(s, t);
  }

  if (index.size() == 0) throw InputError("edge list is empty (no valid edges)");
  return DomainGraph::from_edges(std::move(index), std::move(edges), &st);
}

}  // namespace webbias

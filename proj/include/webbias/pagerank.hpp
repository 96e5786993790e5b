#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "webbias/errors.hpp"
#include "webbias/graph.hpp"

namespace webbias {

struct PageRankOptions {
  double alpha = 0.15;          // teleportation factor
  double tolerance = 1e-10;     // L1 convergence threshold
  unsigned max_iterations = 200;
  unsigned threads = 1;
};

struct PageRankVector {
  std::vector<double> scores;   // sums to 1; each >= alpha/N
  double alpha = 0.15;
  unsigned iterations_used = 0;
  double residual = 0.0;        // final L1 change
  bool converged = false;
};

/// Synchronous (Jacobi) power iteration. Dangling mass is redistributed
/// uniformly every sweep, so the score vector stays a probability
/// distribution. Per-node sums use a fixed in-link order and the residual
/// and dangling reductions are serial, so the result is bitwise-identical
/// for any thread count.
inline PageRankVector compute_pagerank(const DomainGraph& g, const PageRankOptions& opts = {}) {
  const std::size_t n = g.size();
  if (n == 0) throw InputError("compute_pagerank: empty graph");
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0))
    throw InputError("compute_pagerank: alpha must be in (0,1)");

  const double alpha = opts.alpha;
  std::vector<double> prev(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);
  std::vector<double> contrib(n, 0.0);  // prev[j] / out_degree(j)

  PageRankVector result;
  result.alpha = alpha;

  const unsigned threads = std::max(1u, opts.threads);
  auto parallel_for = [&](auto&& body) {
    if (threads == 1 || n < 4096) {
      body(std::size_t{0}, n);
      return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t lo = std::min(n, t * chunk);
      std::size_t hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
  };

  for (unsigned iter = 1; iter <= opts.max_iterations; ++iter) {
    double dangling = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t deg = g.out_degree(static_cast<std::uint32_t>(j));
      if (deg == 0) {
        dangling += prev[j];
        contrib[j] = 0.0;
      } else {
        contrib[j] = prev[j] / static_cast<double>(deg);
      }
    }
    const double base = alpha / static_cast<double>(n) +
                        (1.0 - alpha) * dangling / static_cast<double>(n);

    parallel_for([&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        double sum = 0.0;
        for (std::uint32_t e = g.in_offsets[i]; e < g.in_offsets[i + 1]; ++e)
          sum += contrib[g.in_sources[e]];
        next[i] = base + (1.0 - alpha) * sum;
      }
    });

    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual += std::fabs(next[i] - prev[i]);
    prev.swap(next);
    result.iterations_used = iter;
    result.residual = residual;
    if (residual <= opts.tolerance) {
      result.converged = true;
      break;
    }
  }

  result.scores = std::move(prev);
  return result;
}

/// Per-domain PageRank percentile in (0, 1]. Higher score, higher
/// percentile; ties broken by ascending domain name so the order is total.
struct PercentileTable {
  std::vector<double> percentile;
};

inline PercentileTable rank_percentiles(const PageRankVector& pr, const DomainIndex& index) {
  const std::size_t n = pr.scores.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (pr.scores[a] != pr.scores[b]) return pr.scores[a] < pr.scores[b];
    return index.name(a) < index.name(b);
  });
  PercentileTable table;
  table.percentile.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    table.percentile[order[k]] = static_cast<double>(k + 1) / static_cast<double>(n);
  return table;
}

/// Joins domain names with their PageRank percentile and the cumulative
/// PageRank mass of all domains up to that percentile. This is what the
/// bias measures consume; it decouples them from the graph itself.
class PopularityIndex {
 public:
  struct Entry {
    double percentile;  // rank measure in (0,1]
    double cum_mass;    // cumulative normalized score mass in (0,1]
  };

  static PopularityIndex build(const DomainIndex& index, const PageRankVector& pr,
                               const PercentileTable& table) {
    std::vector<Row> rows;
    rows.reserve(index.size());
    for (std::uint32_t i = 0; i < index.size(); ++i)
      rows.push_back({index.name(i), pr.scores[i], table.percentile[i]});
    return from_rows(std::move(rows));
  }

  struct Row {
    std::string domain;
    double score;
    double percentile;
  };

  /// Builds from (domain, score, percentile) rows, e.g. a reloaded
  /// PageRank CSV. Cumulative mass is recomputed from the scores.
  static PopularityIndex from_rows(std::vector<Row> rows) {
    PopularityIndex idx;
    std::sort(rows.begin(), rows.end(),
              [](const Row& a, const Row& b) { return a.percentile < b.percentile; });
    double total = 0.0;
    for (const Row& r : rows) total += r.score;
    if (total <= 0.0) throw InputError("PopularityIndex: total score mass is zero");
    double cum = 0.0;
    for (const Row& r : rows) {
      cum += r.score / total;
      idx.map_.emplace(r.domain, Entry{r.percentile, std::min(cum, 1.0)});
    }
    if (!rows.empty()) {
      idx.min_entry_ = Entry{rows.front().percentile, rows.front().score / total};
    }
    return idx;
  }

  const Entry* find(std::string_view domain) const {
    auto it = map_.find(domain);
    return it == map_.end() ? nullptr : &it->second;
  }

  /// Entry of the lowest-ranked domain; used by the assign-lowest missing
  /// target policy.
  const Entry& lowest() const { return min_entry_; }
  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_map<std::string, Entry, StringHash, std::equal_to<>> map_;
  Entry min_entry_{0.0, 0.0};
};

}  // namespace webbias

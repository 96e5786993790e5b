#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "webbias/bias.hpp"
#include "webbias/domains.hpp"
#include "webbias/errors.hpp"
#include "webbias/rng.hpp"
#include "webbias/sampling.hpp"

namespace webbias {

/// Referrer->target graph weighted by observed click counts; the state
/// space of the baseline walker.
class TrafficGraph {
 public:
  template <typename Records>
  static TrafficGraph build(const Records& records) {
    TrafficGraph g;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> weights;
    for (const auto& rec : records) {
      std::uint32_t s = g.nodes_.intern(rec.referrer);
      std::uint32_t t = g.nodes_.intern(rec.target);
      ++weights[{s, t}];
    }
    if (g.nodes_.size() == 0) throw InputError("build_traffic_graph: empty click stream");
    g.adj_.resize(g.nodes_.size());
    for (const auto& [edge, w] : weights)
      g.adj_[edge.first].push_back({edge.second, w});
    return g;
  }

  struct Edge {
    std::uint32_t target;
    std::uint64_t weight;
  };

  const DomainIndex& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<Edge>& out_edges(std::uint32_t node) const { return adj_[node]; }
  std::uint64_t weight(std::string_view referrer, std::string_view target) const {
    auto s = nodes_.find(referrer);
    auto t = nodes_.find(target);
    if (!s || !t) return 0;
    for (const Edge& e : adj_[*s])
      if (e.target == *t) return e.weight;
    return 0;
  }

 private:
  DomainIndex nodes_;
  std::vector<std::vector<Edge>> adj_;
};

template <typename Records>
TrafficGraph build_traffic_graph(const Records& records) {
  return TrafficGraph::build(records);
}

struct WalkerConfig {
  double teleport_probability = 0.15;
  std::uint32_t n_walkers = 1;      // mirror the number of sampled users
  std::uint32_t steps_per_walker = 1;  // mirror the clicks per user
  std::uint64_t seed = 0;
  std::uint32_t burn_in = 0;        // steps discarded before recording
  // When non-empty, overrides n_walkers/steps_per_walker with one entry
  // per walker, mirroring per-user click counts.
  std::vector<std::uint32_t> steps_schedule;
};

/// Simulates traffic-weighted random walkers with uniform teleportation.
/// Each walker has its own derived seed, so parallel execution would
/// reproduce this sequential output exactly. Nodes with no out-edges
/// always teleport. Every post-move node is recorded as one click.
inline std::vector<ClickSample> simulate_walkers(const TrafficGraph& graph,
                                                 const WalkerConfig& config) {
  if (!(config.teleport_probability > 0.0 && config.teleport_probability < 1.0))
    throw InputError("simulate_walkers: teleport probability must be in (0,1)");
  std::vector<std::uint32_t> schedule = config.steps_schedule;
  if (schedule.empty())
    schedule.assign(config.n_walkers, config.steps_per_walker);
  if (schedule.empty() ||
      std::any_of(schedule.begin(), schedule.end(), [](std::uint32_t s) { return s == 0; }))
    throw InputError("simulate_walkers: walker and step counts must be >= 1");

  const std::size_t n = graph.size();
  // per-node cumulative edge weights for O(log d) transition draws
  std::vector<std::vector<double>> cum(n);
  for (std::size_t v = 0; v < n; ++v) {
    double total = 0.0;
    for (const auto& e : graph.out_edges(static_cast<std::uint32_t>(v))) {
      total += static_cast<double>(e.weight);
      cum[v].push_back(total);
    }
  }

  std::vector<ClickSample> samples;
  samples.reserve(schedule.size());
  char name[32];
  for (std::uint32_t w = 0; w < schedule.size(); ++w) {
    Rng rng(derive_seed(config.seed, w));
    std::uint32_t pos = static_cast<std::uint32_t>(rng.below(n));
    ClickSample sample;
    std::snprintf(name, sizeof(name), "walker_%06u", w);
    sample.user = name;
    sample.app = "baseline";
    sample.targets.reserve(schedule[w]);
    std::uint64_t total_steps = static_cast<std::uint64_t>(schedule[w]) + config.burn_in;
    for (std::uint64_t step = 0; step < total_steps; ++step) {
      const auto& edges = graph.out_edges(pos);
      if (edges.empty() || rng.unit() < config.teleport_probability) {
        pos = static_cast<std::uint32_t>(rng.below(n));
      } else {
        const auto& c = cum[pos];
        double u = rng.unit() * c.back();
        std::size_t lo = 0, hi = c.size() - 1;
        while (lo < hi) {
          std::size_t mid = (lo + hi) / 2;
          if (c[mid] <= u) lo = mid + 1; else hi = mid;
        }
        pos = edges[lo].target;
      }
      if (step >= config.burn_in) sample.targets.push_back(graph.nodes().name(pos));
    }
    samples.push_back(std::move(sample));
  }
  return samples;
}

/// Baseline bias levels: the walker traces scored and aggregated exactly
/// like real user samples.
struct BaselineResult {
  AppBiasSummary summary;
  WalkerConfig config;
};

inline BaselineResult baseline_biases(const std::vector<ClickSample>& samples,
                                      const PopularityIndex& popularity,
                                      std::size_t universe_size,
                                      const ScoreOptions& opts = {}) {
  if (samples.empty()) throw InputError("baseline_biases: no walker samples");
  std::vector<BiasScore> scores;
  scores.reserve(samples.size());
  for (const auto& s : samples)
    scores.push_back(score_sample(s, popularity, universe_size, opts));
  BaselineResult result;
  result.summary = aggregate_app(scores);
  return result;
}

}  // namespace webbias

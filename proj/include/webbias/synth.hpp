#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "webbias/errors.hpp"
#include "webbias/rng.hpp"

namespace webbias {

// ---------------------------------------------------------------------------
// scale-free graph generator
// ---------------------------------------------------------------------------

struct GraphSpec {
  std::uint32_t n_nodes = 0;
  std::uint32_t edges_per_node = 1;  // out-links added per new node
  std::uint64_t seed = 0;
};

inline std::string synth_domain_name(std::uint32_t i) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "d%07u.example", i);
  return buf;
}

/// Preferential-attachment digraph: each new node links to edges_per_node
/// distinct existing nodes chosen with probability proportional to
/// in-degree + 1. Deterministic under the seed.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> gen_scale_free_edges(
    const GraphSpec& spec) {
  if (spec.n_nodes < spec.edges_per_node + 1)
    throw InputError("gen_scale_free_graph: need n_nodes >= edges_per_node + 1");
  Rng rng(derive_seed(spec.seed, "scale-free-graph"));

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(static_cast<std::size_t>(spec.n_nodes) * spec.edges_per_node);
  // pool holds each existing node once (the +1 offset) plus once per
  // received in-link, so a uniform pool draw is an in-degree+1 draw
  std::vector<std::uint32_t> pool;
  pool.reserve(edges.capacity() + spec.n_nodes);
  pool.push_back(0);

  std::vector<std::uint32_t> picked;
  for (std::uint32_t v = 1; v < spec.n_nodes; ++v) {
    std::uint32_t m = std::min(spec.edges_per_node, v);
    picked.clear();
    while (picked.size() < m) {
      std::uint32_t t = pool[rng.below(pool.size())];
      if (std::find(picked.begin(), picked.end(), t) != picked.end()) continue;
      picked.push_back(t);
    }
    for (std::uint32_t t : picked) {
      edges.emplace_back(v, t);
      pool.push_back(t);
    }
    pool.push_back(v);
  }
  return edges;
}

struct GraphGenResult {
  std::uint64_t n_nodes = 0;
  std::uint64_t n_edges = 0;
};

/// Writes the generated graph as a "source<TAB>target" edge list.
inline GraphGenResult gen_scale_free_graph(const GraphSpec& spec, std::ostream& out) {
  auto edges = gen_scale_free_edges(spec);
  std::string line;
  for (auto [s, t] : edges) {
    line = synth_domain_name(s);
    line += '\t';
    line += synth_domain_name(t);
    line += '\n';
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
  return {spec.n_nodes, edges.size()};
}

// ---------------------------------------------------------------------------
// click log generator
// ---------------------------------------------------------------------------

enum class TargetModelType { SingleTarget, Uniform, Zipf, PagerankPower };

enum class ZipfOrder { Random, PagerankDescending, PagerankAscending };

struct TargetModel {
  TargetModelType type = TargetModelType::Uniform;
  std::string single_domain;            // SingleTarget (default: first domain)
  double zipf_s = 1.0;                  // Zipf exponent, > 0
  ZipfOrder zipf_order = ZipfOrder::Random;
  double gamma = 1.0;                   // PagerankPower exponent
};

struct AppSpec {
  std::string name;
  std::string category;
  std::string referrer;       // referrer domain emitted for this app's clicks
  TargetModel model;
  std::uint32_t n_users = 0;
  std::uint32_t clicks_per_user = 0;
  std::string user_prefix;    // default "u_<name>_"; share it to share users
};

/// Unattributed referrer->target traffic mixed into the log. It never maps
/// to an application, but it shapes the traffic graph the baseline walker
/// explores.
struct BackgroundSpec {
  std::uint64_t n_clicks = 0;
  std::vector<std::string> referrer_pool;
  std::vector<std::string> target_pool;
};

struct ClickLogSpec {
  std::vector<AppSpec> apps;
  BackgroundSpec background;
  std::int64_t window_start = 1400000000;
  std::int64_t window_end = 1400000000 + 86400;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::vector<double> zipf_weights(std::size_t n, double s) {
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = std::pow(static_cast<double>(k + 1), -s);
  return w;
}

}  // namespace detail

/// Generates a click log over the given domain universe; clicks per
/// (app, user) are i.i.d. draws from the app's target model. Timestamps
/// are sequential per user with unit spacing from the window start. The
/// returned manifest records the exact parameters and, where closed-form,
/// the expected asymptotic biases.
inline nlohmann::json gen_click_log(const ClickLogSpec& spec,
                                    const std::vector<std::string>& domains,
                                    const std::vector<double>* pagerank_scores,
                                    std::ostream& out) {
  if (spec.window_start >= spec.window_end)
    throw InputError("gen_click_log: empty time window");
  if (domains.empty()) throw InputError("gen_click_log: empty domain universe");
  if (pagerank_scores != nullptr && pagerank_scores->size() != domains.size())
    throw InputError("gen_click_log: pagerank vector does not match the domain universe");

  const std::size_t n = domains.size();
  nlohmann::json manifest;
  manifest["seed"] = spec.seed;
  manifest["window"] = {spec.window_start, spec.window_end};
  manifest["n_domains"] = n;
  manifest["apps"] = nlohmann::json::array();

  std::uint64_t total_records = 0;
  std::string line;
  auto emit = [&](std::int64_t ts, const std::string& user, const std::string& target,
                  const std::string& referrer) {
    line = std::to_string(ts);
    line += '\t';
    line += user;
    line += '\t';
    line += target;
    line += '\t';
    line += referrer;
    line += '\n';
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    ++total_records;
  };

  for (const AppSpec& app : spec.apps) {
    if (app.n_users == 0 || app.clicks_per_user == 0)
      throw InputError("gen_click_log: app '" + app.name + "' has zero users or clicks");

    Rng rng(derive_seed(spec.seed, "app:" + app.name));

    // Resolve the per-click target drawing function.
    std::size_t single_idx = 0;
    std::vector<std::uint32_t> order;  // Zipf rank -> domain index
    std::optional<CumulativeSampler> sampler;
    switch (app.model.type) {
      case TargetModelType::SingleTarget: {
        if (!app.model.single_domain.empty()) {
          auto it = std::find(domains.begin(), domains.end(), app.model.single_domain);
          if (it == domains.end())
            throw InputError("gen_click_log: single-target domain not in universe");
          single_idx = static_cast<std::size_t>(it - domains.begin());
        }
        break;
      }
      case TargetModelType::Uniform:
        break;
      case TargetModelType::Zipf: {
        if (!(app.model.zipf_s > 0.0))
          throw InputError("gen_click_log: zipf exponent must be > 0");
        order.resize(n);
        std::iota(order.begin(), order.end(), 0u);
        if (app.model.zipf_order == ZipfOrder::Random) {
          for (std::size_t i = n - 1; i > 0; --i)
            std::swap(order[i], order[rng.below(i + 1)]);
        } else {
          if (pagerank_scores == nullptr)
            throw InputError("gen_click_log: zipf pagerank ordering needs a PageRank vector");
          bool desc = app.model.zipf_order == ZipfOrder::PagerankDescending;
          std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            double sa = (*pagerank_scores)[a], sb = (*pagerank_scores)[b];
            if (sa != sb) return desc ? sa > sb : sa < sb;
            return a < b;
          });
        }
        sampler.emplace(detail::zipf_weights(n, app.model.zipf_s));
        break;
      }
      case TargetModelType::PagerankPower: {
        if (pagerank_scores == nullptr)
          throw InputError("gen_click_log: pagerank-power model needs a PageRank vector");
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i)
          w[i] = std::pow((*pagerank_scores)[i], app.model.gamma);
        sampler.emplace(w);
        break;
      }
    }

    auto draw_target = [&]() -> std::size_t {
      switch (app.model.type) {
        case TargetModelType::SingleTarget: return single_idx;
        case TargetModelType::Uniform: return static_cast<std::size_t>(rng.below(n));
        case TargetModelType::Zipf: return order[sampler->pick(rng)];
        case TargetModelType::PagerankPower: return sampler->pick(rng);
      }
      return 0;
    };

    std::string prefix = app.user_prefix.empty() ? "u_" + app.name + "_" : app.user_prefix;
    char idbuf[16];
    for (std::uint32_t u = 0; u < app.n_users; ++u) {
      std::snprintf(idbuf, sizeof(idbuf), "%06u", u);
      std::string user = prefix + idbuf;
      for (std::uint32_t c = 0; c < app.clicks_per_user; ++c)
        emit(spec.window_start + c, user, domains[draw_target()], app.referrer);
    }

    nlohmann::json entry;
    entry["name"] = app.name;
    entry["category"] = app.category;
    entry["referrer"] = app.referrer;
    entry["n_users"] = app.n_users;
    entry["clicks_per_user"] = app.clicks_per_user;
    entry["n_records"] = static_cast<std::uint64_t>(app.n_users) * app.clicks_per_user;
    switch (app.model.type) {
      case TargetModelType::SingleTarget:
        entry["model"] = {{"type", "single-target"},
                          {"domain", domains[single_idx]}};
        entry["expected_b_h"] = 1.0;
        break;
      case TargetModelType::Uniform:
        entry["model"] = {{"type", "uniform"}};
        entry["expected_b_h_limit"] = 0.0;  // as clicks -> infinity
        break;
      case TargetModelType::Zipf:
        entry["model"] = {{"type", "zipf"},
                          {"s", app.model.zipf_s},
                          {"order", app.model.zipf_order == ZipfOrder::Random
                                        ? "random"
                                        : app.model.zipf_order == ZipfOrder::PagerankDescending
                                              ? "pagerank-descending"
                                              : "pagerank-ascending"}};
        break;
      case TargetModelType::PagerankPower:
        entry["model"] = {{"type", "pagerank-power"}, {"gamma", app.model.gamma}};
        break;
    }
    manifest["apps"].push_back(std::move(entry));
  }

  if (spec.background.n_clicks > 0) {
    const auto& bg = spec.background;
    if (bg.referrer_pool.empty() || bg.target_pool.empty())
      throw InputError("gen_click_log: background traffic needs referrer and target pools");
    Rng rng(derive_seed(spec.seed, "background"));
    std::int64_t span = spec.window_end - spec.window_start;
    for (std::uint64_t i = 0; i < bg.n_clicks; ++i) {
      std::int64_t ts = spec.window_start + static_cast<std::int64_t>(i % static_cast<std::uint64_t>(span));
      emit(ts, "bg_user", bg.target_pool[rng.below(bg.target_pool.size())],
           bg.referrer_pool[rng.below(bg.referrer_pool.size())]);
    }
    manifest["background"] = {{"n_clicks", bg.n_clicks},
                              {"n_referrers", bg.referrer_pool.size()},
                              {"n_targets", bg.target_pool.size()}};
  }

  manifest["n_records"] = total_records;
  return manifest;
}

}  // namespace webbias

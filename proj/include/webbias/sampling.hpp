#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "webbias/click.hpp"
#include "webbias/errors.hpp"
#include "webbias/rng.hpp"

namespace webbias {

enum class SampleMode { FixedCount, TimeWindow };

/// Exposure-normalization parameters. Fixed-count mode equates user effort
/// with click volume; time-window mode equates it with time.
struct SampleSpec {
  SampleMode mode = SampleMode::FixedCount;
  std::uint32_t clicks_per_pair = 100;   // fixed-count: clicks drawn per (user, app)
  std::uint32_t users_per_app = 500;     // fixed-count: users drawn per app
  std::uint32_t min_clicks = 100;        // eligibility threshold per (user, app)
  std::uint32_t min_users_per_app = 30;  // apps below this are excluded
  std::int64_t window_start = 0;         // time-window: [start, end)
  std::int64_t window_end = 0;
  std::uint64_t seed = 0;
};

/// The unit of bias measurement: one user's sampled clicks through one
/// application.
struct ClickSample {
  std::string user;
  std::string app;
  std::vector<std::string> targets;

  std::map<std::string, std::uint64_t> target_counts() const {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& t : targets) ++counts[t];
    return counts;
  }
};

struct SampleReport {
  std::vector<ClickSample> samples;
  std::vector<std::string> excluded_apps;  // below min_users_per_app
};

/// Draws users uniformly without replacement per application, then an equal
/// number of clicks per chosen user, all determined by the seed. Apps with
/// fewer than min_users_per_app eligible users are excluded (not fatal).
inline SampleReport sample_fixed_count(const ClickStore& store, const SampleSpec& spec) {
  if (spec.mode != SampleMode::FixedCount)
    throw InputError("sample_fixed_count: spec.mode is not fixed-count");
  if (spec.clicks_per_pair == 0 || spec.clicks_per_pair > spec.min_clicks)
    throw InputError("sample_fixed_count: need 0 < clicks_per_pair <= min_clicks");

  SampleReport report;
  for (const auto& [app, users] : store.apps()) {
    std::vector<const std::pair<const std::string, std::vector<Click>>*> eligible;
    for (const auto& entry : users)
      if (entry.second.size() >= spec.min_clicks) eligible.push_back(&entry);

    if (eligible.size() < spec.min_users_per_app) {
      report.excluded_apps.push_back(app);
      continue;
    }

    Rng rng(derive_seed(spec.seed, "app:" + app));
    std::size_t take = std::min<std::size_t>(spec.users_per_app, eligible.size());
    std::vector<std::size_t> chosen = sample_without_replacement(eligible.size(), take, rng);
    std::sort(chosen.begin(), chosen.end());

    for (std::size_t ui : chosen) {
      const auto& [user, clicks] = *eligible[ui];
      Rng user_rng(derive_seed(spec.seed, "pair:" + app + "\t" + user));
      std::vector<std::size_t> picks =
          sample_without_replacement(clicks.size(), spec.clicks_per_pair, user_rng);
      ClickSample sample;
      sample.user = user;
      sample.app = app;
      sample.targets.reserve(picks.size());
      for (std::size_t ci : picks) sample.targets.push_back(clicks[ci].target);
      report.samples.push_back(std::move(sample));
    }
  }
  return report;
}

/// Keeps, per (user, app), all clicks with start <= timestamp < end; pairs
/// with fewer than min_clicks in-window clicks are dropped.
inline SampleReport sample_time_window(const ClickStore& store, const SampleSpec& spec) {
  if (spec.mode != SampleMode::TimeWindow)
    throw InputError("sample_time_window: spec.mode is not time-window");
  if (spec.window_start >= spec.window_end)
    throw InputError("sample_time_window: empty window (start >= end)");

  SampleReport report;
  for (const auto& [app, users] : store.apps()) {
    for (const auto& [user, clicks] : users) {
      ClickSample sample;
      sample.user = user;
      sample.app = app;
      for (const auto& c : clicks)
        if (c.ts >= spec.window_start && c.ts < spec.window_end)
          sample.targets.push_back(c.target);
      if (sample.targets.size() >= spec.min_clicks)
        report.samples.push_back(std::move(sample));
    }
  }
  return report;
}

}  // namespace webbias

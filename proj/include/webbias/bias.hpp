#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "webbias/errors.hpp"
#include "webbias/pagerank.hpp"
#include "webbias/sampling.hpp"

namespace webbias {

/// Homogeneity bias: one minus the normalized Shannon entropy of the click
/// distribution. 0 when clicks are spread evenly over the whole universe,
/// 1 when they all land on a single domain. Natural log throughout; the
/// ratio cancels the base anyway.
inline double homogeneity_bias(const std::map<std::string, std::uint64_t>& counts,
                               std::size_t universe_size) {
  if (universe_size < 2)
    throw InputError("homogeneity_bias: universe size must be >= 2");
  if (counts.empty()) throw InputError("homogeneity_bias: empty sample");
  if (counts.size() > universe_size)
    throw InputError("homogeneity_bias: more distinct targets than the universe");

  std::uint64_t total = 0;
  for (const auto& [t, c] : counts) total += c;
  if (counts.size() == 1) return 1.0;

  double entropy = 0.0;
  for (const auto& [t, c] : counts) {
    double p = static_cast<double>(c) / static_cast<double>(total);
    entropy -= p * std::log(p);
  }
  double b = 1.0 - entropy / std::log(static_cast<double>(universe_size));
  return std::clamp(b, 0.0, 1.0);
}

enum class LorenzAxis {
  Percentile,    // x = PageRank percentile (uniform rank measure)
  PagerankMass,  // x = cumulative PageRank mass up to the target's rank
};

enum class MissingTargetPolicy {
  Drop,              // drop unknown targets, renormalize, report the count
  AssignLowest,      // treat unknown targets as the lowest-ranked domain
};

/// Empirical Lorenz curve of cumulative traffic share against the rank
/// axis. The step at each target rank is stored explicitly as a vertical
/// segment, so trapezoid integration of the points is exact.
struct LorenzCurve {
  std::vector<std::array<double, 2>> points;  // (r, V); starts (0,0), ends (1,1)
  std::size_t dropped_targets = 0;
  LorenzAxis axis = LorenzAxis::Percentile;
};

inline LorenzCurve lorenz_curve(const std::map<std::string, std::uint64_t>& counts,
                                const PopularityIndex& popularity,
                                LorenzAxis axis = LorenzAxis::Percentile,
                                MissingTargetPolicy missing = MissingTargetPolicy::Drop) {
  if (counts.empty()) throw InputError("lorenz_curve: empty sample");

  struct Point {
    double r;
    std::uint64_t clicks;
  };
  std::vector<Point> pts;
  std::uint64_t total = 0;
  std::size_t dropped = 0;
  for (const auto& [target, clicks] : counts) {
    const PopularityIndex::Entry* e = popularity.find(target);
    double r;
    if (e != nullptr) {
      r = axis == LorenzAxis::Percentile ? e->percentile : e->cum_mass;
    } else if (missing == MissingTargetPolicy::AssignLowest) {
      const auto& low = popularity.lowest();
      r = axis == LorenzAxis::Percentile ? low.percentile : low.cum_mass;
    } else {
      ++dropped;
      continue;
    }
    pts.push_back({r, clicks});
    total += clicks;
  }
  if (pts.empty())
    throw InputError("lorenz_curve: no sampled target appears in the PageRank table");

  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.r < b.r; });

  LorenzCurve curve;
  curve.axis = axis;
  curve.dropped_targets = dropped;
  curve.points.push_back({0.0, 0.0});
  std::uint64_t cum = 0;
  for (const Point& p : pts) {
    double before = static_cast<double>(cum) / static_cast<double>(total);
    cum += p.clicks;
    double after = static_cast<double>(cum) / static_cast<double>(total);
    if (curve.points.back() != std::array<double, 2>{p.r, before})
      curve.points.push_back({p.r, before});
    curve.points.push_back({p.r, after});
  }
  if (curve.points.back()[0] < 1.0) curve.points.push_back({1.0, 1.0});
  curve.points.back()[1] = 1.0;
  return curve;
}

/// Popularity bias: signed Gini-style area between the Lorenz curve and
/// the diagonal, via exact trapezoid integration of the stored segments.
/// 1 when traffic sits entirely on the top-ranked domain, 0 when it is
/// independent of rank, negative when it favors unpopular domains.
inline double popularity_bias(const LorenzCurve& curve) {
  double integral = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    integral += (b[0] - a[0]) * (a[1] + b[1]) * 0.5;
  }
  return 1.0 - 2.0 * integral;
}

/// Per-(user, application) bias pair.
struct BiasScore {
  std::string user;
  std::string app;
  double b_h = 0.0;
  double b_p = 0.0;
  std::uint64_t n_clicks = 0;
};

struct ScoreOptions {
  LorenzAxis axis = LorenzAxis::Percentile;
  MissingTargetPolicy missing = MissingTargetPolicy::Drop;
};

inline BiasScore score_sample(const ClickSample& sample, const PopularityIndex& popularity,
                              std::size_t universe_size, const ScoreOptions& opts = {}) {
  auto counts = sample.target_counts();
  BiasScore score;
  score.user = sample.user;
  score.app = sample.app;
  score.n_clicks = sample.targets.size();
  score.b_h = homogeneity_bias(counts, universe_size);
  score.b_p = popularity_bias(lorenz_curve(counts, popularity, opts.axis, opts.missing));
  return score;
}

/// Per-application aggregate: mean and standard error of the mean across
/// users, as plotted with +-2 SE error bars.
struct AppBiasSummary {
  std::string app;
  std::string category;
  double mean_b_h = 0.0, se_b_h = 0.0;
  double mean_b_p = 0.0, se_b_p = 0.0;
  std::size_t n_users = 0;
  bool se_valid = true;  // false when n_users == 1 (SE undefined, reported 0)
};

inline AppBiasSummary aggregate_app(const std::vector<BiasScore>& scores) {
  if (scores.empty()) throw InputError("aggregate_app: no scores");
  AppBiasSummary s;
  s.app = scores.front().app;
  s.n_users = scores.size();
  const double n = static_cast<double>(scores.size());
  for (const auto& sc : scores) {
    s.mean_b_h += sc.b_h;
    s.mean_b_p += sc.b_p;
  }
  s.mean_b_h /= n;
  s.mean_b_p /= n;
  if (scores.size() == 1) {
    s.se_valid = false;
    return s;
  }
  double var_h = 0.0, var_p = 0.0;
  for (const auto& sc : scores) {
    var_h += (sc.b_h - s.mean_b_h) * (sc.b_h - s.mean_b_h);
    var_p += (sc.b_p - s.mean_b_p) * (sc.b_p - s.mean_b_p);
  }
  var_h /= n - 1.0;
  var_p /= n - 1.0;
  s.se_b_h = std::sqrt(var_h / n);
  s.se_b_p = std::sqrt(var_p / n);
  return s;
}

struct Correlation {
  double r = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

/// Pearson correlation between mean homogeneity and mean popularity bias
/// across applications, with a two-sided t-test p-value.
inline Correlation correlate_biases(const std::vector<AppBiasSummary>& summaries) {
  const std::size_t n = summaries.size();
  if (n < 3) throw InsufficientDataError("correlate_biases: need at least 3 applications");

  double mx = 0.0, my = 0.0;
  for (const auto& s : summaries) {
    mx += s.mean_b_h;
    my += s.mean_b_p;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& s : summaries) {
    double dx = s.mean_b_h - mx;
    double dy = s.mean_b_p - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw InputError("correlate_biases: zero variance in one of the bias axes");

  Correlation c;
  c.n = n;
  c.r = sxy / std::sqrt(sxx * syy);
  double r2 = c.r * c.r;
  if (r2 >= 1.0) {
    c.p_value = 0.0;
    return c;
  }
  double df = static_cast<double>(n - 2);
  double t = std::fabs(c.r) * std::sqrt(df / (1.0 - r2));
  boost::math::students_t dist(df);
  c.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
  return c;
}

}  // namespace webbias

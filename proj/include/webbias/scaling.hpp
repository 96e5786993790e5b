#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "webbias/domains.hpp"
#include "webbias/errors.hpp"

namespace webbias {

/// Exact per-target click counts.
template <typename Records>
std::unordered_map<std::string, std::uint64_t, StringHash, std::equal_to<>> traffic_by_domain(
    const Records& records) {
  std::unordered_map<std::string, std::uint64_t, StringHash, std::equal_to<>> volume;
  for (const auto& rec : records) ++volume[rec.target];
  if (volume.empty()) throw InputError("traffic_by_domain: no records");
  return volume;
}

struct BinnedPoint {
  double x_center;    // geometric bin center
  double x_mean_log;  // mean of ln x over the bin's points (regression x)
  double y_mean_log;  // mean of ln y
  std::size_t n;
};

struct PowerLawFit {
  double exponent = 0.0;
  double std_error = 0.0;
  double intercept = 0.0;   // in ln-ln space
  double r_squared = 0.0;
  std::size_t n_points = 0;
  std::string method;
  double unbinned_exponent = 0.0;  // OLS over raw points, as a cross-check
  std::vector<BinnedPoint> bins;
};

namespace detail {

struct Ols {
  double slope, intercept, std_error, r_squared;
};

inline Ols ols(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw InsufficientDataError("power-law fit: no variation on the x axis");
  Ols o;
  o.slope = sxy / sxx;
  o.intercept = my - o.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double res = y[i] - (o.intercept + o.slope * x[i]);
    ss_res += res * res;
  }
  o.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  o.std_error = n > 2 ? std::sqrt(ss_res / (static_cast<double>(n) - 2.0) / sxx) : 0.0;
  return o;
}

}  // namespace detail

/// Fits T ~ R^gamma by geometric binning of (R, T) pairs along R and OLS
/// of mean ln T on mean ln R per bin. Bins with fewer than min_bin_count
/// points are discarded. The unbinned OLS slope is reported alongside as
/// a cross-check.
inline PowerLawFit fit_traffic_scaling(const std::vector<std::pair<double, double>>& rt_pairs,
                                       unsigned bins_per_decade = 10,
                                       unsigned min_bin_count = 3) {
  if (bins_per_decade == 0) throw InputError("fit_traffic_scaling: bins_per_decade must be >= 1");

  struct Acc {
    double sum_lx = 0.0, sum_ly = 0.0;
    std::size_t n = 0;
  };
  std::map<long, Acc> bins;
  std::vector<double> raw_x, raw_y;
  for (const auto& [r, t] : rt_pairs) {
    if (!(r > 0.0) || !(t > 0.0)) continue;
    long idx = static_cast<long>(std::floor(std::log10(r) * bins_per_decade));
    Acc& a = bins[idx];
    a.sum_lx += std::log(r);
    a.sum_ly += std::log(t);
    ++a.n;
    raw_x.push_back(std::log(r));
    raw_y.push_back(std::log(t));
  }

  PowerLawFit fit;
  fit.method = "log-binned-ols";
  std::vector<double> bx, by;
  for (const auto& [idx, a] : bins) {
    if (a.n < min_bin_count) continue;
    BinnedPoint p;
    p.x_center = std::pow(10.0, (static_cast<double>(idx) + 0.5) / bins_per_decade);
    p.x_mean_log = a.sum_lx / static_cast<double>(a.n);
    p.y_mean_log = a.sum_ly / static_cast<double>(a.n);
    p.n = a.n;
    fit.bins.push_back(p);
    bx.push_back(p.x_mean_log);
    by.push_back(p.y_mean_log);
  }
  if (bx.size() < 2)
    throw InsufficientDataError("fit_traffic_scaling: fewer than 2 usable bins");

  detail::Ols binned = detail::ols(bx, by);
  fit.exponent = binned.slope;
  fit.std_error = binned.std_error;
  fit.intercept = binned.intercept;
  fit.r_squared = binned.r_squared;
  fit.n_points = bx.size();
  fit.unbinned_exponent = detail::ols(raw_x, raw_y).slope;
  return fit;
}

/// Continuous maximum-likelihood estimate of the density exponent of a
/// power-law tail: alpha = 1 + n / sum ln(x_i / x_min) over x_i >= x_min,
/// with standard error (alpha - 1) / sqrt(n).
inline PowerLawFit fit_rank_distribution(const std::vector<double>& scores, double x_min) {
  if (!(x_min > 0.0)) throw InputError("fit_rank_distribution: x_min must be > 0");
  double sum_log = 0.0;
  std::size_t n = 0;
  for (double s : scores) {
    if (s >= x_min) {
      sum_log += std::log(s / x_min);
      ++n;
    }
  }
  if (n < 100)
    throw InsufficientDataError("fit_rank_distribution: fewer than 100 tail points");
  if (sum_log <= 0.0)
    throw InsufficientDataError("fit_rank_distribution: degenerate tail (no score variation)");

  PowerLawFit fit;
  fit.method = "continuous-mle";
  fit.exponent = 1.0 + static_cast<double>(n) / sum_log;
  fit.std_error = (fit.exponent - 1.0) / std::sqrt(static_cast<double>(n));
  fit.n_points = n;
  return fit;
}

}  // namespace webbias

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "webbias/bias.hpp"
#include "webbias/click.hpp"
#include "webbias/errors.hpp"

namespace webbias {

/// One user's position in the (search, social, email)-style click mix,
/// with their biases over the pooled three-category sample.
struct UserMixPoint {
  std::string user;
  std::array<double, 3> fractions;  // >= 0, sum to 1
  double b_h = 0.0;
  double b_p = 0.0;
};

/// Users with at least min_per_category clicks in each of the three
/// categories. `categories` name stores produced by
/// ClickStore::pooled_by_category; biases are computed on each user's
/// pooled clicks across all three.
inline std::vector<UserMixPoint> compute_mix(const ClickStore& category_store,
                                             const std::array<std::string, 3>& categories,
                                             const PopularityIndex& popularity,
                                             std::size_t universe_size,
                                             std::uint32_t min_per_category = 1000,
                                             const ScoreOptions& opts = {}) {
  if (categories[0] == categories[1] || categories[0] == categories[2] ||
      categories[1] == categories[2])
    throw InputError("compute_mix: the three categories must be distinct");

  std::array<const ClickStore::UserClicks*, 3> per_cat{};
  for (int c = 0; c < 3; ++c) {
    auto it = category_store.apps().find(categories[c]);
    per_cat[c] = it == category_store.apps().end() ? nullptr : &it->second;
  }

  std::vector<UserMixPoint> points;
  if (per_cat[0] == nullptr) return points;
  for (const auto& [user, clicks0] : *per_cat[0]) {
    std::array<const std::vector<Click>*, 3> lists{&clicks0, nullptr, nullptr};
    bool eligible = clicks0.size() >= min_per_category;
    for (int c = 1; c < 3 && eligible; ++c) {
      if (per_cat[c] == nullptr) { eligible = false; break; }
      auto it = per_cat[c]->find(user);
      if (it == per_cat[c]->end() || it->second.size() < min_per_category) {
        eligible = false;
        break;
      }
      lists[c] = &it->second;
    }
    if (!eligible) continue;

    UserMixPoint p;
    p.user = user;
    double total = 0.0;
    std::map<std::string, std::uint64_t> pooled;
    for (int c = 0; c < 3; ++c) {
      p.fractions[c] = static_cast<double>(lists[c]->size());
      total += p.fractions[c];
      for (const auto& click : *lists[c]) ++pooled[click.target];
    }
    for (double& f : p.fractions) f /= total;
    p.b_h = homogeneity_bias(pooled, universe_size);
    p.b_p = popularity_bias(lorenz_curve(pooled, popularity, opts.axis, opts.missing));
    points.push_back(std::move(p));
  }
  return points;
}

/// Barycentric projection onto the triangle with vertices (0,0), (1,0),
/// (0.5, sqrt(3)/2): f1 -> bottom-left, f2 -> bottom-right, f3 -> top.
inline std::array<double, 2> ternary_project(const std::array<double, 3>& f) {
  return {f[1] + 0.5 * f[2], std::sqrt(3.0) / 2.0 * f[2]};
}

struct TernaryBin {
  int q = 0, r = 0;          // axial hex coordinates
  double center_x = 0.0, center_y = 0.0;
  std::size_t n_users = 0;
  double mean_b_h = 0.0;
  double mean_b_p = 0.0;
};

namespace detail {

/// Axial coordinates of the pointy-top hexagon containing (x, y), by exact
/// cube-coordinate rounding.
inline std::pair<int, int> hex_of(double x, double y, double size) {
  double q = (std::sqrt(3.0) / 3.0 * x - y / 3.0) / size;
  double r = (2.0 / 3.0 * y) / size;
  double s = -q - r;
  double rq = std::round(q), rr = std::round(r), rs = std::round(s);
  double dq = std::fabs(rq - q), dr = std::fabs(rr - r), ds = std::fabs(rs - s);
  if (dq > dr && dq > ds)
    rq = -rr - rs;
  else if (dr > ds)
    rr = -rq - rs;
  return {static_cast<int>(rq), static_cast<int>(rr)};
}

inline std::array<double, 2> hex_center(int q, int r, double size) {
  return {size * std::sqrt(3.0) * (q + r / 2.0), size * 1.5 * r};
}

}  // namespace detail

/// Bins projected mix points on a pointy-top hexagonal lattice and reports
/// per-bin density and mean biases. The default size puts roughly 15 bins
/// along each triangle edge.
inline std::vector<TernaryBin> hexbin(const std::vector<UserMixPoint>& points,
                                      double hex_size = 1.0 / (15.0 * std::sqrt(3.0))) {
  if (!(hex_size > 0.0)) throw InputError("hexbin: hex_size must be > 0");
  struct Acc {
    std::size_t n = 0;
    double sum_h = 0.0, sum_p = 0.0;
  };
  std::map<std::pair<int, int>, Acc> bins;
  for (const auto& p : points) {
    auto [x, y] = ternary_project(p.fractions);
    Acc& a = bins[detail::hex_of(x, y, hex_size)];
    ++a.n;
    a.sum_h += p.b_h;
    a.sum_p += p.b_p;
  }
  std::vector<TernaryBin> out;
  out.reserve(bins.size());
  for (const auto& [key, a] : bins) {
    TernaryBin b;
    b.q = key.first;
    b.r = key.second;
    auto c = detail::hex_center(b.q, b.r, hex_size);
    b.center_x = c[0];
    b.center_y = c[1];
    b.n_users = a.n;
    b.mean_b_h = a.sum_h / static_cast<double>(a.n);
    b.mean_b_p = a.sum_p / static_cast<double>(a.n);
    out.push_back(b);
  }
  return out;
}

}  // namespace webbias

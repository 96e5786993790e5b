#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "webbias/domains.hpp"
#include "webbias/errors.hpp"
#include "webbias/io.hpp"

namespace webbias {

/// One observed click: (timestamp, user, target, referrer), domains
/// normalized.
struct ClickRecord {
  std::int64_t timestamp = 0;
  std::string user;
  std::string target;
  std::string referrer;
};

struct ParseStats {
  std::uint64_t lines = 0;      // nonempty lines seen
  std::uint64_t parsed = 0;
  std::uint64_t malformed = 0;
};

/// Parses a 4-column TSV click log: timestamp, user, target, referrer.
/// Malformed lines are tallied and skipped; if they outnumber the parsed
/// ones the input is rejected as a whole.
template <typename Sink>
ParseStats parse_click_log(std::istream& in, Sink&& sink) {
  ParseStats stats;
  LineReader reader(in);
  std::string_view line;
  ClickRecord rec;
  while (reader.next(line)) {
    if (line.empty()) continue;
    ++stats.lines;

    std::string_view f[4];
    std::size_t start = 0;
    int nf = 0;
    bool bad = false;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        if (nf == 4) { bad = true; break; }
        f[nf++] = line.substr(start, i - start);
        start = i + 1;
      }
    }
    if (!bad && nf != 4) bad = true;

    if (!bad) {
      std::int64_t ts = 0;
      auto [ptr, ec] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), ts);
      bad = ec != std::errc{} || ptr != f[0].data() + f[0].size() || ts < 0 || f[1].empty();
      if (!bad) {
        rec.timestamp = ts;
        rec.user.assign(f[1]);
        rec.target = normalize_domain(f[2]);
        rec.referrer = normalize_domain(f[3]);
        bad = rec.target.empty() || rec.referrer.empty();
      }
    }

    if (bad) {
      ++stats.malformed;
      continue;
    }
    ++stats.parsed;
    sink(rec);
  }
  if (stats.malformed > stats.parsed)
    throw InputError("click log rejected: " + std::to_string(stats.malformed) + " of " +
                     std::to_string(stats.lines) + " lines are malformed");
  return stats;
}

/// Maps referrer domains to applications and applications to categories.
class CategoryMap {
 public:
  void add(const std::string& category, const std::string& app, std::string_view referrer) {
    std::string ref = normalize_domain(referrer);
    if (ref.empty()) throw InputError("category map: empty referrer domain");
    auto [it, inserted] = app_of_referrer_.emplace(ref, app);
    if (!inserted && it->second != app)
      throw InputError("category map: referrer '" + ref + "' mapped to two applications");
    auto [cit, cinserted] = category_of_app_.emplace(app, category);
    if (!cinserted && cit->second != category)
      throw InputError("category map: application '" + app + "' mapped to two categories");
  }

  /// Reads "category<TAB>application<TAB>referrer" lines; '#' comments.
  static CategoryMap load(std::istream& in) {
    CategoryMap m;
    LineReader reader(in);
    std::string_view line;
    std::uint64_t line_no = 0;
    while (reader.next(line)) {
      ++line_no;
      if (line.empty() || line.front() == '#') continue;
      auto t1 = line.find('\t');
      auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
      if (t2 == std::string_view::npos || line.find('\t', t2 + 1) != std::string_view::npos)
        throw InputError("category map: line " + std::to_string(line_no) +
                         " is not category<TAB>app<TAB>referrer");
      m.add(std::string(line.substr(0, t1)), std::string(line.substr(t1 + 1, t2 - t1 - 1)),
            line.substr(t2 + 1));
    }
    if (m.app_of_referrer_.empty()) throw InputError("category map: no entries");
    return m;
  }

  /// The built-in encoding of the categories and referrers of interest.
  static CategoryMap defaults() {
    CategoryMap m;
    m.add("Email", "Yahoo Mail", "mail.yahoo.com");
    m.add("Email", "GMail", "mail.google.com");
    m.add("Email", "AOL Mail", "mail.aol.com");
    m.add("Social Media", "Facebook", "facebook.com");
    m.add("Social Media", "Twitter", "twitter.com");
    m.add("Social Media", "Reddit", "reddit.com");
    m.add("Social Media", "YouTube", "youtube.com");
    m.add("Social Media", "Tumblr", "tumblr.com");
    m.add("Social Media", "Pinterest", "pinterest.com");
    m.add("Web Search", "Yahoo Search", "search.yahoo.com");
    m.add("Web Search", "Google", "google.com");
    m.add("Web Search", "Bing", "bing.com");
    m.add("Web Search", "Ask", "ask.com");
    m.add("News recommendation", "Google News", "news.google.com");
    m.add("Wiki", "Wikipedia", "wikipedia.org");
    return m;
  }

  std::optional<std::pair<std::string, std::string>> assign(std::string_view referrer) const {
    auto it = app_of_referrer_.find(referrer);
    if (it == app_of_referrer_.end()) return std::nullopt;
    return std::make_pair(it->second, category_of_app_.at(it->second));
  }

  const std::string* category_of(std::string_view app) const {
    auto it = category_of_app_.find(std::string(app));
    return it == category_of_app_.end() ? nullptr : &it->second;
  }

  std::vector<std::string> apps_in_category(std::string_view category) const {
    std::vector<std::string> out;
    for (const auto& [app, cat] : category_of_app_)
      if (cat == category) out.push_back(app);
    return out;
  }

 private:
  std::unordered_map<std::string, std::string, StringHash, std::equal_to<>> app_of_referrer_;
  std::map<std::string, std::string> category_of_app_;
};

inline std::optional<std::pair<std::string, std::string>> assign_application(
    const ClickRecord& rec, const CategoryMap& map) {
  return map.assign(rec.referrer);
}

/// Loads a one-domain-per-line news list.
inline std::set<std::string> load_news_list(std::istream& in) {
  std::set<std::string> news;
  LineReader reader(in);
  std::string_view line;
  while (reader.next(line)) {
    if (line.empty() || line.front() == '#') continue;
    std::string d = normalize_domain(line);
    if (!d.empty()) news.insert(std::move(d));
  }
  if (news.empty()) throw InputError("news list is empty");
  return news;
}

/// Keeps exactly the records whose target is a news domain, in order.
inline std::vector<ClickRecord> filter_news(const std::vector<ClickRecord>& records,
                                            const std::set<std::string>& news_domains) {
  if (news_domains.empty()) throw InputError("filter_news: empty news list");
  std::vector<ClickRecord> out;
  for (const auto& r : records)
    if (news_domains.count(r.target) > 0) out.push_back(r);
  return out;
}

struct Click {
  std::int64_t ts;
  std::string target;
};

/// Clicks indexed by (application, user), each list time-ordered after
/// finalize(). std::map keys keep all iteration deterministic.
class ClickStore {
 public:
  using UserClicks = std::map<std::string, std::vector<Click>>;

  void add(const std::string& app, const std::string& user, std::int64_t ts,
           const std::string& target) {
    by_app_[app][user].push_back(Click{ts, target});
    ++total_;
  }

  void finalize() {
    for (auto& [app, users] : by_app_)
      for (auto& [user, clicks] : users)
        std::stable_sort(clicks.begin(), clicks.end(),
                         [](const Click& a, const Click& b) { return a.ts < b.ts; });
  }

  const std::map<std::string, UserClicks>& apps() const { return by_app_; }
  std::uint64_t total_clicks() const { return total_; }
  bool empty() const { return by_app_.empty(); }

  /// Number of distinct target domains across the whole store; the default
  /// universe size |D| for the homogeneity measure.
  std::size_t distinct_targets() const {
    std::unordered_set<std::string> seen;
    for (const auto& [app, users] : by_app_)
      for (const auto& [user, clicks] : users)
        for (const auto& c : clicks) seen.insert(c.target);
    return seen.size();
  }

  /// Pools each user's clicks across all applications of a category,
  /// producing a store keyed by category name.
  ClickStore pooled_by_category(const CategoryMap& map) const {
    ClickStore pooled;
    for (const auto& [app, users] : by_app_) {
      const std::string* cat = map.category_of(app);
      if (cat == nullptr) continue;
      for (const auto& [user, clicks] : users)
        for (const auto& c : clicks) pooled.add(*cat, user, c.ts, c.target);
    }
    pooled.finalize();
    return pooled;
  }

 private:
  std::map<std::string, UserClicks> by_app_;
  std::uint64_t total_ = 0;
};

/// Convenience: parse a log, assign applications, and build the store.
/// Unmapped referrers are skipped; an optional news list restricts targets.
inline ClickStore build_store(std::istream& in, const CategoryMap& map,
                              const std::set<std::string>* news = nullptr,
                              ParseStats* stats_out = nullptr) {
  ClickStore store;
  ParseStats stats = parse_click_log(in, [&](const ClickRecord& rec) {
    if (news != nullptr && news->count(rec.target) == 0) return;
    auto assigned = map.assign(rec.referrer);
    if (!assigned) return;
    store.add(assigned->first, rec.user, rec.timestamp, rec.target);
  });
  if (stats_out != nullptr) *stats_out = stats;
  store.finalize();
  return store;
}

}  // namespace webbias

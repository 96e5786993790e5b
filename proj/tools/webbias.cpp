// webbias: measures homogeneity and popularity bias of Web platforms from
// click logs, against a PageRank popularity model and a traffic-weighted
// random-walk baseline.

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "webbias/webbias.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitFatal = 1;
constexpr int kExitInsufficient = 2;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw webbias::InputError("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

// ---------------------------------------------------------------------------
// pagerank CSV: "domain,score,percentile", sorted by score descending
// ---------------------------------------------------------------------------

void write_pagerank_csv(const fs::path& path, const webbias::DomainGraph& graph,
                        const webbias::PageRankVector& pr,
                        const webbias::PercentileTable& table) {
  std::vector<std::uint32_t> order(graph.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (pr.scores[a] != pr.scores[b]) return pr.scores[a] > pr.scores[b];
    return graph.index.name(a) < graph.index.name(b);
  });
  std::string out = "domain,score,percentile\n";
  for (std::uint32_t i : order) {
    out += graph.index.name(i);
    out += ',';
    out += fmt_double(pr.scores[i]);
    out += ',';
    out += fmt_double(table.percentile[i]);
    out += '\n';
  }
  write_text(path, out);
}

struct PagerankCsv {
  webbias::PopularityIndex index;
  std::vector<double> scores;  // unordered; for rank-distribution fits
  std::map<std::string, double> score_of;
};

PagerankCsv load_pagerank_csv(const std::string& path) {
  auto in = webbias::open_input(path);
  webbias::LineReader reader(*in);
  std::string_view line;
  std::vector<webbias::PopularityIndex::Row> rows;
  bool first = true;
  while (reader.next(line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("domain,", 0) == 0) continue;
    }
    auto c1 = line.find(',');
    auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos)
      throw webbias::InputError("pagerank CSV: malformed line in " + path);
    webbias::PopularityIndex::Row row;
    row.domain = std::string(line.substr(0, c1));
    row.score = std::stod(std::string(line.substr(c1 + 1, c2 - c1 - 1)));
    row.percentile = std::stod(std::string(line.substr(c2 + 1)));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw webbias::InputError("pagerank CSV is empty: " + path);
  PagerankCsv result;
  for (const auto& r : rows) {
    result.scores.push_back(r.score);
    result.score_of[r.domain] = r.score;
  }
  result.index = webbias::PopularityIndex::from_rows(std::move(rows));
  return result;
}

webbias::CategoryMap load_categories(const std::string& path) {
  if (path.empty()) return webbias::CategoryMap::defaults();
  auto in = webbias::open_input(path);
  return webbias::CategoryMap::load(*in);
}

// ---------------------------------------------------------------------------
// subcommand options
// ---------------------------------------------------------------------------

struct CommonOpts {
  std::string out_dir;
  unsigned threads = 1;
};

struct MeasureOpts {
  std::string pagerank_csv, clicks, categories, news;
  std::string mode = "fixed";
  webbias::SampleSpec spec;
  std::uint32_t users_per_category = 1200;
  std::uint64_t universe = 0;  // 0 = dataset-wide distinct targets
  std::string axis = "percentile";
  std::string missing = "drop";
  bool lorenz = false;
};

webbias::ScoreOptions score_options(const std::string& axis, const std::string& missing) {
  webbias::ScoreOptions o;
  o.axis = axis == "mass" ? webbias::LorenzAxis::PagerankMass : webbias::LorenzAxis::Percentile;
  o.missing = missing == "lowest" ? webbias::MissingTargetPolicy::AssignLowest
                                  : webbias::MissingTargetPolicy::Drop;
  return o;
}

int cmd_pagerank(const std::string& graph_path, const std::string& out_csv,
                 const webbias::PageRankOptions& opts) {
  auto in = webbias::open_input(graph_path);
  webbias::LoadStats stats;
  webbias::DomainGraph graph = webbias::load_edge_list(*in, &stats);
  webbias::PageRankVector pr = webbias::compute_pagerank(graph, opts);
  webbias::PercentileTable table = webbias::rank_percentiles(pr, graph.index);
  write_pagerank_csv(out_csv, graph, pr, table);

  json echo;
  echo["command"] = "pagerank";
  echo["graph"] = graph_path;
  echo["out"] = out_csv;
  echo["alpha"] = opts.alpha;
  echo["tolerance"] = opts.tolerance;
  echo["max_iterations"] = opts.max_iterations;
  echo["threads"] = opts.threads;
  echo["nodes"] = graph.size();
  echo["edges"] = stats.edges;
  echo["lines_malformed"] = stats.malformed;
  echo["iterations_used"] = pr.iterations_used;
  echo["residual"] = pr.residual;
  echo["converged"] = pr.converged;
  write_json(out_csv + ".config.json", echo);
  if (!pr.converged)
    std::cerr << "warning: PageRank did not converge within " << opts.max_iterations
              << " iterations (residual " << pr.residual << ")\n";
  return 0;
}

struct ScoredSamples {
  std::vector<webbias::BiasScore> scores;           // one per (user, app/category)
  std::map<std::string, std::string> category_of;   // app key -> category
  std::vector<webbias::AppBiasSummary> summaries;
  std::vector<std::string> excluded;
  std::vector<webbias::ClickSample> samples;
};

void score_report(const webbias::SampleReport& report, const webbias::PopularityIndex& pop,
                  std::size_t universe, const webbias::ScoreOptions& opts,
                  const std::string& category_for_all, const webbias::CategoryMap& cmap,
                  ScoredSamples& out) {
  std::map<std::string, std::vector<webbias::BiasScore>> by_app;
  for (const auto& sample : report.samples) {
    webbias::BiasScore score = webbias::score_sample(sample, pop, universe, opts);
    by_app[score.app].push_back(score);
    out.scores.push_back(score);
    out.samples.push_back(sample);
  }
  for (auto& [app, scores] : by_app) {
    webbias::AppBiasSummary s = webbias::aggregate_app(scores);
    if (!category_for_all.empty()) {
      s.category = category_for_all;
    } else {
      const std::string* cat = cmap.category_of(app);
      s.category = cat != nullptr ? *cat : "";
    }
    out.category_of[app] = s.category;
    out.summaries.push_back(s);
  }
  for (const auto& app : report.excluded_apps) out.excluded.push_back(app);
}

int cmd_measure(const MeasureOpts& mo, const std::string& out_dir) {
  fs::create_directories(out_dir);
  PagerankCsv pr = load_pagerank_csv(mo.pagerank_csv);
  webbias::CategoryMap cmap = load_categories(mo.categories);

  std::optional<std::set<std::string>> news;
  if (!mo.news.empty()) {
    auto nin = webbias::open_input(mo.news);
    news = webbias::load_news_list(*nin);
  }

  auto cin_ = webbias::open_input(mo.clicks);
  webbias::ParseStats pstats;
  webbias::ClickStore store =
      webbias::build_store(*cin_, cmap, news ? &*news : nullptr, &pstats);
  if (store.empty())
    throw webbias::InsufficientDataError("no clicks matched the category map"
                                         + std::string(news ? " and news filter" : ""));

  std::size_t universe = mo.universe != 0 ? mo.universe : store.distinct_targets();
  if (universe < 2)
    throw webbias::InsufficientDataError("target universe has fewer than 2 domains");

  webbias::ScoreOptions sopts = score_options(mo.axis, mo.missing);

  webbias::SampleSpec app_spec = mo.spec;
  app_spec.mode = mo.mode == "window" ? webbias::SampleMode::TimeWindow
                                      : webbias::SampleMode::FixedCount;
  webbias::SampleSpec cat_spec = app_spec;
  cat_spec.users_per_app = mo.users_per_category;

  ScoredSamples result;
  webbias::ClickStore cat_store = store.pooled_by_category(cmap);
  if (app_spec.mode == webbias::SampleMode::FixedCount) {
    score_report(webbias::sample_fixed_count(store, app_spec), pr.index, universe, sopts, "",
                 cmap, result);
    // category-level rows use the pooled store and the "category:" prefix
    webbias::SampleReport cat_report = webbias::sample_fixed_count(cat_store, cat_spec);
    for (auto& s : cat_report.samples) s.app = "category:" + s.app;
    ScoredSamples cat_result;
    score_report(cat_report, pr.index, universe, sopts, "", cmap, cat_result);
    for (auto& s : cat_result.summaries) s.category = s.app.substr(9);
    for (auto& s : cat_result.scores) result.scores.push_back(s);
    for (auto& s : cat_result.summaries) {
      result.category_of[s.app] = s.category;
      result.summaries.push_back(s);
    }
    for (auto& s : cat_result.samples) result.samples.push_back(s);
    for (auto& a : cat_report.excluded_apps) result.excluded.push_back("category:" + a);
  } else {
    score_report(webbias::sample_time_window(store, app_spec), pr.index, universe, sopts, "",
                 cmap, result);
    webbias::SampleReport cat_report = webbias::sample_time_window(cat_store, cat_spec);
    for (auto& s : cat_report.samples) s.app = "category:" + s.app;
    ScoredSamples cat_result;
    score_report(cat_report, pr.index, universe, sopts, "", cmap, cat_result);
    for (auto& s : cat_result.summaries) s.category = s.app.substr(9);
    for (auto& s : cat_result.scores) result.scores.push_back(s);
    for (auto& s : cat_result.summaries) {
      result.category_of[s.app] = s.category;
      result.summaries.push_back(s);
    }
    for (auto& s : cat_result.samples) result.samples.push_back(s);
  }

  if (result.scores.empty())
    throw webbias::InsufficientDataError("no application met the sampling thresholds");

  for (const auto& app : result.excluded)
    std::cerr << "warning: excluded '" << app << "' (fewer than " << app_spec.min_users_per_app
              << " eligible users)\n";

  // scores.csv
  std::string scores_csv = "user,app,category,n_clicks,b_h,b_p\n";
  for (const auto& s : result.scores) {
    scores_csv += s.user + "," + s.app + "," + result.category_of[s.app] + "," +
                  std::to_string(s.n_clicks) + "," + fmt_double(s.b_h) + "," +
                  fmt_double(s.b_p) + "\n";
  }
  write_text(fs::path(out_dir) / "scores.csv", scores_csv);

  // summaries.csv
  std::string summaries_csv = "app,category,n_users,mean_b_h,se_b_h,mean_b_p,se_b_p\n";
  for (const auto& s : result.summaries) {
    summaries_csv += s.app + "," + s.category + "," + std::to_string(s.n_users) + "," +
                     fmt_double(s.mean_b_h) + "," + fmt_double(s.se_b_h) + "," +
                     fmt_double(s.mean_b_p) + "," + fmt_double(s.se_b_p) + "\n";
  }
  write_text(fs::path(out_dir) / "summaries.csv", summaries_csv);

  // sample_manifest.csv (consumed by the baseline command)
  std::string manifest_csv = "user,app,category,n_clicks\n";
  for (const auto& s : result.scores)
    manifest_csv += s.user + "," + s.app + "," + result.category_of[s.app] + "," +
                    std::to_string(s.n_clicks) + "\n";
  write_text(fs::path(out_dir) / "sample_manifest.csv", manifest_csv);

  if (mo.lorenz) {
    json curves = json::array();
    for (const auto& sample : result.samples) {
      webbias::LorenzCurve curve =
          webbias::lorenz_curve(sample.target_counts(), pr.index, sopts.axis, sopts.missing);
      json entry;
      entry["user"] = sample.user;
      entry["app"] = sample.app;
      entry["dropped_targets"] = curve.dropped_targets;
      entry["points"] = curve.points;
      curves.push_back(std::move(entry));
    }
    write_json(fs::path(out_dir) / "lorenz.json", curves);
  }

  json echo;
  echo["command"] = "measure";
  echo["pagerank"] = mo.pagerank_csv;
  echo["clicks"] = mo.clicks;
  echo["categories"] = mo.categories.empty() ? "<built-in>" : mo.categories;
  echo["news"] = mo.news;
  echo["mode"] = mo.mode;
  echo["clicks_per_pair"] = app_spec.clicks_per_pair;
  echo["users_per_app"] = app_spec.users_per_app;
  echo["users_per_category"] = mo.users_per_category;
  echo["min_clicks"] = app_spec.min_clicks;
  echo["min_users_per_app"] = app_spec.min_users_per_app;
  echo["window_start"] = app_spec.window_start;
  echo["window_end"] = app_spec.window_end;
  echo["seed"] = app_spec.seed;
  echo["universe_size"] = universe;
  echo["universe_source"] = mo.universe != 0 ? "override" : "dataset-distinct-targets";
  echo["lorenz_axis"] = mo.axis;
  echo["missing_target_policy"] = mo.missing;
  echo["records_parsed"] = pstats.parsed;
  echo["records_malformed"] = pstats.malformed;
  echo["excluded_apps"] = result.excluded;
  write_json(fs::path(out_dir) / "config_echo.json", echo);
  return 0;
}

int cmd_baseline(const std::string& pagerank_csv, const std::string& clicks_path,
                 const std::string& manifest_path, const std::string& out_csv,
                 double teleport, std::uint64_t seed, std::uint64_t universe_override) {
  PagerankCsv pr = load_pagerank_csv(pagerank_csv);

  std::vector<webbias::ClickRecord> records;
  {
    auto in = webbias::open_input(clicks_path);
    webbias::parse_click_log(*in, [&](const webbias::ClickRecord& r) { records.push_back(r); });
  }
  if (records.empty()) throw webbias::InsufficientDataError("click log is empty");
  webbias::TrafficGraph graph = webbias::build_traffic_graph(records);

  std::size_t universe = universe_override;
  if (universe == 0) {
    std::set<std::string> targets;
    for (const auto& r : records) targets.insert(r.target);
    universe = targets.size();
  }

  // manifest rows grouped by app: walkers = users, steps = per-user clicks
  std::map<std::string, std::pair<std::string, std::vector<std::uint32_t>>> per_app;
  {
    auto in = webbias::open_input(manifest_path);
    webbias::LineReader reader(*in);
    std::string_view line;
    bool first = true;
    while (reader.next(line)) {
      if (line.empty()) continue;
      if (first) {
        first = false;
        if (line.rfind("user,", 0) == 0) continue;
      }
      std::vector<std::string> f;
      std::size_t start = 0;
      for (std::size_t i = 0; i <= line.size(); ++i)
        if (i == line.size() || line[i] == ',') {
          f.emplace_back(line.substr(start, i - start));
          start = i + 1;
        }
      if (f.size() != 4) throw webbias::InputError("sample manifest: malformed line");
      auto& slot = per_app[f[1]];
      slot.first = f[2];
      slot.second.push_back(static_cast<std::uint32_t>(std::stoul(f[3])));
    }
  }
  if (per_app.empty()) throw webbias::InsufficientDataError("sample manifest is empty");

  std::string csv = "app,category,n_users,mean_b_h,se_b_h,mean_b_p,se_b_p\n";
  for (const auto& [app, slot] : per_app) {
    webbias::WalkerConfig config;
    config.teleport_probability = teleport;
    config.seed = webbias::derive_seed(seed, "baseline:" + app);
    config.steps_schedule = slot.second;
    auto samples = webbias::simulate_walkers(graph, config);
    webbias::BaselineResult res = webbias::baseline_biases(samples, pr.index, universe);
    csv += "baseline:" + app + "," + slot.first + "," + std::to_string(res.summary.n_users) +
           "," + fmt_double(res.summary.mean_b_h) + "," + fmt_double(res.summary.se_b_h) + "," +
           fmt_double(res.summary.mean_b_p) + "," + fmt_double(res.summary.se_b_p) + "\n";
  }
  write_text(out_csv, csv);

  json echo;
  echo["command"] = "baseline";
  echo["pagerank"] = pagerank_csv;
  echo["clicks"] = clicks_path;
  echo["manifest"] = manifest_path;
  echo["teleport_probability"] = teleport;
  echo["seed"] = seed;
  echo["universe_size"] = universe;
  echo["traffic_nodes"] = graph.size();
  write_json(out_csv + ".config.json", echo);
  return 0;
}

int cmd_scaling(const std::string& pagerank_csv, const std::string& clicks_path,
                const std::string& out_dir, unsigned bins_per_decade, unsigned min_bin_count,
                double rank_xmin) {
  fs::create_directories(out_dir);
  PagerankCsv pr = load_pagerank_csv(pagerank_csv);

  std::vector<webbias::ClickRecord> records;
  {
    auto in = webbias::open_input(clicks_path);
    webbias::parse_click_log(*in, [&](const webbias::ClickRecord& r) { records.push_back(r); });
  }
  auto volumes = webbias::traffic_by_domain(records);

  std::vector<std::pair<double, double>> rt;
  std::uint64_t unmatched = 0;
  for (const auto& [domain, count] : volumes) {
    auto it = pr.score_of.find(domain);
    if (it == pr.score_of.end()) {
      ++unmatched;
      continue;
    }
    rt.emplace_back(it->second, static_cast<double>(count));
  }
  webbias::PowerLawFit fit = webbias::fit_traffic_scaling(rt, bins_per_decade, min_bin_count);

  json jf;
  jf["exponent"] = fit.exponent;
  jf["stderr"] = fit.std_error;
  jf["intercept"] = fit.intercept;
  jf["r_squared"] = fit.r_squared;
  jf["n_points"] = fit.n_points;
  jf["method"] = fit.method;
  jf["unbinned_exponent"] = fit.unbinned_exponent;
  jf["unmatched_domains"] = unmatched;
  json bins = json::array();
  for (const auto& b : fit.bins)
    bins.push_back({{"x_center", b.x_center},
                    {"x_mean_log", b.x_mean_log},
                    {"y_mean_log", b.y_mean_log},
                    {"n", b.n}});
  jf["bins"] = bins;
  write_json(fs::path(out_dir) / "traffic_fit.json", jf);

  std::string bins_csv = "x_center,x_mean_log,y_mean_log,n\n";
  for (const auto& b : fit.bins)
    bins_csv += fmt_double(b.x_center) + "," + fmt_double(b.x_mean_log) + "," +
                fmt_double(b.y_mean_log) + "," + std::to_string(b.n) + "\n";
  write_text(fs::path(out_dir) / "traffic_bins.csv", bins_csv);

  if (rank_xmin > 0.0) {
    webbias::PowerLawFit rfit = webbias::fit_rank_distribution(pr.scores, rank_xmin);
    json jr;
    jr["exponent"] = rfit.exponent;
    jr["stderr"] = rfit.std_error;
    jr["n_points"] = rfit.n_points;
    jr["method"] = rfit.method;
    jr["x_min"] = rank_xmin;
    write_json(fs::path(out_dir) / "rank_distribution_fit.json", jr);
  }

  json echo;
  echo["command"] = "scaling";
  echo["pagerank"] = pagerank_csv;
  echo["clicks"] = clicks_path;
  echo["bins_per_decade"] = bins_per_decade;
  echo["min_bin_count"] = min_bin_count;
  echo["rank_xmin"] = rank_xmin;
  write_json(fs::path(out_dir) / "config_echo.json", echo);
  return 0;
}

int cmd_ternary(const std::string& pagerank_csv, const std::string& clicks_path,
                const std::string& categories_path, const std::string& cats_arg,
                std::uint32_t min_per_category, double hex_size, const std::string& out_csv,
                std::uint64_t universe_override, const std::string& axis,
                const std::string& missing) {
  PagerankCsv pr = load_pagerank_csv(pagerank_csv);
  webbias::CategoryMap cmap = load_categories(categories_path);

  std::array<std::string, 3> cats;
  {
    std::stringstream ss(cats_arg);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
      if (i >= 3) throw webbias::InputError("--cats: exactly three categories required");
      cats[i++] = item;
    }
    if (i != 3) throw webbias::InputError("--cats: exactly three categories required");
  }

  auto in = webbias::open_input(clicks_path);
  webbias::ClickStore store = webbias::build_store(*in, cmap);
  if (store.empty()) throw webbias::InsufficientDataError("no clicks matched the category map");
  webbias::ClickStore cat_store = store.pooled_by_category(cmap);

  std::size_t universe = universe_override != 0 ? universe_override : store.distinct_targets();
  auto points = webbias::compute_mix(cat_store, cats, pr.index, universe, min_per_category,
                                     score_options(axis, missing));
  if (points.empty())
    std::cerr << "warning: no user meets the per-category click threshold\n";
  auto bins = webbias::hexbin(points, hex_size);

  std::string csv = "bin_q,bin_r,center_x,center_y,n_users,mean_b_h,mean_b_p\n";
  for (const auto& b : bins)
    csv += std::to_string(b.q) + "," + std::to_string(b.r) + "," + fmt_double(b.center_x) +
           "," + fmt_double(b.center_y) + "," + std::to_string(b.n_users) + "," +
           fmt_double(b.mean_b_h) + "," + fmt_double(b.mean_b_p) + "\n";
  write_text(out_csv, csv);

  json echo;
  echo["command"] = "ternary";
  echo["pagerank"] = pagerank_csv;
  echo["clicks"] = clicks_path;
  echo["categories"] = categories_path.empty() ? "<built-in>" : categories_path;
  echo["axes"] = {cats[0], cats[1], cats[2]};
  echo["corner_assignment"] = {{"bottom_left", cats[0]}, {"bottom_right", cats[1]}, {"top", cats[2]}};
  echo["min_per_category"] = min_per_category;
  echo["hex_size"] = hex_size;
  echo["universe_size"] = universe;
  echo["n_users"] = points.size();
  echo["n_bins"] = bins.size();
  write_json(out_csv + ".config.json", echo);
  return 0;
}

webbias::TargetModel parse_model(const json& jm) {
  webbias::TargetModel m;
  std::string type = jm.value("type", "uniform");
  if (type == "single-target") {
    m.type = webbias::TargetModelType::SingleTarget;
    m.single_domain = jm.value("domain", "");
  } else if (type == "uniform") {
    m.type = webbias::TargetModelType::Uniform;
  } else if (type == "zipf") {
    m.type = webbias::TargetModelType::Zipf;
    m.zipf_s = jm.value("s", 1.0);
    std::string order = jm.value("order", "random");
    m.zipf_order = order == "pagerank-descending" ? webbias::ZipfOrder::PagerankDescending
                   : order == "pagerank-ascending" ? webbias::ZipfOrder::PagerankAscending
                                                   : webbias::ZipfOrder::Random;
  } else if (type == "pagerank-power") {
    m.type = webbias::TargetModelType::PagerankPower;
    m.gamma = jm.value("gamma", 1.0);
  } else {
    throw webbias::InputError("synth: unknown target model '" + type + "'");
  }
  return m;
}

int cmd_synth(const std::string& spec_path, const std::string& out_dir) {
  fs::create_directories(out_dir);
  json spec_json;
  {
    auto in = webbias::open_input(spec_path);
    *in >> spec_json;
  }

  webbias::GraphSpec gspec;
  gspec.n_nodes = spec_json.at("graph").value("n_nodes", 1000u);
  gspec.edges_per_node = spec_json.at("graph").value("edges_per_node", 3u);
  gspec.seed = spec_json.at("graph").value("seed", spec_json.value("seed", 0ull));

  webbias::GraphGenResult gres;
  {
    std::ofstream gout(fs::path(out_dir) / "graph.tsv", std::ios::binary);
    gres = webbias::gen_scale_free_graph(gspec, gout);
  }

  std::vector<std::string> domains;
  domains.reserve(gspec.n_nodes);
  for (std::uint32_t i = 0; i < gspec.n_nodes; ++i)
    domains.push_back(webbias::synth_domain_name(i));

  webbias::ClickLogSpec cspec;
  cspec.seed = spec_json.value("seed", 0ull);
  if (spec_json.contains("window")) {
    cspec.window_start = spec_json["window"][0].get<std::int64_t>();
    cspec.window_end = spec_json["window"][1].get<std::int64_t>();
  }
  bool needs_pagerank = false;
  std::string cats_tsv = "# category\tapplication\treferrer\n";
  for (const auto& ja : spec_json.value("apps", json::array())) {
    webbias::AppSpec app;
    app.name = ja.at("name").get<std::string>();
    app.category = ja.value("category", "Synthetic");
    app.referrer = ja.value("referrer", "app." + app.name + ".example");
    app.n_users = ja.value("n_users", 10u);
    app.clicks_per_user = ja.value("clicks_per_user", 100u);
    app.user_prefix = ja.value("user_prefix", "");
    app.model = parse_model(ja.value("model", json{{"type", "uniform"}}));
    if (app.model.type == webbias::TargetModelType::PagerankPower ||
        (app.model.type == webbias::TargetModelType::Zipf &&
         app.model.zipf_order != webbias::ZipfOrder::Random))
      needs_pagerank = true;
    cats_tsv += app.category + "\t" + app.name + "\t" + app.referrer + "\n";
    cspec.apps.push_back(std::move(app));
  }
  if (spec_json.contains("background")) {
    const auto& jb = spec_json["background"];
    cspec.background.n_clicks = jb.value("n_clicks", 0ull);
    for (const auto& d : jb.value("referrer_pool", json::array()))
      cspec.background.referrer_pool.push_back(d.get<std::string>());
    for (const auto& d : jb.value("target_pool", json::array()))
      cspec.background.target_pool.push_back(d.get<std::string>());
  }

  std::optional<std::vector<double>> scores;
  if (needs_pagerank) {
    std::ifstream gin(fs::path(out_dir) / "graph.tsv", std::ios::binary);
    webbias::DomainGraph graph = webbias::load_edge_list(gin);
    webbias::PageRankVector pr = webbias::compute_pagerank(graph);
    // map back onto the generated domain order
    scores.emplace(gspec.n_nodes, 0.0);
    for (std::uint32_t i = 0; i < gspec.n_nodes; ++i) {
      auto id = graph.index.find(domains[i]);
      if (id) (*scores)[i] = pr.scores[*id];
    }
  }

  json manifest;
  {
    std::ofstream cout_(fs::path(out_dir) / "clicks.tsv", std::ios::binary);
    manifest = webbias::gen_click_log(cspec, domains, scores ? &*scores : nullptr, cout_);
  }
  manifest["graph"] = {{"n_nodes", gres.n_nodes},
                       {"n_edges", gres.n_edges},
                       {"edges_per_node", gspec.edges_per_node},
                       {"seed", gspec.seed}};
  write_json(fs::path(out_dir) / "manifest.json", manifest);
  write_text(fs::path(out_dir) / "categories.tsv", cats_tsv);

  json echo;
  echo["command"] = "synth";
  echo["spec"] = spec_path;
  echo["out"] = out_dir;
  echo["n_records"] = manifest["n_records"];
  write_json(fs::path(out_dir) / "config_echo.json", echo);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"webbias: homogeneity and popularity bias of Web platforms from click logs"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file");

  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker thread cap (results are identical for any value)")
      ->capture_default_str();

  // pagerank
  auto* sp_pr = app.add_subcommand("pagerank", "Compute PageRank over a domain edge list");
  std::string pr_graph, pr_out;
  webbias::PageRankOptions pr_opts;
  sp_pr->add_option("--graph", pr_graph, "Edge list (source<TAB>target)")->required();
  sp_pr->add_option("--out", pr_out, "Output CSV (domain,score,percentile)")
      ->envname("WEBBIAS_OUT")->required();
  sp_pr->add_option("--alpha", pr_opts.alpha, "Teleportation factor")->capture_default_str();
  sp_pr->add_option("--tolerance", pr_opts.tolerance, "L1 convergence threshold")
      ->capture_default_str();
  sp_pr->add_option("--max-iterations", pr_opts.max_iterations, "Iteration cap")
      ->capture_default_str();

  // measure
  auto* sp_me = app.add_subcommand("measure", "Sample clicks and measure per-user biases");
  MeasureOpts mo;
  std::string me_out;
  sp_me->add_option("--pagerank", mo.pagerank_csv, "PageRank CSV from the pagerank command")
      ->required();
  sp_me->add_option("--clicks", mo.clicks, "Click log TSV (optionally .gz)")->required();
  sp_me->add_option("--categories", mo.categories, "Category map TSV (default: built-in)");
  sp_me->add_option("--news", mo.news, "News domain list; restricts targets");
  sp_me->add_option("--mode", mo.mode, "Sampling mode: fixed | window")
      ->check(CLI::IsMember({"fixed", "window"}))->capture_default_str();
  sp_me->add_option("--clicks-per-pair", mo.spec.clicks_per_pair)->capture_default_str();
  sp_me->add_option("--users-per-app", mo.spec.users_per_app)->capture_default_str();
  sp_me->add_option("--users-per-category", mo.users_per_category)->capture_default_str();
  sp_me->add_option("--min-clicks", mo.spec.min_clicks)->capture_default_str();
  sp_me->add_option("--min-users", mo.spec.min_users_per_app)->capture_default_str();
  sp_me->add_option("--window-start", mo.spec.window_start, "Window mode: inclusive start");
  sp_me->add_option("--window-end", mo.spec.window_end, "Window mode: exclusive end");
  sp_me->add_option("--seed", mo.spec.seed)->capture_default_str();
  sp_me->add_option("--universe", mo.universe,
                    "Universe size |D| override (default: dataset distinct targets)");
  sp_me->add_option("--axis", mo.axis, "Lorenz x-axis: percentile | mass")
      ->check(CLI::IsMember({"percentile", "mass"}))->capture_default_str();
  sp_me->add_option("--missing", mo.missing, "Targets absent from PageRank: drop | lowest")
      ->check(CLI::IsMember({"drop", "lowest"}))->capture_default_str();
  sp_me->add_flag("--lorenz", mo.lorenz, "Also write per-sample Lorenz curves (lorenz.json)");
  sp_me->add_option("--out", me_out, "Output directory")->envname("WEBBIAS_OUT")->required();

  // baseline
  auto* sp_ba = app.add_subcommand("baseline", "Random-walk baseline mirroring a sample manifest");
  std::string ba_pr, ba_clicks, ba_manifest, ba_out;
  double ba_teleport = 0.15;
  std::uint64_t ba_seed = 0, ba_universe = 0;
  sp_ba->add_option("--pagerank", ba_pr)->required();
  sp_ba->add_option("--clicks", ba_clicks)->required();
  sp_ba->add_option("--manifest", ba_manifest, "sample_manifest.csv from measure")->required();
  sp_ba->add_option("--teleport", ba_teleport)->capture_default_str();
  sp_ba->add_option("--seed", ba_seed)->capture_default_str();
  sp_ba->add_option("--universe", ba_universe);
  sp_ba->add_option("--out", ba_out, "Output CSV")->envname("WEBBIAS_OUT")->required();

  // scaling
  auto* sp_sc = app.add_subcommand("scaling", "Traffic-vs-PageRank and rank-distribution fits");
  std::string sc_pr, sc_clicks, sc_out;
  unsigned sc_bins = 10, sc_min = 3;
  double sc_xmin = 0.0;
  sp_sc->add_option("--pagerank", sc_pr)->required();
  sp_sc->add_option("--clicks", sc_clicks)->required();
  sp_sc->add_option("--bins-per-decade", sc_bins)->capture_default_str();
  sp_sc->add_option("--min-bin-count", sc_min)->capture_default_str();
  sp_sc->add_option("--rank-xmin", sc_xmin,
                    "Also fit the PageRank distribution tail above this score");
  sp_sc->add_option("--out", sc_out, "Output directory")->envname("WEBBIAS_OUT")->required();

  // ternary
  auto* sp_te = app.add_subcommand("ternary", "Hex-binned user map over a three-category mix");
  std::string te_pr, te_clicks, te_cats_file, te_out;
  std::string te_cats = "Web Search,Social Media,Email";
  std::uint32_t te_min = 1000;
  double te_hex = 1.0 / (15.0 * std::sqrt(3.0));
  std::uint64_t te_universe = 0;
  std::string te_axis = "percentile", te_missing = "drop";
  sp_te->add_option("--pagerank", te_pr)->required();
  sp_te->add_option("--clicks", te_clicks)->required();
  sp_te->add_option("--categories", te_cats_file, "Category map TSV (default: built-in)");
  sp_te->add_option("--cats", te_cats,
                    "Three category names: bottom-left,bottom-right,top corner")
      ->capture_default_str();
  sp_te->add_option("--min-per-category", te_min)->capture_default_str();
  sp_te->add_option("--hex-size", te_hex)->capture_default_str();
  sp_te->add_option("--universe", te_universe);
  sp_te->add_option("--axis", te_axis)->check(CLI::IsMember({"percentile", "mass"}));
  sp_te->add_option("--missing", te_missing)->check(CLI::IsMember({"drop", "lowest"}));
  sp_te->add_option("--out", te_out, "Output CSV")->envname("WEBBIAS_OUT")->required();

  // synth
  auto* sp_sy = app.add_subcommand("synth", "Generate a synthetic graph + click log dataset");
  std::string sy_spec, sy_out;
  sp_sy->add_option("--spec", sy_spec, "JSON generator spec")->required();
  sp_sy->add_option("--out", sy_out, "Output directory")->envname("WEBBIAS_OUT")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sp_pr) {
      pr_opts.threads = threads;
      return cmd_pagerank(pr_graph, pr_out, pr_opts);
    }
    if (*sp_me) return cmd_measure(mo, me_out);
    if (*sp_ba)
      return cmd_baseline(ba_pr, ba_clicks, ba_manifest, ba_out, ba_teleport, ba_seed,
                          ba_universe);
    if (*sp_sc) return cmd_scaling(sc_pr, sc_clicks, sc_out, sc_bins, sc_min, sc_xmin);
    if (*sp_te)
      return cmd_ternary(te_pr, te_clicks, te_cats_file, te_cats, te_min, te_hex, te_out,
                         te_universe, te_axis, te_missing);
    if (*sp_sy) return cmd_synth(sy_spec, sy_out);
  } catch (const webbias::InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInsufficient;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFatal;
  }
  return 0;
}

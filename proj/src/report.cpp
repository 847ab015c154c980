#include "spmine/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "spmine/error.hpp"

namespace spmine {

namespace {

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t m = i; m <= j; ++m) ranks[idx[m]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::uint64_t count_of(const VertexCounts& freq, VertexId v) {
  const auto it = freq.find(v);
  return it == freq.end() ? 0 : it->second;
}

void check_keys(const Graph& g, const VertexCounts& freq) {
  if (!freq.empty() && freq.rbegin()->first >= g.vertex_count())
    throw ValidationError("frequency map names vertex " + std::to_string(freq.rbegin()->first) +
                          " outside the graph");
}

std::vector<std::vector<std::string>> read_csv(const std::string& text, const std::string& header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing CSV header, expected '" + header + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw ParseError("unexpected CSV header '" + line + "', expected '" + header + "'", 1);
  const auto columns = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != columns) throw ParseError("expected " + std::to_string(columns) + " columns", line_no);
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::uint64_t to_u64(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError("invalid integer '" + s + "'");
  return v;
}

double to_real(const std::string& s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError("invalid number '" + s + "'");
  return v;
}

VertexTuple split_items(const std::string& s) {
  VertexTuple items;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, '|')) items.push_back(static_cast<VertexId>(to_u64(tok)));
  if (items.empty()) throw ParseError("empty item list");
  return items;
}

// Rounded value as a JSON number; nlohmann prints the shortest round-trip form.
nlohmann::json rounded(double value) { return to_real(format_real(value)); }

std::string percentile_key(double p) { return format_real(p); }

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || x.size() != y.size()) throw ValidationError("spearman needs two non-empty equal-length samples");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mean = (static_cast<double>(x.size()) + 1.0) / 2.0;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double correlate_degree_frequency(const Graph& g, const VertexCounts& freq) {
  const auto n = g.vertex_count();
  if (n == 0) throw ValidationError("correlation needs a non-empty graph");
  check_keys(g, freq);
  std::vector<double> deg(n), cnt(n);
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = static_cast<double>(g.degree(v));
    cnt[v] = static_cast<double>(count_of(freq, v));
  }
  return spearman(deg, cnt);
}

double top_degree_share(const Graph& g, const VertexCounts& freq, double percentile) {
  if (!(percentile > 0.0 && percentile <= 100.0))
    throw ValidationError("percentile must be in (0, 100], got " + format_real(percentile));
  check_keys(g, freq);
  const auto n = g.vertex_count();
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    const auto da = g.degree(a), db = g.degree(b);
    if (da != db) return da > db;
    const auto ca = count_of(freq, a), cb = count_of(freq, b);
    if (ca != cb) return ca > cb;
    return a < b;
  });
  const auto take = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::ceil(percentile * static_cast<double>(n) / 100.0)));
  std::uint64_t total = 0, top = 0;
  for (const auto& [_, c] : freq) total += c;
  for (std::size_t i = 0; i < take; ++i) top += count_of(freq, order[i]);
  return total ? static_cast<double>(top) / static_cast<double>(total) : 0.0;
}

std::vector<VertexFrequencyRecord> vertex_records(const Graph& g, const TransactionDb& db) {
  const auto freq = vertex_frequency(db);
  check_keys(g, freq);
  std::vector<VertexFrequencyRecord> records;
  if (db.empty()) return records;
  records.reserve(g.vertex_count());
  const double size = static_cast<double>(db.size());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto c = count_of(freq, v);
    records.push_back({v, g.degree(v), c, static_cast<double>(c) / size});
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const auto& a, const auto& b) { return a.path_count > b.path_count; });
  return records;
}

StatsReport build_report(const Graph& g, const TransactionDb& db, const std::vector<std::size_t>& ngram_sizes,
                         std::vector<FrequentPattern> patterns, RunMetadata metadata,
                         const std::vector<double>& percentiles) {
  check_against(db, g);
  StatsReport r;
  r.vertex_count = g.vertex_count();
  r.edge_count = g.edge_count();
  r.degree_histogram = degree_histogram(g);
  r.clustering_average = g.directed() ? 0.0 : clustering(g).average;
  r.vertex_records = vertex_records(g, db);
  for (auto n : ngram_sizes) r.ngrams.push_back(count_ngrams(db, n, !g.directed()));
  r.patterns = std::move(patterns);
  const auto freq = vertex_frequency(db);
  r.spearman_rho = correlate_degree_frequency(g, freq);
  for (auto p : percentiles) r.top_share[p] = top_degree_share(g, freq, p);
  r.transaction_count = db.size();
  r.source_count = db.source_count;
  r.unreachable_pairs = db.unreachable_pairs;
  r.metadata = std::move(metadata);
  return r;
}

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 6);
  return std::string(buf, ptr);
}

std::string degree_hist_csv(const DegreeHistogram& h) {
  std::string out = "degree,count\n";
  for (const auto& [d, c] : h.entries) out += std::to_string(d) + ',' + std::to_string(c) + '\n';
  return out;
}

std::string vertex_freq_csv(const std::vector<VertexFrequencyRecord>& records) {
  std::string out = "vertex,degree,path_count,path_fraction\n";
  for (const auto& r : records)
    out += std::to_string(r.vertex) + ',' + std::to_string(r.degree) + ',' + std::to_string(r.path_count) + ',' +
           format_real(r.path_fraction) + '\n';
  return out;
}

std::string summary_json(const StatsReport& r) {
  nlohmann::ordered_json j;
  j["vertex_count"] = r.vertex_count;
  j["edge_count"] = r.edge_count;
  j["transactions"] = r.transaction_count;
  j["source_count"] = r.source_count;
  j["unreachable_pairs"] = r.unreachable_pairs;
  j["empty_run"] = r.transaction_count == 0;
  j["clustering_average"] = rounded(r.clustering_average);
  j["spearman_rho"] = rounded(r.spearman_rho);
  nlohmann::ordered_json shares = nlohmann::ordered_json::object();
  for (const auto& [p, s] : r.top_share) shares[percentile_key(p)] = rounded(s);
  j["top_share"] = shares;
  nlohmann::ordered_json ngrams = nlohmann::ordered_json::object();
  for (const auto& c : r.ngrams)
    ngrams[std::to_string(c.n)] = {{"distinct", c.entries.size()}, {"total", c.total()}};
  j["ngram_summaries"] = ngrams;
  j["pattern_count"] = r.patterns.size();
  const auto& m = r.metadata;
  j["metadata"] = {
      {"mode", m.mode},
      {"seed", m.seed},
      {"k", m.k},
      {"min_support_spec", m.min_support_spec},
      {"min_support", m.min_support},
      {"max_pattern_size", m.max_pattern_size ? nlohmann::ordered_json(*m.max_pattern_size) : nlohmann::ordered_json()},
      {"fingerprint", m.fingerprint},
      {"directed", m.directed},
      {"weighted", m.weighted},
  };
  return j.dump(2) + "\n";
}

void write_files(const std::filesystem::path& directory, const std::map<std::string, std::string>& files) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw IoError("cannot create directory '" + directory.string() + "': " + ec.message());

  std::vector<fs::path> staged;
  const auto cleanup = [&] {
    for (const auto& p : staged) fs::remove(p, ec);
  };
  for (const auto& [name, content] : files) {
    const auto tmp = directory / (name + ".tmp");
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) staged.push_back(tmp);
    out << content;
    out.close();
    if (!out) {
      cleanup();
      throw IoError("cannot write '" + (directory / name).string() + "'");
    }
  }
  std::vector<fs::path> committed;
  for (const auto& [name, _] : files) {
    const auto target = directory / name;
    fs::rename(directory / (name + ".tmp"), target, ec);
    if (ec) {
      cleanup();
      for (const auto& p : committed) fs::remove(p, ec);
      throw IoError("cannot write '" + target.string() + "': " + ec.message());
    }
    committed.push_back(target);
  }
}

std::map<std::string, std::string> report_files(const StatsReport& report) {
  std::map<std::string, std::string> files;
  files["degree_hist.csv"] = degree_hist_csv(report.degree_histogram);
  files["vertex_freq.csv"] = vertex_freq_csv(report.vertex_records);
  for (const auto& c : report.ngrams) files["ngram_" + std::to_string(c.n) + ".csv"] = ngram_csv(c);
  files["patterns.csv"] = patterns_csv(report.patterns);
  files["summary.json"] = summary_json(report);
  return files;
}

void write_report(const StatsReport& report, const std::filesystem::path& directory) {
  write_files(directory, report_files(report));
}

DegreeHistogram parse_degree_hist_csv(const std::string& text) {
  DegreeHistogram h;
  for (const auto& row : read_csv(text, "degree,count")) h.entries[to_u64(row[0])] = to_u64(row[1]);
  return h;
}

std::vector<VertexFrequencyRecord> parse_vertex_freq_csv(const std::string& text) {
  std::vector<VertexFrequencyRecord> records;
  for (const auto& row : read_csv(text, "vertex,degree,path_count,path_fraction"))
    records.push_back({static_cast<VertexId>(to_u64(row[0])), to_u64(row[1]), to_u64(row[2]), to_real(row[3])});
  return records;
}

NGramCounts parse_ngram_csv(const std::string& text) {
  NGramCounts counts;
  for (const auto& row : read_csv(text, "n,items,count")) {
    const auto n = to_u64(row[0]);
    auto items = split_items(row[1]);
    if (items.size() != n) throw ParseError("item count does not match n");
    if (counts.n != 0 && counts.n != n) throw ParseError("mixed n-gram sizes");
    counts.n = n;
    counts.entries[std::move(items)] = to_u64(row[2]);
  }
  return counts;
}

std::vector<FrequentPattern> parse_patterns_csv(const std::string& text) {
  std::vector<FrequentPattern> patterns;
  for (const auto& row : read_csv(text, "support,size,items")) {
    auto items = split_items(row[2]);
    if (items.size() != to_u64(row[1])) throw ParseError("pattern size does not match items");
    patterns.push_back({std::move(items), to_u64(row[0])});
  }
  return patterns;
}

}  // namespace spmine

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spmine/fpgrowth.hpp"
#include "spmine/graph.hpp"
#include "spmine/transactions.hpp"

namespace spmine {

using VertexCounts = std::map<VertexId, std::uint64_t>;

struct VertexFrequencyRecord {
  VertexId vertex = 0;
  std::size_t degree = 0;
  std::uint64_t path_count = 0;
  double path_fraction = 0.0;  // path_count / |db|, 0 for an empty db

  bool operator==(const VertexFrequencyRecord&) const = default;
};

struct RunMetadata {
  std::string mode;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  std::string min_support_spec;
  std::uint64_t min_support = 0;  // resolved absolute threshold
  std::optional<std::size_t> max_pattern_size;
  std::string fingerprint;
  bool directed = false;
  bool weighted = false;
};

inline const std::vector<double> kDefaultPercentiles = {1, 5, 10, 25, 50};

struct StatsReport {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  DegreeHistogram degree_histogram;
  double clustering_average = 0.0;
  std::vector<VertexFrequencyRecord> vertex_records;
  std::vector<NGramCounts> ngrams;
  std::vector<FrequentPattern> patterns;
  double spearman_rho = 0.0;
  std::map<double, double> top_share;  // percentile -> share
  std::size_t transaction_count = 0;
  std::size_t source_count = 0;
  std::size_t unreachable_pairs = 0;
  RunMetadata metadata;
};

// Spearman rank correlation with average ranks for ties; 0 when either
// input is constant. Throws ValidationError on empty or mismatched inputs.
double spearman(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation between degree and path count over all vertices
// (absent vertices count 0), average ranks for ties, 0 when either side is
// constant. Throws ValidationError on an empty graph.
double correlate_degree_frequency(const Graph& g, const VertexCounts& freq);

// Share of all path occurrences held by the ceil(percentile% * n) vertices of
// highest degree (ties: higher count, then lower id). 0 when there are no
// occurrences. Throws ValidationError unless 0 < percentile <= 100.
double top_degree_share(const Graph& g, const VertexCounts& freq, double percentile);

// One record per vertex, ordered by path_count descending then vertex id.
std::vector<VertexFrequencyRecord> vertex_records(const Graph& g, const TransactionDb& db);

// Joins graph properties with the mined frequencies.
StatsReport build_report(const Graph& g, const TransactionDb& db, const std::vector<std::size_t>& ngram_sizes,
                         std::vector<FrequentPattern> patterns, RunMetadata metadata,
                         const std::vector<double>& percentiles = kDefaultPercentiles);

// 6 significant digits, round-half-even on the exact binary value.
std::string format_real(double value);

std::string degree_hist_csv(const DegreeHistogram& h);
std::string vertex_freq_csv(const std::vector<VertexFrequencyRecord>& records);
std::string summary_json(const StatsReport& report);

// File name -> content for every report artifact.
std::map<std::string, std::string> report_files(const StatsReport& report);

// degree_hist.csv, vertex_freq.csv, ngram_<n>.csv, patterns.csv, summary.json.
// Files are staged under temporary names and renamed; on failure nothing
// partial is left behind. Throws IoError naming the failing path.
void write_report(const StatsReport& report, const std::filesystem::path& directory);

// Writes name -> content pairs with the same all-or-nothing behaviour.
void write_files(const std::filesystem::path& directory, const std::map<std::string, std::string>& files);

// Readers for the CSV schemas above (ParseError on schema violations).
DegreeHistogram parse_degree_hist_csv(const std::string& text);
std::vector<VertexFrequencyRecord> parse_vertex_freq_csv(const std::string& text);
NGramCounts parse_ngram_csv(const std::string& text);
std::vector<FrequentPattern> parse_patterns_csv(const std::string& text);

}  // namespace spmine

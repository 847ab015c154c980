#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spmine/error.hpp"
#include "spmine/fpgrowth.hpp"
#include "spmine/graph.hpp"
#include "spmine/report.hpp"
#include "spmine/transactions.hpp"

namespace spmine {

enum class Mode { exhaustive, sample };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

// Absolute count ("5") or fraction of the transaction count ("0.01").
class MinSupport {
 public:
  static MinSupport absolute(std::uint64_t count);
  static MinSupport fraction(double value);
  // Integers without a decimal point are absolute; anything else is a fraction
  // in (0, 1]. Throws ValidationError otherwise.
  static MinSupport parse(const std::string& text);

  // Fractions round up; the result is never below 1.
  std::uint64_t resolve(std::size_t transaction_count) const;
  std::string to_string() const;

 private:
  bool relative_ = true;
  double fraction_ = 0.01;
  std::uint64_t absolute_ = 0;
};

struct RunConfig {
  std::filesystem::path input;
  bool directed = false;
  bool weighted = false;
  Mode mode = Mode::sample;
  std::size_t k = 100;
  std::uint64_t seed = 42;
  MinSupport min_support = MinSupport::fraction(0.01);
  std::size_t max_pattern_size = 3;  // 0 = unbounded
  std::vector<std::size_t> ngram_sizes = {1, 2, 3};
  std::filesystem::path out = "spmine-out";
  std::size_t dot_cap = 500;
  unsigned threads = 1;

  // Throws ValidationError on inconsistent settings.
  void validate() const;
  ParseOptions parse_options() const { return {directed, weighted}; }
};

// Error tagged with the failing stage and the process exit code
// (1 usage/validation, 2 input parsing, 3 runtime).
class StageError : public Error {
 public:
  StageError(std::string stage, int exit_code, const std::string& message)
      : Error(stage + ": " + message), stage_(std::move(stage)), exit_code_(exit_code) {}
  const std::string& stage() const noexcept { return stage_; }
  int exit_code() const noexcept { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

Graph ingest(const RunConfig& config);
std::vector<VertexId> choose_sources(const Graph& g, const RunConfig& config);
TransactionDb compute_paths(const Graph& g, const RunConfig& config);
TransactionDb load_transactions(const std::filesystem::path& path, std::optional<std::uint64_t> fingerprint);

struct MiningResult {
  std::uint64_t min_support = 0;
  std::vector<NGramCounts> ngrams;
  std::vector<FrequentPattern> patterns;
};

MiningResult mine_transactions(const TransactionDb& db, const RunConfig& config);
StatsReport assemble_report(const Graph& g, const TransactionDb& db, const RunConfig& config);

// Edges traversed by at least one transaction, as (min, max) pairs on
// undirected graphs.
EdgeSet traversed_edges(const TransactionDb& db, bool directed);

// Full pipeline: ingest, traverse, mine, report, DOT export into config.out.
StatsReport run_pipeline(const RunConfig& config);

// Human-readable one-page summary.
std::string summary_text(const StatsReport& report);

}  // namespace spmine

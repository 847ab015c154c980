#include "spmine/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spmine/traversal.hpp"

namespace spmine {

namespace {

// Maps library errors onto the stage that raised them. Input stages report
// every failure as a parse failure (exit 2).
template <typename F>
auto run_stage(const std::string& stage, bool input_stage, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const ParseError& e) {
    throw StageError(stage, 2, e.what());
  } catch (const IoError& e) {
    throw StageError(stage, 2, e.what());
  } catch (const ValidationError& e) {
    throw StageError(stage, input_stage ? 2 : 1, e.what());
  } catch (const std::exception& e) {
    throw StageError(stage, input_stage ? 2 : 3, e.what());
  }
}

RunMetadata metadata_for(const Graph& g, const RunConfig& config, std::uint64_t min_support) {
  RunMetadata m;
  m.mode = to_string(config.mode);
  m.seed = config.seed;
  m.k = config.mode == Mode::sample ? config.k : g.vertex_count();
  m.min_support_spec = config.min_support.to_string();
  m.min_support = min_support;
  if (config.max_pattern_size) m.max_pattern_size = config.max_pattern_size;
  m.fingerprint = fingerprint_hex(g.fingerprint());
  m.directed = g.directed();
  m.weighted = g.weighted();
  return m;
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::exhaustive ? "exhaustive" : "sample"; }

Mode parse_mode(const std::string& text) {
  if (text == "exhaustive") return Mode::exhaustive;
  if (text == "sample") return Mode::sample;
  throw ValidationError("unknown mode '" + text + "' (expected exhaustive or sample)");
}

MinSupport MinSupport::absolute(std::uint64_t count) {
  if (count == 0) throw ValidationError("absolute min_support must be at least 1");
  MinSupport s;
  s.relative_ = false;
  s.absolute_ = count;
  return s;
}

MinSupport MinSupport::fraction(double value) {
  if (!(value > 0.0 && value <= 1.0)) throw ValidationError("fractional min_support must be in (0, 1]");
  MinSupport s;
  s.relative_ = true;
  s.fraction_ = value;
  return s;
}

MinSupport MinSupport::parse(const std::string& text) {
  const char* first = text.data();
  const char* last = first + text.size();
  if (text.find_first_of(".eE") == std::string::npos) {
    std::uint64_t count = 0;
    auto [ptr, ec] = std::from_chars(first, last, count);
    if (text.empty() || ec != std::errc{} || ptr != last) throw ValidationError("invalid min_support '" + text + "'");
    return absolute(count);
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) throw ValidationError("invalid min_support '" + text + "'");
  return fraction(value);
}

std::uint64_t MinSupport::resolve(std::size_t transaction_count) const {
  if (!relative_) return absolute_;
  const double exact = fraction_ * static_cast<double>(transaction_count);
  // Products like 0.07 * 100 land a hair above the integer they denote.
  const double nearest = std::round(exact);
  const double scaled = std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact) ? nearest : std::ceil(exact);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(scaled));
}

std::string MinSupport::to_string() const {
  if (!relative_) return std::to_string(absolute_);
  return format_real(fraction_);
}

void RunConfig::validate() const {
  if (mode == Mode::sample && k == 0) throw ValidationError("sample mode requires k >= 1");
  if (ngram_sizes.empty()) throw ValidationError("at least one n-gram size is required");
  for (auto n : ngram_sizes)
    if (n == 0) throw ValidationError("n-gram sizes must be at least 1");
  if (threads == 0) throw ValidationError("threads must be at least 1");
}

Graph ingest(const RunConfig& config) {
  return run_stage("ingest", true, [&] {
    if (config.input.empty()) throw ValidationError("no input file given");
    return read_edge_list(config.input, config.parse_options());
  });
}

std::vector<VertexId> choose_sources(const Graph& g, const RunConfig& config) {
  return run_stage("sources", false, [&] {
    if (config.mode == Mode::exhaustive) return all_sources(g);
    return sample_sources(g, config.k, config.seed).sources;
  });
}

TransactionDb compute_paths(const Graph& g, const RunConfig& config) {
  const auto sources = choose_sources(g, config);
  return run_stage("paths", false, [&] { return run_traversals(g, sources, config.threads); });
}

TransactionDb load_transactions(const std::filesystem::path& path, std::optional<std::uint64_t> fingerprint) {
  return run_stage("transactions", true, [&] {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open transaction file '" + path.string() + "'");
    return parse_db(in, fingerprint);
  });
}

MiningResult mine_transactions(const TransactionDb& db, const RunConfig& config) {
  return run_stage("mine", false, [&] {
    MiningResult r;
    r.min_support = config.min_support.resolve(db.size());
    for (auto n : config.ngram_sizes) r.ngrams.push_back(count_ngrams(db, n, !config.directed));
    const auto tree = build_fptree(db, r.min_support);
    std::optional<std::size_t> max_size;
    if (config.max_pattern_size) max_size = config.max_pattern_size;
    r.patterns = mine(tree, r.min_support, max_size);
    return r;
  });
}

StatsReport assemble_report(const Graph& g, const TransactionDb& db, const RunConfig& config) {
  const auto mined = mine_transactions(db, config);
  return run_stage("report", false, [&] {
    return build_report(g, db, config.ngram_sizes, mined.patterns, metadata_for(g, config, mined.min_support));
  });
}

EdgeSet traversed_edges(const TransactionDb& db, bool directed) {
  EdgeSet edges;
  for (const auto& t : db.transactions) {
    const auto& vs = t.vertices();
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
      if (directed || vs[i] < vs[i + 1]) {
        edges.emplace(vs[i], vs[i + 1]);
      } else {
        edges.emplace(vs[i + 1], vs[i]);
      }
    }
  }
  return edges;
}

StatsReport run_pipeline(const RunConfig& config) {
  run_stage("config", false, [&] { config.validate(); });
  const auto g = ingest(config);
  const auto db = compute_paths(g, config);
  auto report = assemble_report(g, db, config);
  run_stage("write", false, [&] {
    auto files = report_files(report);
    const auto highlight = traversed_edges(db, g.directed());
    files["paths.dot"] = export_dot(g, &highlight, config.dot_cap);
    write_files(config.out, files);
  });
  return report;
}

std::string summary_text(const StatsReport& r) {
  std::ostringstream out;
  out << "graph        " << r.vertex_count << " vertices, " << r.edge_count << " edges (fp "
      << r.metadata.fingerprint << ")\n";
  out << "clustering   average " << format_real(r.clustering_average) << "\n";
  out << "traversal    mode " << r.metadata.mode << ", " << r.source_count << " sources, " << r.transaction_count
      << " transactions, " << r.unreachable_pairs << " unreachable pairs\n";
  for (const auto& c : r.ngrams)
    out << "ngrams n=" << c.n << "   " << c.entries.size() << " distinct, " << c.total() << " total\n";
  out << "patterns     " << r.patterns.size() << " frequent itemsets (min_support " << r.metadata.min_support
      << ")\n";
  out << "spearman_rho " << format_real(r.spearman_rho) << "\n";
  for (const auto& [p, s] : r.top_share)
    out << "top_share    " << format_real(p) << "% of vertices by degree hold " << format_real(s) << " of occurrences\n";
  const std::size_t shown = std::min<std::size_t>(5, r.vertex_records.size());
  if (shown) out << "most traversed vertices:\n";
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& v = r.vertex_records[i];
    out << "  vertex " << v.vertex << " degree " << v.degree << " in " << v.path_count << " paths ("
        << format_real(v.path_fraction) << ")\n";
  }
  return out.str();
}

}  // namespace spmine

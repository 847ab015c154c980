// spmine: shortest-path transaction mining over social graphs.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spmine/pipeline.hpp"
#include "spmine/traversal.hpp"

namespace {

using namespace spmine;

struct CliState {
  RunConfig config;
  std::string mode = "sample";
  std::string min_support = "0.01";
  std::string transactions;
};

// Every subcommand accepts the full RunConfig flag set so stages can be
// chained with identical arguments.
void add_config_flags(CLI::App* cmd, CliState& s, bool input_required) {
  auto* input = cmd->add_option("--input", s.config.input, "Edge-list file (u v [w] per line)");
  if (input_required) input->required();
  cmd->add_flag("--directed", s.config.directed, "Treat edges as arcs");
  cmd->add_flag("--weighted", s.config.weighted, "Read a third weight column");
  cmd->add_option("--mode", s.mode, "exhaustive | sample")->capture_default_str();
  cmd->add_option("--k", s.config.k, "Number of sampled sources")->capture_default_str();
  cmd->add_option("--seed", s.config.seed, "Sampling seed")->capture_default_str();
  cmd->add_option("--threads", s.config.threads, "Traversal worker threads")->capture_default_str();
  cmd->add_option("--min-support", s.min_support, "Absolute count or fraction in (0,1]")->capture_default_str();
  cmd->add_option("--max-size", s.config.max_pattern_size, "Largest itemset size (0 = unbounded)")
      ->capture_default_str();
  cmd->add_option("--ngrams", s.config.ngram_sizes, "Consecutive window sizes")->delimiter(',');
  cmd->add_option("--out", s.config.out, "Output directory")->envname("SPMINE_OUT")->capture_default_str();
  cmd->add_option("--dot-cap", s.config.dot_cap, "Max vertices in the DOT export (0 = all)")->capture_default_str();
}

void finish_config(CliState& s) {
  try {
    s.config.mode = parse_mode(s.mode);
    s.config.min_support = MinSupport::parse(s.min_support);
    s.config.validate();
  } catch (const ValidationError& e) {
    throw StageError("config", 1, e.what());
  }
}

TransactionDb transactions_for(const CliState& s, const Graph& g) {
  if (s.transactions.empty()) return compute_paths(g, s.config);
  return load_transactions(s.transactions, g.fingerprint());
}

void write_text(const std::filesystem::path& dir, const std::string& name, const std::string& content) {
  try {
    write_files(dir, {{name, content}});
  } catch (const IoError& e) {
    throw StageError("write", 3, e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shortest-path transaction mining for social graphs"};
  app.require_subcommand(1);
  CliState s;

  auto* run = app.add_subcommand("run", "Full pipeline: paths, mining, report, DOT export");
  add_config_flags(run, s, true);

  auto* ingest_cmd = app.add_subcommand("ingest", "Parse and validate a graph, print its fingerprint");
  add_config_flags(ingest_cmd, s, true);

  auto* paths = app.add_subcommand("paths", "Compute shortest paths into <out>/transactions.txt");
  add_config_flags(paths, s, true);

  auto* mine_cmd = app.add_subcommand("mine", "Mine patterns and n-grams from a transaction file");
  add_config_flags(mine_cmd, s, false);
  mine_cmd->add_option("--transactions", s.transactions, "Transaction file")->required();

  auto* stats = app.add_subcommand("stats", "Degree histogram and clustering coefficient");
  add_config_flags(stats, s, true);

  auto* report = app.add_subcommand("report", "Join graph properties and path frequencies");
  add_config_flags(report, s, true);
  report->add_option("--transactions", s.transactions, "Reuse a transaction file instead of traversing");

  auto* dot = app.add_subcommand("export-dot", "Write <out>/paths.dot with traversed edges highlighted");
  add_config_flags(dot, s, true);
  dot->add_option("--transactions", s.transactions, "Reuse a transaction file instead of traversing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    finish_config(s);
    if (*run) {
      const auto r = run_pipeline(s.config);
      std::cout << summary_text(r);
    } else if (*ingest_cmd) {
      const auto g = ingest(s.config);
      std::cout << "vertices    " << g.vertex_count() << "\n"
                << "edges       " << g.edge_count() << "\n"
                << "directed    " << (g.directed() ? "yes" : "no") << "\n"
                << "weighted    " << (g.weighted() ? "yes" : "no") << "\n"
                << "fingerprint " << fingerprint_hex(g.fingerprint()) << "\n";
    } else if (*paths) {
      const auto g = ingest(s.config);
      const auto db = compute_paths(g, s.config);
      write_text(s.config.out, "transactions.txt", serialize_db(db));
      std::cout << db.size() << " transactions from " << db.source_count << " sources, " << db.unreachable_pairs
                << " unreachable pairs -> " << (s.config.out / "transactions.txt").string() << "\n";
    } else if (*mine_cmd) {
      // With --input the file's fingerprint is checked against the graph.
      std::optional<std::uint64_t> fp;
      if (!s.config.input.empty()) fp = ingest(s.config).fingerprint();
      const auto db = load_transactions(s.transactions, fp);
      const auto mined = mine_transactions(db, s.config);
      std::map<std::string, std::string> files;
      for (const auto& c : mined.ngrams) files["ngram_" + std::to_string(c.n) + ".csv"] = ngram_csv(c);
      files["patterns.csv"] = patterns_csv(mined.patterns);
      try {
        write_files(s.config.out, files);
      } catch (const IoError& e) {
        throw StageError("write", 3, e.what());
      }
      std::cout << mined.patterns.size() << " patterns at min_support " << mined.min_support << "\n";
    } else if (*stats) {
      const auto g = ingest(s.config);
      nlohmann::ordered_json j;
      j["vertex_count"] = g.vertex_count();
      j["edge_count"] = g.edge_count();
      j["fingerprint"] = fingerprint_hex(g.fingerprint());
      if (!g.directed()) j["clustering_average"] = std::stod(format_real(clustering(g).average));
      try {
        write_files(s.config.out,
                    {{"degree_hist.csv", degree_hist_csv(degree_histogram(g))}, {"stats.json", j.dump(2) + "\n"}});
      } catch (const IoError& e) {
        throw StageError("write", 3, e.what());
      }
      std::cout << j.dump(2) << "\n";
    } else if (*report) {
      const auto g = ingest(s.config);
      const auto db = transactions_for(s, g);
      const auto r = assemble_report(g, db, s.config);
      try {
        write_report(r, s.config.out);
      } catch (const IoError& e) {
        throw StageError("write", 3, e.what());
      }
      std::cout << summary_text(r);
    } else if (*dot) {
      const auto g = ingest(s.config);
      const auto db = transactions_for(s, g);
      const auto highlight = traversed_edges(db, g.directed());
      write_text(s.config.out, "paths.dot", export_dot(g, &highlight, s.config.dot_cap));
    }
  } catch (const StageError& e) {
    std::cerr << "spmine: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "spmine: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

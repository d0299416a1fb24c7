// framescope: build semantic maps from time-windowed corpora and compare them.
//
//   framescope map --config run.json --window A --out-dir out/
//   framescope compare --before out/A.snapshot --after out/B.snapshot
//   framescope vocab --config run.json --window A --top 20
//   framescope ingest-report --config run.json

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "framescope.hpp"

namespace fs = std::filesystem;
using namespace framescope;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitPipeline = 2;

// Flags that override config fields. Unset flags leave the config alone.
struct Overrides {
  std::string config_path;
  std::optional<std::string> input_dir;
  std::optional<std::string> stopword_file;
  std::optional<std::int64_t> min_occurrences;
  std::optional<std::size_t> vocab_cap;
  std::optional<double> threshold;
  std::optional<std::string> similarity;
  std::optional<bool> binary_counts;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* cmd, bool config_required) {
    auto* opt = cmd->add_option("--config", config_path, "JSON run configuration");
    if (config_required) opt->required();
    cmd->add_option("--input-dir", input_dir, "Directory of .txt documents");
    cmd->add_option("--stopword-file", stopword_file, "Stopword list (one word per line)");
    cmd->add_option("--min-occurrences", min_occurrences, "Keep stems occurring more than this many times");
    cmd->add_option("--vocab-cap", vocab_cap, "Maximum number of vocabulary words");
    cmd->add_option("--threshold", threshold, "Similarity cutoff; overrides the derived threshold");
    cmd->add_option("--similarity", similarity, "cosine or pearson")->check(CLI::IsMember({"cosine", "pearson"}));
    cmd->add_flag("--binary{true}", binary_counts, "Use presence/absence instead of counts");
    cmd->add_option("--seed", seed, "Layout seed");
  }

  RunConfig resolve() const {
    RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (const char* env = std::getenv("FRAMESCOPE_STOPWORDS"); env && *env) c.stopword_file = env;
    if (input_dir) c.input_dir = *input_dir;
    if (stopword_file) c.stopword_file = *stopword_file;
    if (min_occurrences) c.min_occurrences = *min_occurrences;
    if (vocab_cap) c.vocab_cap = *vocab_cap;
    if (threshold) c.threshold_override = *threshold;
    if (similarity) c.similarity = *similarity == "pearson" ? SimilarityKind::Pearson : SimilarityKind::Cosine;
    if (binary_counts) c.binary_counts = *binary_counts;
    if (seed) c.seed = *seed;
    validate(c);
    if (c.input_dir.empty()) throw Error("config", "input_dir is required");
    return c;
  }
};

void print_warnings(const Warnings& warnings) {
  for (const auto& w : warnings) std::cerr << "framescope: warning: " << w << '\n';
}

int cmd_map(const Overrides& ov, const std::string& window, const fs::path& out_dir) {
  const RunConfig config = ov.resolve();
  IngestReport ingest;
  Warnings warnings;
  const Corpus corpus = prepare_corpus(config, &ingest, &warnings);
  print_warnings(ingest.warnings);
  print_warnings(warnings);
  const auto result = run_map(config, corpus, window, resolve_stoplist(config));
  print_warnings(result.warnings);
  const auto paths = write_map_outputs(result, out_dir);
  std::cerr << "framescope: wrote " << paths.snapshot.string() << ", " << paths.pajek.string() << ", "
            << paths.svg.string() << '\n';
  write_report(std::cout, result.report);
  return 0;
}

std::string opt_cell(const std::optional<double>& v) { return v ? fixed(*v, 4) : "-"; }

void print_diff_table(std::ostream& out, const SnapshotDiff& diff, const std::string& before, const std::string& after) {
  out << "focal words: " << before << " -> " << after << '\n';
  out << std::left << std::setw(22) << "stem" << std::right << std::setw(12) << "deg_before" << std::setw(12) << "deg_after"
      << std::setw(12) << "dist_before" << std::setw(12) << "dist_after" << "  verdict\n";
  for (const auto& t : diff.focal_trajectories)
    out << std::left << std::setw(22) << t.stem << std::right << std::setw(12) << opt_cell(t.centrality_before)
        << std::setw(12) << opt_cell(t.centrality_after) << std::setw(12) << opt_cell(t.centroid_distance_before)
        << std::setw(12) << opt_cell(t.centroid_distance_after) << "  " << to_string(t.verdict) << '\n';
  for (const auto& stem : diff.absent)
    out << std::left << std::setw(22) << stem << std::right << std::setw(12) << "-" << std::setw(12) << "-" << std::setw(12)
        << "-" << std::setw(12) << "-" << "  absent\n";
  out << "\nemerging terms (" << diff.emerging_terms.size() << "):\n";
  for (const auto& e : diff.emerging_terms)
    out << "  " << std::left << std::setw(24) << e.stem << std::right << fixed(e.weighted_degree, 4)
        << (e.is_compound ? "  compound" : "") << '\n';
}

std::vector<std::string> split_focal(const std::string& list) {
  std::vector<std::string> words;
  std::stringstream ss(list);
  std::string w;
  while (std::getline(ss, w, ',')) {
    const auto tokens = tokenize(w);
    for (const auto& t : tokens) words.push_back(stem_plural(t.stem));
  }
  return words;
}

int cmd_compare(const fs::path& before_path, const fs::path& after_path, const std::string& focal,
                const std::optional<fs::path>& out_dir) {
  const auto before = read_snapshot(before_path);
  const auto after = read_snapshot(after_path);
  const auto words = focal.empty() ? default_focal_words() : split_focal(focal);
  const auto diff = compare_snapshots(before.snapshot, after.snapshot, words);

  print_diff_table(std::cout, diff, before.snapshot.window_label, after.snapshot.window_label);
  if (out_dir) {
    std::error_code ec;
    fs::create_directories(*out_dir, ec);
    const std::string stem = before.snapshot.window_label + "_vs_" + after.snapshot.window_label;
    {
      const auto path = *out_dir / (stem + "_diff.csv");
      auto out = detail::open_for_write(path);
      write_diff_csv(out, diff);
      detail::finish_write(out, path);
    }
    {
      const auto path = *out_dir / (stem + "_diff.txt");
      auto out = detail::open_for_write(path);
      print_diff_table(out, diff, before.snapshot.window_label, after.snapshot.window_label);
      detail::finish_write(out, path);
    }
  }
  return 0;
}

int cmd_vocab(const Overrides& ov, const std::string& window, std::optional<std::size_t> top) {
  const RunConfig config = ov.resolve();
  IngestReport ingest;
  Warnings warnings;
  const Corpus corpus = prepare_corpus(config, &ingest, &warnings);
  print_warnings(ingest.warnings);
  print_warnings(warnings);
  const auto run = run_vocabulary(config, corpus, window, resolve_stoplist(config));
  const auto& v = run.vocab;
  std::cout << "window " << window << ": " << v.included_count() << " included of " << v.entries.size()
            << " stems (cutoff " << (v.strict ? "> " : ">= ") << v.min_occurrences << ", cap " << v.cap << ")\n";
  std::cout << std::left << std::setw(6) << "rank" << std::setw(24) << "stem" << std::right << std::setw(12) << "frequency"
            << std::setw(8) << "docs" << "  status\n";
  const std::size_t limit = top.value_or(v.entries.size());
  for (std::size_t i = 0; i < v.entries.size() && i < limit; ++i) {
    const auto& e = v.entries[i];
    std::cout << std::left << std::setw(6) << (i + 1) << std::setw(24) << e.stem << std::right << std::setw(12)
              << e.window_frequency << std::setw(8) << e.doc_frequency << "  " << (e.included ? "included" : "excluded")
              << '\n';
  }
  return 0;
}

int cmd_ingest_report(const Overrides& ov) {
  const RunConfig config = ov.resolve();
  IngestReport ingest;
  Warnings warnings;
  const Corpus corpus = prepare_corpus(config, &ingest, &warnings);
  print_warnings(warnings);
  std::cout << "input: " << config.input_dir.string() << '\n'
            << "files: " << ingest.files_seen << '\n'
            << "documents: " << ingest.documents << '\n'
            << "dated: " << ingest.dated << '\n'
            << "replaced_bytes: " << ingest.replaced_bytes << '\n'
            << "skipped: " << ingest.skipped.size() << '\n';
  for (const auto& s : ingest.skipped) std::cout << "  " << s.path << " (" << s.reason << ")\n";
  for (const auto& w : corpus.windows)
    std::cout << "window " << w.label << " [" << format_date(w.start) << ", " << format_date(w.end)
              << "]: " << w.document_ids.size() << " documents\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"framescope: semantic maps and frame drift for time-windowed corpora"};
  app.require_subcommand(1);

  Overrides map_ov, vocab_ov, ingest_ov;
  std::string map_window, vocab_window;
  std::string out_dir = "out";
  auto* map = app.add_subcommand("map", "Build the semantic map for one window");
  map_ov.attach(map, true);
  map->add_option("--window", map_window, "Window label")->required();
  map->add_option("--out-dir", out_dir, "Output directory");

  std::string before, after, focal;
  std::optional<std::string> compare_out;
  std::string compare_config;
  auto* compare = app.add_subcommand("compare", "Compare two saved snapshots");
  compare->add_option("--before", before, "Earlier snapshot file")->required()->check(CLI::ExistingFile);
  compare->add_option("--after", after, "Later snapshot file")->required()->check(CLI::ExistingFile);
  compare->add_option("--focal", focal, "Comma-separated focal words (default: product,sweetener,food,sugar,diet)");
  compare->add_option("--out-dir", compare_out, "Write <before>_vs_<after>_diff.{csv,txt} here");
  compare->add_option("--config", compare_config, "Accepted for symmetry; snapshots carry their own fingerprint");

  std::optional<std::size_t> top;
  auto* vocab = app.add_subcommand("vocab", "Print the window vocabulary with frequencies");
  vocab_ov.attach(vocab, true);
  vocab->add_option("--window", vocab_window, "Window label")->required();
  vocab->add_option("--top", top, "Show only the first N entries");

  auto* ingest = app.add_subcommand("ingest-report", "Summarize corpus ingestion and window membership");
  ingest_ov.attach(ingest, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*map) return cmd_map(map_ov, map_window, out_dir);
    if (*compare)
      return cmd_compare(before, after, focal, compare_out ? std::optional<fs::path>(*compare_out) : std::nullopt);
    if (*vocab) return cmd_vocab(vocab_ov, vocab_window, top);
    if (*ingest) return cmd_ingest_report(ingest_ov);
  } catch (const Error& e) {
    std::cerr << "framescope: error [" << e.module() << "]: " << e.what() << '\n';
    if (!e.hint().empty()) std::cerr << "  hint: " << e.hint() << '\n';
    return e.module() == "config" ? kExitUsage : kExitPipeline;
  } catch (const std::exception& e) {
    std::cerr << "framescope: error: " << e.what() << '\n';
    return kExitPipeline;
  }
  return kExitUsage;
}

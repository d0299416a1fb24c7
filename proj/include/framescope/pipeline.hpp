#pragma once

// End-to-end map construction for one window: preprocessing, matrices,
// threshold, graph and layout, plus the writer for all run artifacts.

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "framescope/config.hpp"
#include "framescope/corpus.hpp"
#include "framescope/diachrony.hpp"
#include "framescope/error.hpp"
#include "framescope/export_io.hpp"
#include "framescope/layout.hpp"
#include "framescope/netbuild.hpp"
#include "framescope/report.hpp"
#include "framescope/textprep.hpp"
#include "framescope/vectorspace.hpp"

namespace framescope {

/// Ingests `config.input_dir` and defines every configured window.
inline Corpus prepare_corpus(const RunConfig& config, IngestReport* report = nullptr, Warnings* warnings = nullptr) {
  Corpus corpus = ingest_directory(config.input_dir, DateRule{config.date_pattern, true}, report);
  for (const auto& w : config.windows) define_window(corpus, w.label, w.start, w.end, config.include_undated, warnings);
  return corpus;
}

inline Stoplist resolve_stoplist(const RunConfig& config) {
  return config.stopword_file.empty() ? uspto_stoplist() : load_stoplist(config.stopword_file);
}

/// Per-document frequency lists for a window, in window order.
inline std::vector<FrequencyList> document_frequencies(const Corpus& corpus, const TimeWindow& window,
                                                       const Stoplist& stoplist, const PluralRule& rule = {}) {
  std::vector<FrequencyList> lists;
  lists.reserve(window.document_ids.size());
  for (const auto& id : window.document_ids) {
    const Document* doc = corpus.find(id);
    if (!doc) throw Error("corpus", "window '" + window.label + "' refers to unknown document '" + id + "'");
    lists.push_back(count_terms(id, preprocess(doc->text, stoplist, rule)));
  }
  return lists;
}

struct VocabularyRun {
  std::vector<FrequencyList> per_doc;
  FrequencyList window_freq;
  Vocabulary vocab;
};

inline VocabularyRun run_vocabulary(const RunConfig& config, const Corpus& corpus, const std::string& window_label,
                                    const Stoplist& stoplist) {
  validate(config);
  const TimeWindow* window = corpus.window(window_label);
  if (!window) throw Error("corpus", "no window labelled '" + window_label + "'", "define it under \"windows\" in the config");
  if (window->document_ids.empty()) throw Error("corpus", "window '" + window_label + "' contains no documents");
  VocabularyRun run;
  run.per_doc = document_frequencies(corpus, *window, stoplist, PluralRule{config.plural_min_length, true});
  run.window_freq = merge_frequencies(window_label, run.per_doc);
  run.vocab = build_vocabulary(run.window_freq, {*config.min_occurrences, config.vocab_cap, config.strict_cutoff}, run.per_doc);
  return run;
}

struct MapResult {
  SnapshotFile file;
  CoWordMatrix coword;
  FrequencyList window_freq;
  RunReport report;
  Warnings warnings;
};

/// Builds the snapshot for one window. With Pearson similarity, undefined
/// correlations never form edges and the derived threshold is clamped to
/// [0,1] so the edge rule stays comparable with the cosine path.
inline MapResult run_map(const RunConfig& config, const Corpus& corpus, const std::string& window_label,
                         const Stoplist& stoplist) {
  auto vr = run_vocabulary(config, corpus, window_label, stoplist);
  const TimeWindow& window = *corpus.window(window_label);

  MapResult out;
  auto& file = out.file;
  file.config = canonical_config(config, stoplist);
  file.similarity_kind = to_string(config.similarity);
  file.word_doc = build_word_doc_matrix(window, vr.vocab, vr.per_doc, config.binary_counts);
  out.coword = build_coword_matrix(file.word_doc);

  if (config.similarity == SimilarityKind::Cosine) {
    file.similarity = cosine_matrix(file.word_doc);
  } else {
    auto pearson = pearson_matrix(file.word_doc, &out.warnings);
    file.similarity = {pearson.words, pearson.cells, std::nullopt};
  }
  if (file.similarity.words.size() < 2)
    throw Error("netbuild", "threshold undefined: only one word in the vocabulary", "lower min_occurrences");
  file.derived_threshold = derive_threshold(file.similarity);
  file.similarity.threshold = file.derived_threshold;
  const double applied = config.threshold_override.value_or(std::clamp(file.derived_threshold, 0.0, 1.0));

  const SizeOptions sizes{config.log_base, config.min_size};
  GraphStats stats;
  auto& snap = file.snapshot;
  snap.window_label = window_label;
  snap.fingerprint = fingerprint(config, stoplist);
  snap.vocab = vr.vocab;
  snap.graph = build_graph(file.similarity, vr.vocab, applied, sizes, &stats);

  const auto td = target_distances(snap.graph, config.layout.base_length, config.layout.stiffness);
  snap.layout = kamada_kawai(snap.graph, td, LayoutOptions{config.seed, config.layout.epsilon, config.layout.max_iter, false});
  if (!snap.layout.converged)
    out.warnings.push_back("layout for '" + window_label + "' stopped before reaching epsilon");

  out.window_freq = std::move(vr.window_freq);
  out.report = recompute_report(file);
  return out;
}

struct MapArtifacts {
  std::filesystem::path snapshot, pajek, svg, worddoc_csv, coword_csv, similarity_csv, frequency_csv, report;
};

inline MapArtifacts artifact_paths(const std::filesystem::path& out_dir, const std::string& label) {
  return {out_dir / (label + ".snapshot"),     out_dir / (label + ".net"),         out_dir / (label + ".svg"),
          out_dir / (label + "_worddoc.csv"),  out_dir / (label + "_coword.csv"),  out_dir / (label + "_similarity.csv"),
          out_dir / (label + "_frequencies.csv"), out_dir / (label + "_report.txt")};
}

inline MapArtifacts write_map_outputs(const MapResult& r, const std::filesystem::path& out_dir, const SvgOptions& svg = {}) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("export_io", "cannot create output directory " + out_dir.string() + ": " + ec.message());
  const auto paths = artifact_paths(out_dir, r.file.snapshot.window_label);
  write_snapshot(paths.snapshot, r.file);
  write_pajek(paths.pajek, r.file.snapshot.graph, r.file.snapshot.layout);
  render_svg(paths.svg, r.file.snapshot.graph, r.file.snapshot.layout, svg);
  write_csv(paths.worddoc_csv, r.file.word_doc);
  write_csv(paths.coword_csv, r.coword);
  write_csv(paths.similarity_csv, r.file.similarity);
  {
    auto out = detail::open_for_write(paths.frequency_csv);
    write_frequency_csv(out, r.window_freq);
    detail::finish_write(out, paths.frequency_csv);
  }
  {
    auto out = detail::open_for_write(paths.report);
    write_report(out, r.report);
    detail::finish_write(out, paths.report);
  }
  return paths;
}

}  // namespace framescope

#pragma once

// Run configuration: JSON loading, validation and the canonical fingerprint
// that decides whether two snapshots are comparable.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "framescope/corpus.hpp"
#include "framescope/error.hpp"
#include "framescope/format.hpp"
#include "framescope/netbuild.hpp"
#include "framescope/textprep.hpp"

namespace framescope {

enum class SimilarityKind { Cosine, Pearson };

inline std::string to_string(SimilarityKind k) { return k == SimilarityKind::Cosine ? "cosine" : "pearson"; }

struct WindowSpec {
  std::string label;
  Date start;
  Date end;
};

struct LayoutParams {
  double base_length = 1.0;  // L0
  double stiffness = 1.0;    // K
  double epsilon = 1e-4;
  std::size_t max_iter = 0;  // 0: 1000 * nodes
};

struct RunConfig {
  std::filesystem::path input_dir;
  std::filesystem::path stopword_file;  // empty: built-in USPTO list
  std::optional<std::int64_t> min_occurrences;
  std::size_t vocab_cap = 100;
  bool strict_cutoff = true;
  std::optional<double> threshold_override;
  SimilarityKind similarity = SimilarityKind::Cosine;
  bool binary_counts = false;
  std::uint64_t seed = 42;
  LayoutParams layout;
  std::vector<WindowSpec> windows;
  bool include_undated = false;
  std::string date_pattern = DateRule{}.filename_pattern;
  double log_base = SizeOptions{}.log_base;
  double min_size = SizeOptions{}.min_size;
  std::size_t plural_min_length = PluralRule{}.min_length;
};

/// Throws Error("config", ...) on the first violated constraint.
inline void validate(const RunConfig& c) {
  auto bad = [](const std::string& what) { return Error("config", what); };
  if (!c.min_occurrences) throw bad("min_occurrences is required");
  if (*c.min_occurrences < 0) throw bad("min_occurrences must be >= 0");
  if (c.vocab_cap < 1) throw bad("vocab_cap must be >= 1");
  if (c.threshold_override && !(*c.threshold_override >= 0.0 && *c.threshold_override <= 1.0))
    throw bad("threshold must lie in [0,1]");
  if (!(c.layout.epsilon > 0.0)) throw bad("layout.epsilon must be > 0");
  if (!(c.layout.base_length > 0.0)) throw bad("layout.L0 must be > 0");
  if (!(c.layout.stiffness > 0.0)) throw bad("layout.K must be > 0");
  if (!(c.log_base > 1.0)) throw bad("log_base must be > 1");
  if (!(c.min_size > 0.0)) throw bad("min_size must be > 0");
  for (std::size_t i = 0; i < c.windows.size(); ++i) {
    if (c.windows[i].end < c.windows[i].start) throw bad("window '" + c.windows[i].label + "' ends before it starts");
    for (std::size_t j = 0; j < i; ++j)
      if (c.windows[i].label == c.windows[j].label) throw bad("duplicate window label '" + c.windows[i].label + "'");
  }
}

namespace detail {

template <typename T>
T json_get(const nlohmann::json& j, const char* key, const T& fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error("config", std::string("field '") + key + "' has the wrong type");
  }
}

inline Date json_date(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) throw Error("config", std::string("window field '") + key + "' must be a YYYY-MM-DD string");
  auto d = parse_date(j.at(key).get<std::string>());
  if (!d) throw Error("config", "bad date '" + j.at(key).get<std::string>() + "'");
  return *d;
}

}  // namespace detail

/// Relative paths resolve against `base_dir` (normally the config file's
/// directory).
inline RunConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {}) {
  if (!j.is_object()) throw Error("config", "config must be a JSON object");
  RunConfig c;
  auto resolve = [&](const std::string& p) -> std::filesystem::path {
    if (p.empty()) return {};
    std::filesystem::path path(p);
    return path.is_absolute() || base_dir.empty() ? path : base_dir / path;
  };
  c.input_dir = resolve(detail::json_get<std::string>(j, "input_dir", ""));
  c.stopword_file = resolve(detail::json_get<std::string>(j, "stopword_file", ""));
  if (j.contains("min_occurrences") && !j.at("min_occurrences").is_null())
    c.min_occurrences = detail::json_get<std::int64_t>(j, "min_occurrences", 0);
  c.vocab_cap = detail::json_get<std::size_t>(j, "vocab_cap", c.vocab_cap);
  c.strict_cutoff = detail::json_get<bool>(j, "strict_cutoff", c.strict_cutoff);
  if (j.contains("threshold_override") && !j.at("threshold_override").is_null())
    c.threshold_override = detail::json_get<double>(j, "threshold_override", 0.0);
  const auto sim = detail::json_get<std::string>(j, "similarity", "cosine");
  if (sim == "cosine") c.similarity = SimilarityKind::Cosine;
  else if (sim == "pearson") c.similarity = SimilarityKind::Pearson;
  else throw Error("config", "similarity must be 'cosine' or 'pearson'");
  c.binary_counts = detail::json_get<bool>(j, "binary_counts", c.binary_counts);
  c.seed = detail::json_get<std::uint64_t>(j, "seed", c.seed);
  if (j.contains("layout")) {
    const auto& l = j.at("layout");
    c.layout.base_length = detail::json_get<double>(l, "L0", c.layout.base_length);
    c.layout.stiffness = detail::json_get<double>(l, "K", c.layout.stiffness);
    c.layout.epsilon = detail::json_get<double>(l, "epsilon", c.layout.epsilon);
    c.layout.max_iter = detail::json_get<std::size_t>(l, "max_iter", c.layout.max_iter);
  }
  if (j.contains("windows")) {
    for (const auto& w : j.at("windows")) {
      if (!w.contains("label") || !w.at("label").is_string()) throw Error("config", "every window needs a string label");
      c.windows.push_back({w.at("label").get<std::string>(), detail::json_date(w, "start"), detail::json_date(w, "end")});
    }
  }
  c.include_undated = detail::json_get<bool>(j, "include_undated", c.include_undated);
  c.date_pattern = detail::json_get<std::string>(j, "date_pattern", c.date_pattern);
  c.log_base = detail::json_get<double>(j, "log_base", c.log_base);
  c.min_size = detail::json_get<double>(j, "min_size", c.min_size);
  c.plural_min_length = detail::json_get<std::size_t>(j, "plural_min_length", c.plural_min_length);
  return c;
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("config", "cannot read config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("config", "invalid JSON in " + path.string() + ": " + e.what());
  }
  return config_from_json(j, path.parent_path());
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Every setting that changes what a window's snapshot contains, in a fixed
/// order. Paths and window bounds are excluded; the stoplist enters by content.
inline std::string canonical_config(const RunConfig& c, const Stoplist& stoplist) {
  std::string words;
  for (const auto& w : stoplist) words += w + '\n';
  std::ostringstream s;
  s << "min_occurrences=" << c.min_occurrences.value_or(-1) << ";vocab_cap=" << c.vocab_cap
    << ";strict_cutoff=" << c.strict_cutoff << ";threshold="
    << (c.threshold_override ? exact(*c.threshold_override) : std::string("derived"))
    << ";similarity=" << to_string(c.similarity) << ";binary_counts=" << c.binary_counts << ";seed=" << c.seed
    << ";L0=" << exact(c.layout.base_length) << ";K=" << exact(c.layout.stiffness) << ";epsilon=" << exact(c.layout.epsilon)
    << ";max_iter=" << c.layout.max_iter << ";include_undated=" << c.include_undated << ";log_base=" << exact(c.log_base)
    << ";min_size=" << exact(c.min_size) << ";plural_min_length=" << c.plural_min_length
    << ";stoplist=" << hex64(fnv1a64(words));
  return s.str();
}

inline std::string fingerprint(const RunConfig& c, const Stoplist& stoplist) {
  return hex64(fnv1a64(canonical_config(c, stoplist)));
}

}  // namespace framescope

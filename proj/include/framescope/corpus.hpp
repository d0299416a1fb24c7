#pragma once

// Document ingestion and time-window partitioning.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "framescope/error.hpp"
#include "framescope/utf8.hpp"

namespace framescope {

using Date = std::chrono::year_month_day;

/// Parses `YYYY-MM-DD`. Returns nullopt for malformed or impossible dates.
inline std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  auto num = [&](std::size_t off, std::size_t len, auto& out) {
    auto first = text.data() + off;
    auto [ptr, ec] = std::from_chars(first, first + len, out);
    return ec == std::errc{} && ptr == first + len;
  };
  if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d)) return std::nullopt;
  Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) return std::nullopt;
  return date;
}

inline std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

struct Document {
  std::string id;
  std::string text;
  std::optional<Date> date;
  std::string source_path;

  bool operator==(const Document&) const = default;
};

struct TimeWindow {
  std::string label;
  Date start;
  Date end;
  std::vector<std::string> document_ids;

  bool operator==(const TimeWindow&) const = default;
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<TimeWindow> windows;

  const Document* find(std::string_view id) const {
    for (const auto& doc : documents)
      if (doc.id == id) return &doc;
    return nullptr;
  }
  const TimeWindow* window(std::string_view label) const {
    for (const auto& w : windows)
      if (w.label == label) return &w;
    return nullptr;
  }

  bool operator==(const Corpus&) const = default;
};

/// How document dates are found. The filename pattern must have three
/// capture groups (year, month, day); an empty pattern disables it. A
/// `metadata.csv` sidecar (`id,date`) overrides filename dates.
struct DateRule {
  std::string filename_pattern = R"(^(\d{4})-(\d{2})-(\d{2}))";
  bool use_sidecar = true;
};

struct SkippedFile {
  std::string path;
  std::string reason;
};

struct IngestReport {
  std::size_t files_seen = 0;
  std::size_t documents = 0;
  std::size_t dated = 0;
  std::size_t replaced_bytes = 0;
  std::vector<SkippedFile> skipped;
  Warnings warnings;
};

namespace detail {

inline bool has_txt_extension(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".txt";
}

inline bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

inline std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return std::move(ss).str();
}

inline std::optional<Date> date_from_filename(const std::string& name, const std::regex& pattern) {
  std::smatch m;
  if (!std::regex_search(name, m, pattern) || m.size() < 4) return std::nullopt;
  return parse_date(m[1].str() + "-" + m[2].str() + "-" + m[3].str());
}

inline void apply_sidecar(const std::filesystem::path& csv, std::vector<Document>& docs, IngestReport& report) {
  std::ifstream in(csv);
  if (!in) {
    report.warnings.push_back("cannot read " + csv.string());
    return;
  }
  std::unordered_map<std::string, Document*> by_id;
  for (auto& d : docs) by_id.emplace(d.id, &d);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("id,", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      report.warnings.push_back("metadata.csv:" + std::to_string(lineno) + ": expected id,date");
      continue;
    }
    const std::string id = line.substr(0, comma);
    const auto date = parse_date(line.substr(comma + 1));
    if (!date) {
      report.warnings.push_back("metadata.csv:" + std::to_string(lineno) + ": bad date");
      continue;
    }
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      report.warnings.push_back("metadata.csv:" + std::to_string(lineno) + ": unknown id '" + id + "'");
      continue;
    }
    it->second->date = date;
  }
}

}  // namespace detail

/// Reads every `.txt` file in `dir` (non-recursive) as one document, ordered
/// by filename. Unreadable or blank files are skipped and recorded in the
/// report; invalid UTF-8 bytes are replaced with U+FFFD.
inline Corpus ingest_directory(const std::filesystem::path& dir, const DateRule& rule = {},
                               IngestReport* report_out = nullptr) {
  namespace fs = std::filesystem;
  IngestReport report;
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw Error("corpus", "input directory does not exist: " + dir.string(), "check input_dir");

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file(ec) && detail::has_txt_extension(entry.path())) files.push_back(entry.path());
  }
  if (ec) throw Error("corpus", "cannot list directory " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

  std::optional<std::regex> pattern;
  if (!rule.filename_pattern.empty()) {
    try {
      pattern.emplace(rule.filename_pattern);
    } catch (const std::regex_error& e) {
      throw Error("corpus", "invalid date pattern: " + std::string(e.what()), "fix date_pattern");
    }
  }

  Corpus corpus;
  std::unordered_set<std::string> ids;
  for (const auto& path : files) {
    ++report.files_seen;
    auto raw = detail::read_file(path);
    if (!raw) {
      report.skipped.push_back({path.string(), "unreadable"});
      continue;
    }
    Document doc;
    const std::size_t replaced = utf8::sanitize(*raw, doc.text);
    if (replaced > 0) {
      report.replaced_bytes += replaced;
      report.warnings.push_back(path.filename().string() + ": replaced " + std::to_string(replaced) +
                                " undecodable byte(s)");
    }
    if (detail::blank(doc.text)) {
      report.skipped.push_back({path.string(), "empty"});
      continue;
    }
    doc.id = path.stem().string();
    if (!ids.insert(doc.id).second) {
      report.skipped.push_back({path.string(), "duplicate id '" + doc.id + "'"});
      continue;
    }
    doc.source_path = path.string();
    if (pattern) doc.date = detail::date_from_filename(path.filename().string(), *pattern);
    corpus.documents.push_back(std::move(doc));
  }

  if (rule.use_sidecar && fs::exists(dir / "metadata.csv")) detail::apply_sidecar(dir / "metadata.csv", corpus.documents, report);

  for (const auto& s : report.skipped) report.warnings.push_back("skipped " + s.path + " (" + s.reason + ")");
  report.documents = corpus.documents.size();
  report.dated = static_cast<std::size_t>(
      std::count_if(corpus.documents.begin(), corpus.documents.end(), [](const Document& d) { return d.date.has_value(); }));
  if (report_out) *report_out = report;
  if (corpus.documents.empty())
    throw Error("corpus", "no documents in " + dir.string(), "the directory needs at least one non-empty .txt file");
  return corpus;
}

/// Membership rule shared by define_window and validation: dated documents
/// must fall in [start, end]; undated ones only count when requested.
inline bool in_window(const Document& doc, const Date& start, const Date& end, bool include_undated) {
  if (!doc.date) return include_undated;
  return start <= *doc.date && *doc.date <= end;
}

/// Adds a window to the corpus and returns it. Document order follows the
/// corpus order.
inline TimeWindow define_window(Corpus& corpus, std::string label, const Date& start, const Date& end,
                                bool include_undated = false, Warnings* warnings = nullptr) {
  if (!start.ok() || !end.ok()) throw Error("corpus", "window '" + label + "' has an invalid date");
  if (end < start) throw Error("corpus", "window '" + label + "' ends before it starts");
  if (corpus.window(label)) throw Error("corpus", "duplicate window label '" + label + "'");
  TimeWindow window{std::move(label), start, end, {}};
  for (const auto& doc : corpus.documents)
    if (in_window(doc, start, end, include_undated)) window.document_ids.push_back(doc.id);
  if (window.document_ids.empty()) warn(warnings, "window '" + window.label + "' contains no documents");
  corpus.windows.push_back(window);
  return window;
}

}  // namespace framescope

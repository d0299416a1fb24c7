#pragma once

// Writers and readers: Pajek .net, SVG maps, CSV matrices and the native
// snapshot format.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "framescope/diachrony.hpp"
#include "framescope/error.hpp"
#include "framescope/format.hpp"
#include "framescope/layout.hpp"
#include "framescope/netbuild.hpp"
#include "framescope/report.hpp"
#include "framescope/vectorspace.hpp"

namespace framescope {

namespace detail {

inline std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("export_io", "cannot write " + path.string());
  return out;
}

inline void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("export_io", "failed writing " + path.string());
}

inline std::vector<Point> positions_for(const SemanticGraph& g, const LayoutResult& l) {
  std::vector<Point> pos;
  pos.reserve(g.nodes.size());
  for (const auto& node : g.nodes) {
    const auto p = l.position(node.stem);
    if (!p) throw Error("export_io", "layout has no position for '" + node.stem + "'");
    pos.push_back(*p);
  }
  return pos;
}

// Min-max per axis into [0,1]; a degenerate axis maps to 0.5.
inline std::vector<Point> normalize_unit_box(std::vector<Point> pos) {
  if (pos.empty()) return pos;
  auto [minx, maxx] = std::minmax_element(pos.begin(), pos.end(), [](auto& a, auto& b) { return a.x < b.x; });
  auto [miny, maxy] = std::minmax_element(pos.begin(), pos.end(), [](auto& a, auto& b) { return a.y < b.y; });
  const double x0 = minx->x, xr = maxx->x - minx->x;
  const double y0 = miny->y, yr = maxy->y - miny->y;
  for (auto& p : pos) {
    p.x = xr > 0.0 ? (p.x - x0) / xr : 0.5;
    p.y = yr > 0.0 ? (p.y - y0) / yr : 0.5;
  }
  return pos;
}

inline std::string pajek_quote(std::string_view label) {
  std::string out = "\"";
  for (const char c : label) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) parts.push_back(line.substr(start, i - start));
  }
  return parts;
}

inline bool starts_with_nocase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(s[i])) != std::tolower(static_cast<unsigned char>(prefix[i]))) return false;
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pajek

/// `*Vertices n`, one `i "label" x y size` line per node (coordinates in the
/// unit box), `*Edges`, one `i j weight` line per edge. Six decimals, LF.
inline void write_pajek(std::ostream& out, const SemanticGraph& g, const LayoutResult& l) {
  if (g.nodes.empty() || g.edges.empty()) throw Error("export_io", "refusing to write an empty graph");
  const auto pos = detail::normalize_unit_box(detail::positions_for(g, l));
  out << "*Vertices " << g.nodes.size() << '\n';
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    out << (i + 1) << ' ' << detail::pajek_quote(g.nodes[i].stem) << ' ' << fixed6(pos[i].x) << ' ' << fixed6(pos[i].y)
        << ' ' << fixed6(g.nodes[i].size) << '\n';
  out << "*Edges\n";
  for (const auto& e : g.edges)
    out << (*g.index_of(e.source) + 1) << ' ' << (*g.index_of(e.target) + 1) << ' ' << fixed6(e.weight) << '\n';
}

inline void write_pajek(const std::filesystem::path& path, const SemanticGraph& g, const LayoutResult& l) {
  auto out = detail::open_for_write(path);
  write_pajek(out, g, l);
  detail::finish_write(out, path);
}

/// Reads the subset produced by write_pajek. Frequencies are recovered from
/// node sizes under `sizes`; positions stay in the unit box.
inline std::pair<SemanticGraph, LayoutResult> read_pajek(std::istream& in, const SizeOptions& sizes = {}) {
  auto fail = [](std::size_t lineno, const std::string& what) -> Error {
    return Error("export_io", "pajek line " + std::to_string(lineno) + ": " + what);
  };
  SemanticGraph g;
  LayoutResult l;
  std::string line;
  std::size_t lineno = 0;
  std::size_t expected = 0;
  enum class Section { None, Vertices, Edges } section = Section::None;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::string_view view(line);
    view.remove_prefix(view.find_first_not_of(" \t"));

    if (view.front() == '*') {
      if (detail::starts_with_nocase(view, "*vertices")) {
        if (section != Section::None) throw fail(lineno, "duplicate *Vertices");
        const auto parts = detail::split_ws(view);
        const auto n = parts.size() == 2 ? parse_int<std::size_t>(parts[1]) : std::nullopt;
        if (!n) throw fail(lineno, "expected '*Vertices <count>'");
        expected = *n;
        section = Section::Vertices;
      } else if (detail::starts_with_nocase(view, "*edges")) {
        if (section != Section::Vertices) throw fail(lineno, "*Edges before *Vertices");
        if (g.nodes.size() != expected)
          throw fail(lineno, "expected " + std::to_string(expected) + " vertices, found " + std::to_string(g.nodes.size()));
        section = Section::Edges;
      } else {
        throw fail(lineno, "unsupported section '" + std::string(view) + "'");
      }
      continue;
    }

    if (section == Section::Vertices) {
      const auto quote = view.find('"');
      if (quote == std::string_view::npos) throw fail(lineno, "vertex label must be quoted");
      const auto index = parse_int<std::size_t>(detail::split_ws(view.substr(0, quote)).empty()
                                                    ? std::string_view{}
                                                    : detail::split_ws(view.substr(0, quote)).front());
      if (!index) throw fail(lineno, "bad vertex index");
      if (*index != g.nodes.size() + 1)
        throw fail(lineno, "vertex index gap: expected " + std::to_string(g.nodes.size() + 1) + ", got " +
                               std::to_string(*index));
      if (g.nodes.size() == expected) throw fail(lineno, "more vertices than declared");
      std::string label;
      std::size_t i = quote + 1;
      for (;; ++i) {
        if (i >= view.size()) throw fail(lineno, "unterminated label");
        if (view[i] == '"') {
          if (i + 1 < view.size() && view[i + 1] == '"') {
            label += '"';
            ++i;
            continue;
          }
          break;
        }
        label += view[i];
      }
      const auto nums = detail::split_ws(view.substr(i + 1));
      if (nums.size() != 3) throw fail(lineno, "expected x y size after the label");
      const auto x = parse_double(nums[0]), y = parse_double(nums[1]), size = parse_double(nums[2]);
      if (!x || !y || !size || !std::isfinite(*x) || !std::isfinite(*y) || !std::isfinite(*size))
        throw fail(lineno, "bad vertex coordinates");
      const std::int64_t freq =
          *size <= sizes.min_size + 1e-9 ? 1 : static_cast<std::int64_t>(std::llround(std::pow(sizes.log_base, *size)));
      g.nodes.push_back({label, freq, *size});
      l.stems.push_back(label);
      l.positions.push_back({*x, *y});
    } else if (section == Section::Edges) {
      const auto parts = detail::split_ws(view);
      if (parts.size() != 3) throw fail(lineno, "expected 'i j weight'");
      const auto a = parse_int<std::size_t>(parts[0]), b = parse_int<std::size_t>(parts[1]);
      const auto w = parse_double(parts[2]);
      if (!a || !b || !w) throw fail(lineno, "bad edge record");
      if (*a < 1 || *a > g.nodes.size() || *b < 1 || *b > g.nodes.size()) throw fail(lineno, "edge references a missing vertex");
      if (*a == *b) throw fail(lineno, "self-loop");
      if (!(*w > 0.0)) throw fail(lineno, "edge weight must be positive");
      const auto& x = g.nodes[*a - 1].stem;
      const auto& y = g.nodes[*b - 1].stem;
      g.edges.push_back(x < y ? GraphEdge{x, y, *w} : GraphEdge{y, x, *w});
    } else {
      throw fail(lineno, "data before *Vertices");
    }
  }
  if (section == Section::None) throw Error("export_io", "pajek: no *Vertices section");
  if (section == Section::Vertices && g.nodes.size() != expected)
    throw Error("export_io", "pajek: expected " + std::to_string(expected) + " vertices, found " + std::to_string(g.nodes.size()));
  if (g.edges.empty()) throw Error("export_io", "pajek: graph has no edges (isolated nodes are not allowed)");

  std::vector<std::size_t> degree(g.nodes.size(), 0);
  for (const auto& e : g.edges) ++degree[*g.index_of(e.source)], ++degree[*g.index_of(e.target)];
  for (std::size_t i = 0; i < degree.size(); ++i)
    if (degree[i] == 0) throw Error("export_io", "pajek: vertex '" + g.nodes[i].stem + "' is isolated");
  std::sort(g.edges.begin(), g.edges.end(), [](const GraphEdge& l, const GraphEdge& r) {
    return l.source != r.source ? l.source < r.source : l.target < r.target;
  });
  g.threshold_used = std::min_element(g.edges.begin(), g.edges.end(), [](auto& a, auto& b) { return a.weight < b.weight; })->weight;
  l.converged = true;
  return {std::move(g), std::move(l)};
}

inline std::pair<SemanticGraph, LayoutResult> read_pajek(const std::filesystem::path& path, const SizeOptions& sizes = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("export_io", "cannot read " + path.string());
  return read_pajek(in, sizes);
}

// ---------------------------------------------------------------------------
// SVG

struct SvgOptions {
  double width = 800.0;
  double height = 800.0;
  double margin = 40.0;
  double radius_per_size = 6.0;   // circle radius = radius_per_size * node size
  double stroke_per_weight = 3.0; // line width = stroke_per_weight * edge weight
  double font_size = 11.0;
};

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline void render_svg(std::ostream& out, const SemanticGraph& g, const LayoutResult& l, const SvgOptions& opts = {}) {
  if (g.nodes.empty()) throw Error("export_io", "refusing to render an empty graph");
  const auto pos = detail::positions_for(g, l);
  double max_radius = 0.0;
  for (const auto& node : g.nodes) max_radius = std::max(max_radius, opts.radius_per_size * node.size);
  const double pad = opts.margin + max_radius;
  const double inner_w = std::max(1.0, opts.width - 2.0 * pad);
  const double inner_h = std::max(1.0, opts.height - 2.0 * pad);

  auto [minx, maxx] = std::minmax_element(pos.begin(), pos.end(), [](auto& a, auto& b) { return a.x < b.x; });
  auto [miny, maxy] = std::minmax_element(pos.begin(), pos.end(), [](auto& a, auto& b) { return a.y < b.y; });
  const double span_x = maxx->x - minx->x, span_y = maxy->y - miny->y;
  double scale = std::min(span_x > 0 ? inner_w / span_x : INFINITY, span_y > 0 ? inner_h / span_y : INFINITY);
  if (!std::isfinite(scale)) scale = 1.0;
  const double off_x = pad + (inner_w - span_x * scale) / 2.0;
  const double off_y = pad + (inner_h - span_y * scale) / 2.0;
  std::vector<Point> px(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i)  // SVG y grows downward
    px[i] = {off_x + (pos[i].x - minx->x) * scale, off_y + (maxy->y - pos[i].y) * scale};

  const auto f = [](double v) { return fixed(v, 3); };
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << f(opts.width) << "\" height=\""
      << f(opts.height) << "\" viewBox=\"0 0 " << f(opts.width) << ' ' << f(opts.height) << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << f(opts.width) << "\" height=\"" << f(opts.height) << "\" fill=\"white\"/>\n"
      << "<g stroke=\"#8899aa\" stroke-opacity=\"0.7\">\n";
  for (const auto& e : g.edges) {
    const auto& a = px[*g.index_of(e.source)];
    const auto& b = px[*g.index_of(e.target)];
    out << "<line x1=\"" << f(a.x) << "\" y1=\"" << f(a.y) << "\" x2=\"" << f(b.x) << "\" y2=\"" << f(b.y)
        << "\" stroke-width=\"" << f(opts.stroke_per_weight * e.weight) << "\"/>\n";
  }
  out << "</g>\n<g fill=\"#e8a33d\" stroke=\"#5a3d12\" stroke-width=\"0.5\">\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    out << "<circle cx=\"" << f(px[i].x) << "\" cy=\"" << f(px[i].y) << "\" r=\"" << f(opts.radius_per_size * g.nodes[i].size)
        << "\"/>\n";
  out << "</g>\n<g font-family=\"sans-serif\" font-size=\"" << f(opts.font_size) << "\" fill=\"#222222\">\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    out << "<text x=\"" << f(px[i].x + opts.radius_per_size * g.nodes[i].size + 2.0) << "\" y=\"" << f(px[i].y + opts.font_size / 3.0)
        << "\">" << detail::xml_escape(g.nodes[i].stem) << "</text>\n";
  out << "</g>\n</svg>\n";
}

inline void render_svg(const std::filesystem::path& path, const SemanticGraph& g, const LayoutResult& l,
                       const SvgOptions& opts = {}) {
  auto out = detail::open_for_write(path);
  render_svg(out, g, l, opts);
  detail::finish_write(out, path);
}

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T, typename Fmt>
void write_matrix_csv(std::ostream& out, const std::vector<std::string>& rows, const std::vector<std::string>& cols,
                      const DenseMatrix<T>& cells, Fmt fmt) {
  for (const auto& c : cols) out << ',' << csv_field(c);
  out << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << csv_field(rows[r]);
    for (std::size_t c = 0; c < cols.size(); ++c) out << ',' << fmt(cells(r, c));
    out << '\n';
  }
}

}  // namespace detail

inline void write_csv(std::ostream& out, const WordDocMatrix& m) {
  detail::write_matrix_csv(out, m.words, m.docs, m.cells, [](std::int64_t v) { return std::to_string(v); });
}
inline void write_csv(std::ostream& out, const CoWordMatrix& m) {
  detail::write_matrix_csv(out, m.words, m.words, m.cells, [](std::int64_t v) { return std::to_string(v); });
}
inline void write_csv(std::ostream& out, const SimilarityMatrix& m) {
  detail::write_matrix_csv(out, m.words, m.words, m.cells, [](double v) { return fixed6(v); });
}

template <typename M>
void write_csv(const std::filesystem::path& path, const M& m) {
  auto out = detail::open_for_write(path);
  write_csv(out, m);
  detail::finish_write(out, path);
}

inline void write_diff_csv(std::ostream& out, const SnapshotDiff& diff) {
  const auto opt = [](const std::optional<double>& v) { return v ? fixed6(*v) : std::string(); };
  out << "section,stem,centrality_before,centrality_after,centroid_distance_before,centroid_distance_after,verdict,"
         "weighted_degree,is_compound\n";
  for (const auto& t : diff.focal_trajectories)
    out << "focal," << detail::csv_field(t.stem) << ',' << opt(t.centrality_before) << ',' << opt(t.centrality_after) << ','
        << opt(t.centroid_distance_before) << ',' << opt(t.centroid_distance_after) << ',' << to_string(t.verdict) << ",,\n";
  for (const auto& stem : diff.absent) out << "focal," << detail::csv_field(stem) << ",,,,,absent,,\n";
  for (const auto& e : diff.emerging_terms)
    out << "emerging," << detail::csv_field(e.stem) << ",,,,,," << fixed6(e.weighted_degree) << ','
        << (e.is_compound ? "true" : "false") << '\n';
}

// ---------------------------------------------------------------------------
// Native snapshot

/// Everything a compare or report needs without recomputing preprocessing.
struct SnapshotFile {
  Snapshot snapshot;
  std::string config;  // canonical config string behind the fingerprint
  std::string similarity_kind = "cosine";
  WordDocMatrix word_doc;
  SimilarityMatrix similarity;
  double derived_threshold = 0.0;
};

inline constexpr std::string_view kSnapshotMagic = "framescope-snapshot v1";

inline void write_snapshot(std::ostream& out, const SnapshotFile& f) {
  const auto& s = f.snapshot;
  out << kSnapshotMagic << '\n';
  out << "window\t" << s.window_label << '\n';
  out << "fingerprint\t" << s.fingerprint << '\n';
  out << "config\t" << f.config << '\n';
  out << "similarity\t" << f.similarity_kind << '\n';
  out << "vocabulary\t" << s.vocab.entries.size() << '\t' << s.vocab.min_occurrences << '\t' << s.vocab.cap << '\t'
      << (s.vocab.strict ? 1 : 0) << '\n';
  for (const auto& e : s.vocab.entries)
    out << e.stem << '\t' << e.window_frequency << '\t' << e.doc_frequency << '\t' << (e.included ? 1 : 0) << '\n';
  out << "documents\t" << f.word_doc.docs.size() << '\n';
  for (const auto& d : f.word_doc.docs) out << d << '\n';
  out << "worddoc\t" << f.word_doc.words.size() << '\n';
  for (std::size_t w = 0; w < f.word_doc.words.size(); ++w) {
    out << f.word_doc.words[w];
    for (const auto c : f.word_doc.cells.row(w)) out << '\t' << c;
    out << '\n';
  }
  out << "matrix\t" << f.similarity.words.size() << '\n';
  for (std::size_t r = 0; r < f.similarity.words.size(); ++r) {
    out << f.similarity.words[r];
    for (const auto v : f.similarity.cells.row(r)) out << '\t' << exact(v);
    out << '\n';
  }
  out << "threshold\t" << exact(f.derived_threshold) << '\t' << exact(s.graph.threshold_used) << '\n';
  out << "nodes\t" << s.graph.nodes.size() << '\n';
  for (const auto& n : s.graph.nodes) out << n.stem << '\t' << n.frequency << '\t' << exact(n.size) << '\n';
  out << "edges\t" << s.graph.edges.size() << '\n';
  for (const auto& e : s.graph.edges) out << e.source << '\t' << e.target << '\t' << exact(e.weight) << '\n';
  const auto& l = s.layout;
  out << "layout\t" << l.stems.size() << '\t' << l.seed << '\t' << l.iterations << '\t' << (l.converged ? 1 : 0) << '\t'
      << exact(l.initial_energy) << '\t' << exact(l.final_energy) << '\n';
  for (std::size_t i = 0; i < l.stems.size(); ++i)
    out << l.stems[i] << '\t' << exact(l.positions[i].x) << '\t' << exact(l.positions[i].y) << '\n';
  out << "end\n";
}

inline void write_snapshot(const std::filesystem::path& path, const SnapshotFile& f) {
  auto out = detail::open_for_write(path);
  write_snapshot(out, f);
  detail::finish_write(out, path);
}

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next() {
    std::string line;
    if (!std::getline(in_, line)) throw fail("unexpected end of file");
    ++lineno_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  std::vector<std::string> fields(std::size_t expected) {
    auto line = next();
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
      const auto tab = line.find('\t', start);
      parts.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (expected && parts.size() != expected)
      throw fail("expected " + std::to_string(expected) + " fields, got " + std::to_string(parts.size()));
    return parts;
  }

  std::vector<std::string> header(std::string_view key, std::size_t expected) {
    auto parts = fields(expected);
    if (parts.front() != key) throw fail("expected '" + std::string(key) + "' section");
    return parts;
  }

  template <typename Int>
  Int integer(const std::string& s) {
    auto v = parse_int<Int>(s);
    if (!v) throw fail("bad integer '" + s + "'");
    return *v;
  }
  double real(const std::string& s) {
    auto v = parse_double(s);
    if (!v) throw fail("bad number '" + s + "'");
    return *v;
  }

  Error fail(const std::string& what) const {
    return Error("export_io", "snapshot line " + std::to_string(lineno_) + ": " + what);
  }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

inline std::string rest_after_key(const std::string& line, std::string_view key, const LineReader& r) {
  if (line.rfind(std::string(key) + "\t", 0) != 0) throw r.fail("expected '" + std::string(key) + "'");
  return line.substr(key.size() + 1);
}

}  // namespace detail

inline SnapshotFile read_snapshot(std::istream& in) {
  detail::LineReader r(in);
  if (r.next() != kSnapshotMagic) throw r.fail("not a framescope snapshot (missing version line)");
  SnapshotFile f;
  auto& s = f.snapshot;
  s.window_label = detail::rest_after_key(r.next(), "window", r);
  s.fingerprint = detail::rest_after_key(r.next(), "fingerprint", r);
  f.config = detail::rest_after_key(r.next(), "config", r);
  f.similarity_kind = detail::rest_after_key(r.next(), "similarity", r);

  auto vh = r.header("vocabulary", 5);
  const auto ventries = r.integer<std::size_t>(vh[1]);
  s.vocab.min_occurrences = r.integer<std::int64_t>(vh[2]);
  s.vocab.cap = r.integer<std::size_t>(vh[3]);
  s.vocab.strict = r.integer<int>(vh[4]) != 0;
  for (std::size_t i = 0; i < ventries; ++i) {
    auto p = r.fields(4);
    s.vocab.entries.push_back({p[0], r.integer<std::int64_t>(p[1]), r.integer<std::int64_t>(p[2]), r.integer<int>(p[3]) != 0});
  }

  const auto ndocs = r.integer<std::size_t>(r.header("documents", 2)[1]);
  for (std::size_t i = 0; i < ndocs; ++i) f.word_doc.docs.push_back(r.next());
  const auto nwords = r.integer<std::size_t>(r.header("worddoc", 2)[1]);
  f.word_doc.cells = DenseMatrix<std::int64_t>(nwords, ndocs);
  for (std::size_t w = 0; w < nwords; ++w) {
    auto p = r.fields(ndocs + 1);
    f.word_doc.words.push_back(p[0]);
    for (std::size_t d = 0; d < ndocs; ++d) f.word_doc.cells(w, d) = r.integer<std::int64_t>(p[d + 1]);
  }

  const auto nsim = r.integer<std::size_t>(r.header("matrix", 2)[1]);
  f.similarity.cells = DenseMatrix<double>(nsim, nsim);
  for (std::size_t a = 0; a < nsim; ++a) {
    auto p = r.fields(nsim + 1);
    f.similarity.words.push_back(p[0]);
    for (std::size_t b = 0; b < nsim; ++b) f.similarity.cells(a, b) = r.real(p[b + 1]);
  }

  auto th = r.header("threshold", 3);
  f.derived_threshold = r.real(th[1]);
  f.similarity.threshold = f.derived_threshold;
  s.graph.threshold_used = r.real(th[2]);

  const auto nnodes = r.integer<std::size_t>(r.header("nodes", 2)[1]);
  for (std::size_t i = 0; i < nnodes; ++i) {
    auto p = r.fields(3);
    s.graph.nodes.push_back({p[0], r.integer<std::int64_t>(p[1]), r.real(p[2])});
  }
  const auto nedges = r.integer<std::size_t>(r.header("edges", 2)[1]);
  for (std::size_t i = 0; i < nedges; ++i) {
    auto p = r.fields(3);
    s.graph.edges.push_back({p[0], p[1], r.real(p[2])});
  }

  auto lh = r.header("layout", 7);
  const auto npos = r.integer<std::size_t>(lh[1]);
  s.layout.seed = r.integer<std::uint64_t>(lh[2]);
  s.layout.iterations = r.integer<std::size_t>(lh[3]);
  s.layout.converged = r.integer<int>(lh[4]) != 0;
  s.layout.initial_energy = r.real(lh[5]);
  s.layout.final_energy = r.real(lh[6]);
  for (std::size_t i = 0; i < npos; ++i) {
    auto p = r.fields(3);
    s.layout.stems.push_back(p[0]);
    s.layout.positions.push_back({r.real(p[1]), r.real(p[2])});
  }
  if (r.next() != "end") throw r.fail("expected 'end'");
  return f;
}

inline SnapshotFile read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("export_io", "cannot read snapshot " + path.string());
  return read_snapshot(in);
}

/// Rebuilds the run report from a snapshot alone.
inline RunReport recompute_report(const SnapshotFile& f) {
  const auto& s = f.snapshot;
  RunReport r;
  r.window_label = s.window_label;
  r.similarity = f.similarity_kind;
  r.documents = f.word_doc.docs.size();
  r.vocabulary_size = s.vocab.included_count();
  r.matrix_rows = f.word_doc.words.size();
  r.matrix_cols = f.word_doc.docs.size();
  r.derived_threshold = f.similarity.words.size() >= 2 ? derive_threshold(f.similarity) : 0.0;
  r.applied_threshold = s.graph.threshold_used;
  r.nodes = s.graph.nodes.size();
  r.edges = s.graph.edges.size();
  r.isolates_removed = f.similarity.words.size() - s.graph.nodes.size();
  r.converged = s.layout.converged;
  r.iterations = s.layout.iterations;
  r.final_energy = s.layout.final_energy;
  return r;
}

}  // namespace framescope

#pragma once

// Shared helpers for the test binaries: scratch directories, seeded random
// instances, and brute-force oracles that deliberately avoid the library's
// code paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "framescope.hpp"

#ifndef FRAMESCOPE_SOURCE_DIR
#define FRAMESCOPE_SOURCE_DIR "."
#endif

namespace fs_test {

namespace fs = std::filesystem;

inline fs::path source_dir() { return fs::path(FRAMESCOPE_SOURCE_DIR); }
inline fs::path fixture_dir() { return source_dir() / "data" / "fixture"; }

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("framescope-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

using Rows = std::vector<std::vector<double>>;

/// Random count matrix with every row non-zero.
inline Rows random_counts(std::mt19937_64& rng, std::size_t words, std::size_t docs, int max_count) {
  std::uniform_int_distribution<int> cell(0, max_count);
  std::uniform_int_distribution<std::size_t> pick(0, docs - 1);
  Rows rows(words, std::vector<double>(docs));
  for (auto& row : rows) {
    for (auto& v : row) v = cell(rng);
    if (std::all_of(row.begin(), row.end(), [](double v) { return v == 0; })) row[pick(rng)] = 1 + (max_count > 1);
  }
  return rows;
}

inline framescope::DenseMatrix<std::int64_t> to_counts(const Rows& rows) {
  framescope::DenseMatrix<std::int64_t> m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = static_cast<std::int64_t>(rows[r][c]);
  return m;
}

inline std::vector<std::string> word_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));
  return names;
}

inline framescope::WordDocMatrix make_word_doc(const Rows& rows) {
  framescope::WordDocMatrix m;
  m.words = word_names(rows.size());
  for (std::size_t d = 0; d < (rows.empty() ? 0 : rows[0].size()); ++d) m.docs.push_back("d" + std::to_string(d));
  m.cells = to_counts(rows);
  return m;
}

// Cosine written straight from its definition.
inline double oracle_cosine(const std::vector<double>& x, const std::vector<double>& y) {
  double num = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += x[i] * y[i];
    sx += x[i] * x[i];
    sy += y[i] * y[i];
  }
  return num / (std::sqrt(sx) * std::sqrt(sy));
}

// Number of documents where both rows are non-zero, via set intersection.
inline long oracle_coword(const std::vector<double>& x, const std::vector<double>& y) {
  std::set<std::size_t> dx, dy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0) dx.insert(i);
    if (y[i] > 0) dy.insert(i);
  }
  std::vector<std::size_t> both;
  std::set_intersection(dx.begin(), dx.end(), dy.begin(), dy.end(), std::back_inserter(both));
  return static_cast<long>(both.size());
}

inline double oracle_lower_mean(const framescope::DenseMatrix<double>& m) {
  std::vector<double> cells;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i > j) cells.push_back(m(i, j));
  double sum = 0;
  for (double c : cells) sum += c;
  return sum / static_cast<double>(cells.size());
}

/// Graph from an explicit edge list; node frequency 10 unless given.
inline framescope::SemanticGraph make_graph(const std::vector<std::string>& nodes,
                                            const std::vector<std::pair<std::string, std::string>>& edges,
                                            double weight = 1.0) {
  framescope::SemanticGraph g;
  for (const auto& n : nodes) g.nodes.push_back({n, 10, framescope::node_size(10)});
  for (auto [a, b] : edges) {
    if (b < a) std::swap(a, b);
    g.edges.push_back({a, b, weight});
  }
  std::sort(g.edges.begin(), g.edges.end(),
            [](auto& l, auto& r) { return l.source != r.source ? l.source < r.source : l.target < r.target; });
  g.threshold_used = 0.0;
  return g;
}

// Floyd-Warshall hop counts; -1 for unreachable.
inline std::vector<std::vector<int>> oracle_hops(const framescope::SemanticGraph& g) {
  const std::size_t n = g.nodes.size();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges) {
    const auto a = *g.index_of(e.source), b = *g.index_of(e.target);
    d[a][b] = d[b][a] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (auto& v : row)
      if (v >= inf) v = -1;
  return d;
}

// Spring energy summed pair by pair from hop counts, independent of
// TargetDistances.
inline double oracle_energy(const std::vector<framescope::Point>& p, const std::vector<std::vector<int>>& hops,
                            double base_length, double stiffness) {
  const std::size_t n = p.size();
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (hops[i][j] >= 0) comp[j] = ncomp;
    ++ncomp;
  }
  std::vector<int> diam(ncomp, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) diam[comp[i]] = std::max(diam[comp[i]], hops[i][j]);
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j <= i || hops[i][j] <= 0) continue;
      const double unit = base_length / diam[comp[i]];
      const double ideal = unit * hops[i][j];
      const double k = stiffness / std::pow(hops[i][j], 2);
      const double dist = std::sqrt(std::pow(p[i].x - p[j].x, 2) + std::pow(p[i].y - p[j].y, 2));
      e += 0.5 * k * std::pow(dist - ideal, 2);
    }
  }
  return e;
}

/// Random connected graph: a random spanning tree plus extra edges.
inline framescope::SemanticGraph random_connected_graph(std::mt19937_64& rng, std::size_t n, double extra_p) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> edges;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t j = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
    seen.insert({j, i});
  }
  std::bernoulli_distribution extra(extra_p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (extra(rng)) seen.insert({i, j});
  for (auto [a, b] : seen) edges.push_back({names[a], names[b]});
  std::uniform_real_distribution<double> w(0.3, 1.0);
  auto g = make_graph(names, edges);
  for (auto& e : g.edges) e.weight = w(rng);
  std::uniform_int_distribution<int> f(1, 500);
  for (auto& node : g.nodes) {
    node.frequency = f(rng);
    node.size = framescope::node_size(node.frequency);
  }
  return g;
}

}  // namespace fs_test

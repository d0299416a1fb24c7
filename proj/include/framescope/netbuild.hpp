#pragma once

// Threshold derivation and semantic graph construction.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "framescope/error.hpp"
#include "framescope/textprep.hpp"
#include "framescope/vectorspace.hpp"

namespace framescope {

/// Mean of the strictly-lower-triangle cells, zeros included. NaN cells
/// (undefined Pearson correlations) are skipped. The sum is carried in
/// double-double so the mean does not depend on cell order.
inline double derive_threshold(const DenseMatrix<double>& cells) {
  if (cells.rows() < 2) throw Error("netbuild", "threshold undefined for fewer than two words");
  double hi = 0.0, lo = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 1; i < cells.rows(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double v = cells(i, j);
      if (std::isnan(v)) continue;
      const double s = hi + v;  // TwoSum
      const double bp = s - hi;
      lo += (hi - (s - bp)) + (v - bp);
      hi = s;
      ++count;
    }
  }
  if (count == 0) throw Error("netbuild", "threshold undefined: no defined similarity cells");
  const double s = hi + lo;
  const double tail = lo - (s - hi);
  const double n = static_cast<double>(count);
  const double q = s / n;
  return q + (std::fma(-q, n, s) + tail) / n;
}

inline double derive_threshold(const SimilarityMatrix& m) { return derive_threshold(m.cells); }

/// Node size = log_base(frequency); frequency-1 nodes get `min_size` since
/// log(1) = 0 would make them invisible.
struct SizeOptions {
  double log_base = std::numbers::e;
  double min_size = 0.1;
};

inline double node_size(std::int64_t frequency, const SizeOptions& opts = {}) {
  if (frequency <= 1) return opts.min_size;
  return std::log(static_cast<double>(frequency)) / std::log(opts.log_base);
}

struct GraphNode {
  std::string stem;
  std::int64_t frequency = 0;
  double size = 0.0;

  bool operator==(const GraphNode&) const = default;
};

// source < target lexicographically
struct GraphEdge {
  std::string source;
  std::string target;
  double weight = 0.0;

  bool operator==(const GraphEdge&) const = default;
};

struct SemanticGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  double threshold_used = 0.0;

  std::optional<std::size_t> index_of(std::string_view stem) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].stem == stem) return i;
    return std::nullopt;
  }
  bool has_node(std::string_view stem) const { return index_of(stem).has_value(); }

  /// Neighbor lists by node index.
  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (const auto& e : edges) {
      const auto a = *index_of(e.source);
      const auto b = *index_of(e.target);
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
  }

  bool operator==(const SemanticGraph&) const = default;
};

struct GraphStats {
  std::size_t candidates = 0;
  std::size_t isolates_removed = 0;
  std::size_t edges = 0;
};

/// Keeps every pair with similarity >= threshold, then drops nodes left
/// without edges. Node order follows the matrix word order; edges are sorted
/// by (source, target). Frequencies come from the vocabulary.
inline SemanticGraph build_graph(const SimilarityMatrix& sim, const Vocabulary& vocab, double threshold,
                                 const SizeOptions& sizes = {}, GraphStats* stats = nullptr) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw Error("netbuild", "threshold must lie in [0,1]");
  const std::size_t n = sim.words.size();
  std::vector<bool> connected(n, false);
  SemanticGraph g;
  g.threshold_used = threshold;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double w = sim.cells(a, b);
      if (std::isnan(w) || w < threshold) continue;
      connected[a] = connected[b] = true;
      const auto& x = sim.words[a];
      const auto& y = sim.words[b];
      g.edges.push_back(x < y ? GraphEdge{x, y, w} : GraphEdge{y, x, w});
    }
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const GraphEdge& l, const GraphEdge& r) {
    return l.source != r.source ? l.source < r.source : l.target < r.target;
  });
  for (std::size_t i = 0; i < n; ++i) {
    if (!connected[i]) continue;
    const auto* entry = vocab.find(sim.words[i]);
    const std::int64_t freq = entry ? entry->window_frequency : 0;
    g.nodes.push_back({sim.words[i], freq, node_size(freq, sizes)});
  }
  if (stats) *stats = {n, n - g.nodes.size(), g.edges.size()};
  if (g.edges.empty())
    throw Error("netbuild", "threshold too high; no edges",
                "no word pair reaches similarity " + std::to_string(threshold) + "; lower --threshold");
  return g;
}

/// Sum of incident edge weights divided by (node count - 1).
inline double weighted_degree(const SemanticGraph& g, std::string_view stem) {
  if (!g.has_node(stem)) throw Error("netbuild", "unknown node '" + std::string(stem) + "'");
  if (g.nodes.size() < 2) return 0.0;
  double sum = 0.0;
  for (const auto& e : g.edges)
    if (e.source == stem || e.target == stem) sum += e.weight;
  return sum / static_cast<double>(g.nodes.size() - 1);
}

}  // namespace framescope

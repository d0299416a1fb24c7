#pragma once

// Frame drift between two window snapshots: do focal words move toward the
// dense core of the map, and which terms appear for the first time?

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "framescope/error.hpp"
#include "framescope/layout.hpp"
#include "framescope/netbuild.hpp"
#include "framescope/textprep.hpp"

namespace framescope {

struct Snapshot {
  std::string window_label;
  std::string fingerprint;  // config fingerprint; comparisons require equality
  Vocabulary vocab;
  SemanticGraph graph;
  LayoutResult layout;
};

enum class Verdict { MovedCoreward, MovedPeripheryward, Stable, Entered, Exited };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::MovedCoreward: return "moved-coreward";
    case Verdict::MovedPeripheryward: return "moved-peripheryward";
    case Verdict::Stable: return "stable";
    case Verdict::Entered: return "entered";
    case Verdict::Exited: return "exited";
  }
  return "stable";
}

struct FocalTrajectory {
  std::string stem;
  std::optional<double> centrality_before;
  std::optional<double> centrality_after;
  std::optional<double> centroid_distance_before;
  std::optional<double> centroid_distance_after;
  Verdict verdict = Verdict::Stable;
};

struct EmergingTerm {
  std::string stem;
  double weighted_degree = 0.0;
  bool is_compound = false;
};

struct SnapshotDiff {
  std::vector<FocalTrajectory> focal_trajectories;
  std::vector<EmergingTerm> emerging_terms;
  std::vector<std::string> absent;  // focal stems in neither graph
};

/// Distance from the stem to the size-weighted centroid of the map, divided
/// by the largest such distance in the snapshot.
inline double centroid_distance(const Snapshot& s, std::string_view stem) {
  const auto idx = s.graph.index_of(stem);
  if (!idx) throw Error("diachrony", "unknown node '" + std::string(stem) + "' in snapshot '" + s.window_label + "'");
  double cx = 0.0, cy = 0.0, total = 0.0;
  std::vector<Point> pos(s.graph.nodes.size());
  for (std::size_t i = 0; i < s.graph.nodes.size(); ++i) {
    const auto p = s.layout.position(s.graph.nodes[i].stem);
    if (!p) throw Error("diachrony", "layout has no position for '" + s.graph.nodes[i].stem + "'");
    pos[i] = *p;
    const double w = s.graph.nodes[i].size;
    cx += w * p->x;
    cy += w * p->y;
    total += w;
  }
  if (total <= 0.0) throw Error("diachrony", "node sizes must be positive");
  const Point centroid{cx / total, cy / total};
  double farthest = 0.0;
  for (const auto& p : pos) farthest = std::max(farthest, distance(p, centroid));
  if (farthest == 0.0) return 0.0;
  return std::min(1.0, distance(pos[*idx], centroid) / farthest);
}

namespace detail {

inline bool known_stem(const Snapshot& before, const Snapshot& after, std::string_view stem) {
  return before.vocab.contains(stem) || after.vocab.contains(stem);
}

// A compound whose head or tail is itself a vocabulary stem, like
// "aspartame-infused" next to "aspartame".
inline bool is_compound_of_known(const Snapshot& before, const Snapshot& after, std::string_view stem) {
  const auto first = stem.find('-');
  if (first == std::string_view::npos) return false;
  const auto last = stem.rfind('-');
  return known_stem(before, after, stem.substr(0, first)) || known_stem(before, after, stem.substr(last + 1));
}

}  // namespace detail

/// Stems in the after-graph that never occurred in the before-window (its
/// full vocabulary, excluded entries included), by weighted degree.
inline std::vector<EmergingTerm> detect_emerging_terms(const Snapshot& before, const Snapshot& after) {
  std::vector<EmergingTerm> out;
  for (const auto& node : after.graph.nodes) {
    if (before.vocab.contains(node.stem)) continue;
    out.push_back({node.stem, weighted_degree(after.graph, node.stem), detail::is_compound_of_known(before, after, node.stem)});
  }
  std::sort(out.begin(), out.end(), [](const EmergingTerm& a, const EmergingTerm& b) {
    if (a.weighted_degree != b.weighted_degree) return a.weighted_degree > b.weighted_degree;
    return a.stem < b.stem;
  });
  return out;
}

/// Movement requires both signals to agree: higher weighted degree and
/// smaller centroid distance means coreward, the reverse peripheryward.
inline SnapshotDiff compare_snapshots(const Snapshot& before, const Snapshot& after, const std::vector<std::string>& focal) {
  if (before.fingerprint != after.fingerprint)
    throw Error("diachrony", "snapshots not comparable",
                "'" + before.window_label + "' and '" + after.window_label + "' were built with different configurations");
  SnapshotDiff diff;
  std::set<std::string> seen;
  for (const auto& stem : focal) {
    if (!seen.insert(stem).second) continue;
    const bool in_before = before.graph.has_node(stem);
    const bool in_after = after.graph.has_node(stem);
    if (!in_before && !in_after) {
      diff.absent.push_back(stem);
      continue;
    }
    FocalTrajectory t{stem, {}, {}, {}, {}, Verdict::Stable};
    if (in_before) {
      t.centrality_before = weighted_degree(before.graph, stem);
      t.centroid_distance_before = centroid_distance(before, stem);
    }
    if (in_after) {
      t.centrality_after = weighted_degree(after.graph, stem);
      t.centroid_distance_after = centroid_distance(after, stem);
    }
    if (!in_before) {
      t.verdict = Verdict::Entered;
    } else if (!in_after) {
      t.verdict = Verdict::Exited;
    } else if (*t.centrality_after > *t.centrality_before && *t.centroid_distance_after < *t.centroid_distance_before) {
      t.verdict = Verdict::MovedCoreward;
    } else if (*t.centrality_after < *t.centrality_before && *t.centroid_distance_after > *t.centroid_distance_before) {
      t.verdict = Verdict::MovedPeripheryward;
    }
    diff.focal_trajectories.push_back(std::move(t));
  }
  diff.emerging_terms = detect_emerging_terms(before, after);
  return diff;
}

inline const std::vector<std::string>& default_focal_words() {
  static const std::vector<std::string> words{"product", "sweetener", "food", "sugar", "diet"};
  return words;
}

}  // namespace framescope

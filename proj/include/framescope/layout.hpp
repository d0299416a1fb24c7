#pragma once

// Kamada-Kawai spring layout: springs between every pair of nodes in a
// connected component, rest length proportional to the graph-theoretic
// distance, stiffness K / d^2. Nodes are moved one at a time by a 2-D Newton
// step with a descent safeguard.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "framescope/error.hpp"
#include "framescope/matrix.hpp"
#include "framescope/netbuild.hpp"

namespace framescope {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

inline double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// All-pairs hop counts plus the spring parameters derived from them.
/// `hops(i, j) < 0` marks nodes in different components.
struct TargetDistances {
  std::vector<std::string> nodes;
  DenseMatrix<int> hops;
  std::vector<int> component;          // component id per node
  std::vector<double> unit_length;     // ideal length per hop, per component
  double base_length = 1.0;            // L0
  double stiffness = 1.0;              // K

  std::size_t size() const { return nodes.size(); }
  int component_count() const { return static_cast<int>(unit_length.size()); }
  bool linked(std::size_t i, std::size_t j) const { return i != j && hops(i, j) > 0; }
  double rest_length(std::size_t i, std::size_t j) const { return unit_length[component[i]] * hops(i, j); }
  double spring(std::size_t i, std::size_t j) const {
    const double d = hops(i, j);
    return stiffness / (d * d);
  }
};

/// Breadth-first search from every node. Components are numbered in order
/// of their lowest node index.
inline TargetDistances target_distances(const SemanticGraph& g, double base_length = 1.0, double stiffness = 1.0) {
  if (g.nodes.empty()) throw Error("layout", "graph has no nodes");
  const std::size_t n = g.nodes.size();
  const auto adj = g.adjacency();
  TargetDistances td;
  td.base_length = base_length;
  td.stiffness = stiffness;
  for (const auto& node : g.nodes) td.nodes.push_back(node.stem);
  td.hops = DenseMatrix<int>(n, n, -1);
  td.component.assign(n, -1);

  for (std::size_t s = 0; s < n; ++s) {
    std::queue<std::size_t> q;
    td.hops(s, s) = 0;
    q.push(s);
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (const auto v : adj[u]) {
        if (td.hops(s, v) >= 0) continue;
        td.hops(s, v) = td.hops(s, u) + 1;
        q.push(v);
      }
    }
    if (td.component[s] < 0) {
      const int id = td.component_count();
      for (std::size_t v = 0; v < n; ++v)
        if (td.hops(s, v) >= 0) td.component[v] = id;
      td.unit_length.push_back(0.0);
    }
  }
  for (int c = 0; c < td.component_count(); ++c) {
    int diameter = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (td.component[i] == c) diameter = std::max(diameter, td.hops(i, j));
    td.unit_length[c] = diameter > 0 ? base_length / diameter : base_length;
  }
  return td;
}

/// Sum over linked pairs i < j of 0.5 * k_ij * (|p_i - p_j| - l_ij)^2.
inline double layout_energy(std::span<const Point> positions, const TargetDistances& td) {
  if (positions.size() != td.size()) throw Error("layout", "positions do not cover every node");
  double energy = 0.0;
  for (std::size_t i = 0; i < td.size(); ++i) {
    for (std::size_t j = i + 1; j < td.size(); ++j) {
      if (!td.linked(i, j)) continue;
      const double gap = distance(positions[i], positions[j]) - td.rest_length(i, j);
      energy += 0.5 * td.spring(i, j) * gap * gap;
    }
  }
  return energy;
}

/// Analytic dE/dp for every node.
inline std::vector<Point> energy_gradient(std::span<const Point> positions, const TargetDistances& td) {
  std::vector<Point> grad(td.size());
  for (std::size_t m = 0; m < td.size(); ++m) {
    for (std::size_t i = 0; i < td.size(); ++i) {
      if (!td.linked(m, i)) continue;
      const double dx = positions[m].x - positions[i].x;
      const double dy = positions[m].y - positions[i].y;
      const double r = std::hypot(dx, dy);
      if (r == 0.0) continue;
      const double k = td.spring(m, i);
      const double shrink = 1.0 - td.rest_length(m, i) / r;
      grad[m].x += k * dx * shrink;
      grad[m].y += k * dy * shrink;
    }
  }
  return grad;
}

struct LayoutOptions {
  std::uint64_t seed = 42;
  double epsilon = 1e-4;
  std::size_t max_iter = 0;  // node moves per component; 0 means 1000 * nodes
  bool record_trace = false;
};

struct LayoutResult {
  std::vector<std::string> stems;
  std::vector<Point> positions;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  std::vector<double> energy_trace;  // total energy after each accepted move

  std::optional<Point> position(std::string_view stem) const {
    for (std::size_t i = 0; i < stems.size(); ++i)
      if (stems[i] == stem) return positions[i];
    return std::nullopt;
  }

  bool operator==(const LayoutResult&) const = default;
};

namespace detail {

// mt19937_64 output is fixed by the standard; distributions are not, so
// uniform doubles are derived by hand.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct NodeTerms {
  Point grad;
  double hxx = 0.0, hxy = 0.0, hyy = 0.0;
};

class SpringSystem {
 public:
  SpringSystem(const TargetDistances& td, std::vector<Point>& pos, std::vector<std::size_t> members,
               std::mt19937_64& rng)
      : td_(td), pos_(pos), members_(std::move(members)), rng_(rng) {}

  double local_energy(std::size_t m, const Point& at) const {
    double e = 0.0;
    for (const auto i : members_) {
      if (i == m) continue;
      const double gap = distance(at, pos_[i]) - td_.rest_length(m, i);
      e += 0.5 * td_.spring(m, i) * gap * gap;
    }
    return e;
  }

  Point pair_gradient(std::size_t m, std::size_t i, const Point& at) const {
    const double dx = at.x - pos_[i].x;
    const double dy = at.y - pos_[i].y;
    const double r = std::hypot(dx, dy);
    if (r == 0.0) return {};
    const double k = td_.spring(m, i);
    const double shrink = 1.0 - td_.rest_length(m, i) / r;
    return {k * dx * shrink, k * dy * shrink};
  }

  NodeTerms terms(std::size_t m) const {
    NodeTerms t;
    for (const auto i : members_) {
      if (i == m) continue;
      const double dx = pos_[m].x - pos_[i].x;
      const double dy = pos_[m].y - pos_[i].y;
      const double r = std::hypot(dx, dy);
      if (r == 0.0) continue;
      const double k = td_.spring(m, i);
      const double l = td_.rest_length(m, i);
      const double r3 = r * r * r;
      t.grad.x += k * (dx - l * dx / r);
      t.grad.y += k * (dy - l * dy / r);
      t.hxx += k * (1.0 - l * dy * dy / r3);
      t.hxy += k * l * dx * dy / r3;
      t.hyy += k * (1.0 - l * dx * dx / r3);
    }
    return t;
  }

  // Nudges m off any node it coincides with.
  void separate(std::size_t m) {
    for (const auto i : members_) {
      if (i == m || distance(pos_[m], pos_[i]) > 0.0) continue;
      const double angle = 2.0 * std::numbers::pi * unit_uniform(rng_);
      pos_[m].x += 1e-9 * std::cos(angle);
      pos_[m].y += 1e-9 * std::sin(angle);
    }
  }

  // Tries step, step/2, ... (up to 20 halvings); accepts the first that
  // lowers m's energy.
  std::optional<Point> line_search(std::size_t m, Point step) const {
    const double before = local_energy(m, pos_[m]);
    for (int h = 0; h <= 20; ++h) {
      const Point cand{pos_[m].x + step.x, pos_[m].y + step.y};
      if (local_energy(m, cand) < before) return cand;
      step.x *= 0.5;
      step.y *= 0.5;
    }
    return std::nullopt;
  }

  std::optional<Point> improve(std::size_t m) {
    separate(m);
    const NodeTerms t = terms(m);
    const double det = t.hxx * t.hyy - t.hxy * t.hxy;
    if (std::abs(det) >= 1e-12) {
      const Point newton{-(t.hyy * t.grad.x - t.hxy * t.grad.y) / det, -(t.hxx * t.grad.y - t.hxy * t.grad.x) / det};
      if (newton.x * t.grad.x + newton.y * t.grad.y < 0.0) {
        if (auto p = line_search(m, newton)) return p;
      }
    }
    const double scale = std::sqrt(t.hxx * t.hxx + 2.0 * t.hxy * t.hxy + t.hyy * t.hyy);
    const double inv = scale > 1e-12 ? 1.0 / scale : 1.0;
    return line_search(m, {-t.grad.x * inv, -t.grad.y * inv});
  }

  const std::vector<std::size_t>& members() const { return members_; }
  std::vector<Point>& positions() { return pos_; }

 private:
  const TargetDistances& td_;
  std::vector<Point>& pos_;
  std::vector<std::size_t> members_;
  std::mt19937_64& rng_;
};

}  // namespace detail

/// Lays out each connected component independently from a seeded circular
/// start, then packs components left-to-right on a grid (largest first).
/// Stops a component when every gradient magnitude is below epsilon or the
/// move budget is spent; `converged` reports whether all components stopped
/// for the first reason.
inline LayoutResult kamada_kawai(const SemanticGraph& g, const TargetDistances& td, const LayoutOptions& opts = {}) {
  if (!(opts.epsilon > 0.0)) throw Error("layout", "epsilon must be > 0");
  if (td.size() != g.nodes.size()) throw Error("layout", "target distances do not match the graph");
  const std::size_t n = td.size();

  LayoutResult result;
  result.stems = td.nodes;
  result.seed = opts.seed;
  result.positions.resize(n);
  std::mt19937_64 rng(opts.seed);

  std::vector<std::vector<std::size_t>> comps(td.component_count());
  for (std::size_t i = 0; i < n; ++i) comps[td.component[i]].push_back(i);

  for (const auto& members : comps) {
    const double count = static_cast<double>(members.size());
    const double radius = td.base_length * count / (2.0 * std::numbers::pi);
    const double slot = 2.0 * std::numbers::pi / count;
    for (std::size_t k = 0; k < members.size(); ++k) {
      const double angle = slot * static_cast<double>(k) + 0.1 * slot * (detail::unit_uniform(rng) - 0.5);
      result.positions[members[k]] = {radius * std::cos(angle), radius * std::sin(angle)};
    }
  }
  result.initial_energy = layout_energy(result.positions, td);

  bool all_converged = true;
  for (const auto& members : comps) {
    detail::SpringSystem sys(td, result.positions, members, rng);
    const std::size_t budget = opts.max_iter > 0 ? opts.max_iter : 1000 * members.size();

    std::vector<Point> grad(n);
    auto refresh = [&] {
      for (const auto m : members) grad[m] = sys.terms(m).grad;
    };
    refresh();

    bool converged = members.size() < 2;
    std::size_t moves = 0;
    while (!converged && moves < budget) {
      std::size_t worst = members.front();
      double worst_norm = -1.0;
      for (const auto m : members) {
        const double norm = std::hypot(grad[m].x, grad[m].y);
        if (norm > worst_norm) worst_norm = norm, worst = m;
      }
      if (worst_norm < opts.epsilon) {
        // incremental gradients drift; confirm with exact values
        refresh();
        worst_norm = 0.0;
        for (const auto m : members) worst_norm = std::max(worst_norm, std::hypot(grad[m].x, grad[m].y));
        if (worst_norm < opts.epsilon) {
          converged = true;
          break;
        }
        continue;
      }

      auto moved = sys.improve(worst);
      if (!moved) break;  // no descent possible at this precision
      const Point old = result.positions[worst];
      for (const auto i : members) {
        if (i == worst) continue;
        // pair gradient on i flips sign relative to the gradient on `worst`
        const Point before = sys.pair_gradient(worst, i, old);
        const Point after = sys.pair_gradient(worst, i, *moved);
        grad[i].x -= after.x - before.x;
        grad[i].y -= after.y - before.y;
      }
      result.positions[worst] = *moved;
      grad[worst] = sys.terms(worst).grad;
      ++moves;
      if (opts.record_trace) result.energy_trace.push_back(layout_energy(result.positions, td));
    }
    result.iterations += moves;
    all_converged = all_converged && converged;
  }

  if (comps.size() > 1) {
    std::vector<std::size_t> order(comps.size());
    for (std::size_t c = 0; c < order.size(); ++c) order[c] = c;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return comps[a].size() > comps[b].size(); });
    struct Box {
      double minx, miny, maxx, maxy;
    };
    std::vector<Box> boxes(comps.size());
    double cell_w = 0.0, cell_h = 0.0;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      Box b{INFINITY, INFINITY, -INFINITY, -INFINITY};
      for (const auto i : comps[c]) {
        b.minx = std::min(b.minx, result.positions[i].x);
        b.miny = std::min(b.miny, result.positions[i].y);
        b.maxx = std::max(b.maxx, result.positions[i].x);
        b.maxy = std::max(b.maxy, result.positions[i].y);
      }
      boxes[c] = b;
      cell_w = std::max(cell_w, b.maxx - b.minx);
      cell_h = std::max(cell_h, b.maxy - b.miny);
    }
    cell_w += td.base_length;
    cell_h += td.base_length;
    const auto columns = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(comps.size()))));
    for (std::size_t slot = 0; slot < order.size(); ++slot) {
      const auto c = order[slot];
      const double ox = static_cast<double>(slot % columns) * cell_w - boxes[c].minx;
      const double oy = -static_cast<double>(slot / columns) * cell_h - boxes[c].miny;
      for (const auto i : comps[c]) {
        result.positions[i].x += ox;
        result.positions[i].y += oy;
      }
    }
  }

  result.final_energy = layout_energy(result.positions, td);
  result.converged = all_converged;
  return result;
}

inline LayoutResult kamada_kawai(const SemanticGraph& g, std::uint64_t seed = 42, double epsilon = 1e-4,
                                 std::size_t max_iter = 0, double base_length = 1.0, double stiffness = 1.0) {
  return kamada_kawai(g, target_distances(g, base_length, stiffness), LayoutOptions{seed, epsilon, max_iter, false});
}

}  // namespace framescope

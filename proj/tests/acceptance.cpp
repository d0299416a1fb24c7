// Acceptance checks. Prints one PASS/FAIL line per criterion with the
// measured values next to the pinned tolerances; exits non-zero on any FAIL.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>

#include "support.hpp"

using namespace framescope;
using fs_test::Rows;
using fs_test::TempDir;
namespace fs = std::filesystem;

namespace {

constexpr double kCosineTol = 1e-12;
constexpr double kThresholdTol = 1e-12;
constexpr double kSeparationTol = 1e-6;
constexpr double kTriangleSpread = 0.02;
constexpr double kPathTol = 0.05;
constexpr double kGradientRelTol = 1e-6;
constexpr double kPajekTol = 1e-6;
constexpr double kTimeLimit = 5.0;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string secs(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", v);
  return buf;
}

// Random instances shared by criteria 1 and 2: up to 10 words x 8 docs,
// counts 0-5, every row non-zero.
std::vector<Rows> random_instances(std::size_t count) {
  std::mt19937_64 rng(20240101);
  std::uniform_int_distribution<std::size_t> words(1, 10), docs(1, 8);
  std::vector<Rows> out;
  for (std::size_t i = 0; i < count; ++i) {
    const auto w = words(rng);
    const auto d = docs(rng);
    out.push_back(fs_test::random_counts(rng, w, d, 5));
  }
  return out;
}

Outcome cosine_oracle() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto instances = random_instances(1000);
  double max_err = 0.0;
  bool range_ok = true, diag_ok = true;
  for (const auto& rows : instances) {
    const auto c = cosine_matrix(fs_test::make_word_doc(rows));
    for (std::size_t a = 0; a < rows.size(); ++a) {
      diag_ok = diag_ok && c.cells(a, a) == 1.0;
      for (std::size_t b = 0; b < rows.size(); ++b) {
        const double v = c.cells(a, b);
        range_ok = range_ok && v >= 0.0 && v <= 1.0;
        if (a != b) max_err = std::max(max_err, std::abs(v - fs_test::oracle_cosine(rows[a], rows[b])));
      }
    }
  }
  const double elapsed = seconds_since(t0);
  o.detail << "1000 matrices, max |cell - direct| = " << sci(max_err) << " (tol " << sci(kCosineTol) << "), cells in [0,1]: "
           << (range_ok ? "yes" : "no") << ", diagonal 1: " << (diag_ok ? "yes" : "no") << ", " << secs(elapsed)
           << " (limit " << kTimeLimit << " s)";
  o.require(max_err <= kCosineTol, "oracle tolerance");
  o.require(range_ok, "range");
  o.require(diag_ok, "diagonal");
  o.require(elapsed < kTimeLimit, "runtime");
  return o;
}

Outcome coword_oracle() {
  Outcome o;
  const auto instances = random_instances(1000);
  std::size_t mismatches = 0;
  double max_err = 0.0;
  for (const auto& rows : instances) {
    const auto m = fs_test::make_word_doc(rows);
    const auto co = build_coword_matrix(m);
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < rows.size(); ++b)
        if (co.cells(a, b) != fs_test::oracle_coword(rows[a], rows[b])) ++mismatches;

    auto binary = m;
    for (std::size_t r = 0; r < binary.cells.rows(); ++r)
      for (auto& v : binary.cells.row(r)) v = v > 0 ? 1 : 0;
    const auto c = cosine_matrix(binary);
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < rows.size(); ++b) {
        const double identity = static_cast<double>(co.cells(a, b)) /
                                std::sqrt(static_cast<double>(co.cells(a, a)) * static_cast<double>(co.cells(b, b)));
        max_err = std::max(max_err, std::abs(c.cells(a, b) - identity));
      }
  }
  o.detail << "1000 matrices, coword mismatches vs intersection count = " << mismatches
           << ", binary cosine vs coword/sqrt(df*df) max |err| = " << sci(max_err) << " (tol " << sci(kCosineTol) << ")";
  o.require(mismatches == 0, "coword");
  o.require(max_err <= kCosineTol, "binary identity");
  return o;
}

Outcome threshold_oracle() {
  Outcome o;
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double max_err = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 60);
    DenseMatrix<double> m(n, n, 1.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) m(i, j) = m(j, i) = u(rng);
    max_err = std::max(max_err, std::abs(derive_threshold(m) - fs_test::oracle_lower_mean(m)));
  }
  DenseMatrix<double> hand(3, 3, 1.0);
  hand(1, 0) = hand(0, 1) = 0.2;
  hand(2, 0) = hand(0, 2) = 0.4;
  hand(2, 1) = hand(1, 2) = 0.6;
  const double h = derive_threshold(hand);
  o.detail << "1000 matrices, max |derived - brute mean| = " << sci(max_err) << " (tol " << sci(kThresholdTol)
           << "), {0.2,0.4,0.6} -> " << exact(h) << " (expected exactly 0.4)";
  o.require(max_err <= kThresholdTol, "brute force");
  o.require(h == 0.4, "hand example");
  return o;
}

bool monotone(const LayoutResult& l) {
  double prev = l.initial_energy;
  for (const double e : l.energy_trace) {
    if (e > prev) return false;
    prev = e;
  }
  return true;
}

Outcome layout_geometry() {
  Outcome o;
  std::size_t runs = 0, monotone_runs = 0;
  auto run = [&](const SemanticGraph& g, std::uint64_t seed, double epsilon) {
    auto l = kamada_kawai(g, target_distances(g), LayoutOptions{seed, epsilon, 0, true});
    ++runs;
    monotone_runs += monotone(l) ? 1 : 0;
    return l;
  };

  const auto pair = run(fs_test::make_graph({"a", "b"}, {{"a", "b"}}), 42, 1e-9);
  const double sep_err = std::abs(distance(pair.positions[0], pair.positions[1]) - 1.0);

  const auto tri = run(fs_test::make_graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}), 42, 1e-9);
  const double d[] = {distance(tri.positions[0], tri.positions[1]), distance(tri.positions[1], tri.positions[2]),
                      distance(tri.positions[0], tri.positions[2])};
  const double spread = (*std::max_element(d, d + 3) - *std::min_element(d, d + 3)) / *std::max_element(d, d + 3);

  const auto p3 = run(fs_test::make_graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}), 42, 1e-9);
  const double path_err =
      std::abs(distance(p3.positions[0], p3.positions[2]) / (2.0 * distance(p3.positions[0], p3.positions[1])) - 1.0);

  std::mt19937_64 rng(404);
  double worst_grad = 0.0;
  for (int cfg = 0; cfg < 100; ++cfg) {
    const auto g = fs_test::random_connected_graph(rng, 3 + cfg % 12, 0.2);
    const auto td = target_distances(g, 1.0 + 0.5 * (cfg % 3), 1.0);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<Point> p(g.nodes.size());
    for (auto& q : p) q = {u(rng), u(rng)};
    const auto an = energy_gradient(p, td);
    const double h = 1e-5;
    double diff2 = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (int axis = 0; axis < 2; ++axis) {
        auto plus = p, minus = p;
        (axis ? plus[i].y : plus[i].x) += h;
        (axis ? minus[i].y : minus[i].x) -= h;
        const double fd = (layout_energy(plus, td) - layout_energy(minus, td)) / (2.0 * h);
        const double a = axis ? an[i].y : an[i].x;
        diff2 += (a - fd) * (a - fd);
        norm2 += fd * fd;
      }
    }
    worst_grad = std::max(worst_grad, std::sqrt(diff2) / std::max(std::sqrt(norm2), 1e-300));
  }

  for (int trial = 0; trial < 40; ++trial) run(fs_test::random_connected_graph(rng, 4 + trial, 0.1), trial, 1e-4);

  o.detail << "2-node |sep - L| = " << sci(sep_err) << " (tol " << sci(kSeparationTol) << "), triangle spread = "
           << sci(spread) << " (tol " << kTriangleSpread << "), P3 |ac/(2ab) - 1| = " << sci(path_err) << " (tol "
           << kPathTol << "), gradient worst rel err over 100 configs = " << sci(worst_grad) << " (tol "
           << sci(kGradientRelTol) << "), monotone energy in " << monotone_runs << "/" << runs << " runs";
  o.require(sep_err <= kSeparationTol, "separation");
  o.require(spread < kTriangleSpread, "triangle");
  o.require(path_err <= kPathTol, "path");
  o.require(worst_grad <= kGradientRelTol, "gradient");
  o.require(monotone_runs == runs, "monotone");
  return o;
}

Outcome scaling_invariance() {
  Outcome o;
  std::mt19937_64 rng(505);
  double max_err = 0.0;
  std::size_t graph_diffs = 0, layout_diffs = 0, trials = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto rows = fs_test::random_counts(rng, 25, 10, 5);
    const auto words = fs_test::word_names(rows.size());
    Vocabulary v;
    for (const auto& w : words) v.entries.push_back({w, 20, 1, true});

    DenseMatrix<double> base(rows.size(), rows[0].size()), scaled(rows.size(), rows[0].size());
    std::uniform_real_distribution<double> factor(0.01, 100.0);
    std::vector<double> k(rows.size());
    for (auto& x : k) x = factor(rng);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        base(r, c) = rows[r][c];
        scaled(r, c) = rows[r][c] * k[r];
      }
    const auto s1 = cosine_matrix(base, words);
    const auto s2 = cosine_matrix(scaled, words);
    for (std::size_t i = 0; i < s1.cells.rows() * s1.cells.cols(); ++i)
      max_err = std::max(max_err, std::abs(s1.cells.data()[i] - s2.cells.data()[i]));

    SemanticGraph g1, g2;
    try {
      g1 = build_graph(s1, v, derive_threshold(s1));
      g2 = build_graph(s2, v, derive_threshold(s2));
    } catch (const Error&) {
      continue;
    }
    ++trials;
    bool same = g1.nodes == g2.nodes && g1.edges.size() == g2.edges.size();
    for (std::size_t e = 0; same && e < g1.edges.size(); ++e)
      same = g1.edges[e].source == g2.edges[e].source && g1.edges[e].target == g2.edges[e].target &&
             std::abs(g1.edges[e].weight - g2.edges[e].weight) <= kCosineTol;
    if (!same) {
      ++graph_diffs;
      continue;
    }
    if (!(kamada_kawai(g1) == kamada_kawai(g2))) ++layout_diffs;
  }
  o.detail << "50 instances (25x10, per-row factors in [0.01,100]), max |cell change| = " << sci(max_err) << " (tol "
           << sci(kCosineTol) << "), graphs differing " << graph_diffs << "/" << trials << ", layouts differing "
           << layout_diffs << "/" << trials;
  o.require(max_err <= kCosineTol, "cells");
  o.require(trials > 0, "no usable instance");
  o.require(graph_diffs == 0, "graph");
  o.require(layout_diffs == 0, "layout");
  return o;
}

Outcome pajek_round_trip() {
  Outcome o;
  std::mt19937_64 rng(606);
  std::size_t identical = 0;
  double max_pos = 0.0, max_w = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = fs_test::random_connected_graph(rng, 2 + trial, 0.15);
    const auto l = kamada_kawai(g, trial);
    std::ostringstream first;
    write_pajek(first, g, l);
    std::istringstream in(first.str());
    const auto [g2, l2] = read_pajek(in);
    std::ostringstream second;
    write_pajek(second, g2, l2);
    identical += first.str() == second.str() ? 1 : 0;

    // unit-box normalisation of the original positions
    double minx = INFINITY, maxx = -INFINITY, miny = INFINITY, maxy = -INFINITY;
    for (const auto& p : l.positions) {
      minx = std::min(minx, p.x), maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y), maxy = std::max(maxy, p.y);
    }
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const auto p = *l.position(g.nodes[i].stem);
      const auto q = *l2.position(g.nodes[i].stem);
      const double nx = maxx > minx ? (p.x - minx) / (maxx - minx) : 0.5;
      const double ny = maxy > miny ? (p.y - miny) / (maxy - miny) : 0.5;
      max_pos = std::max({max_pos, std::abs(nx - q.x), std::abs(ny - q.y)});
    }
    std::map<std::pair<std::string, std::string>, double> w2;
    for (const auto& e : g2.edges) w2[{e.source, e.target}] = e.weight;
    for (const auto& e : g.edges) {
      const auto it = w2.find({e.source, e.target});
      max_w = std::max(max_w, it == w2.end() ? INFINITY : std::abs(it->second - e.weight));
    }
  }
  o.detail << "50 random graphs, write-read-write byte-identical " << identical << "/50, max position err = " << sci(max_pos)
           << ", max weight err = " << sci(max_w) << " (tol " << sci(kPajekTol) << ")";
  o.require(identical == 50, "bytes");
  o.require(max_pos <= kPajekTol, "positions");
  o.require(max_w <= kPajekTol, "weights");
  return o;
}

struct FixtureRuns {
  RunConfig config;
  MapResult a, b;
};

const FixtureRuns& fixture_runs() {
  static const FixtureRuns runs = [] {
    FixtureRuns r;
    r.config = load_config(fs_test::fixture_dir() / "config.json");
    const auto corpus = prepare_corpus(r.config);
    const auto stop = resolve_stoplist(r.config);
    r.a = run_map(r.config, corpus, "A", stop);
    r.b = run_map(r.config, corpus, "B", stop);
    return r;
  }();
  return runs;
}

Outcome fixture_reproduction() {
  Outcome o;
  const auto golden = nlohmann::json::parse(fs_test::read_file(fs_test::fixture_dir() / "golden.json")).at("A");
  const auto& r = fixture_runs().a.report;
  const double g_thr = golden.at("derived_threshold").get<double>();
  o.detail << "window A (min_occurrences " << *fixture_runs().config.min_occurrences << "): " << r.vocabulary_size
           << " stems over " << r.documents << " documents (expected 60 over 16), matrix " << r.matrix_rows << "x"
           << r.matrix_cols << ", threshold " << exact(r.derived_threshold) << " vs golden " << exact(g_thr) << " (tol "
           << sci(kThresholdTol) << "), edges " << r.edges << " vs " << golden.at("edges").get<std::size_t>()
           << ", isolates " << r.isolates_removed << " vs " << golden.at("isolates_removed").get<std::size_t>();
  o.require(*fixture_runs().config.min_occurrences == 10, "cutoff");
  o.require(r.vocabulary_size == 60 && r.documents == 16, "counts");
  o.require(r.matrix_rows == 60 && r.matrix_cols == 16, "shape");
  o.require(std::abs(r.derived_threshold - g_thr) <= kThresholdTol, "threshold");
  o.require(r.edges == golden.at("edges").get<std::size_t>(), "edges");
  o.require(r.isolates_removed == golden.at("isolates_removed").get<std::size_t>(), "isolates");
  return o;
}

Outcome diachrony() {
  Outcome o;
  const auto& a = fixture_runs().a.file.snapshot;
  const auto& b = fixture_runs().b.file.snapshot;
  const auto diff = compare_snapshots(a, b, default_focal_words());
  std::string diet_verdict = "missing";
  for (const auto& t : diff.focal_trajectories)
    if (t.stem == "diet") diet_verdict = std::string(to_string(t.verdict));
  bool infused_compound = false, infused_listed = false;
  for (const auto& e : diff.emerging_terms)
    if (e.stem == "aspartame-infused") infused_listed = true, infused_compound = e.is_compound;

  std::vector<std::string> every;
  for (const auto& n : a.graph.nodes) every.push_back(n.stem);
  const auto self = compare_snapshots(a, a, every);
  const bool all_stable = std::all_of(self.focal_trajectories.begin(), self.focal_trajectories.end(),
                                      [](const FocalTrajectory& t) { return t.verdict == Verdict::Stable; });
  o.detail << "A->B diet: " << diet_verdict << ", aspartame-infused emerging: " << (infused_listed ? "yes" : "no")
           << " compound: " << (infused_compound ? "yes" : "no") << "; A->A " << self.focal_trajectories.size()
           << " stems all stable: " << (all_stable ? "yes" : "no") << ", emerging " << self.emerging_terms.size();
  o.require(diet_verdict == "moved-coreward", "diet");
  o.require(infused_listed && infused_compound, "compound");
  o.require(all_stable && self.emerging_terms.empty(), "self comparison");
  return o;
}

int run_cli(const std::string& args) {
  const std::string cmd = "\"" + std::string(FRAMESCOPE_CLI) + "\" " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

bool same_tree(const fs::path& x, const fs::path& y, std::size_t& files) {
  files = 0;
  for (const auto& entry : fs::directory_iterator(x)) {
    ++files;
    const auto other = y / entry.path().filename();
    if (!fs::exists(other) || fs_test::read_file(entry.path()) != fs_test::read_file(other)) return false;
  }
  std::size_t other_files = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(y)) ++other_files;
  return other_files == files;
}

// 100+ frequent stems across 50 documents, three loose topics.
void write_large_corpus(const fs::path& dir) {
  fs::create_directories(dir / "corpus");
  std::mt19937_64 rng(707);
  std::vector<std::string> words;
  for (int i = 0; i < 150; ++i) {
    std::string w = "w";
    for (int n = i; ; n /= 18) {
      w += static_cast<char>('a' + n % 18);  // letters a..r, never a trailing s
      if (n < 18) break;
    }
    words.push_back(w + "x");
  }
  for (int d = 0; d < 50; ++d) {
    const int topic = d % 3;
    std::vector<double> weight(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) weight[i] = (static_cast<int>(i) % 3 == topic ? 3.0 : 1.0) / (1.0 + i * 0.01);
    std::discrete_distribution<std::size_t> pick(weight.begin(), weight.end());
    std::string text;
    for (int t = 0; t < 400; ++t) text += words[pick(rng)] + (t % 15 == 14 ? ".\n" : " ");
    char name[64];
    std::snprintf(name, sizeof name, "2001-%02d-%02d_doc%02d.txt", 1 + d % 12, 1 + d % 28, d);
    fs_test::write_file(dir / "corpus" / name, text);
  }
  fs_test::write_file(dir / "run.json", R"({"input_dir": "corpus", "min_occurrences": 10, "vocab_cap": 100, "seed": 42,
    "windows": [{"label": "all", "start": "2001-01-01", "end": "2001-12-31"}]})");
}

Outcome determinism_and_speed() {
  Outcome o;
  TempDir dir;
  const std::string config = "--config \"" + (fs_test::fixture_dir() / "config.json").string() + "\"";
  bool identical = true;
  std::size_t files = 0, total_files = 0;
  for (const char* window : {"A", "B"}) {
    const auto one = dir / (std::string(window) + "_one");
    const auto two = dir / (std::string(window) + "_two");
    const int s1 = run_cli("map " + config + " --window " + window + " --out-dir \"" + one.string() + "\"");
    const int s2 = run_cli("map " + config + " --window " + window + " --out-dir \"" + two.string() + "\"");
    identical = identical && s1 == 0 && s2 == 0 && same_tree(one, two, files);
    total_files += files;
  }

  write_large_corpus(dir.path());
  const auto t0 = std::chrono::steady_clock::now();
  const int big = run_cli("map --config \"" + (dir / "run.json").string() + "\" --window all --out-dir \"" +
                          (dir / "big").string() + "\"");
  const double cli_time = seconds_since(t0);
  std::size_t words = 0, docs = 0;
  bool converged = false;
  if (big == 0) {
    const auto snap = read_snapshot(dir / "big" / "all.snapshot");
    words = snap.word_doc.words.size();
    docs = snap.word_doc.docs.size();
    converged = snap.snapshot.layout.converged;
  }
  o.detail << "CLI map twice on fixture windows A and B: " << (identical ? "byte-identical" : "DIFFERENT") << " ("
           << total_files << " files); " << words << "-word x " << docs << "-doc CLI run " << secs(cli_time) << " (limit "
           << kTimeLimit << " s), layout converged: " << (converged ? "yes" : "no");
  o.require(identical && total_files == 16, "determinism");
  o.require(big == 0 && words == 100 && docs == 50, "large run shape");
  o.require(cli_time < kTimeLimit, "runtime");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 cosine oracle", cosine_oracle},
      {"2 co-word oracle", coword_oracle},
      {"3 threshold", threshold_oracle},
      {"4 layout geometry", layout_geometry},
      {"5 scaling invariance", scaling_invariance},
      {"6 pajek round-trip", pajek_round_trip},
      {"7 fixture reproduction", fixture_reproduction},
      {"8 diachrony", diachrony},
      {"9 determinism and performance", determinism_and_speed},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << name << "] " << o.detail.str() << '\n';
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " acceptance criteria passed\n";
  return failed == 0 ? 0 : 1;
}

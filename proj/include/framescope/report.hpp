#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "framescope/format.hpp"

namespace framescope {

/// Summary of one map run. Every field can be recomputed from the saved
/// snapshot (see recompute_report in export_io.hpp).
struct RunReport {
  std::string window_label;
  std::string similarity = "cosine";
  std::size_t documents = 0;
  std::size_t vocabulary_size = 0;  // included stems
  std::size_t matrix_rows = 0;
  std::size_t matrix_cols = 0;
  double derived_threshold = 0.0;
  double applied_threshold = 0.0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t isolates_removed = 0;
  bool converged = false;
  std::size_t iterations = 0;
  double final_energy = 0.0;

  bool operator==(const RunReport&) const = default;
};

inline void write_report(std::ostream& out, const RunReport& r) {
  out << "window: " << r.window_label << '\n'
      << "similarity: " << r.similarity << '\n'
      << "documents: " << r.documents << '\n'
      << "vocabulary: " << r.vocabulary_size << '\n'
      << "matrix: " << r.matrix_rows << 'x' << r.matrix_cols << '\n'
      << "derived_threshold: " << fixed6(r.derived_threshold) << '\n'
      << "applied_threshold: " << fixed6(r.applied_threshold) << '\n'
      << "nodes: " << r.nodes << '\n'
      << "edges: " << r.edges << '\n'
      << "isolates_removed: " << r.isolates_removed << '\n'
      << "converged: " << (r.converged ? "true" : "false") << '\n'
      << "iterations: " << r.iterations << '\n'
      << "final_energy: " << fixed6(r.final_energy) << '\n';
}

}  // namespace framescope

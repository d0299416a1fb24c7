#pragma once

// Word/document occurrence matrix, co-word matrix, and the cosine and Pearson
// similarity matrices built from word rows.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "framescope/corpus.hpp"
#include "framescope/error.hpp"
#include "framescope/matrix.hpp"
#include "framescope/textprep.hpp"

namespace framescope {

/// cells(w, d) = occurrences of word w in document d.
struct WordDocMatrix {
  std::vector<std::string> words;
  std::vector<std::string> docs;
  DenseMatrix<std::int64_t> cells;

  bool operator==(const WordDocMatrix&) const = default;
};

/// cells(w, v) = number of documents containing both w and v.
struct CoWordMatrix {
  std::vector<std::string> words;
  DenseMatrix<std::int64_t> cells;

  bool operator==(const CoWordMatrix&) const = default;
};

/// Symmetric word-by-word similarity. `threshold` is filled in once derived.
struct SimilarityMatrix {
  std::vector<std::string> words;
  DenseMatrix<double> cells;
  std::optional<double> threshold;

  bool operator==(const SimilarityMatrix&) const = default;
};

using CosineMatrix = SimilarityMatrix;

/// Pearson correlations; rows with zero variance are NaN and listed.
struct PearsonMatrix {
  std::vector<std::string> words;
  DenseMatrix<double> cells;
  std::vector<std::string> undefined_rows;
};

inline bool is_undefined(double cell) { return std::isnan(cell); }

/// Builds the count matrix for a window. `per_doc` must hold exactly one
/// frequency list per window document (matched by scope). With `binary` the
/// cells record presence (0/1) instead of counts.
inline WordDocMatrix build_word_doc_matrix(const TimeWindow& window, const Vocabulary& vocab,
                                           std::span<const FrequencyList> per_doc, bool binary = false) {
  WordDocMatrix m;
  m.words = vocab.included_stems();
  if (m.words.empty()) throw Error("vectorspace", "vocabulary is empty");
  m.docs = window.document_ids;

  std::unordered_map<std::string_view, const FrequencyList*> by_scope;
  for (const auto& f : per_doc) by_scope.emplace(f.scope, &f);
  if (by_scope.size() != m.docs.size())
    throw Error("vectorspace", "expected " + std::to_string(m.docs.size()) + " document frequency lists, got " +
                                   std::to_string(by_scope.size()));

  m.cells = DenseMatrix<std::int64_t>(m.words.size(), m.docs.size());
  for (std::size_t d = 0; d < m.docs.size(); ++d) {
    auto it = by_scope.find(m.docs[d]);
    if (it == by_scope.end()) throw Error("vectorspace", "no frequency list for document '" + m.docs[d] + "'");
    for (std::size_t w = 0; w < m.words.size(); ++w) {
      const auto c = it->second->count(m.words[w]);
      m.cells(w, d) = binary ? (c > 0 ? 1 : 0) : c;
    }
  }
  for (std::size_t w = 0; w < m.words.size(); ++w) {
    const auto row = m.cells.row(w);
    if (std::all_of(row.begin(), row.end(), [](auto c) { return c == 0; }))
      throw Error("vectorspace", "internal consistency: word '" + m.words[w] + "' has no occurrences in the window");
  }
  return m;
}

inline CoWordMatrix build_coword_matrix(const WordDocMatrix& m) {
  const std::size_t n = m.words.size();
  CoWordMatrix co{m.words, DenseMatrix<std::int64_t>(n, n)};
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t v = w; v < n; ++v) {
      std::int64_t shared = 0;
      for (std::size_t d = 0; d < m.cells.cols(); ++d) shared += (m.cells(w, d) > 0 && m.cells(v, d) > 0) ? 1 : 0;
      co.cells(w, v) = co.cells(v, w) = shared;
    }
  }
  return co;
}

namespace detail {

// Integer rows accumulate exactly in 64 bits; floating rows in double.
template <typename T>
using accumulator_t = std::conditional_t<std::is_integral_v<T>, std::int64_t, double>;

template <typename T>
double cosine_of_rows(std::span<const T> x, std::span<const T> y, accumulator_t<T> xx, accumulator_t<T> yy) {
  accumulator_t<T> xy{};
  for (std::size_t i = 0; i < x.size(); ++i) xy += static_cast<accumulator_t<T>>(x[i]) * y[i];
  const double value = static_cast<double>(xy) / std::sqrt(static_cast<double>(xx) * static_cast<double>(yy));
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace detail

/// Cosine between every pair of rows: sum(x*y) / sqrt(sum(x^2) * sum(y^2)).
/// Rows must be non-negative with non-zero norm.
template <typename T>
  requires std::is_arithmetic_v<T>
SimilarityMatrix cosine_matrix(const DenseMatrix<T>& rows, std::vector<std::string> words) {
  using Acc = detail::accumulator_t<T>;
  const std::size_t n = rows.rows();
  std::vector<Acc> norms(n);
  for (std::size_t r = 0; r < n; ++r) {
    Acc sq{};
    for (const T v : rows.row(r)) {
      if (v < 0) throw Error("vectorspace", "negative cell in row '" + (r < words.size() ? words[r] : std::to_string(r)) + "'");
      sq += static_cast<Acc>(v) * v;
    }
    if (sq == Acc{})
      throw Error("vectorspace", "zero-norm row '" + (r < words.size() ? words[r] : std::to_string(r)) + "'",
                  "pipeline corruption: every vocabulary word must occur in the window");
    norms[r] = sq;
  }
  SimilarityMatrix out{std::move(words), DenseMatrix<double>(n, n), std::nullopt};
  for (std::size_t a = 0; a < n; ++a) {
    out.cells(a, a) = 1.0;
    for (std::size_t b = a + 1; b < n; ++b)
      out.cells(a, b) = out.cells(b, a) = detail::cosine_of_rows<T>(rows.row(a), rows.row(b), norms[a], norms[b]);
  }
  return out;
}

inline SimilarityMatrix cosine_matrix(const WordDocMatrix& m) { return cosine_matrix(m.cells, m.words); }

/// Product-moment correlation between rows. Zero-variance rows are reported
/// and their cells left NaN (the diagonal included).
template <typename T>
  requires std::is_arithmetic_v<T>
PearsonMatrix pearson_matrix(const DenseMatrix<T>& rows, std::vector<std::string> words, Warnings* warnings = nullptr) {
  const std::size_t n = rows.rows();
  const std::size_t k = rows.cols();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> centered(n, std::vector<double>(k));
  std::vector<double> ss(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    double mean = 0.0;
    for (const T v : rows.row(r)) mean += static_cast<double>(v);
    mean /= static_cast<double>(k);
    for (std::size_t i = 0; i < k; ++i) {
      centered[r][i] = static_cast<double>(rows(r, i)) - mean;
      ss[r] += centered[r][i] * centered[r][i];
    }
  }
  PearsonMatrix out{std::move(words), DenseMatrix<double>(n, n, nan), {}};
  for (std::size_t r = 0; r < n; ++r) {
    if (ss[r] == 0.0) {
      const std::string name = r < out.words.size() ? out.words[r] : std::to_string(r);
      out.undefined_rows.push_back(name);
      warn(warnings, "pearson: row '" + name + "' has zero variance; its correlations are undefined");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (ss[a] == 0.0) continue;
    out.cells(a, a) = 1.0;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (ss[b] == 0.0) continue;
      double sxy = 0.0;
      for (std::size_t i = 0; i < k; ++i) sxy += centered[a][i] * centered[b][i];
      out.cells(a, b) = out.cells(b, a) = std::clamp(sxy / std::sqrt(ss[a] * ss[b]), -1.0, 1.0);
    }
  }
  return out;
}

inline PearsonMatrix pearson_matrix(const WordDocMatrix& m, Warnings* warnings = nullptr) {
  return pearson_matrix(m.cells, m.words, warnings);
}

}  // namespace framescope

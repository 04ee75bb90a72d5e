#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "sharpset/discretize.hpp"

namespace sharpset {

// Integer sparse row; R entries are always in {-1, 0, 1}.
struct SparseRow {
  std::vector<std::size_t> cols;
  std::vector<int> vals;
  bool operator==(const SparseRow&) const = default;
  bool operator<(const SparseRow& o) const { return std::tie(cols, vals) < std::tie(o.cols, o.vals); }
};

// Discrete local model p = A q with R q = 0, q >= 0.
//
// A has exactly one 1 per column, so it is stored as col_row[j] = the row
// hit by column j. Columns are regions in lexicographic order; for the
// unconditional dynamic family they are (g, region) pairs, g-major.
struct DiscreteModel {
  ModelSpec spec;
  std::vector<Patch> patches;
  std::vector<std::vector<int>> row_labels;         // outcome tuples, 0-based
  std::vector<std::vector<std::size_t>> col_labels;  // [g,] f_1..f_T
  std::vector<std::size_t> col_row;
  std::vector<SparseRow> R;
  // Exchangeable models with region columns: each row lists the columns of
  // one multiset orbit.
  std::optional<std::vector<std::vector<std::size_t>>> P_E;

  std::size_t rows() const { return row_labels.size(); }
  std::size_t cols() const { return col_row.size(); }
  Mat A_dense() const;
  Mat R_dense() const;
  Mat P_E_dense() const;
  // "p[1,0]" style label for an outcome row.
  std::string row_name(std::size_t i) const;
};

DiscreteModel build_static(const std::vector<Patch>& patches, const ModelSpec& spec);
DiscreteModel build_dyn_cond(const std::vector<Patch>& patches, const ModelSpec& spec);
DiscreteModel build_dyn_uncond(const std::vector<Patch>& patches, const ModelSpec& spec);
DiscreteModel build_ar2(const std::vector<Patch>& patches, const ModelSpec& spec);
// Dispatches on spec.family, computing patches first.
DiscreteModel build_model(const ModelSpec& spec, PatchMethod method = PatchMethod::Auto);

std::vector<std::vector<std::size_t>> build_P_exchangeable(std::size_t patch_count, int T);

// {"A": {...}, "R": {...}} with (row, col, value) triplets.
std::string to_sparse_json(const DiscreteModel& m);

}  // namespace sharpset

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace alns {

/// Compressed sparse row matrix with a fixed sparsity pattern. Column indices
/// are sorted and unique within each row. Values can be reset and
/// re-accumulated without touching the pattern, which is how the Jacobian is
/// reassembled every Newton step.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  // rows_cols[r] must be sorted and duplicate-free.
  static CsrMatrix from_pattern(int rows, int cols,
                                const std::vector<std::vector<int>>& row_cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const { return col_idx_.size(); }

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return vals_; }
  std::vector<double>& values() { return vals_; }

  void set_zero();

  // Accumulates into an existing entry; the entry must be in the pattern.
  void add(int r, int c, double v);
  void set(int r, int c, double v);
  double get(int r, int c) const;  // 0 if not in pattern

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const;
  double row_dot(int r, const Eigen::VectorXd& x) const;

  // Symmetric elimination of constrained rows/columns: zeroes the row and
  // column of every index in `dofs` (sorted) and puts 1 on the diagonal.
  void eliminate_symmetric(const std::vector<int>& dofs);
  // Zeroes whole columns only (used for rectangular blocks).
  void zero_columns(const std::vector<int>& dofs);

  double max_abs() const;
  Eigen::MatrixXd to_dense() const;

 private:
  int find(int r, int c) const;  // -1 if absent
  int rows_ = 0, cols_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> vals_;
};

/// Collects the coupling graph row by row and emits the finalized pattern.
class PatternBuilder {
 public:
  explicit PatternBuilder(int rows, int cols) : rows_(rows), cols_(cols), row_cols_(rows) {}
  void connect(const std::vector<int>& row_dofs, const std::vector<int>& col_dofs);
  void connect_row(int row, const std::vector<int>& col_dofs);
  CsrMatrix build();

 private:
  int rows_, cols_;
  std::vector<std::vector<int>> row_cols_;
};

void write_matrix_market(const CsrMatrix& a, const std::string& path);

}  // namespace alns

#include "alns/sparse.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "alns/errors.hpp"

namespace alns {

CsrMatrix CsrMatrix::from_pattern(int rows, int cols,
                                  const std::vector<std::vector<int>>& row_cols) {
  CsrMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_ptr_.resize(rows + 1, 0);
  std::size_t nnz = 0;
  for (int r = 0; r < rows; ++r) {
    nnz += row_cols[r].size();
    m.row_ptr_[r + 1] = static_cast<int>(nnz);
  }
  m.col_idx_.reserve(nnz);
  for (int r = 0; r < rows; ++r) {
    assert(std::is_sorted(row_cols[r].begin(), row_cols[r].end()));
    m.col_idx_.insert(m.col_idx_.end(), row_cols[r].begin(), row_cols[r].end());
  }
  m.vals_.assign(nnz, 0.0);
  return m;
}

void CsrMatrix::set_zero() { std::fill(vals_.begin(), vals_.end(), 0.0); }

int CsrMatrix::find(int r, int c) const {
  const int lo = row_ptr_[r], hi = row_ptr_[r + 1];
  auto it = std::lower_bound(col_idx_.begin() + lo, col_idx_.begin() + hi, c);
  if (it == col_idx_.begin() + hi || *it != c) return -1;
  return static_cast<int>(it - col_idx_.begin());
}

void CsrMatrix::add(int r, int c, double v) {
  const int k = find(r, c);
  if (k < 0) throw Error("CsrMatrix::add: entry (" + std::to_string(r) + "," + std::to_string(c) + ") not in pattern");
  vals_[k] += v;
}

void CsrMatrix::set(int r, int c, double v) {
  const int k = find(r, c);
  if (k < 0) throw Error("CsrMatrix::set: entry not in pattern");
  vals_[k] = v;
}

double CsrMatrix::get(int r, int c) const {
  const int k = find(r, c);
  return k < 0 ? 0.0 : vals_[k];
}

Eigen::VectorXd CsrMatrix::apply(const Eigen::VectorXd& x) const {
  assert(x.size() == cols_);
  Eigen::VectorXd y(rows_);
  for (int r = 0; r < rows_; ++r) {
    double s = 0.0;
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += vals_[k] * x[col_idx_[k]];
    y[r] = s;
  }
  return y;
}

Eigen::VectorXd CsrMatrix::apply_transpose(const Eigen::VectorXd& x) const {
  assert(x.size() == rows_);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(cols_);
  for (int r = 0; r < rows_; ++r) {
    const double xr = x[r];
    if (xr == 0.0) continue;
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) y[col_idx_[k]] += vals_[k] * xr;
  }
  return y;
}

double CsrMatrix::row_dot(int r, const Eigen::VectorXd& x) const {
  double s = 0.0;
  for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += vals_[k] * x[col_idx_[k]];
  return s;
}

void CsrMatrix::eliminate_symmetric(const std::vector<int>& dofs) {
  assert(rows_ == cols_);
  std::vector<char> mark(cols_, 0);
  for (int d : dofs) mark[d] = 1;
  for (int r = 0; r < rows_; ++r) {
    const bool row_bc = mark[r] != 0;
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const int c = col_idx_[k];
      if (row_bc || mark[c]) vals_[k] = (r == c) ? 1.0 : 0.0;
    }
  }
}

void CsrMatrix::zero_columns(const std::vector<int>& dofs) {
  std::vector<char> mark(cols_, 0);
  for (int d : dofs) mark[d] = 1;
  for (std::size_t k = 0; k < col_idx_.size(); ++k)
    if (mark[col_idx_[k]]) vals_[k] = 0.0;
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : vals_) m = std::max(m, std::abs(v));
  return m;
}

Eigen::MatrixXd CsrMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) d(r, col_idx_[k]) = vals_[k];
  return d;
}

void PatternBuilder::connect(const std::vector<int>& row_dofs, const std::vector<int>& col_dofs) {
  for (int r : row_dofs) {
    auto& rc = row_cols_[r];
    rc.insert(rc.end(), col_dofs.begin(), col_dofs.end());
  }
}

void PatternBuilder::connect_row(int row, const std::vector<int>& col_dofs) {
  auto& rc = row_cols_[row];
  rc.insert(rc.end(), col_dofs.begin(), col_dofs.end());
}

CsrMatrix PatternBuilder::build() {
  for (auto& rc : row_cols_) {
    std::sort(rc.begin(), rc.end());
    rc.erase(std::unique(rc.begin(), rc.end()), rc.end());
  }
  return CsrMatrix::from_pattern(rows_, cols_, row_cols_);
}

void write_matrix_market(const CsrMatrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << " " << a.cols() << " " << a.nnz() << "\n";
  char buf[64];
  for (int r = 0; r < a.rows(); ++r)
    for (int k = a.row_ptr()[r]; k < a.row_ptr()[r + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", r + 1, a.col_idx()[k] + 1, a.values()[k]);
      out << buf;
    }
}

}  // namespace alns

#include "mla/linalg.hpp"

#include <cassert>
#include <cstddef>

namespace mla {

QMat qmat_zero(int rows, int cols) {
  return QMat(rows, QVec(cols, Rat(0)));
}

QMat qmat_identity(int n) {
  QMat m = qmat_zero(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMat qmat_mul(const QMat& a, const QMat& b) {
  assert(!a.empty() && !b.empty() && a[0].size() == b.size());
  QMat c = qmat_zero((int)a.size(), (int)b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (is_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j)
        if (!is_zero(b[k][j])) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

QVec qmat_apply(const QMat& a, const QVec& v) {
  assert(a.empty() || a[0].size() == v.size());
  QVec out(a.size(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!is_zero(a[i][j]) && !is_zero(v[j])) out[i] += a[i][j] * v[j];
  return out;
}

bool qmat_equal(const QMat& a, const QMat& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != b[i][j]) return false;
  }
  return true;
}

std::vector<int> rref(QMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = (int)m.size();
  const int cols = (int)m[0].size();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!is_zero(m[i][c])) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[p], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      Rat f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(QMat m) { return (int)rref(m).size(); }

std::vector<QVec> kernel_basis(const QMat& m) {
  if (m.empty()) return {};
  const int cols = (int)m[0].size();
  QMat red = m;
  std::vector<int> pivots = rref(red);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    QVec v(cols, Rat(0));
    v[c] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -red[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

int kernel_dim(const QMat& m) {
  if (m.empty()) return 0;
  return (int)m[0].size() - rank(m);
}

bool solve(QMat m, QVec b, QVec& x) {
  assert(m.size() == b.size());
  if (m.empty()) {
    x.clear();
    return true;
  }
  const int cols = (int)m[0].size();
  for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(b[i]);
  QMat aug = std::move(m);
  std::vector<int> pivots = rref(aug);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] == cols) return false;
  x.assign(cols, Rat(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return true;
}

}  // namespace mla

#pragma once

#include <vector>

#include "mla/rational.hpp"

namespace mla {

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;  // row major, rectangular

QMat qmat_zero(int rows, int cols);
QMat qmat_identity(int n);
QMat qmat_mul(const QMat& a, const QMat& b);
QVec qmat_apply(const QMat& a, const QVec& v);
bool qmat_equal(const QMat& a, const QMat& b);

// In-place reduced row echelon form. Returns pivot column indices in order.
std::vector<int> rref(QMat& m);

int rank(QMat m);

// Basis of the right kernel {v : m v = 0}, one QVec per kernel dimension.
// Vectors are the standard rref kernel basis (free column set to 1).
std::vector<QVec> kernel_basis(const QMat& m);

int kernel_dim(const QMat& m);

// Solve m x = b exactly. Returns false if inconsistent. Free variables get 0.
bool solve(QMat m, QVec b, QVec& x);

}  // namespace mla

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "nscap/errors.hpp"

namespace nscap {

// Dense symmetric matrix stored row-major in a flat vector.
struct SymmetricEigen {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column j of the n x n matrix is eigenvector j
};

// Cyclic Jacobi eigendecomposition. Small fixed sizes only; sweeps until the
// off-diagonal Frobenius norm falls below tol.
inline SymmetricEigen jacobi_eigen(const std::vector<double>& matrix, int n,
                                   double tol = 1e-12, int max_sweeps = 100) {
  std::vector<double> a = matrix;
  std::vector<double> v(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i * n + i)] = 1.0;
  auto at = [&](std::vector<double>& m, int i, int j) -> double& {
    return m[static_cast<size_t>(i * n + j)];
  };
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(a, i, j) * at(a, i, j);
    if (std::sqrt(2 * off) < tol) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = at(a, p, q);
        if (std::abs(apq) < tol / (10.0 * n)) continue;
        double theta = (at(a, q, q) - at(a, p, p)) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = at(a, k, p), akq = at(a, k, q);
          at(a, k, p) = c * akp - s * akq;
          at(a, k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = at(a, p, k), aqk = at(a, q, k);
          at(a, p, k) = c * apk - s * aqk;
          at(a, q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = at(v, k, p), vkq = at(v, k, q);
          at(v, k, p) = c * vkp - s * vkq;
          at(v, k, q) = s * vkp + c * vkq;
        }
      }
  }
  SymmetricEigen out;
  out.values.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out.values[static_cast<size_t>(i)] = a[static_cast<size_t>(i * n + i)];
  out.vectors = std::move(v);
  // sort ascending, permuting eigenvector columns alongside
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
    return out.values[static_cast<size_t>(lhs)] < out.values[static_cast<size_t>(rhs)];
  });
  SymmetricEigen sorted;
  sorted.values.resize(static_cast<size_t>(n));
  sorted.vectors.resize(out.vectors.size());
  for (int j = 0; j < n; ++j) {
    sorted.values[static_cast<size_t>(j)] = out.values[static_cast<size_t>(order[static_cast<size_t>(j)])];
    for (int i = 0; i < n; ++i)
      sorted.vectors[static_cast<size_t>(i * n + j)] =
          out.vectors[static_cast<size_t>(i * n + order[static_cast<size_t>(j)])];
  }
  return sorted;
}

// Euclidean projection onto the positive semidefinite cone.
inline std::vector<double> project_psd(const std::vector<double>& matrix, int n) {
  std::vector<double> sym(matrix.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      sym[static_cast<size_t>(i * n + j)] =
          0.5 * (matrix[static_cast<size_t>(i * n + j)] + matrix[static_cast<size_t>(j * n + i)]);
  SymmetricEigen eig = jacobi_eigen(sym, n);
  std::vector<double> out(matrix.size(), 0.0);
  for (int k = 0; k < n; ++k) {
    double w = eig.values[static_cast<size_t>(k)];
    if (w <= 0) continue;
    for (int i = 0; i < n; ++i) {
      double wi = w * eig.vectors[static_cast<size_t>(i * n + k)];
      if (wi == 0) continue;
      for (int j = 0; j < n; ++j)
        out[static_cast<size_t>(i * n + j)] += wi * eig.vectors[static_cast<size_t>(j * n + k)];
    }
  }
  return out;
}

inline double min_eigenvalue(const std::vector<double>& matrix, int n) {
  std::vector<double> sym(matrix.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      sym[static_cast<size_t>(i * n + j)] =
          0.5 * (matrix[static_cast<size_t>(i * n + j)] + matrix[static_cast<size_t>(j * n + i)]);
  return jacobi_eigen(sym, n).values.front();
}

}  // namespace nscap

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "nscap/behavior.hpp"
#include "nscap/errors.hpp"
#include "nscap/hpolytope.hpp"
#include "nscap/linalg_exact.hpp"
#include "nscap/rational.hpp"
#include "nscap/vertex_set.hpp"

namespace nscap {

namespace detail {

// Tight-row bitmask of one cone ray; capacity 256 constraint rows.
struct TightSet {
  std::array<uint64_t, 4> w{};
  void set(size_t i) { w[i >> 6] |= uint64_t{1} << (i & 63); }
  friend TightSet operator&(const TightSet& a, const TightSet& b) {
    TightSet r;
    for (int i = 0; i < 4; ++i) r.w[i] = a.w[i] & b.w[i];
    return r;
  }
  bool contains(const TightSet& sub) const {
    for (int i = 0; i < 4; ++i)
      if ((w[i] & sub.w[i]) != sub.w[i]) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (uint64_t x : w) c += std::popcount(x);
    return c;
  }
  bool operator==(const TightSet&) const = default;
};

struct ConeRay {
  VecZ y;
  TightSet tight;
};

inline Integer dot(const VecZ& a, const VecZ& b) {
  Integer acc = 0;
  for (size_t i = 0; i < a.size(); ++i)
    mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return acc;
}

// Exact inverse via Gauss-Jordan; throws ConsistencyError if singular.
inline MatQ invert(MatQ m) {
  size_t n = m.size();
  for (size_t i = 0; i < n; ++i) {
    m[i].resize(2 * n, Rational(0));
    m[i][n + i] = 1;
  }
  for (size_t col = 0, row = 0; col < n; ++col, ++row) {
    size_t sel = row;
    while (sel < n && m[sel][col] == 0) ++sel;
    if (sel == n) throw ConsistencyError("invert: singular matrix");
    std::swap(m[sel], m[row]);
    Rational inv = m[row][col];
    for (size_t j = col; j < 2 * n; ++j) m[row][j] /= inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (size_t j = col; j < 2 * n; ++j) m[i][j] -= f * m[row][j];
    }
  }
  MatQ inv(n, VecQ(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

// Incremental echelon basis used to pick an independent row subset greedily.
struct EchelonBasis {
  std::vector<VecQ> rows;  // reduced, each with a leading pivot column
  std::vector<size_t> pivot_cols;
  bool try_add(VecQ v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      const Rational& f = v[pivot_cols[r]];
      if (f == 0) continue;
      Rational factor = f;
      for (size_t j = 0; j < v.size(); ++j) v[j] -= factor * rows[r][j];
    }
    size_t p = v.size();
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) {
        p = j;
        break;
      }
    if (p == v.size()) return false;
    Rational lead = v[p];
    for (size_t j = 0; j < v.size(); ++j) v[j] /= lead;
    rows.push_back(std::move(v));
    pivot_cols.push_back(p);
    return true;
  }
};

}  // namespace detail

// Affine chart of the equality flat: x = origin + basis . t with t free.
struct Chart {
  size_t dim = 0;
  VecQ origin;                // length 64
  std::vector<VecQ> basis;    // dim vectors, each length 64
};

inline Chart build_chart(const HPolytope& hp) {
  Chart chart;
  if (hp.equalities.empty()) {
    chart.dim = 64;
    chart.origin.assign(64, Rational(0));
    for (int i = 0; i < 64; ++i) {
      VecQ e(64, Rational(0));
      e[i] = 1;
      chart.basis.push_back(std::move(e));
    }
    return chart;
  }
  MatQ aug;
  for (const LinearRow& row : hp.equalities) {
    VecQ r(row.coeffs.begin(), row.coeffs.end());
    r.push_back(row.rhs);
    aug.push_back(std::move(r));
  }
  chart.origin = solve_particular(aug);  // throws GeometryError if inconsistent
  chart.basis = nullspace(equality_matrix(hp));
  chart.dim = chart.basis.size();
  return chart;
}

// Exact vertex enumeration by the double description method.  Equalities are
// eliminated first by projecting to a coordinate chart of their affine flat;
// the inequalities then drive an incremental ray computation on the
// homogenization cone.  Unbounded or inconsistent inputs raise GeometryError.
inline std::vector<Behavior> vertex_enumeration(const HPolytope& hp) {
  using detail::ConeRay;
  using detail::TightSet;
  const Chart chart = build_chart(hp);
  const size_t d = chart.dim;

  // Homogenized integer rows (-g, h), meaning h*s - g.t >= 0; s-row last.
  std::vector<VecZ> rows;
  for (const LinearRow& row : hp.inequalities) {
    VecQ hom(d + 1);
    Rational h = row.rhs;
    for (int i = 0; i < 64; ++i)
      if (row.coeffs[i] != 0) h -= row.coeffs[i] * chart.origin[i];
    bool nonzero = false;
    for (size_t j = 0; j < d; ++j) {
      Rational g = 0;
      for (int i = 0; i < 64; ++i)
        if (row.coeffs[i] != 0) g += row.coeffs[i] * chart.basis[j][i];
      hom[j] = -g;
      if (g != 0) nonzero = true;
    }
    hom[d] = h;
    if (!nonzero) {
      if (h < 0) throw GeometryError("vertex_enumeration: inconsistent system");
      continue;  // trivially satisfied row
    }
    VecZ z = clear_denominators(hom);
    if (std::find(rows.begin(), rows.end(), z) == rows.end())
      rows.push_back(std::move(z));
  }
  {
    VecZ srow(d + 1, Integer(0));
    srow[d] = 1;
    rows.push_back(std::move(srow));
  }
  if (rows.size() > 256)
    throw DomainError("vertex_enumeration: more than 256 distinct constraint rows");

  // The homogenization cone must be pointed, else the polytope is unbounded.
  detail::EchelonBasis picker;
  std::vector<size_t> initial;
  for (size_t i = 0; i < rows.size() && initial.size() < d + 1; ++i) {
    VecQ v(rows[i].size());
    for (size_t j = 0; j < v.size(); ++j) v[j] = Rational(rows[i][j]);
    if (picker.try_add(std::move(v))) initial.push_back(i);
  }
  if (initial.size() < d + 1)
    throw GeometryError("vertex_enumeration: unbounded system (cone has lineality)");

  // Initial simplicial cone: rays are the columns of the inverse of the
  // chosen row submatrix, so chosen row i sees exactly one positive ray.
  std::vector<ConeRay> rays;
  {
    MatQ sub(d + 1, VecQ(d + 1));
    for (size_t r = 0; r < initial.size(); ++r)
      for (size_t c = 0; c <= d; ++c) sub[r][c] = Rational(rows[initial[r]][c]);
    MatQ inv = detail::invert(std::move(sub));
    for (size_t c = 0; c <= d; ++c) {
      VecQ col(d + 1);
      for (size_t r = 0; r <= d; ++r) col[r] = inv[r][c];
      ConeRay ray;
      ray.y = clear_denominators(col);
      for (size_t r = 0; r < initial.size(); ++r)
        if (r != c) ray.tight.set(initial[r]);
      rays.push_back(std::move(ray));
    }
  }

  std::vector<bool> in_initial(rows.size(), false);
  for (size_t i : initial) in_initial[i] = true;

  for (size_t ri = 0; ri < rows.size(); ++ri) {
    if (in_initial[ri]) continue;
    const VecZ& row = rows[ri];
    std::vector<Integer> vals(rays.size());
    std::vector<size_t> pos, neg;
    for (size_t k = 0; k < rays.size(); ++k) {
      vals[k] = detail::dot(row, rays[k].y);
      int s = sgn(vals[k]);
      if (s > 0)
        pos.push_back(k);
      else if (s < 0)
        neg.push_back(k);
      else
        rays[k].tight.set(ri);
    }
    if (!neg.empty()) {
      std::vector<ConeRay> fresh;
      // Adjacency: the common tight set must be large enough and must not be
      // contained in any third ray's tight set (exact combinatorial test).
      for (size_t u : pos)
        for (size_t w : neg) {
          TightSet common = rays[u].tight & rays[w].tight;
          if (common.count() < static_cast<int>(d) - 1) continue;
          bool adjacent = true;
          for (size_t t = 0; t < rays.size(); ++t) {
            if (t == u || t == w) continue;
            if (rays[t].tight.contains(common)) {
              adjacent = false;
              break;
            }
          }
          if (!adjacent) continue;
          ConeRay ray;
          ray.y.resize(row.size());
          for (size_t j = 0; j < row.size(); ++j)
            ray.y[j] = vals[u] * rays[w].y[j] - vals[w] * rays[u].y[j];
          make_primitive(ray.y);
          ray.tight = common;
          ray.tight.set(ri);
          fresh.push_back(std::move(ray));
        }
      std::vector<ConeRay> kept;
      kept.reserve(rays.size() - neg.size() + fresh.size());
      for (size_t k = 0; k < rays.size(); ++k)
        if (sgn(vals[k]) >= 0) kept.push_back(std::move(rays[k]));
      for (ConeRay& r : fresh) kept.push_back(std::move(r));
      rays = std::move(kept);
    }
  }

  if (rays.empty())
    throw GeometryError("vertex_enumeration: inconsistent system (empty polytope)");

  std::vector<Behavior> vertices;
  vertices.reserve(rays.size());
  for (const ConeRay& ray : rays) {
    if (ray.y[d] == 0)
      throw GeometryError("vertex_enumeration: unbounded system (recession ray)");
    Behavior beh;
    for (int i = 0; i < 64; ++i) beh.p[i] = chart.origin[i];
    for (size_t j = 0; j < d; ++j) {
      if (ray.y[j] == 0) continue;
      Rational t(ray.y[j], ray.y[d]);
      t.canonicalize();
      for (int i = 0; i < 64; ++i)
        if (chart.basis[j][i] != 0) beh.p[i] += t * chart.basis[j][i];
    }
    vertices.push_back(std::move(beh));
  }
  std::sort(vertices.begin(), vertices.end(), behavior_less);
  for (size_t i = 1; i < vertices.size(); ++i)
    if (vertices[i] == vertices[i - 1])
      throw ConsistencyError("vertex_enumeration: duplicate vertex produced");
  return vertices;
}

}  // namespace nscap

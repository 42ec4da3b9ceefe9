#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "nscap/channel.hpp"
#include "nscap/vertex_set.hpp"

namespace nscap {

inline std::vector<ChannelParams> uniform_grid(int rows, int cols) {
  if (rows < 2 || cols < 2)
    throw DomainError("uniform_grid: need at least two points per axis");
  std::vector<ChannelParams> pts;
  pts.reserve(static_cast<size_t>(rows) * static_cast<size_t>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      pts.emplace_back(double(i) / (rows - 1), double(j) / (cols - 1));
  return pts;
}

// --- closed-form capacity oracles ------------------------------------------

// Best local strategy that exploits the interference condition across the
// two senders.
inline double local_interference_term(double p, double q) {
  return 2 * binary_entropy((2 + p - q) / 4) - binary_entropy((p + q) / 2) -
         binary_entropy(p);
}

inline double local_capacity_formula(double p, double q) {
  return std::max({1 - binary_entropy(p), 1 - binary_entropy(q),
                   local_interference_term(p, q),
                   local_interference_term(q, p)});
}

inline double ns_capacity_formula(double p, double q) {
  return std::max(2 * (1 - binary_entropy(p)), 2 * (1 - binary_entropy(q)));
}

// Rate of the maximally correlated two-outcome quantum strategy pair.
inline double tsirelson_interference_term(double p, double q) {
  static const double s2 = std::sqrt(2.0);
  return 2 - 2 * binary_entropy((2 + s2) / 4 * p + (2 - s2) / 4 * q);
}

inline double qlb_formula(double p, double q) {
  return std::max({1 - binary_entropy(p), 1 - binary_entropy(q),
                   tsirelson_interference_term(p, q),
                   tsirelson_interference_term(q, p)});
}

// Terms of the outer-polytope capacity: one per parameter alone and one
// cross term.
inline double cut_single_term(double p) {
  return 1 + binary_entropy((2 + p) / 5) -
         0.5 * binary_entropy((1 + 3 * p) / 5) - 1.5 * binary_entropy(p);
}

inline double cut_interference_term(double p, double q) {
  return 2 * binary_entropy((5 + p - q) / 10) -
         binary_entropy((4 * p + q) / 5) - binary_entropy(p);
}

inline double qub_formula(double p, double q) {
  return std::max({cut_single_term(p), cut_single_term(q),
                   cut_interference_term(p, q),
                   cut_interference_term(q, p)});
}

// --- vertex-set capacity ----------------------------------------------------

struct CapacityResult {
  double value;
  size_t argmax_vertex;
  ChannelParams params;
};

// Unique marginal signatures of a vertex collection, with the member vertex
// ids per signature. Capacity scans run over this index instead of the raw
// vertices.
struct SignatureIndex {
  std::vector<MarginalSignature> sigs;
  std::vector<NumericSignature> numeric;
  std::vector<std::vector<uint32_t>> members;  // ascending vertex ids
  size_t vertex_count = 0;
};

namespace detail {
inline void index_insert(SignatureIndex& index,
                         std::map<MarginalSignature, size_t>& seen,
                         MarginalSignature&& sig, uint32_t vertex_id) {
  auto [it, fresh] = seen.try_emplace(std::move(sig), index.sigs.size());
  if (fresh) {
    index.sigs.push_back(it->first);
    index.numeric.push_back(to_numeric(it->first));
    index.members.emplace_back();
  }
  index.members[it->second].push_back(vertex_id);
}
}  // namespace detail

inline SignatureIndex build_signature_index(const VertexSet& vs) {
  SignatureIndex index;
  std::map<MarginalSignature, size_t> seen;
  for (size_t i = 0; i < vs.vertices.size(); ++i)
    detail::index_insert(index, seen, marginal_signature(vs.vertices[i]),
                         static_cast<uint32_t>(i));
  index.vertex_count = vs.vertices.size();
  return index;
}

inline SignatureIndex build_signature_index(
    const std::vector<MaskVertex>& mvs) {
  SignatureIndex index;
  std::map<MarginalSignature, size_t> seen;
  for (size_t i = 0; i < mvs.size(); ++i)
    detail::index_insert(index, seen,
                         marginal_signature_of_mask(mvs[i].mask, mvs[i].k),
                         static_cast<uint32_t>(i));
  index.vertex_count = mvs.size();
  return index;
}

inline CapacityResult capacity_over_index(const SignatureIndex& index,
                                          const ChannelParams& params) {
  if (index.vertex_count == 0)
    throw DomainError("capacity_over_index: empty vertex set");
  double best = -1;
  for (const NumericSignature& n : index.numeric)
    best = std::max(best, rate_from_signature(n, params));
  size_t lowest = index.vertex_count;
  for (size_t s = 0; s < index.numeric.size(); ++s)
    if (rate_from_signature(index.numeric[s], params) == best)
      lowest = std::min<size_t>(lowest, index.members[s].front());
  return CapacityResult{best, lowest, params};
}

// All vertex ids whose sum rate is within tol of the maximum.
inline std::vector<uint32_t> maximizers_over_index(const SignatureIndex& index,
                                                   const ChannelParams& params,
                                                   double tol) {
  CapacityResult cr = capacity_over_index(index, params);
  std::vector<uint32_t> ids;
  for (size_t s = 0; s < index.numeric.size(); ++s)
    if (rate_from_signature(index.numeric[s], params) >= cr.value - tol)
      ids.insert(ids.end(), index.members[s].begin(), index.members[s].end());
  std::sort(ids.begin(), ids.end());
  return ids;
}

inline CapacityResult capacity_over_set(const VertexSet& vs,
                                        const ChannelParams& params) {
  if (vs.vertices.empty()) throw DomainError("capacity_over_set: empty set");
  return capacity_over_index(build_signature_index(vs), params);
}

// --- distinct sum-rate functions -------------------------------------------

struct FunctionCatalog {
  // Lowest vertex id per distinct sum-rate function (grid fingerprint).
  std::vector<size_t> representatives;
  // Representatives not pointwise dominated on the grid by the max of the
  // other functions.
  std::vector<size_t> undominated;
};

inline FunctionCatalog distinct_sumrate_functions(
    const SignatureIndex& index, const std::vector<ChannelParams>& grid,
    double tol = 1e-9) {
  if (grid.empty()) throw DomainError("distinct_sumrate_functions: empty grid");
  size_t n = index.numeric.size();
  std::vector<std::vector<double>> prints(n);
  for (size_t s = 0; s < n; ++s) {
    prints[s].reserve(grid.size());
    for (const ChannelParams& params : grid)
      prints[s].push_back(rate_from_signature(index.numeric[s], params));
  }
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  // Equal functions agree at the first grid point, so only pairs inside a
  // tol-window of the first fingerprint value need a full comparison.
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return prints[a][0] < prints[b][0];
  });
  for (size_t oi = 0; oi < n; ++oi)
    for (size_t oj = oi + 1; oj < n; ++oj) {
      size_t i = order[oi], j = order[oj];
      if (prints[j][0] - prints[i][0] >= tol) break;
      double diff = 0;
      for (size_t t = 0; t < grid.size() && diff < tol; ++t)
        diff = std::max(diff, std::abs(prints[i][t] - prints[j][t]));
      if (diff < tol) parent[find(i)] = find(j);
    }

  std::map<size_t, size_t> group_rep;     // root -> lowest vertex id
  std::map<size_t, size_t> group_sig;     // root -> signature with that id
  for (size_t s = 0; s < n; ++s) {
    size_t root = find(s);
    size_t vid = index.members[s].front();
    auto it = group_rep.find(root);
    if (it == group_rep.end() || vid < it->second) {
      group_rep[root] = vid;
      group_sig[root] = s;
    }
  }

  FunctionCatalog catalog;
  std::vector<size_t> roots;
  for (auto& [root, vid] : group_rep) {
    roots.push_back(root);
    catalog.representatives.push_back(vid);
  }

  for (size_t gi = 0; gi < roots.size(); ++gi) {
    const auto& mine = prints[group_sig[roots[gi]]];
    bool dominated = true;
    for (size_t t = 0; t < grid.size() && dominated; ++t) {
      double others = -1;
      for (size_t gj = 0; gj < roots.size(); ++gj)
        if (gj != gi)
          others = std::max(others, prints[group_sig[roots[gj]]][t]);
      if (mine[t] > others + tol) dominated = false;
    }
    if (!dominated) catalog.undominated.push_back(catalog.representatives[gi]);
  }
  std::sort(catalog.representatives.begin(), catalog.representatives.end());
  std::sort(catalog.undominated.begin(), catalog.undominated.end());
  return catalog;
}

inline FunctionCatalog distinct_sumrate_functions(
    const VertexSet& vs, const std::vector<ChannelParams>& grid,
    double tol = 1e-9) {
  return distinct_sumrate_functions(build_signature_index(vs), grid, tol);
}

// --- hierarchy regions ------------------------------------------------------

struct HierarchyCell {
  ChannelParams params;
  double c_local, c_ns, c_qlb, c_qub;
  bool in_gray_region;
};

// Gray region: strictly better than the best local coding even for the
// quantum lower bound, and strictly below the no-signaling value even for
// the quantum upper bound.
inline std::vector<HierarchyCell> hierarchy_scan(
    const std::vector<ChannelParams>& grid, double tol = 1e-9) {
  std::vector<HierarchyCell> cells;
  cells.reserve(grid.size());
  for (const ChannelParams& params : grid) {
    HierarchyCell cell{params,
                       local_capacity_formula(params.p, params.q),
                       ns_capacity_formula(params.p, params.q),
                       qlb_formula(params.p, params.q),
                       qub_formula(params.p, params.q),
                       false};
    cell.in_gray_region =
        cell.c_qlb > cell.c_local + tol && cell.c_qub < cell.c_ns - tol;
    cells.push_back(cell);
  }
  return cells;
}

}  // namespace nscap

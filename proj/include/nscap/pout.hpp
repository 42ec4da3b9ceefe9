#pragma once

// Hyperplane cuts of the no-signaling polytope at pair-functional level 7/2
// and the outer-approximation vertex set assembled from them.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "nscap/behavior.hpp"
#include "nscap/bell.hpp"
#include "nscap/capacity.hpp"
#include "nscap/channel.hpp"
#include "nscap/dd.hpp"
#include "nscap/errors.hpp"
#include "nscap/hpolytope.hpp"
#include "nscap/vertex_set.hpp"

namespace nscap {

inline VertexKind cut_kind(int pair) {
  switch (pair) {
    case 0: return VertexKind::cut_12;
    case 1: return VertexKind::cut_34;
    case 2: return VertexKind::cut_56;
    case 3: return VertexKind::cut_78;
  }
  throw DomainError("cut_kind: pair index out of range");
}

// Vertex set of the no-signaling region sliced by  L_(i,j) = 7/2.
struct CutResult {
  int pair = 0;            // 0-based pair id for published pair (2*pair+1, 2*pair+2)
  VertexSet new_vertices;  // canonical order; includes slice-plane NS vertices
};

// Enumerates the slice polytope for a published 1-based vertex pair (i, j).
inline CutResult cut_new_vertices(int i, int j) {
  BellFunctional f = special_functional(i, j);
  CutResult res;
  res.pair = (i - 1) / 2;
  res.new_vertices.kind = cut_kind(res.pair);
  res.new_vertices.vertices =
      vertex_enumeration(sliced_ns_h_representation(f, Rational(7, 2)));
  return res;
}

// Per-vertex bound bookkeeping for the assembled outer set.
struct PoutAudit {
  // Union-class members whose pair functional exceeds 7/2 (exact test).
  std::array<size_t, 4> union_violators{};
  // Cut vertices whose *other* pair functionals exceed 7/2 (exact test).
  size_t cut_cross_violations = 0;
  bool all_members_within_bound() const {
    for (size_t n : union_violators)
      if (n) return false;
    return cut_cross_violations == 0;
  }
};

// The outer vertex set: all four nonlocal classes minus the eight maximal-rate
// vertices, plus the four slice vertex sets.  The class part stays in mask
// form and the slices stay serialized, keeping the set within memory reach;
// `signatures` carries everything needed for rate maximization.
struct PoutSet {
  std::vector<MaskVertex> mask_part;                  // sorted, union minus 8
  std::array<std::vector<std::string>, 4> cut_lines;  // sorted canonical lines
  std::vector<NumericSignature> cut_signatures;       // deduplicated
  size_t pre_dedup_count = 0;
  size_t duplicates_removed = 0;
  PoutAudit audit;
  size_t size() const {
    size_t n = mask_part.size();
    for (const auto& lines : cut_lines) n += lines.size();
    return n;
  }
};

namespace detail {

// Reconstructs the class mask of a behavior whose entries are all 0 or 1/k;
// returns 0 if the behavior is not of that shape.
inline uint64_t class_mask_of(const Behavior& beh, int* k_out) {
  Rational value = 0;
  uint64_t mask = 0;
  for (int i = 0; i < 64; ++i) {
    if (beh.p[i] == 0) continue;
    if (value == 0)
      value = beh.p[i];
    else if (beh.p[i] != value)
      return 0;
    mask |= uint64_t{1} << i;
  }
  for (int k = 1; k <= 4; ++k)
    if (value == Rational(1, k) && std::popcount(mask) == 4 * k) {
      *k_out = k;
      return mask;
    }
  return 0;
}

}  // namespace detail

// Incremental assembly: feed the four CutResults one at a time (so only one
// slice is materialized at once), then finish().
class PoutBuilder {
 public:
  PoutBuilder() {
    for (int p = 0; p < 4; ++p) pair_masks_[p] = pair_support_mask(p);
    std::vector<MaskVertex> uni = ns_union_mask_vertices();
    union_masks_.reserve(uni.size());
    for (const MaskVertex& mv : uni) union_masks_.push_back(mv.mask);
    std::sort(union_masks_.begin(), union_masks_.end());
    mask_part_.reserve(uni.size() - 8);
    for (const MaskVertex& mv : uni) {
      bool is_pair_vertex = false;
      for (uint64_t pm : pair_masks_)
        if ((mv.mask & pm) == mv.mask && mv.k == 2) is_pair_vertex = true;
      if (!is_pair_vertex) mask_part_.push_back(mv);
    }
    for (int p = 0; p < 4; ++p)
      for (const MaskVertex& mv : mask_part_) {
        int pc = std::popcount(mv.mask & pair_masks_[p]);
        if (2 * pc > 7 * mv.k) ++audit_.union_violators[p];  // pc/k > 7/2
      }
  }

  void add_cut(const CutResult& cut) {
    if (cut.pair < 0 || cut.pair > 3)
      throw DomainError("PoutBuilder: pair index out of range");
    if (added_[cut.pair])
      throw StateError("PoutBuilder: cut already added for this pair");
    added_[cut.pair] = true;
    pre_dedup_count_ += cut.new_vertices.vertices.size();
    std::vector<std::string>& lines = out_.cut_lines[cut.pair];
    lines.reserve(cut.new_vertices.vertices.size());
    for (const Behavior& v : cut.new_vertices.vertices) {
      Rational own = pair_value(v, cut.pair);
      if (own != Rational(7, 2))
        throw ConsistencyError("PoutBuilder: slice vertex off the 7/2 plane");
      for (int p = 0; p < 4; ++p)
        if (p != cut.pair && pair_value(v, p) > Rational(7, 2))
          ++audit_.cut_cross_violations;
      int k = 0;
      uint64_t mask = detail::class_mask_of(v, &k);
      if (mask && std::binary_search(union_masks_.begin(), union_masks_.end(), mask)) {
        ++duplicates_removed_;  // already present in the class part
        continue;
      }
      lines.push_back(vertex_line(v));
      NumericSignature sig = to_numeric(marginal_signature(v));
      if (sig_seen_.insert(sig.c).second) out_.cut_signatures.push_back(sig);
    }
  }

  PoutSet finish() {
    for (int p = 0; p < 4; ++p)
      if (!added_[p])
        throw StateError("PoutBuilder: missing cut for pair " + std::to_string(p));
    out_.mask_part = std::move(mask_part_);
    out_.pre_dedup_count = pre_dedup_count_ + out_.mask_part.size();
    out_.duplicates_removed = duplicates_removed_;
    out_.audit = audit_;
    return std::move(out_);
  }

 private:
  // 2*(v_i+v_j) has coefficient 1 on each of the 16 union support cells.
  Rational pair_value(const Behavior& v, int pair) const {
    Rational acc = 0;
    uint64_t rest = pair_masks_[pair];
    while (rest) {
      acc += v.p[std::countr_zero(rest)];
      rest &= rest - 1;
    }
    return acc;
  }

  std::array<uint64_t, 4> pair_masks_{};
  std::vector<uint64_t> union_masks_;
  std::vector<MaskVertex> mask_part_;
  PoutSet out_;
  std::set<std::array<double, 24>> sig_seen_;
  std::array<bool, 4> added_{};
  size_t pre_dedup_count_ = 0;
  size_t duplicates_removed_ = 0;
  PoutAudit audit_;
};

// Full assembly from scratch: enumerates all four slices sequentially.
inline PoutSet build_p_out() {
  PoutBuilder builder;
  for (int p = 0; p < 4; ++p) builder.add_cut(cut_new_vertices(2 * p + 1, 2 * p + 2));
  return builder.finish();
}

// Rate maximization over the assembled set.
struct PoutEvaluator {
  SignatureIndex mask_index;
  std::vector<NumericSignature> cut_signatures;
  explicit PoutEvaluator(const PoutSet& pout)
      : mask_index(build_signature_index(pout.mask_part)),
        cut_signatures(pout.cut_signatures) {}
  double capacity(const ChannelParams& params) const {
    double best = capacity_over_index(mask_index, params).value;
    for (const NumericSignature& sig : cut_signatures)
      best = std::max(best, rate_from_signature(sig, params));
    return best;
  }
};

// Streams the whole set, merged across parts in ascending behavior order.
inline void save_pout(const PoutSet& pout, const std::string& path) {
  struct Source {
    const std::vector<std::string>* lines;
    size_t at = 0;
  };
  std::array<Source, 4> cuts;
  for (int p = 0; p < 4; ++p) cuts[p].lines = &pout.cut_lines[p];
  size_t mask_at = 0;
  std::array<Behavior, 4> cut_head;
  std::array<bool, 4> cut_head_valid{};
  Behavior mask_head;
  bool mask_head_valid = false;
  auto next = [&](std::string& line) {
    if (!mask_head_valid && mask_at < pout.mask_part.size()) {
      mask_head = materialize(pout.mask_part[mask_at]);
      mask_head_valid = true;
    }
    for (int p = 0; p < 4; ++p)
      if (!cut_head_valid[p] && cuts[p].at < cuts[p].lines->size()) {
        cut_head[p] = vertex_from_line((*cuts[p].lines)[cuts[p].at]);
        cut_head_valid[p] = true;
      }
    int best = -1;  // 0..3 cut sources, 4 mask source
    const Behavior* best_beh = nullptr;
    for (int p = 0; p < 4; ++p)
      if (cut_head_valid[p] && (!best_beh || behavior_less(cut_head[p], *best_beh))) {
        best = p;
        best_beh = &cut_head[p];
      }
    if (mask_head_valid && (!best_beh || behavior_less(mask_head, *best_beh))) {
      best = 4;
      best_beh = &mask_head;
    }
    if (best < 0) return false;
    if (best == 4) {
      line = vertex_line(mask_head);
      ++mask_at;
      mask_head_valid = false;
    } else {
      line = (*cuts[best].lines)[cuts[best].at++];
      cut_head_valid[best] = false;
    }
    return true;
  };
  save_vertex_lines(VertexKind::pout, next, pout.size(), path);
}

// --- maximal-rate vertex queries -------------------------------------------

inline VertexSet find_max_rate_vertices(const ChannelParams& params,
                                        const VertexSet& vs, double tol = 1e-9) {
  SignatureIndex index = build_signature_index(vs);
  VertexSet out;
  out.kind = vs.kind;
  for (uint32_t id : maximizers_over_index(index, params, tol))
    out.vertices.push_back(vs.vertices[id]);
  return out;
}

inline std::vector<MaskVertex> find_max_rate_vertices(
    const ChannelParams& params, const std::vector<MaskVertex>& mvs,
    double tol = 1e-9) {
  SignatureIndex index = build_signature_index(mvs);
  std::vector<MaskVertex> out;
  for (uint32_t id : maximizers_over_index(index, params, tol))
    out.push_back(mvs[id]);
  return out;
}

// --- structure of the eight maximal-rate vertices ---------------------------

struct PairStructureReport {
  // Midpoint sum rates at (1,0) of the functional pairs {v1,v2}, {v3,v4},
  // {v5,v6}, {v7,v8}: the pairing the cut functionals are built on.
  std::array<double, 4> pair_midpoint_rates{};
  // Midpoint sum rates of the complementary matching {v1,v8}, {v2,v7},
  // {v3,v6}, {v4,v5}: the matching that actually keeps the full rate.
  std::array<double, 4> complement_midpoint_rates{};
  double worst_cross_midpoint = 0;
  double worst_triple_mixture = 0;
  // Whether the functional pairing behaves as the cut construction assumes:
  // its own midpoints at rate 2 and every cross midpoint strictly below.
  bool midpoints_ok = false, cross_ok = false, triples_ok = false;
  bool passed() const { return midpoints_ok && cross_ok && triples_ok; }
};

// Measures the mixture structure of the eight rate-two vertices at (1,0).
// The cut construction assumes the functional pairs {v1,v2}... are the
// rate-preserving ones; measurement says otherwise: those midpoints land at
// sum rate 1, while the complementary matching {v1,v8}, {v2,v7}, {v3,v6},
// {v4,v5} keeps rate 2 (its segments are edges of the no-signaling
// polytope). Three-way mixtures always fall clearly below 2.
inline PairStructureReport pair_structure_check() {
  const ChannelParams params{1, 0};
  const std::array<Behavior, 8> vs = rate_two_vertices();
  auto mix = [&](std::initializer_list<int> ids) {
    Behavior m;
    Rational w(1, static_cast<int>(ids.size()));
    for (int id : ids)
      for (int i = 0; i < 64; ++i) m.p[i] += w * vs[static_cast<size_t>(id)].p[i];
    return m;
  };
  PairStructureReport rep;
  rep.midpoints_ok = true;
  for (int p = 0; p < 4; ++p) {
    rep.pair_midpoint_rates[p] = sum_rate(mix({2 * p, 2 * p + 1}), params);
    if (std::abs(rep.pair_midpoint_rates[p] - 2.0) > 1e-9) rep.midpoints_ok = false;
  }
  static constexpr int complement[4][2] = {{0, 7}, {1, 6}, {2, 5}, {3, 4}};
  for (int p = 0; p < 4; ++p)
    rep.complement_midpoint_rates[p] =
        sum_rate(mix({complement[p][0], complement[p][1]}), params);
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) {
      if (j == i + 1 && i % 2 == 0) continue;  // functional pair
      rep.worst_cross_midpoint =
          std::max(rep.worst_cross_midpoint, sum_rate(mix({i, j}), params));
    }
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j)
      for (int k = j + 1; k < 8; ++k)
        rep.worst_triple_mixture =
            std::max(rep.worst_triple_mixture, sum_rate(mix({i, j, k}), params));
  rep.cross_ok = rep.worst_cross_midpoint < 2.0 - 1e-6;
  rep.triples_ok = rep.worst_triple_mixture < 2.0 - 1e-6;
  return rep;
}

}  // namespace nscap

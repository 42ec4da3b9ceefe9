#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "nscap/behavior.hpp"

namespace nscap {

using Perm2 = std::array<int, 2>;
using Perm4 = std::array<int, 4>;

// One local reversible relabeling: each party permutes its inputs and, per
// relabeled input value, its outputs. Per side 2!*4!*4! = 1152 choices, so
// 1152^2 = 1327104 in total.
struct Relabeling {
  Perm2 a_input_perm{0, 1};
  std::array<Perm4, 2> a_output_perms{{{0, 1, 2, 3}, {0, 1, 2, 3}}};
  Perm2 b_input_perm{0, 1};
  std::array<Perm4, 2> b_output_perms{{{0, 1, 2, 3}, {0, 1, 2, 3}}};
};

using CellMap = std::array<uint8_t, 64>;

// Position map induced on the flat table: cell (x,y,a,b) moves to
// (pA(x), pB(y), sA[pA(x)](a), sB[pB(y)](b)).
inline CellMap cell_map(const Relabeling& rel) {
  CellMap m{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          size_t nx = static_cast<size_t>(rel.a_input_perm[static_cast<size_t>(x)]);
          size_t ny = static_cast<size_t>(rel.b_input_perm[static_cast<size_t>(y)]);
          int na = rel.a_output_perms[nx][static_cast<size_t>(a)];
          int nb = rel.b_output_perms[ny][static_cast<size_t>(b)];
          m[static_cast<size_t>(index_of(x, y, a, b))] = static_cast<uint8_t>(
              index_of(static_cast<int>(nx), static_cast<int>(ny), na, nb));
        }
  return m;
}

inline Behavior apply_relabeling(const Relabeling& rel, const Behavior& beh) {
  CellMap m = cell_map(rel);
  Behavior out;
  for (size_t i = 0; i < 64; ++i) out.p[m[i]] = beh.p[i];
  return out;
}

inline Relabeling inverse(const Relabeling& rel) {
  Relabeling inv;
  for (int x = 0; x < 2; ++x)
    inv.a_input_perm[static_cast<size_t>(rel.a_input_perm[static_cast<size_t>(x)])] = x;
  for (int y = 0; y < 2; ++y)
    inv.b_input_perm[static_cast<size_t>(rel.b_input_perm[static_cast<size_t>(y)])] = y;
  // The forward map sends outcome a at relabeled input u through
  // a_output_perms[u]; undoing it at original input x uses the inverse of the
  // perm attached to u = pA(x).
  for (size_t x = 0; x < 2; ++x) {
    const Perm4& f = rel.a_output_perms[static_cast<size_t>(rel.a_input_perm[x])];
    for (int a = 0; a < 4; ++a) inv.a_output_perms[x][static_cast<size_t>(f[static_cast<size_t>(a)])] = a;
  }
  for (size_t y = 0; y < 2; ++y) {
    const Perm4& f = rel.b_output_perms[static_cast<size_t>(rel.b_input_perm[y])];
    for (int b = 0; b < 4; ++b) inv.b_output_perms[y][static_cast<size_t>(f[static_cast<size_t>(b)])] = b;
  }
  return inv;
}

// The 1152 one-party position maps (identity on the other party). Used to
// sweep the full product group as two nested passes.
inline std::vector<CellMap> party_cell_maps(Party party) {
  std::array<Perm4, 24> perms4;
  {
    Perm4 p{0, 1, 2, 3};
    size_t n = 0;
    do perms4[n++] = p;
    while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<CellMap> maps;
  maps.reserve(1152);
  for (int swap_inputs = 0; swap_inputs < 2; ++swap_inputs)
    for (const Perm4& s0 : perms4)
      for (const Perm4& s1 : perms4) {
        Relabeling rel;
        Perm2 pin = swap_inputs ? Perm2{1, 0} : Perm2{0, 1};
        if (party == Party::A) {
          rel.a_input_perm = pin;
          rel.a_output_perms = {s0, s1};
        } else {
          rel.b_input_perm = pin;
          rel.b_output_perms = {s0, s1};
        }
        maps.push_back(cell_map(rel));
      }
  return maps;
}

inline uint64_t support_mask(const Behavior& beh) {
  uint64_t m = 0;
  for (size_t i = 0; i < 64; ++i)
    if (beh.p[i] != 0) m |= uint64_t(1) << i;
  return m;
}

inline uint64_t apply_cell_map(const CellMap& m, uint64_t mask) {
  uint64_t out = 0;
  while (mask) {
    int i = std::countr_zero(mask);
    mask &= mask - 1;
    out |= uint64_t(1) << m[static_cast<size_t>(i)];
  }
  return out;
}

// Orbit of a support mask under the full relabeling group, as a sorted list.
// Sweeping party A first and deduplicating before the party B pass is an
// exact factorization of the product group sweep.
inline std::vector<uint64_t> orbit_support_masks(uint64_t seed) {
  static const std::vector<CellMap> a_maps = party_cell_maps(Party::A);
  static const std::vector<CellMap> b_maps = party_cell_maps(Party::B);
  std::vector<uint64_t> stage;
  stage.reserve(a_maps.size());
  for (const CellMap& m : a_maps) stage.push_back(apply_cell_map(m, seed));
  std::sort(stage.begin(), stage.end());
  stage.erase(std::unique(stage.begin(), stage.end()), stage.end());

  std::vector<uint64_t> all;
  all.reserve(stage.size() * b_maps.size());
  for (uint64_t s : stage)
    for (const CellMap& m : b_maps) all.push_back(apply_cell_map(m, s));
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace nscap

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "nscap/behavior.hpp"
#include "nscap/relabeling.hpp"

namespace nscap {

enum class VertexKind {
  local,
  half,
  third,
  quarter,
  ns_union,
  pout,
  cut_12,
  cut_34,
  cut_56,
  cut_78,
};

inline const char* kind_name(VertexKind kind) {
  switch (kind) {
    case VertexKind::local: return "local";
    case VertexKind::half: return "half";
    case VertexKind::third: return "third";
    case VertexKind::quarter: return "quarter";
    case VertexKind::ns_union: return "ns-union";
    case VertexKind::pout: return "pout";
    case VertexKind::cut_12: return "cut-12";
    case VertexKind::cut_34: return "cut-34";
    case VertexKind::cut_56: return "cut-56";
    case VertexKind::cut_78: return "cut-78";
  }
  throw DomainError("kind_name: unknown kind");
}

inline VertexKind kind_from_name(const std::string& name) {
  for (VertexKind kind :
       {VertexKind::local, VertexKind::half, VertexKind::third,
        VertexKind::quarter, VertexKind::ns_union, VertexKind::pout,
        VertexKind::cut_12, VertexKind::cut_34, VertexKind::cut_56,
        VertexKind::cut_78})
    if (name == kind_name(kind)) return kind;
  throw DomainError("unknown vertex set kind: '" + name + "'");
}

// The four extremal classes keyed by the inverse of their entry value.
inline int class_of_kind(VertexKind kind) {
  switch (kind) {
    case VertexKind::local: return 1;
    case VertexKind::half: return 2;
    case VertexKind::third: return 3;
    case VertexKind::quarter: return 4;
    default: throw DomainError("class_of_kind: not an orbit kind");
  }
}

inline VertexKind kind_of_class(int k) {
  switch (k) {
    case 1: return VertexKind::local;
    case 2: return VertexKind::half;
    case 3: return VertexKind::third;
    case 4: return VertexKind::quarter;
    default: throw DomainError("kind_of_class: class out of range");
  }
}

struct VertexSet {
  VertexKind kind;
  std::vector<Behavior> vertices;
};

// Compact form of an orbit element: every nonzero entry equals 1/k.
struct MaskVertex {
  uint64_t mask;
  int k;
};

inline Behavior materialize(const MaskVertex& mv) {
  Behavior beh;
  uint64_t m = mv.mask;
  while (m) {
    int i = std::countr_zero(m);
    m &= m - 1;
    beh.p[static_cast<size_t>(i)] = rat(1, mv.k);
  }
  return beh;
}

// Ascending lexicographic order on the 64 rational entries.
inline bool behavior_less(const Behavior& u, const Behavior& v) {
  return u.p < v.p;
}

// Same order as behavior_less, evaluated without materializing.
inline bool mask_vertex_less(const MaskVertex& u, const MaskVertex& v) {
  if (u.mask == v.mask && u.k == v.k) return false;
  uint64_t probe = (u.k == v.k) ? (u.mask ^ v.mask) : (u.mask | v.mask);
  if (probe == 0) return false;
  int i = std::countr_zero(probe);
  bool bu = (u.mask >> i) & 1, bv = (v.mask >> i) & 1;
  if (!bu) return bv;
  if (!bv) return false;
  return u.k > v.k;
}

inline Behavior seed_vertex(VertexKind kind) {
  return class_seed(class_of_kind(kind));
}

// Orbit of one extremal-class seed under all 1327104 relabelings, sorted and
// exactly deduplicated. Every element shares the seed's uniform entry value,
// so support masks identify elements and carry the whole computation.
inline std::vector<MaskVertex> enumerate_orbit_masks(int k) {
  std::vector<uint64_t> masks = orbit_support_masks(support_mask(class_seed(k)));
  std::vector<MaskVertex> out;
  out.reserve(masks.size());
  for (uint64_t m : masks) out.push_back(MaskVertex{m, k});
  std::sort(out.begin(), out.end(), mask_vertex_less);
  return out;
}

inline VertexSet enumerate_orbit(const Behavior& seed) {
  if (!is_probability_table(seed))
    throw DomainError("enumerate_orbit: seed is not a probability table");
  if (!is_no_signaling(seed))
    throw DomainError("enumerate_orbit: seed signals");
  Rational value = 0;
  for (const Rational& v : seed.p)
    if (v != 0) {
      if (value == 0)
        value = v;
      else if (v != value)
        throw DomainError("enumerate_orbit: seed entries must share one value");
    }
  int k = 0;
  for (int c = 1; c <= 4; ++c)
    if (value == rat(1, c)) k = c;
  if (k == 0)
    throw DomainError("enumerate_orbit: seed is not in an extremal class");
  VertexSet out{kind_of_class(k), {}};
  std::vector<MaskVertex> mvs = enumerate_orbit_masks(k);
  out.vertices.reserve(mvs.size());
  for (const MaskVertex& mv : mvs) out.vertices.push_back(materialize(mv));
  return out;
}

// All four orbits merged at the compact level, in canonical order.
inline std::vector<MaskVertex> ns_union_mask_vertices() {
  std::vector<MaskVertex> all;
  for (int k = 1; k <= 4; ++k) {
    std::vector<MaskVertex> orbit = enumerate_orbit_masks(k);
    all.insert(all.end(), orbit.begin(), orbit.end());
  }
  std::sort(all.begin(), all.end(), mask_vertex_less);
  for (size_t i = 1; i < all.size(); ++i)
    if (all[i - 1].mask == all[i].mask && all[i - 1].k == all[i].k)
      throw ConsistencyError("ns_union_mask_vertices: orbits overlap");
  return all;
}

inline VertexSet build_ns_union(const VertexSet& local, const VertexSet& half,
                                const VertexSet& third,
                                const VertexSet& quarter) {
  const VertexSet* parts[4] = {&local, &half, &third, &quarter};
  for (int k = 1; k <= 4; ++k) {
    if (parts[k - 1]->kind != kind_of_class(k))
      throw DomainError("build_ns_union: orbit of class " + std::to_string(k) +
                        " missing");
    if (parts[k - 1]->vertices.empty())
      throw DomainError("build_ns_union: empty orbit supplied");
  }
  VertexSet out{VertexKind::ns_union, {}};
  for (const VertexSet* part : parts)
    out.vertices.insert(out.vertices.end(), part->vertices.begin(),
                        part->vertices.end());
  std::sort(out.vertices.begin(), out.vertices.end(), behavior_less);
  for (size_t i = 1; i < out.vertices.size(); ++i)
    if (out.vertices[i - 1] == out.vertices[i])
      throw ConsistencyError("build_ns_union: duplicate vertex across orbits");
  return out;
}

// --- persistence -----------------------------------------------------------
//
// Text format, one vertex per line after the header line
//   CGLMP24-VSET v1 kind=<kind> count=<n>
// Each line holds 64 space-separated reduced rationals, always rendered
// num/den (integers as k/1). Lines appear in ascending behavior_less order,
// so two builds of the same set are byte-identical.

inline std::string vertex_line(const Behavior& beh) {
  std::string line;
  line.reserve(64 * 4);
  for (size_t i = 0; i < 64; ++i) {
    if (i) line += ' ';
    line += beh.p[i].get_num().get_str();
    line += '/';
    line += beh.p[i].get_den().get_str();
  }
  return line;
}

inline Behavior vertex_from_line(const std::string& line) {
  Behavior beh;
  size_t pos = 0;
  for (size_t i = 0; i < 64; ++i) {
    size_t end = line.find(' ', pos);
    std::string token = line.substr(pos, end == std::string::npos
                                             ? std::string::npos
                                             : end - pos);
    size_t slash = token.find('/');
    if (token.empty() || slash == std::string::npos)
      throw IoError("vertex line: malformed entry '" + token + "'");
    Integer num, den;
    try {
      num = Integer(token.substr(0, slash));
      den = Integer(token.substr(slash + 1));
    } catch (const std::invalid_argument&) {
      throw IoError("vertex line: malformed entry '" + token + "'");
    }
    if (den <= 0) throw IoError("vertex line: nonpositive denominator");
    if (gcd(num, den) != 1) throw IoError("vertex line: entry not reduced");
    beh.p[i] = Rational(num, den);
    if (end == std::string::npos) {
      if (i != 63) throw IoError("vertex line: fewer than 64 entries");
      pos = line.size();
    } else {
      pos = end + 1;
    }
  }
  if (pos != line.size() && line.find_first_not_of(' ', pos) != std::string::npos)
    throw IoError("vertex line: more than 64 entries");
  return beh;
}

inline std::string vset_header(VertexKind kind, size_t count) {
  return std::string("CGLMP24-VSET v1 kind=") + kind_name(kind) +
         " count=" + std::to_string(count);
}

// Streams pre-rendered lines; callers guarantee canonical order.
inline void save_vertex_lines(VertexKind kind,
                              const std::function<bool(std::string&)>& next,
                              size_t count, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << vset_header(kind, count) << '\n';
  std::string line;
  size_t written = 0;
  while (next(line)) {
    out << line << '\n';
    ++written;
  }
  if (written != count)
    throw ConsistencyError("save_vertex_lines: line count mismatch");
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

inline void save_vertex_set(const VertexSet& vs, const std::string& path) {
  for (size_t i = 1; i < vs.vertices.size(); ++i)
    if (!behavior_less(vs.vertices[i - 1], vs.vertices[i]))
      throw ConsistencyError("save_vertex_set: set not in canonical order");
  size_t at = 0;
  save_vertex_lines(
      vs.kind,
      [&](std::string& line) {
        if (at == vs.vertices.size()) return false;
        line = vertex_line(vs.vertices[at++]);
        return true;
      },
      vs.vertices.size(), path);
}

inline void save_mask_vertices(VertexKind kind,
                               const std::vector<MaskVertex>& sorted,
                               const std::string& path) {
  size_t at = 0;
  save_vertex_lines(
      kind,
      [&](std::string& line) {
        if (at == sorted.size()) return false;
        line = vertex_line(materialize(sorted[at++]));
        return true;
      },
      sorted.size(), path);
}

struct VsetHeader {
  VertexKind kind;
  size_t count;
};

inline VsetHeader parse_vset_header(const std::string& line) {
  const std::string magic = "CGLMP24-VSET v1 kind=";
  if (line.rfind(magic, 0) != 0)
    throw IoError("vertex set file: bad header '" + line + "'");
  size_t kind_at = magic.size();
  size_t space = line.find(' ', kind_at);
  if (space == std::string::npos)
    throw IoError("vertex set file: header missing count");
  std::string kind_str = line.substr(kind_at, space - kind_at);
  const std::string count_key = "count=";
  if (line.rfind(count_key, space + 1) != space + 1)
    throw IoError("vertex set file: header missing count");
  VsetHeader h{};
  try {
    h.kind = kind_from_name(kind_str);
  } catch (const DomainError& e) {
    throw IoError(std::string("vertex set file: ") + e.what());
  }
  try {
    h.count = std::stoul(line.substr(space + 1 + count_key.size()));
  } catch (const std::exception&) {
    throw IoError("vertex set file: malformed count");
  }
  return h;
}

// Streaming reader: validates the header, feeds each vertex to `fn` in file
// order, and enforces the declared count.
inline VsetHeader for_each_vertex(const std::string& path,
                                  const std::function<void(Behavior&&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty vertex set file: " + path);
  VsetHeader header = parse_vset_header(line);
  size_t seen = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (++seen > header.count)
      throw IoError("vertex set file: more lines than declared count");
    Behavior beh = vertex_from_line(line);
    if (!is_probability_table(beh))
      throw IoError("vertex set file: entry is not a probability table");
    fn(std::move(beh));
  }
  if (seen != header.count)
    throw IoError("vertex set file: line count does not match header");
  return header;
}

inline VertexSet load_vertex_set(const std::string& path) {
  VertexSet vs{VertexKind::local, {}};
  VsetHeader header = for_each_vertex(
      path, [&](Behavior&& beh) { vs.vertices.push_back(std::move(beh)); });
  vs.kind = header.kind;
  for (size_t i = 1; i < vs.vertices.size(); ++i)
    if (!behavior_less(vs.vertices[i - 1], vs.vertices[i]))
      throw IoError("vertex set file: lines not in canonical order");
  return vs;
}

}  // namespace nscap

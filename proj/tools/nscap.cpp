// Command-line front end: builds and caches vertex sets, runs capacity
// scans and bound computations, and emits the summary reports as CSV/JSON.
//
// Exit codes: 0 success, 1 usage, 2 consistency failure, 3 I/O.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nscap/bell.hpp"
#include "nscap/capacity.hpp"
#include "nscap/dd.hpp"
#include "nscap/errors.hpp"
#include "nscap/npa.hpp"
#include "nscap/pout.hpp"
#include "nscap/quantum.hpp"
#include "nscap/vertex_set.hpp"

namespace {

using nscap::Behavior;
using nscap::ChannelParams;
using nscap::CutResult;
using nscap::MaskVertex;
using nscap::Rational;
using nscap::VertexKind;
using nscap::VertexSet;

struct RunConfig {
  std::string cache_dir = "./.nscap-cache";
  int grid_rows = 101;
  int grid_cols = 101;
  std::map<std::string, double> tolerances{
      {"local", 1e-9}, {"ns", 1e-9}, {"qlb", 1e-9}, {"qub", 1e-6}};
  std::string format = "csv";
};

std::string fmt(double v) { return nscap::detail::format_sig(v); }

// --- cache layout -----------------------------------------------------------

std::string cache_path(const RunConfig& cfg, VertexKind kind) {
  return cfg.cache_dir + "/" + nscap::kind_name(kind) + ".vset";
}

uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw nscap::IoError("cannot open for reading: " + path);
  uint64_t h = 1469598103934665603ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  return h;
}

// Count of payload lines in a cached set, verified against its header.
size_t verify_cached_set(const std::string& path, VertexKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw nscap::IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw nscap::IoError("empty vertex set file: " + path);
  nscap::VsetHeader header = nscap::parse_vset_header(line);
  if (header.kind != kind)
    throw nscap::IoError("cache file " + path + " holds kind '" +
                         nscap::kind_name(header.kind) + "'");
  size_t lines = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  if (lines != header.count)
    throw nscap::IoError("vertex set file: line count does not match header");
  return lines;
}

VertexKind kind_from_cli(const std::string& name) {
  // Accept the canonical names plus dash-less aliases.
  static const std::map<std::string, std::string> aliases{
      {"union", "ns-union"}, {"cut12", "cut-12"}, {"cut34", "cut-34"},
      {"cut56", "cut-56"},   {"cut78", "cut-78"},
  };
  auto it = aliases.find(name);
  return nscap::kind_from_name(it == aliases.end() ? name : it->second);
}

int cut_pair_of_kind(VertexKind kind) {
  switch (kind) {
    case VertexKind::cut_12: return 0;
    case VertexKind::cut_34: return 1;
    case VertexKind::cut_56: return 2;
    case VertexKind::cut_78: return 3;
    default: throw nscap::DomainError("not a slice kind");
  }
}

// Builds the requested set into its cache file if absent; prints count and
// checksum either way. Returns the vertex count.
size_t ensure_vertex_cache(const RunConfig& cfg, VertexKind kind) {
  std::filesystem::create_directories(cfg.cache_dir);
  const std::string path = cache_path(cfg, kind);
  bool cached = std::filesystem::exists(path);
  size_t count;
  if (cached) {
    count = verify_cached_set(path, kind);
  } else {
    switch (kind) {
      case VertexKind::local:
      case VertexKind::half:
      case VertexKind::third:
      case VertexKind::quarter:
        nscap::save_mask_vertices(
            kind, nscap::enumerate_orbit_masks(nscap::class_of_kind(kind)), path);
        break;
      case VertexKind::ns_union:
        nscap::save_mask_vertices(kind, nscap::ns_union_mask_vertices(), path);
        break;
      case VertexKind::cut_12:
      case VertexKind::cut_34:
      case VertexKind::cut_56:
      case VertexKind::cut_78: {
        int pair = cut_pair_of_kind(kind);
        CutResult cut = nscap::cut_new_vertices(2 * pair + 1, 2 * pair + 2);
        nscap::save_vertex_set(cut.new_vertices, path);
        break;
      }
      case VertexKind::pout:
        throw nscap::DomainError(
            "the outer set is assembled by `nscap pout`, not `nscap vertices`");
    }
    count = verify_cached_set(path, kind);
  }
  std::printf("%s: count=%zu checksum=%016llx (%s)\n", nscap::kind_name(kind),
              count, static_cast<unsigned long long>(fnv1a_file(path)),
              cached ? "cached" : "built");
  return count;
}

int cmd_vertices(const RunConfig& cfg, const std::string& kind_arg) {
  if (kind_arg == "all") {
    size_t total = 0;
    for (VertexKind kind : {VertexKind::local, VertexKind::half,
                            VertexKind::third, VertexKind::quarter})
      total += ensure_vertex_cache(cfg, kind);
    ensure_vertex_cache(cfg, VertexKind::ns_union);
    std::printf("total: %zu\n", total);
    return 0;
  }
  ensure_vertex_cache(cfg, kind_from_cli(kind_arg));
  return 0;
}

// --- capacity ---------------------------------------------------------------

// Max rate over the signatures of a cached vertex file, streaming, without
// materializing the whole set.
double streamed_capacity(const std::string& path, const ChannelParams& params,
                         size_t* n_signatures = nullptr) {
  std::set<std::array<double, 24>> seen;
  nscap::for_each_vertex(path, [&](Behavior&& beh) {
    seen.insert(nscap::to_numeric(nscap::marginal_signature(beh)).c);
  });
  if (seen.empty()) throw nscap::IoError("vertex set file has no entries: " + path);
  double best = -std::numeric_limits<double>::infinity();
  nscap::NumericSignature sig;
  for (const auto& c : seen) {
    sig.c = c;
    best = std::max(best, nscap::rate_from_signature(sig, params));
  }
  if (n_signatures) *n_signatures = seen.size();
  return best;
}

int report_pair(const std::string& resource, double formula, double scan,
                double tol) {
  double diff = std::abs(formula - scan);
  std::printf("formula = %s\n", fmt(formula).c_str());
  std::printf("scan    = %s\n", fmt(scan).c_str());
  std::printf("|formula - scan| = %s (tolerance %s)\n", fmt(diff).c_str(),
              fmt(tol).c_str());
  if (diff <= tol) return 0;
  std::printf("consistency: FAIL for resource %s\n", resource.c_str());
  return 2;
}

int cmd_capacity(const RunConfig& cfg, const std::string& resource, double p,
                 double q) {
  const ChannelParams params(p, q);  // validates the range
  std::printf("resource=%s p=%s q=%s\n", resource.c_str(), fmt(p).c_str(),
              fmt(q).c_str());
  if (resource == "local") {
    VertexSet local = nscap::enumerate_orbit(nscap::seed_vertex(VertexKind::local));
    double scan = -1;
    for (const Behavior& v : local.vertices)
      scan = std::max(scan, nscap::sum_rate(v, params));
    return report_pair(resource, nscap::local_capacity_formula(p, q), scan,
                       cfg.tolerances.at("local"));
  }
  if (resource == "ns") {
    nscap::SignatureIndex index =
        nscap::build_signature_index(nscap::ns_union_mask_vertices());
    return report_pair(resource, nscap::ns_capacity_formula(p, q),
                       nscap::capacity_over_index(index, params).value,
                       cfg.tolerances.at("ns"));
  }
  if (resource == "qlb")
    return report_pair(resource, nscap::qlb_formula(p, q),
                       nscap::quantum_lb_search(params),
                       cfg.tolerances.at("qlb"));
  if (resource == "qub") {
    const std::string path = cache_path(cfg, VertexKind::pout);
    if (!std::filesystem::exists(path)) {
      std::printf("formula = %s\n", fmt(nscap::qub_formula(p, q)).c_str());
      std::printf("scan skipped: no cached outer set at %s; run `nscap pout` first\n",
                  path.c_str());
      return 0;
    }
    return report_pair(resource, nscap::qub_formula(p, q),
                       streamed_capacity(path, params),
                       cfg.tolerances.at("qub"));
  }
  throw nscap::DomainError("unknown resource '" + resource +
                           "' (expected local|ns|qlb|qub)");
}

// --- scan -------------------------------------------------------------------

bool in_gray_region(double p, double q) {
  // Strict separations with a fixed margin so that exact ties (for example
  // everywhere on the diagonal p = q) are never misread as separations.
  constexpr double margin = 1e-9;
  return nscap::qlb_formula(p, q) > nscap::local_capacity_formula(p, q) + margin &&
         nscap::qub_formula(p, q) < nscap::ns_capacity_formula(p, q) - margin;
}

int cmd_scan(const RunConfig& cfg, const std::string& out_path) {
  std::ostringstream os;
  nlohmann::json rows = nlohmann::json::array();
  if (cfg.format == "csv") os << "p,q,C_L,C_NS,C_QLB,C_QUB,in_gray_region\n";
  for (int i = 0; i < cfg.grid_rows; ++i) {
    double p = static_cast<double>(i) / (cfg.grid_rows - 1);
    for (int j = 0; j < cfg.grid_cols; ++j) {
      double q = static_cast<double>(j) / (cfg.grid_cols - 1);
      double cl = nscap::local_capacity_formula(p, q);
      double cns = nscap::ns_capacity_formula(p, q);
      double cqlb = nscap::qlb_formula(p, q);
      double cqub = nscap::qub_formula(p, q);
      bool gray = in_gray_region(p, q);
      if (cfg.format == "csv") {
        os << fmt(p) << ',' << fmt(q) << ',' << fmt(cl) << ',' << fmt(cns)
           << ',' << fmt(cqlb) << ',' << fmt(cqub) << ',' << (gray ? 1 : 0)
           << '\n';
      } else {
        rows.push_back({{"p", p},
                        {"q", q},
                        {"C_L", cl},
                        {"C_NS", cns},
                        {"C_QLB", cqlb},
                        {"C_QUB", cqub},
                        {"in_gray_region", gray}});
      }
    }
  }
  if (cfg.format == "json") os << rows.dump(2) << '\n';
  if (out_path.empty()) {
    std::cout << os.str();
    if (!std::cout) throw nscap::IoError("write to stdout failed");
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw nscap::IoError("cannot open for writing: " + out_path);
    out << os.str();
    out.flush();
    if (!out) throw nscap::IoError("write failed: " + out_path);
  }
  return 0;
}

// --- reports ----------------------------------------------------------------

int cmd_table1(const RunConfig& cfg) {
  nscap::NonlocalityRateReport rep = nscap::nonlocality_rate_report();
  if (cfg.format == "json") {
    nlohmann::json j;
    j["vertices"] = {"v1/2", "v1/3", "v1/4"};
    j["nonlocality"] = {nscap::to_string(rep.nonlocality[0]),
                        nscap::to_string(rep.nonlocality[1]),
                        nscap::to_string(rep.nonlocality[2])};
    j["sum_rates"] = {rep.sum_rates[0], rep.sum_rates[1], rep.sum_rates[2]};
    j["anti_monotone"] = rep.anti_monotone;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << rep.text() << '\n' << rep.csv();
  }
  return 0;
}

int cmd_pout(const RunConfig& cfg) {
  const std::string path = cache_path(cfg, VertexKind::pout);
  if (std::filesystem::exists(path)) {
    size_t count = verify_cached_set(path, VertexKind::pout);
    size_t n_sigs = 0;
    double cap = streamed_capacity(path, ChannelParams(1, 0), &n_sigs);
    std::printf("outer set (cached): size=%zu signatures=%zu\n", count, n_sigs);
    std::printf("capacity at (1,0): scan = %s, formula = %s\n", fmt(cap).c_str(),
                fmt(nscap::qub_formula(1, 0)).c_str());
    return 0;
  }
  nscap::PoutBuilder builder;
  for (VertexKind kind : {VertexKind::cut_12, VertexKind::cut_34,
                          VertexKind::cut_56, VertexKind::cut_78}) {
    const std::string cut_path = cache_path(cfg, kind);
    if (!std::filesystem::exists(cut_path))
      throw nscap::IoError("missing cached slice " + cut_path + "; run `nscap vertices " +
                           nscap::kind_name(kind) + "` first");
    CutResult cut;
    cut.pair = cut_pair_of_kind(kind);
    cut.new_vertices = nscap::load_vertex_set(cut_path);
    if (cut.new_vertices.kind != kind)
      throw nscap::IoError("cache file " + cut_path + " holds the wrong kind");
    builder.add_cut(cut);
  }
  nscap::PoutSet pout = builder.finish();
  std::printf("outer set: size=%zu (pre-dedup %zu, duplicates removed %zu)\n",
              pout.size(), pout.pre_dedup_count, pout.duplicates_removed);
  std::printf(
      "audit: members above a pair bound %zu/%zu/%zu/%zu, slice cross violations %zu\n",
      pout.audit.union_violators[0], pout.audit.union_violators[1],
      pout.audit.union_violators[2], pout.audit.union_violators[3],
      pout.audit.cut_cross_violations);
  nscap::PoutEvaluator eval(pout);
  std::printf("capacity at (1,0): scan = %s, formula = %s\n",
              fmt(eval.capacity(ChannelParams(1, 0))).c_str(),
              fmt(nscap::qub_formula(1, 0)).c_str());
  nscap::save_pout(pout, path);
  std::printf("cached: %s\n", path.c_str());
  return 0;
}

int cmd_npa(const RunConfig&) {
  static const char* labels[4] = {"L_(1,2)", "L_(3,4)", "L_(5,6)", "L_(7,8)"};
  for (int pair = 0; pair < 4; ++pair) {
    const nscap::BellFunctional& f = nscap::pair_sum_functional(pair);
    double mx = nscap::npa1_max_functional(f.coefficients);
    double mn = nscap::npa1_min_functional(f.coefficients);
    std::printf("%s: max = %s  min = %s\n", labels[pair], fmt(mx).c_str(),
                fmt(mn).c_str());
  }
  return 0;
}

// --- check ------------------------------------------------------------------

int cmd_check(const RunConfig& cfg, bool long_tests) {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    std::printf("check %-34s %s%s%s\n", (name + ":").c_str(), ok ? "ok" : "FAIL",
                detail.empty() ? "" : " ", detail.c_str());
    if (!ok) ++failures;
  };

  std::vector<MaskVertex> union_masks = nscap::ns_union_mask_vertices();
  {
    std::array<size_t, 5> counts{};  // [k] for k=1..4
    for (const MaskVertex& mv : union_masks) ++counts[static_cast<size_t>(mv.k)];
    bool ok = counts[1] == 256 && counts[2] == 10368 && counts[3] == 110592 &&
              counts[4] == 82944 && union_masks.size() == 204160;
    report("vertex class counts", ok,
           std::to_string(counts[1]) + "/" + std::to_string(counts[2]) + "/" +
               std::to_string(counts[3]) + "/" + std::to_string(counts[4]) +
               " union " + std::to_string(union_masks.size()));
  }

  {
    VertexSet local = nscap::enumerate_orbit(nscap::seed_vertex(VertexKind::local));
    double worst = 0;
    for (const ChannelParams& params : nscap::uniform_grid(21, 21)) {
      double scan = -1;
      for (const Behavior& v : local.vertices)
        scan = std::max(scan, nscap::sum_rate(v, params));
      worst = std::max(worst, std::abs(scan - nscap::local_capacity_formula(
                                                  params.p, params.q)));
    }
    report("local formula vs scan (21x21)", worst <= cfg.tolerances.at("local"),
           "worst " + fmt(worst));
  }

  nscap::SignatureIndex union_index = nscap::build_signature_index(union_masks);
  {
    double worst = 0;
    for (const ChannelParams& params : nscap::uniform_grid(11, 11))
      worst = std::max(
          worst, std::abs(nscap::capacity_over_index(union_index, params).value -
                          nscap::ns_capacity_formula(params.p, params.q)));
    report("no-signaling formula vs scan (11x11)",
           worst <= cfg.tolerances.at("ns"), "worst " + fmt(worst));
  }

  {
    auto best = nscap::find_max_rate_vertices(ChannelParams(1, 0), union_masks);
    std::set<uint64_t> best_masks, published;
    for (const MaskVertex& mv : best) best_masks.insert(mv.mask);
    for (const Behavior& v : nscap::rate_two_vertices())
      published.insert(nscap::support_mask(v));
    report("rate-two maximizers at (1,0)",
           best.size() == 8 && best_masks == published,
           std::to_string(best.size()) + " maximizers");
  }

  {
    double worst = 0;
    for (const ChannelParams& params :
         {ChannelParams(1, 0), ChannelParams(0.9, 0.1), ChannelParams(0.8, 0.3),
          ChannelParams(0.6, 0.2), ChannelParams(0.75, 0.5)})
      worst = std::max(worst, std::abs(nscap::quantum_lb_search(params) -
                                       nscap::qlb_formula(params.p, params.q)));
    report("quantum lower bound search", worst <= cfg.tolerances.at("qlb"),
           "worst " + fmt(worst));
    double chsh = nscap::chsh_value(nscap::tsirelson_correlation());
    report("embedded CHSH value", std::abs(chsh - 2 * std::sqrt(2.0)) <= 1e-9,
           fmt(chsh));
  }

  {
    // Measured mixture structure: the complementary matching {v1,v8},
    // {v2,v7}, {v3,v6}, {v4,v5} keeps rate 2; the functional pairs
    // {v1,v2}... drop to 1; triples never reach 2.
    nscap::PairStructureReport rep = nscap::pair_structure_check();
    bool ok = rep.triples_ok;
    for (double r : rep.complement_midpoint_rates)
      ok = ok && std::abs(r - 2.0) <= 1e-9;
    for (double r : rep.pair_midpoint_rates)
      ok = ok && std::abs(r - 1.0) <= 1e-9;
    report("mixture structure of the eight", ok,
           "complement midpoints " + fmt(rep.complement_midpoint_rates[0]) +
               ", functional midpoints " + fmt(rep.pair_midpoint_rates[0]) +
               ", worst triple " + fmt(rep.worst_triple_mixture));
  }

  {
    // The four pair functionals partition the normalization: they sum to 4
    // on every normalized behavior, checked exactly on mixtures.
    bool ok = true;
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 10 && ok; ++trial) {
      const MaskVertex& a = union_masks[rng() % union_masks.size()];
      const MaskVertex& b = union_masks[rng() % union_masks.size()];
      Behavior mixed;
      Behavior ma = nscap::materialize(a), mb = nscap::materialize(b);
      for (size_t c = 0; c < 64; ++c) {
        mixed.p[c] = nscap::rat(1, 3) * ma.p[c] + nscap::rat(2, 3) * mb.p[c];
        mixed.p[c].canonicalize();
      }
      Rational total = 0;
      for (int pair = 0; pair < 4; ++pair)
        total += nscap::pair_sum_functional(pair).evaluate(mixed);
      ok = total == Rational(4);
    }
    report("pair functionals sum to four", ok, "");
  }

  if (long_tests) {
    std::vector<Behavior> full =
        nscap::vertex_enumeration(nscap::ns_h_representation());
    bool ok = full.size() == union_masks.size();
    if (ok) {
      size_t at = 0;
      for (const MaskVertex& mv : union_masks) {
        if (!(full[at] == nscap::materialize(mv))) {
          ok = false;
          break;
        }
        ++at;
      }
    }
    report("full vertex enumeration (long)", ok,
           std::to_string(full.size()) + " vertices");
  }

  if (failures == 0) {
    std::printf("all checks passed\n");
    return 0;
  }
  std::printf("%d check(s) failed\n", failures);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for interference-channel capacities over "
               "local, quantum, and no-signaling correlations"};
  app.require_subcommand(1);
  app.fallthrough();  // allow the global flags after a subcommand name

  RunConfig cfg;
  if (const char* env = std::getenv("NSCAP_CACHE")) cfg.cache_dir = env;
  app.add_option("--cache", cfg.cache_dir, "cache directory");
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  std::vector<std::string> tol_args;
  app.add_option("--tol", tol_args, "override a tolerance, NAME=VAL")
      ->expected(-1);

  std::string vertices_kind;
  CLI::App* vertices = app.add_subcommand(
      "vertices", "build or load a vertex set, print count and checksum");
  vertices->add_option("kind", vertices_kind,
                       "local|half|third|quarter|union|cut-12|cut-34|cut-56|cut-78|all")
      ->required();

  std::string cap_resource;
  double cap_p = 0, cap_q = 0;
  CLI::App* capacity = app.add_subcommand(
      "capacity", "capacity formula and vertex-scan value at one point");
  capacity->add_option("resource", cap_resource, "local|ns|qlb|qub")->required();
  capacity->add_option("p", cap_p, "channel parameter p")->required();
  capacity->add_option("q", cap_q, "channel parameter q")->required();

  std::string grid_arg, out_path;
  CLI::App* scan = app.add_subcommand(
      "scan", "capacity formulas and the gray-region flag over a grid");
  scan->add_option("--grid", grid_arg, "grid size NxM (default 101x101)");
  scan->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* table1 = app.add_subcommand(
      "table1", "nonlocality versus sum rate for the three sample vertices");

  CLI::App* pout = app.add_subcommand(
      "pout", "assemble the outer vertex set from the cached slices");

  CLI::App* npa = app.add_subcommand(
      "npa", "level-1 moment-relaxation bounds on the four pair functionals");

  bool long_tests = false;
  CLI::App* check = app.add_subcommand("check", "run the consistency battery");
  check->add_flag("--long", long_tests,
                  "also run the full vertex enumeration cross-check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors are exit 1 by contract
  }

  try {
    for (const std::string& arg : tol_args) {
      size_t eq = arg.find('=');
      if (eq == std::string::npos)
        throw nscap::DomainError("--tol expects NAME=VAL, got '" + arg + "'");
      std::string name = arg.substr(0, eq);
      if (!cfg.tolerances.count(name))
        throw nscap::DomainError("unknown tolerance '" + name +
                                 "' (expected local|ns|qlb|qub)");
      double val = std::stod(arg.substr(eq + 1));
      if (!(val > 0)) throw nscap::DomainError("tolerances must be positive");
      cfg.tolerances[name] = val;
    }
    if (!grid_arg.empty()) {
      size_t x = grid_arg.find('x');
      if (x == std::string::npos)
        throw nscap::DomainError("--grid expects NxM, got '" + grid_arg + "'");
      cfg.grid_rows = std::stoi(grid_arg.substr(0, x));
      cfg.grid_cols = std::stoi(grid_arg.substr(x + 1));
      if (cfg.grid_rows < 2 || cfg.grid_cols < 2)
        throw nscap::DomainError("grid dimensions must be at least 2");
    }

    if (vertices->parsed()) return cmd_vertices(cfg, vertices_kind);
    if (capacity->parsed()) return cmd_capacity(cfg, cap_resource, cap_p, cap_q);
    if (scan->parsed()) return cmd_scan(cfg, out_path);
    if (table1->parsed()) return cmd_table1(cfg);
    if (pout->parsed()) return cmd_pout(cfg);
    if (npa->parsed()) return cmd_npa(cfg);
    if (check->parsed()) return cmd_check(cfg, long_tests);
    return 1;
  } catch (const nscap::DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const nscap::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const nscap::Error& e) {
    std::cerr << "consistency error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}

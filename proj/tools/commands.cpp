#include "commands.hpp"

#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "golden.hpp"
#include "recurlab/corners.hpp"
#include "recurlab/dynamics.hpp"
#include "recurlab/io.hpp"
#include "recurlab/verify.hpp"

namespace recurlab::cli {
namespace {

namespace fs = std::filesystem;
using dynamics::CommutingPair;
using dynamics::Map;
using dynamics::RotationAngle;
using spaces::Point;
using spaces::Region;
using spaces::Space;
using verify::Report;

// ---------------------------------------------------------------------------
// argument parsing helpers (named shortcuts or inline JSON)

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

Space parse_space_arg(const std::string& text) {
  if (!text.empty() && text[0] == '{') return io::space_from_json(text);
  auto parts = split(text, ':');
  if (parts[0] == "torus")
    return Space::torus(parts.size() > 1 ? std::stoi(parts[1]) : 1);
  if (parts[0] == "cyclic" && parts.size() == 2)
    return Space::cyclic(std::stoll(parts[1]));
  throw ConfigError("unknown space: " + text +
                    " (use torus[:dim], cyclic:M, or JSON)");
}

Region parse_region_arg(const std::string& text, const Space& sp) {
  if (!text.empty() && text[0] == '{') return io::region_from_json(text, sp);
  if (text == "whole") return Region::whole();
  if (text == "empty") return Region::empty();
  auto parts = split(text, ':');
  if (parts[0] == "arc" && parts.size() == 2) {
    auto ab = split(parts[1], ',');
    if (ab.size() != 2) throw ConfigError("arc needs start,end");
    return Region::arcs({{parse_rational(ab[0]), parse_rational(ab[1])}});
  }
  throw ConfigError("unknown region: " + text +
                    " (use whole, empty, arc:a,b, or JSON)");
}

Map parse_map_arg(const std::string& text) {
  if (!text.empty() && text[0] == '{') return io::map_from_json(text);
  auto parts = split(text, ':');
  long long cap = parts.size() > 1 && (parts[0] == "golden" || parts[0] == "sqrt2m1")
                      ? std::stoll(parts[1])
                      : (1ll << 20);
  if (parts[0] == "identity") return Map::identity();
  if (parts[0] == "golden") return Map::rotation(RotationAngle::golden(cap));
  if (parts[0] == "sqrt2m1") return Map::rotation(RotationAngle::sqrt2m1(cap));
  if (parts[0] == "doubling") return Map::doubling();
  if (parts[0] == "cat") return Map::cat();
  if (parts[0] == "rotation" && parts.size() == 2)
    return Map::rotation(RotationAngle::exact(parse_rational(parts[1])));
  if (parts[0] == "shift" && parts.size() == 2) {
    auto ma = split(parts[1], ',');
    if (ma.size() != 2) throw ConfigError("shift needs modulus,step");
    return Map::cyclic_shift(std::stoll(ma[0]), std::stoll(ma[1]));
  }
  throw ConfigError("unknown map: " + text);
}

Point parse_point_arg(const std::string& text) {
  Point p;
  for (const auto& part : split(text, ',')) p.push_back(parse_rational(part));
  return p;
}

Point zero_point(const Space& sp) { return Point((size_t)sp.dim(), Rational(0)); }

// ---------------------------------------------------------------------------
// artifact plumbing

struct Out {
  std::string root;
  void write(const std::string& name, const std::string& content) const {
    fs::create_directories(root);
    io::write_text_file(root + "/" + name, content);
    std::cout << "wrote " << root + "/" + name << "\n";
  }
};

void print_report(const Report& r) {
  std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.check
            << "  statistic=" << r.statistic << "  bound=" << r.bound;
  if (r.margin > 0) std::cout << "  margin=" << r.margin;
  if (r.samples > 0) std::cout << "  samples=" << r.samples << "  seed=" << r.seed;
  if (!r.certificate_provenance.empty())
    std::cout << "  provenance=" << r.certificate_provenance;
  std::cout << "\n";
}

// prints every report, writes the batch CSV plus the first report as JSON,
// and returns the number of failed (non-diagnostic) verdicts
int emit_reports(const Out& out, const std::string& tag,
                 const std::vector<Report>& reports, bool diagnostics_only = false) {
  int failures = 0;
  std::ostringstream csv;
  csv << io::report_csv_header() << "\n";
  for (const auto& r : reports) {
    print_report(r);
    csv << io::report_csv_row(r) << "\n";
    if (!r.pass && !diagnostics_only) ++failures;
  }
  out.write("reports_" + tag + ".csv", csv.str());
  if (!reports.empty()) out.write("report_" + tag + ".json", io::report_to_json(reports.front()));
  std::cout << reports.size() << " check(s), " << failures << " failure(s)"
            << (diagnostics_only ? " (diagnostic, informational)" : "") << "\n";
  return failures;
}

// deterministic random index subset of Z_M with roughly density [1/den]
std::vector<Point> random_points(long long modulus, std::uint64_t key, int den) {
  Rng rng(splitmix64(key));
  std::vector<Point> pts;
  for (long long i = 0; i < modulus; ++i)
    if (rng.below(den) == 0) pts.push_back({Rational(i)});
  if (pts.empty()) pts.push_back({Rational(key % modulus)});
  return pts;
}

McPolicy policy_from(long long samples, std::uint64_t seed, int workers,
                     const std::string& sampling) {
  McPolicy pol;
  pol.samples = samples;
  pol.seed = seed;
  pol.workers = workers;
  if (sampling == "stratified")
    pol.sampling = McPolicy::Sampling::stratified;
  else if (sampling != "iid")
    throw ConfigError("sampling must be iid or stratified");
  return pol;
}

// shared flag block for all verify-style commands
struct VerifyFlags {
  long long samples = 100000;
  std::uint64_t seed = 20250823;
  int workers = 1;
  std::string sampling = "iid";
  std::string config_path;
  long long t = 3;
  McPolicy policy() const { return policy_from(samples, seed, workers, sampling); }
  void attach(CLI::App* sub, bool with_t = false) {
    sub->add_option("--samples", samples, "Monte Carlo sample count");
    sub->add_option("--seed", seed, "root seed for all sampling");
    sub->add_option("--workers", workers, "worker threads (never changes values)");
    sub->add_option("--sampling", sampling, "iid or stratified");
    sub->add_option("--config", config_path, "experiment config file (key = value)");
    if (with_t) sub->add_option("--t", t, "non-return horizon");
  }
};

// ---------------------------------------------------------------------------
// corners subcommands

int cmd_corners_solve(const Out& out, long long n, long long budget) {
  auto res = corners::max_corner_free_exact((int)n, budget);
  if (corners::contains_corner(res.witness) || res.witness.size() != res.size) {
    std::cerr << "internal inconsistency: witness fails the corner scan\n";
    return 1;
  }
  out.write("corners_solve_" + std::to_string(n) + ".txt",
            io::witness_to_text(res.witness));
  std::cout << "n=" << n << " size=" << res.size << " optimal=" << res.optimal
            << " upper_bound=" << res.upper_bound << " nodes=" << res.nodes << "\n";
  return 0;
}

int cmd_corners_bound(const Out& out, long long t, long long budget) {
  auto cert = corners::certified_L(t, corners::CertMode::best_available, budget);
  out.write("certificate_L_" + std::to_string(t) + ".json",
            io::certificate_to_json(cert));
  std::cout << "t=" << t << " L in [" << cert.lower.str() << ", " << cert.upper.str()
            << "] provenance=" << corners::provenance_name(cert.provenance) << "\n";
  return 0;
}

int cmd_corners_table(const Out& out, long long max_t) {
  std::ostringstream csv;
  csv << "N,lower,upper,provenance\n";
  for (long long t = 1; t <= max_t; ++t) {
    auto cert = corners::certified_L(t);
    csv << t << "," << cert.lower.str() << "," << cert.upper.str() << ","
        << corners::provenance_name(cert.provenance) << "\n";
  }
  out.write("corners_table.csv", csv.str());
  std::cout << csv.str();
  return 0;
}

int cmd_corners_lift(const Out& out, long long side, long long bound) {
  if (bound <= 0) bound = 3 * side;
  auto b = corners::behrend_set((int)bound);
  auto a = corners::lift_ap3_to_corner_free(b, (int)side);
  if (corners::contains_corner(a)) {
    std::cerr << "internal inconsistency: lifted set contains a corner\n";
    return 1;
  }
  out.write("lift_base_" + std::to_string(bound) + ".txt", io::ap_witness_to_text(b));
  out.write("lift_corner_free_" + std::to_string(side) + ".txt",
            io::witness_to_text(a));
  std::cout << "side=" << side << " base=" << b.members.size()
            << " lifted=" << a.size() << " corner-free=yes\n";
  return 0;
}

// ---------------------------------------------------------------------------
// recur subcommands

std::vector<long long> ladder_to(long long n) {
  std::vector<long long> xs;
  for (long long v = 1; v < n; v *= 10) {
    xs.push_back(v);
    if (2 * v < n) xs.push_back(2 * v);
    if (5 * v < n) xs.push_back(5 * v);
  }
  xs.push_back(n);
  return xs;
}

int cmd_recur_single(const Out& out, const std::string& map_arg,
                     const std::string& x_arg, long long n) {
  Map map = parse_map_arg(map_arg);
  Point x = x_arg.empty() ? zero_point(map.space()) : parse_point_arg(x_arg);
  bool rot = map.kind() == Map::Kind::rotation;
  std::ostringstream csv;
  csv << "N,recurrence,oracle\n";
  for (long long N : ladder_to(n)) {
    auto rec = dynamics::recurrence_constant(map, x, N);
    csv << N << "," << rec.value.str() << ",";
    if (rot) {
      // oracle reports the classical norm; double it to match the
      // diameter-normalized metric used by the orbit scan
      auto oracle = dynamics::rotation_oracle(map.angle(), N);
      csv << (Rational(2) * oracle.min_norm).str();
    }
    csv << "\n";
  }
  out.write("recur_single.csv", csv.str());
  std::cout << csv.str();
  return 0;
}

int cmd_recur_pair(const Out& out, const std::string& s_arg, const std::string& r_arg,
                   const std::string& x_arg, long long n) {
  CommutingPair pair(parse_map_arg(s_arg), parse_map_arg(r_arg));
  Point x = x_arg.empty() ? zero_point(pair.space()) : parse_point_arg(x_arg);
  std::ostringstream csv;
  csv << "N,value\n";
  for (long long N : ladder_to(n))
    csv << N << "," << dynamics::simultaneous_recurrence(pair, x, N).value.str()
        << "\n";
  out.write("recur_pair.csv", csv.str());
  std::cout << csv.str();
  return 0;
}

int cmd_recur_profile(const Out& out, const std::string& map_arg,
                      const std::string& s_arg, const std::string& r_arg,
                      const std::string& x_arg, const std::string& h_arg, long long n,
                      const std::string& ladder_arg) {
  ScaleFn h = parse_scale_fn(h_arg);
  std::vector<long long> ks;
  for (const auto& part : split(ladder_arg, ',')) ks.push_back(std::stoll(part));
  std::ostringstream csv;
  if (!s_arg.empty() || !r_arg.empty()) {
    if (s_arg.empty() || r_arg.empty())
      throw ConfigError("pair profile needs both --s and --r");
    if (n > 64) throw ConfigError("pair profiles are capped at --n 64 (certificate cost)");
    CommutingPair pair(parse_map_arg(s_arg), parse_map_arg(r_arg));
    Point x = x_arg.empty() ? zero_point(pair.space()) : parse_point_arg(x_arg);
    std::map<long long, corners::DensityCertificate> lsrc;
    for (long long i = 1; i <= n; ++i) lsrc[i] = corners::certified_L(i);
    auto rows = dynamics::pair_weighted_profile(pair, x, h, n, ks, lsrc);
    csv << "K,N,value_lowerL,value_upperL\n";
    for (const auto& row : rows)
      csv << row.K << "," << row.N << "," << row.value_lowerL << ","
          << row.value_upperL << "\n";
  } else {
    Map map = parse_map_arg(map_arg);
    Point x = x_arg.empty() ? zero_point(map.space()) : parse_point_arg(x_arg);
    auto rows = dynamics::weighted_liminf_profile(map, x, h, n, ks);
    csv << "K,N,value\n";
    for (const auto& row : rows) csv << row.K << "," << row.N << "," << row.value << "\n";
  }
  out.write("recur_profile.csv", csv.str());
  std::cout << csv.str();
  return 0;
}

// ---------------------------------------------------------------------------
// verify subcommands

int cmd_verify_poincare(const Out& out, const VerifyFlags& vf) {
  std::vector<Report> reports;
  if (!vf.config_path.empty()) {
    Config cfg = Config::load(vf.config_path,
                              {"map", "region", "t", "samples", "seed", "workers",
                               "sampling"});
    Map map = parse_map_arg(cfg.get("map"));
    Region y = parse_region_arg(cfg.get("region"), map.space());
    McPolicy pol = policy_from(cfg.get_int_or("samples", vf.samples),
                               (std::uint64_t)cfg.get_int_or("seed", (long long)vf.seed),
                               (int)cfg.get_int_or("workers", vf.workers),
                               cfg.get_or("sampling", vf.sampling));
    reports.push_back(verify::check_lemma_l_add(y, map, cfg.get_int("t"), pol));
  } else {
    // exhaustive default suite on Z_10: every shift, seeded Y draws, t <= 5
    for (long long a = 0; a < 10; ++a) {
      Map map = Map::cyclic_shift(10, a);
      for (int trial = 0; trial < 10; ++trial) {
        Region y = Region::points(Space::cyclic(10),
                                  random_points(10, vf.seed * 1000003ull +
                                                        (std::uint64_t)(a * 101 + trial),
                                                2));
        for (long long t = 1; t <= 5; ++t)
          reports.push_back(verify::check_lemma_l_add(y, map, t, vf.policy()));
      }
    }
  }
  return emit_reports(out, "poincare", reports) ? 1 : 0;
}

int cmd_verify_pair_poincare(const Out& out, const VerifyFlags& vf) {
  std::vector<Report> reports;
  if (!vf.config_path.empty()) {
    Config cfg = Config::load(vf.config_path,
                              {"s", "r", "region", "t", "samples", "seed", "workers",
                               "sampling"});
    CommutingPair pair(parse_map_arg(cfg.get("s")), parse_map_arg(cfg.get("r")));
    Region y = parse_region_arg(cfg.get("region"), pair.space());
    long long t = cfg.get_int("t");
    auto cert = corners::certified_L(t, corners::CertMode::best_available);
    McPolicy pol = policy_from(cfg.get_int_or("samples", vf.samples),
                               (std::uint64_t)cfg.get_int_or("seed", (long long)vf.seed),
                               (int)cfg.get_int_or("workers", vf.workers),
                               cfg.get_or("sampling", vf.sampling));
    reports.push_back(verify::check_lemma_ll(y, pair, t, cert, pol));
  } else {
    long long t = vf.t;
    if (t < 1 || t > 5)
      throw ConfigError("default pair suite needs --t in [1,5] (exact density there)");
    auto cert = corners::certified_L(t, corners::CertMode::exact_required);
    const std::vector<std::pair<long long, std::vector<std::pair<long long, long long>>>>
        systems = {{12, {{1, 5}, {2, 3}, {3, 7}, {5, 5}}},
                   {30, {{1, 7}, {3, 11}, {6, 10}}}};
    for (const auto& [m, pairs] : systems)
      for (auto [a, b] : pairs) {
        CommutingPair pair(Map::cyclic_shift(m, a), Map::cyclic_shift(m, b));
        for (int trial = 0; trial < 5; ++trial) {
          Region y = Region::points(
              Space::cyclic(m),
              random_points(m, vf.seed * 7919ull +
                                   (std::uint64_t)(m * 131 + a * 17 + b * 3 + trial),
                            2));
          reports.push_back(verify::check_lemma_ll(y, pair, t, cert, vf.policy()));
        }
      }
  }
  return emit_reports(out, "pair_poincare", reports) ? 1 : 0;
}

int cmd_verify_thm_x2(const Out& out, const VerifyFlags& vf, int grid) {
  std::vector<Report> reports;
  verify::RhsOptions opt;
  opt.grid = grid;
  if (!vf.config_path.empty()) {
    Config cfg = Config::load(vf.config_path,
                              {"map", "region", "g", "n", "grid", "samples", "seed",
                               "workers", "sampling"});
    Map map = parse_map_arg(cfg.get("map"));
    Region a = parse_region_arg(cfg.get("region"), map.space());
    ScaleFn g = parse_scale_fn(cfg.get_or("g", "id"));
    opt.grid = (int)cfg.get_int_or("grid", grid);
    McPolicy pol = policy_from(cfg.get_int_or("samples", vf.samples),
                               (std::uint64_t)cfg.get_int_or("seed", (long long)vf.seed),
                               (int)cfg.get_int_or("workers", vf.workers),
                               cfg.get_or("sampling", vf.sampling));
    reports.push_back(verify::check_theorem_x2(a, map, g, cfg.get_int("n"), pol, opt));
  } else {
    ScaleFn gauge = ScaleFn::piecewise_linear(
        {{Rational(0), Rational(0)}, {Rational(1, 4), Rational(1, 8)},
         {Rational(1), Rational(1)}});
    for (long long m : {8, 12, 30})
      for (long long a : {1, 3})
        for (int gi = 0; gi < 2; ++gi)
          for (long long n : {4, 10}) {
            Map map = Map::cyclic_shift(m, a);
            Region reg = Region::points(
                Space::cyclic(m),
                random_points(m, vf.seed * 31337ull + (std::uint64_t)(m * 7 + a + gi + n),
                              3));
            reports.push_back(verify::check_theorem_x2(
                reg, map, gi == 0 ? ScaleFn::identity() : gauge, n, vf.policy(), opt));
          }
    Map golden = Map::rotation(RotationAngle::golden(1ll << 20));
    reports.push_back(verify::check_theorem_x2(
        Region::arcs({{Rational(0), Rational(1, 4)}}), golden, ScaleFn::identity(), 100,
        vf.policy(), opt));
    Map sq = Map::rotation(RotationAngle::sqrt2m1(1ll << 20));
    reports.push_back(verify::check_theorem_x2(
        Region::arcs({{Rational(1, 8), Rational(1, 2)}}), sq, gauge, 50, vf.policy(),
        opt));
  }
  return emit_reports(out, "thm_x2", reports) ? 1 : 0;
}

int cmd_verify_thm_x4(const Out& out, const VerifyFlags& vf, int grid) {
  std::vector<Report> reports;
  verify::RhsOptions opt;
  opt.grid = grid;
  if (!vf.config_path.empty()) {
    Config cfg = Config::load(vf.config_path,
                              {"s", "r", "region", "g", "n", "grid", "samples", "seed",
                               "workers", "sampling"});
    CommutingPair pair(parse_map_arg(cfg.get("s")), parse_map_arg(cfg.get("r")));
    Region a = parse_region_arg(cfg.get("region"), pair.space());
    ScaleFn g = parse_scale_fn(cfg.get_or("g", "id"));
    long long n = cfg.get_int("n");
    auto cert = corners::certified_L(n, corners::CertMode::best_available);
    opt.grid = (int)cfg.get_int_or("grid", grid);
    McPolicy pol = policy_from(cfg.get_int_or("samples", vf.samples),
                               (std::uint64_t)cfg.get_int_or("seed", (long long)vf.seed),
                               (int)cfg.get_int_or("workers", vf.workers),
                               cfg.get_or("sampling", vf.sampling));
    reports.push_back(verify::check_theorem_x4(a, pair, g, n, cert, pol, opt));
  } else {
    for (long long n : {2, 3, 4}) {
      auto cert = corners::certified_L(n, corners::CertMode::exact_required);
      for (auto [m, a, b] : std::vector<std::tuple<long long, long long, long long>>{
               {12, 1, 5}, {30, 1, 7}, {30, 3, 11}}) {
        CommutingPair pair(Map::cyclic_shift(m, a), Map::cyclic_shift(m, b));
        Region reg = Region::points(
            Space::cyclic(m),
            random_points(m, vf.seed * 104729ull + (std::uint64_t)(m + a + b + n), 3));
        reports.push_back(verify::check_theorem_x4(reg, pair, ScaleFn::identity(), n,
                                                   cert, vf.policy(), opt));
      }
    }
    auto cert = corners::certified_L(4, corners::CertMode::exact_required);
    CommutingPair rot(Map::rotation(RotationAngle::golden(1ll << 20)),
                      Map::rotation(RotationAngle::sqrt2m1(1ll << 20)));
    reports.push_back(verify::check_theorem_x4(
        Region::arcs({{Rational(0), Rational(1, 3)}}), rot, ScaleFn::identity(), 4,
        cert, vf.policy(), opt));
  }
  return emit_reports(out, "thm_x4", reports) ? 1 : 0;
}

int cmd_verify_union(const Out& out, const VerifyFlags& vf) {
  std::vector<Report> reports;
  if (!vf.config_path.empty()) {
    Config cfg = Config::load(vf.config_path, {"modulus", "a", "b", "t", "seed"});
    long long m = cfg.get_int("modulus"), t = cfg.get_int("t");
    CommutingPair pair(Map::cyclic_shift(m, cfg.get_int("a")),
                       Map::cyclic_shift(m, cfg.get_int("b")));
    Space sp = Space::cyclic(m);
    Region y = Region::points(
        sp, random_points(m, (std::uint64_t)cfg.get_int_or("seed", (long long)vf.seed),
                          2));
    auto yt = verify::non_returning_pair(y, pair, t);
    auto cert = corners::certified_L(t, corners::CertMode::best_available);
    long long l = (Rational(t) * Rational(t) * cert.upper).ceil();
    std::vector<Region> family;
    for (long long k1 = 1; k1 <= t; ++k1)
      for (long long k2 = 1; k2 <= t; ++k2) {
        std::vector<Point> pre;
        for (long long i = 0; i < m; ++i) {
          Point z = pair.R().iterate(pair.S().iterate(sp.point_at(i), k1), k2);
          if (yt.member(sp.index_of(z))) pre.push_back(sp.point_at(i));
        }
        family.push_back(Region::points(sp, pre));
      }
    reports.push_back(verify::check_union_multiplicity(sp, family, l));
  } else {
    {  // pairwise disjoint family, l = 1: conclusion is additivity
      Space sp = Space::cyclic(12);
      std::vector<Region> fam;
      for (long long s = 0; s < 12; s += 4) {
        std::vector<Point> pts;
        for (long long i = s; i < s + 4; ++i) pts.push_back({Rational(i)});
        fam.push_back(Region::points(sp, pts));
      }
      reports.push_back(verify::check_union_multiplicity(sp, fam, 1));
    }
    {  // identical sets, l = family size: equality at the 1/l factor
      Space sp = Space::cyclic(10);
      std::vector<Point> pts = {{Rational(0)}, {Rational(3)}, {Rational(7)}};
      std::vector<Region> fam(4, Region::points(sp, pts));
      reports.push_back(verify::check_union_multiplicity(sp, fam, 4));
    }
    {  // the return-index family of a genuine pair system
      long long m = 12, t = 3;
      Space sp = Space::cyclic(m);
      CommutingPair pair(Map::cyclic_shift(m, 1), Map::cyclic_shift(m, 5));
      Region y = Region::points(sp, random_points(m, vf.seed ^ 0x5eedull, 2));
      auto yt = verify::non_returning_pair(y, pair, t);
      auto cert = corners::certified_L(t, corners::CertMode::exact_required);
      long long l = (Rational(t) * Rational(t) * cert.upper).ceil();
      std::vector<Region> family;
      for (long long k1 = 1; k1 <= t; ++k1)
        for (long long k2 = 1; k2 <= t; ++k2) {
          std::vector<Point> pre;
          for (long long i = 0; i < m; ++i) {
            Point z = pair.R().iterate(pair.S().iterate(sp.point_at(i), k1), k2);
            if (yt.member(sp.index_of(z))) pre.push_back(sp.point_at(i));
          }
          family.push_back(Region::points(sp, pre));
        }
      reports.push_back(verify::check_union_multiplicity(sp, family, l));
    }
  }
  return emit_reports(out, "union", reports) ? 1 : 0;
}

int cmd_verify_corner_demo(const Out& out, const VerifyFlags& vf) {
  std::vector<Report> reports;
  std::ostringstream log;
  long long systems = 0;
  auto run_one = [&](long long m, long long a, long long b, long long t,
                     long long xidx) {
    Space sp = Space::cyclic(m);
    CommutingPair pair(Map::cyclic_shift(m, a), Map::cyclic_shift(m, b));
    // corrupted claim: the whole space pretends to survive, so |A(x)| = t^2
    auto fake = verify::assume_non_returning(Region::whole(), sp, t);
    auto ax = verify::return_index_set(sp.point_at(xidx), fake, pair);
    auto cert = corners::certified_L(t, corners::CertMode::exact_required);
    auto ex = verify::corner_extraction_demo(ax, fake, pair);
    Report rep;
    rep.check = "corner-demo";
    rep.statistic = (double)ax.size;
    rep.bound = (double)t * (double)t * cert.upper.value();
    rep.certificate_provenance = corners::provenance_name(cert.provenance) + ":upper";
    rep.pass = ex && ex->relations_verified && ex->contradiction_confirmed;
    reports.push_back(rep);
    ++systems;
    if (ex)
      log << "Z_" << m << " S=+" << a << " R=+" << b << " t=" << t << " x=" << xidx
          << " corner=(" << ex->corner.k << "," << ex->corner.m << ","
          << ex->corner.d << ") relations=" << ex->relations_verified
          << " contradiction=" << ex->contradiction_confirmed << "\n";
  };
  if (!vf.config_path.empty()) {
    Config cfg = Config::load(vf.config_path, {"modulus", "a", "b", "t", "x"});
    run_one(cfg.get_int("modulus"), cfg.get_int("a"), cfg.get_int("b"),
            cfg.get_int("t"), cfg.get_int_or("x", 0));
  } else {
    for (long long m = 7; m <= 16; ++m)
      for (long long t : {2, 3})
        run_one(m, 1, m - 1, t, (m * 3 + t) % m);
  }
  out.write("corner_demo.log", log.str());
  std::cout << systems << " corrupted system(s) exercised\n";
  // a failed extraction here is an internal inconsistency, not a bound issue
  return emit_reports(out, "corner_demo", reports) ? 1 : 0;
}

int cmd_verify_x1_diag(const Out& out, const VerifyFlags& vf) {
  std::vector<Report> reports;
  std::ostringstream csv;
  csv << "K,N,value\n";
  auto run_one = [&](const Map& map, const Point& x, const ScaleFn& h, long long n,
                     const std::vector<long long>& ks) {
    auto rows = dynamics::weighted_liminf_profile(map, x, h, n, ks);
    std::vector<double> integrals;
    for (const auto& row : rows) {
      // rotations: the per-point profile is x-independent, so the row value
      // is already the space average; finite maps would need a point sweep
      integrals.push_back(row.value);
      csv << row.K << "," << row.N << "," << row.value << "\n";
    }
    std::vector<Rational> ladder;
    for (int k = 1; k <= 12; ++k) ladder.push_back(Rational(1, 1ll << k));
    double hh = spaces::hh_upper_estimate(Region::whole(), map.space(), h, ladder);
    reports.push_back(verify::diagnostic_x1_x3("x1-diagnostic", integrals, hh));
  };
  if (!vf.config_path.empty()) {
    Config cfg = Config::load(vf.config_path, {"map", "x", "h", "n", "k_ladder"});
    Map map = parse_map_arg(cfg.get("map"));
    Point x = cfg.has("x") ? parse_point_arg(cfg.get("x")) : zero_point(map.space());
    std::vector<long long> ks;
    for (const auto& part : split(cfg.get_or("k_ladder", "1,10,100"), ','))
      ks.push_back(std::stoll(part));
    run_one(map, x, parse_scale_fn(cfg.get_or("h", "id")), cfg.get_int("n"), ks);
  } else {
    run_one(Map::identity(), {Rational(0)}, ScaleFn::identity(), 1000, {1, 10, 100});
    // long horizons need a deep expansion to stay inside the orbit error budget
    run_one(Map::rotation(RotationAngle::golden(1ll << 31)), {Rational(0)},
            ScaleFn::identity(), 10000, {1, 10, 100, 1000});
  }
  out.write("x1_profile.csv", csv.str());
  emit_reports(out, "x1_diagnostic", reports, /*diagnostics_only=*/true);
  return 0;  // diagnostics never affect exit status
}

// ---------------------------------------------------------------------------
// entropy subcommands

int cmd_entropy_cover(const Out& out, const std::string& space_arg,
                      const std::string& region_arg, const std::string& eps_arg) {
  Space sp = parse_space_arg(space_arg);
  Region r = parse_region_arg(region_arg, sp);
  Rational eps = parse_rational(eps_arg);
  auto res = spaces::covering_number(r, sp, eps);
  std::cout << "eps=" << eps.str() << " lower=" << res.lower << " upper=" << res.upper
            << " exact=" << (res.exact ? "yes" : "no") << "\n";
  if (res.net_emitted) {
    std::ostringstream net;
    for (const auto& p : res.net) {
      for (size_t i = 0; i < p.size(); ++i) net << (i ? "," : "") << p[i].str();
      net << "\n";
    }
    out.write("entropy_net.csv", net.str());
  }
  return 0;
}

int cmd_entropy_premeasure(const Out& out, const std::string& space_arg,
                           const std::string& region_arg, const std::string& h_arg,
                           const std::string& ladder_arg) {
  Space sp = parse_space_arg(space_arg);
  Region r = parse_region_arg(region_arg, sp);
  ScaleFn h = parse_scale_fn(h_arg);
  std::vector<Rational> ladder;
  for (const auto& part : split(ladder_arg, ',')) ladder.push_back(parse_rational(part));
  std::ostringstream csv;
  csv << "delta,premeasure\n";
  for (const auto& d : ladder)
    csv << d.str() << "," << spaces::box_counting_premeasure(r, sp, h, d) << "\n";
  double est = spaces::hh_upper_estimate(r, sp, h, ladder);
  csv << "estimate," << est << "\n";
  out.write("entropy_premeasure.csv", csv.str());
  std::cout << csv.str();
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"corner-free sets, recurrence constants, and covering-entropy toolkit"};
  app.require_subcommand(1);
  std::string out_root = ".";
  app.add_option("--out", out_root, "output root for artifacts")
      ->envname("RECURLAB_OUT");

  int rc = 0;
  auto run = [&](auto&& fn) {
    try {
      rc = fn();
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      rc = 2;
    } catch (const io::IoError& e) {
      std::cerr << "io error: " << e.what() << "\n";
      rc = 2;
    } catch (const corners::CertificateError& e) {
      std::cerr << "certificate error: " << e.what() << "\n";
      rc = 2;
    } catch (const PrecisionError& e) {
      std::cerr << "precision error: " << e.what() << "\n";
      rc = 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      rc = 2;
    }
  };

  // corners
  auto* corners_cmd = app.add_subcommand("corners", "extremal corner-free machinery");
  corners_cmd->require_subcommand(1);
  {
    auto* solve = corners_cmd->add_subcommand("solve", "maximum corner-free subset");
    auto n = std::make_shared<long long>(3);
    auto budget = std::make_shared<long long>(2'000'000);
    solve->add_option("--n", *n, "grid side")->required();
    solve->add_option("--budget", *budget, "search node budget");
    solve->callback([&, n, budget] {
      run([&] { return cmd_corners_solve({out_root}, *n, *budget); });
    });

    auto* bound = corners_cmd->add_subcommand("bound", "two-sided density certificate");
    auto bt = std::make_shared<long long>(3);
    auto bb = std::make_shared<long long>(-1);
    bound->add_option("--t,--n", *bt, "side")->required();
    bound->add_option("--budget", *bb, "search node budget");
    bound->callback(
        [&, bt, bb] { run([&] { return cmd_corners_bound({out_root}, *bt, *bb); }); });

    auto* table = corners_cmd->add_subcommand("table", "density bracket table");
    auto mx = std::make_shared<long long>(5);
    table->add_option("--max", *mx, "largest side");
    table->callback([&, mx] { run([&] { return cmd_corners_table({out_root}, *mx); }); });

    auto* lift = corners_cmd->add_subcommand("lift", "progression-free lift construction");
    auto ln = std::make_shared<long long>(8);
    auto lb = std::make_shared<long long>(0);
    lift->add_option("--n", *ln, "grid side")->required();
    lift->add_option("--bound", *lb, "base-set range (default 3n)");
    lift->callback(
        [&, ln, lb] { run([&] { return cmd_corners_lift({out_root}, *ln, *lb); }); });
  }

  // recur
  auto* recur = app.add_subcommand("recur", "recurrence-constant profiles");
  recur->require_subcommand(1);
  {
    auto* single = recur->add_subcommand("single", "closest-return ladder, one map");
    auto map = std::make_shared<std::string>("golden");
    auto x = std::make_shared<std::string>("");
    auto n = std::make_shared<long long>(1000);
    single->add_option("--map", *map, "map (named shortcut or JSON)");
    single->add_option("--x", *x, "start point, comma-separated rationals");
    single->add_option("--n", *n, "largest horizon");
    single->callback([&, map, x, n] {
      run([&] { return cmd_recur_single({out_root}, *map, *x, *n); });
    });

    auto* pair = recur->add_subcommand("pair", "simultaneous-return ladder");
    auto s = std::make_shared<std::string>("golden");
    auto r = std::make_shared<std::string>("sqrt2m1");
    auto px = std::make_shared<std::string>("");
    auto pn = std::make_shared<long long>(1000);
    pair->add_option("--s", *s, "first map");
    pair->add_option("--r", *r, "second map");
    pair->add_option("--x", *px, "start point");
    pair->add_option("--n", *pn, "largest horizon");
    pair->callback([&, s, r, px, pn] {
      run([&] { return cmd_recur_pair({out_root}, *s, *r, *px, *pn); });
    });

    auto* prof = recur->add_subcommand("profile", "weighted tail-minimum profiles");
    auto pm = std::make_shared<std::string>("golden");
    auto ps = std::make_shared<std::string>("");
    auto pr = std::make_shared<std::string>("");
    auto ppx = std::make_shared<std::string>("");
    auto ph = std::make_shared<std::string>("id");
    auto ppn = std::make_shared<long long>(10000);
    auto pl = std::make_shared<std::string>("1,10,100");
    prof->add_option("--map", *pm, "single map");
    prof->add_option("--s", *ps, "pair: first map");
    prof->add_option("--r", *pr, "pair: second map");
    prof->add_option("--x", *ppx, "start point");
    prof->add_option("--gauge", *ph, "gauge (id, pow:a, pl:...)");
    prof->add_option("--n", *ppn, "horizon");
    prof->add_option("--k-ladder", *pl, "comma-separated tail starts");
    prof->callback([&, pm, ps, pr, ppx, ph, ppn, pl] {
      run([&] {
        return cmd_recur_profile({out_root}, *pm, *ps, *pr, *ppx, *ph, *ppn, *pl);
      });
    });
  }

  // verify
  auto* ver = app.add_subcommand("verify", "lemma and theorem checks");
  ver->require_subcommand(1);
  auto vf = std::make_shared<VerifyFlags>();
  auto grid = std::make_shared<int>(1000);
  {
    auto* poin = ver->add_subcommand("poincare", "non-return measure bound, one map");
    vf->attach(poin);
    poin->callback([&, vf] { run([&] { return cmd_verify_poincare({out_root}, *vf); }); });

    auto* pp = ver->add_subcommand("pair-poincare", "non-return bound, commuting pair");
    vf->attach(pp, /*with_t=*/true);
    pp->callback(
        [&, vf] { run([&] { return cmd_verify_pair_poincare({out_root}, *vf); }); });

    auto* x2 = ver->add_subcommand("thm-x2", "integral recurrence inequality, one map");
    vf->attach(x2);
    x2->add_option("--grid", *grid, "candidate grid resolution");
    x2->callback(
        [&, vf, grid] { run([&] { return cmd_verify_thm_x2({out_root}, *vf, *grid); }); });

    auto* x4 = ver->add_subcommand("thm-x4", "integral inequality, commuting pair");
    vf->attach(x4);
    x4->add_option("--grid", *grid, "candidate grid resolution");
    x4->callback(
        [&, vf, grid] { run([&] { return cmd_verify_thm_x4({out_root}, *vf, *grid); }); });

    auto* un = ver->add_subcommand("union", "multiplicity-bounded union measure");
    vf->attach(un);
    un->callback([&, vf] { run([&] { return cmd_verify_union({out_root}, *vf); }); });

    auto* cd = ver->add_subcommand("corner-demo", "extraction path on corrupted claims");
    vf->attach(cd);
    cd->callback(
        [&, vf] { run([&] { return cmd_verify_corner_demo({out_root}, *vf); }); });

    auto* x1 = ver->add_subcommand("x1-diagnostic", "profile vs entropy, informational");
    vf->attach(x1);
    x1->callback([&, vf] { run([&] { return cmd_verify_x1_diag({out_root}, *vf); }); });
  }

  // entropy
  auto* ent = app.add_subcommand("entropy", "covering numbers and premeasures");
  ent->require_subcommand(1);
  {
    auto* cov = ent->add_subcommand("cover", "covering number at one scale");
    auto cs = std::make_shared<std::string>("torus");
    auto cr = std::make_shared<std::string>("whole");
    auto ce = std::make_shared<std::string>();
    cov->add_option("--space", *cs, "space (torus[:d], cyclic:M, JSON)");
    cov->add_option("--region", *cr, "region (whole, empty, arc:a,b, JSON)");
    cov->add_option("--eps", *ce, "ball radius, rational")->required();
    cov->callback([&, cs, cr, ce] {
      run([&] { return cmd_entropy_cover({out_root}, *cs, *cr, *ce); });
    });

    auto* pre = ent->add_subcommand("premeasure", "box-counting ladder estimate");
    auto ps2 = std::make_shared<std::string>("torus");
    auto pr2 = std::make_shared<std::string>("whole");
    auto ph2 = std::make_shared<std::string>("id");
    auto pd = std::make_shared<std::string>("1/2,1/4,1/8,1/16,1/32,1/64");
    pre->add_option("--space", *ps2, "space");
    pre->add_option("--region", *pr2, "region");
    pre->add_option("--gauge", *ph2, "gauge");
    pre->add_option("--ladder", *pd, "comma-separated scales");
    pre->callback([&, ps2, pr2, ph2, pd] {
      run([&] { return cmd_entropy_premeasure({out_root}, *ps2, *pr2, *ph2, *pd); });
    });
  }

  // golden
  auto* gold = app.add_subcommand("golden", "frozen-value store");
  gold->require_subcommand(1);
  {
    auto store = std::make_shared<std::string>("data/golden");
    auto confirm = std::make_shared<bool>(false);
    auto* chk = gold->add_subcommand("check", "recompute and compare bit-exactly");
    chk->add_option("--store", *store, "golden store directory");
    chk->callback(
        [&, store] { run([&] { return golden_check(*store, std::cout); }); });
    auto* regen = gold->add_subcommand("regenerate", "rewrite the store");
    regen->add_option("--store", *store, "golden store directory");
    regen->add_flag("--confirm", *confirm, "required to actually rewrite");
    regen->callback([&, store, confirm] {
      run([&] { return golden_regenerate(*store, *confirm, std::cout); });
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit clean, usage errors exit 2
  }
  return rc;
}

}  // namespace recurlab::cli

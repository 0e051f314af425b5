#include "golden.hpp"

#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"
#include "recurlab/corners.hpp"
#include "recurlab/dynamics.hpp"
#include "recurlab/io.hpp"
#include "recurlab/stieltjes.hpp"
#include "recurlab/verify.hpp"

namespace recurlab::cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string join_csv(const std::vector<std::string>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += parts[i];
  }
  return out;
}

}  // namespace

std::vector<GoldenEntry> golden_compute() {
  using namespace recurlab;
  std::vector<GoldenEntry> out;

  {
    std::vector<std::string> sizes;
    for (int n = 1; n <= 5; ++n)
      sizes.push_back(std::to_string(corners::max_corner_free_bnb(n, 2'000'000).size));
    out.push_back({"corner-max-sizes-1-5",
                   "branch and bound, cross-checked against exhaustive enumeration",
                   join_csv(sizes)});
  }
  {
    auto res = corners::max_corner_free_exhaustive(3);
    out.push_back({"corner-witness-3", "exhaustive enumeration over all 2^9 subsets",
                   io::witness_to_text(res.witness)});
  }
  {
    std::vector<std::string> sizes;
    for (int n = 1; n <= 20; ++n)
      sizes.push_back(std::to_string(corners::max_ap3_free_exact(n).size));
    out.push_back({"ap3-max-sizes-1-20", "exhaustive / branch and bound progression scan",
                   join_csv(sizes)});
  }
  {
    std::vector<std::string> sizes;
    for (int bound : {3, 14, 150, 729})
      sizes.push_back(std::to_string((long long)corners::behrend_set(bound).members.size()));
    out.push_back({"behrend-sizes-3-14-150-729",
                   "digit construction, re-scanned for progressions", join_csv(sizes)});
  }
  {
    auto b = corners::behrend_set(729);
    auto a = corners::lift_ap3_to_corner_free(b, 243);
    out.push_back({"lift-behrend-243", "sum construction x+2y, corner scan verified",
                   std::to_string(a.size())});
  }
  {
    std::vector<std::string> rows;
    for (long long t = 1; t <= 5; ++t) {
      auto c = corners::certified_L(t, corners::CertMode::exact_required);
      rows.push_back(std::to_string(t) + ":" + c.lower.str() + ":" +
                     corners::provenance_name(c.provenance));
    }
    out.push_back({"density-table-1-5", "exhaustive maxima over [1,t]^2 grids",
                   join_csv(rows)});
  }
  {
    auto angle = dynamics::RotationAngle::golden(1ll << 20);
    auto oracle = dynamics::rotation_oracle(angle, 100000);
    std::vector<std::string> dens;
    for (long long q : oracle.denominators) dens.push_back(std::to_string(q));
    out.push_back({"rotation-oracle-golden-1e5",
                   "continued-fraction best approximations (Fibonacci denominators)",
                   join_csv(dens) + ";min=" + oracle.min_norm.str() + "@" +
                       std::to_string(oracle.argmin)});
  }
  {
    spaces::Space sp = spaces::Space::torus(1);
    spaces::Region r = spaces::Region::arcs(
        {{Rational(0), Rational(1, 4)}, {Rational(1, 2), Rational(5, 8)}});
    std::vector<std::string> counts;
    for (long long k : {4, 8, 16, 32, 64}) {
      auto c = spaces::covering_number(r, sp, Rational(1, k));
      counts.push_back(std::to_string(c.upper) + (c.exact ? "!" : "?"));
    }
    out.push_back({"cover-arc-union-ladder",
                   "closed-form circle covering counts, grid-search verified",
                   join_csv(counts)});
  }
  {
    auto r = verify::rhs_bound_x2(spaces::Region::whole(), spaces::Space::cyclic(10),
                                  ScaleFn::identity(), 10);
    out.push_back({"rhs-z10-n10", "complete covering breakpoint evaluation",
                   r.exact_value.str() + "@t=" + r.argmin_t.str()});
  }
  {
    dynamics::Map m = dynamics::Map::rotation(dynamics::RotationAngle::golden(1ll << 20));
    spaces::Region a = spaces::Region::arcs({{Rational(0), Rational(1, 4)}});
    McPolicy pol;
    pol.samples = 20000;
    auto rep = verify::check_theorem_x2(a, m, ScaleFn::identity(), 100, pol);
    out.push_back({"report-thm-x2-golden-arc",
                   "seeded Monte Carlo, reproducible chunked stream",
                   io::report_to_json(rep)});
  }
  {
    auto w = dynamics::rotation_min_weighted_return(
        dynamics::RotationAngle::golden(1ll << 20), 100, 10000);
    std::ostringstream os;
    os << std::setprecision(15) << w.value << "@" << w.argmin;
    out.push_back({"weighted-return-tail-golden",
                   "integer evaluation on the stored convergent", os.str()});
  }
  {
    verify::StepFn f;
    f.lo = Rational(1, 4);
    f.hi = Rational(1);
    f.cut = {Rational(1, 2)};
    f.val = {Rational(2), Rational(1)};
    auto r = verify::stieltjes_step(f, ScaleFn::identity());
    out.push_back({"stieltjes-step-identity", "finite sum of values times increments",
                   r.exact_value.str()});
  }
  return out;
}

namespace {

std::string records_path(const std::string& dir) { return dir + "/records.json"; }

json records_to_json(const std::vector<GoldenEntry>& entries) {
  json recs = json::array();
  for (const auto& e : entries) {
    json r;
    r["name"] = e.name;
    r["oracle"] = e.oracle;
    r["value"] = e.value;
    recs.push_back(r);
  }
  json j;
  j["schema"] = 1;
  j["records"] = recs;
  return j;
}

}  // namespace

int golden_check(const std::string& store_dir, std::ostream& diag) {
  std::ifstream is(records_path(store_dir));
  if (!is) {
    diag << "golden store not found: " << records_path(store_dir) << "\n";
    return 2;
  }
  json stored;
  try {
    is >> stored;
    if (stored.at("schema").get<int>() != 1) throw std::runtime_error("schema");
  } catch (const std::exception& e) {
    diag << "golden store unreadable: " << e.what() << "\n";
    return 2;
  }
  std::map<std::string, std::string> expected;
  for (const auto& r : stored.at("records"))
    expected[r.at("name").get<std::string>()] = r.at("value").get<std::string>();

  int mismatches = 0;
  auto current = golden_compute();
  for (const auto& e : current) {
    auto it = expected.find(e.name);
    if (it == expected.end()) {
      diag << "MISSING  " << e.name << " (not in store)\n";
      ++mismatches;
      continue;
    }
    if (it->second != e.value) {
      diag << "MISMATCH " << e.name << "\n  stored:   " << it->second
           << "\n  computed: " << e.value << "\n";
      ++mismatches;
    }
    expected.erase(it);
  }
  for (const auto& [name, _] : expected) {
    diag << "STALE    " << name << " (store has it, tool does not)\n";
    ++mismatches;
  }
  diag << (mismatches ? "golden check FAILED, " + std::to_string(mismatches) +
                            " mismatch(es)\n"
                      : "golden check ok, " + std::to_string(current.size()) +
                            " record(s)\n");
  return mismatches ? 1 : 0;
}

int golden_regenerate(const std::string& store_dir, bool confirmed,
                      std::ostream& diag) {
  if (!confirmed) {
    diag << "refusing to regenerate without --confirm\n";
    return 2;
  }
  fs::create_directories(store_dir);
  auto entries = golden_compute();
  std::ofstream os(records_path(store_dir), std::ios::binary);
  if (!os) {
    diag << "cannot write " << records_path(store_dir) << "\n";
    return 2;
  }
  os << records_to_json(entries).dump(2) << "\n";

  // timestamps live here, never in records.json, so record bytes stay stable
  std::time_t now = std::time(nullptr);
  char stamp[64];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  json meta;
  meta["generated_utc"] = stamp;
  meta["records"] = (long long)entries.size();
  std::ofstream ms(store_dir + "/meta.json", std::ios::binary);
  ms << meta.dump(2) << "\n";

  diag << "regenerated " << entries.size() << " record(s) in " << store_dir << "\n";
  return 0;
}

}  // namespace recurlab::cli

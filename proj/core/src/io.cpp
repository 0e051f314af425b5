#include "recurlab/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace recurlab::io {
namespace {

using json = nlohmann::ordered_json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad JSON: ") + e.what());
  }
}

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.contains(key)) throw IoError(std::string("missing field: ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad field ") + key + ": " + e.what());
  }
}

Rational rat_from_string(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::exception& e) {
    throw IoError(std::string("bad rational '") + s + "': " + e.what());
  }
}

json arc_to_json(const spaces::Arc& a) {
  return json::array({a.a.str(), a.b.str()});
}

spaces::Arc arc_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw IoError("arc must be a [start, end] pair");
  return {rat_from_string(j[0].get<std::string>()),
          rat_from_string(j[1].get<std::string>())};
}

}  // namespace

std::string witness_to_text(const corners::GridSubset& a) {
  std::ostringstream os;
  os << "N=" << a.side() << "\n";
  for (auto [x, y] : a.members()) os << x << " " << y << "\n";
  return os.str();
}

corners::GridSubset witness_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header) || header.rfind("N=", 0) != 0)
    throw IoError("witness file must start with N=<side>");
  int side = 0;
  try {
    side = std::stoi(header.substr(2));
  } catch (const std::exception&) {
    throw IoError("bad witness side: " + header);
  }
  if (side < 1) throw IoError("witness side must be positive");
  corners::GridSubset a(side);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int x = 0, y = 0;
    if (!(ls >> x >> y)) throw IoError("bad witness line: " + line);
    if (x < 1 || x > side || y < 1 || y > side)
      throw IoError("witness member outside the grid: " + line);
    a.set(x, y);
  }
  return a;
}

std::string ap_witness_to_text(const corners::ApFreeSet& b) {
  std::ostringstream os;
  os << "N=" << b.bound << "\n";
  for (int v : b.members) os << v << "\n";
  return os.str();
}

corners::ApFreeSet ap_witness_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header) || header.rfind("N=", 0) != 0)
    throw IoError("witness file must start with N=<bound>");
  corners::ApFreeSet b;
  try {
    b.bound = std::stoi(header.substr(2));
  } catch (const std::exception&) {
    throw IoError("bad witness bound: " + header);
  }
  if (b.bound < 1) throw IoError("witness bound must be positive");
  std::string line;
  int prev = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    int v = 0;
    try {
      v = std::stoi(line);
    } catch (const std::exception&) {
      throw IoError("bad witness line: " + line);
    }
    if (v < 1 || v > b.bound) throw IoError("witness member out of range: " + line);
    if (v <= prev) throw IoError("witness members must be strictly increasing");
    b.members.push_back(v);
    prev = v;
  }
  return b;
}

std::string certificate_to_json(const corners::DensityCertificate& c) {
  json j;
  j["t"] = c.t;
  j["lower_num"] = c.lower.num();
  j["lower_den"] = c.lower.den();
  j["upper_num"] = c.upper.num();
  j["upper_den"] = c.upper.den();
  j["provenance"] = corners::provenance_name(c.provenance);
  return j.dump(2) + "\n";
}

corners::Provenance provenance_from_name(const std::string& name) {
  using P = corners::Provenance;
  for (P p : {P::exact, P::exhaustive, P::branch_and_bound, P::behrend_lift,
              P::vu_bound, P::trivial})
    if (corners::provenance_name(p) == name) return p;
  throw IoError("unknown provenance: " + name);
}

corners::DensityCertificate certificate_from_json(const std::string& text) {
  json j = parse_json(text);
  corners::DensityCertificate c;
  c.t = get_field<long long>(j, "t");
  c.lower = Rational(get_field<long long>(j, "lower_num"),
                     get_field<long long>(j, "lower_den"));
  c.upper = Rational(get_field<long long>(j, "upper_num"),
                     get_field<long long>(j, "upper_den"));
  c.provenance = provenance_from_name(get_field<std::string>(j, "provenance"));
  if (c.t < 1 || c.upper < c.lower) throw IoError("inconsistent certificate");
  return c;
}

std::string report_to_json(const verify::Report& r) {
  json j;
  j["check"] = r.check;
  j["statistic"] = r.statistic;
  j["bound"] = r.bound;
  j["margin"] = r.margin;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["certificate_provenance"] = r.certificate_provenance;
  j["verdict"] = r.pass ? "pass" : "fail";
  return j.dump(2) + "\n";
}

verify::Report report_from_json(const std::string& text) {
  json j = parse_json(text);
  verify::Report r;
  r.check = get_field<std::string>(j, "check");
  r.statistic = get_field<double>(j, "statistic");
  r.bound = get_field<double>(j, "bound");
  r.margin = get_field<double>(j, "margin");
  r.samples = get_field<long long>(j, "samples");
  r.seed = get_field<std::uint64_t>(j, "seed");
  r.certificate_provenance = get_field<std::string>(j, "certificate_provenance");
  std::string verdict = get_field<std::string>(j, "verdict");
  if (verdict != "pass" && verdict != "fail") throw IoError("bad verdict: " + verdict);
  r.pass = verdict == "pass";
  return r;
}

std::string report_csv_header() {
  return "check,statistic,bound,margin,samples,seed,certificate_provenance,verdict";
}

std::string report_csv_row(const verify::Report& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << r.check << "," << r.statistic << "," << r.bound << "," << r.margin << ","
     << r.samples << "," << r.seed << "," << r.certificate_provenance << ","
     << (r.pass ? "pass" : "fail");
  return os.str();
}

std::string space_to_json(const spaces::Space& sp) {
  json comps = json::array();
  for (const auto& c : sp.components()) {
    json jc;
    if (c.kind == spaces::CompKind::circle) {
      jc["kind"] = "circle";
    } else {
      jc["kind"] = "cyclic";
      jc["modulus"] = c.modulus;
    }
    comps.push_back(jc);
  }
  json j;
  j["components"] = comps;
  return j.dump(2) + "\n";
}

spaces::Space space_from_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.contains("components") || !j["components"].is_array() ||
      j["components"].empty())
    throw IoError("space needs a non-empty components list");
  std::vector<spaces::Space> parts;
  for (const auto& jc : j["components"]) {
    std::string kind = get_field<std::string>(jc, "kind");
    if (kind == "circle") {
      parts.push_back(spaces::Space::torus(1));
    } else if (kind == "cyclic") {
      parts.push_back(spaces::Space::cyclic(get_field<long long>(jc, "modulus")));
    } else {
      throw IoError("unknown component kind: " + kind);
    }
  }
  return spaces::Space::product(parts);
}

std::string region_to_json(const spaces::Region& r) {
  json j;
  switch (r.kind()) {
    case spaces::Region::Kind::empty:
      j["kind"] = "empty";
      break;
    case spaces::Region::Kind::whole:
      j["kind"] = "whole";
      break;
    case spaces::Region::Kind::arcs: {
      j["kind"] = "arcs";
      json list = json::array();
      for (const auto& [s, e] : r.segments())
        list.push_back(json::array({s.str(), e.str()}));
      j["arcs"] = list;
      break;
    }
    case spaces::Region::Kind::boxes: {
      j["kind"] = "boxes";
      json list = json::array();
      for (const auto& b : r.box_list()) {
        json box = json::array();
        for (const auto& arc : b) box.push_back(arc_to_json(arc));
        list.push_back(box);
      }
      j["boxes"] = list;
      break;
    }
    case spaces::Region::Kind::points: {
      j["kind"] = "points";
      j["indices"] = r.point_indices();
      break;
    }
  }
  return j.dump(2) + "\n";
}

spaces::Region region_from_json(const std::string& text, const spaces::Space& sp) {
  json j = parse_json(text);
  std::string kind = get_field<std::string>(j, "kind");
  if (kind == "empty") return spaces::Region::empty();
  if (kind == "whole") return spaces::Region::whole();
  if (kind == "arcs") {
    if (!j.contains("arcs") || !j["arcs"].is_array()) throw IoError("missing arcs list");
    std::vector<spaces::Arc> arcs;
    for (const auto& ja : j["arcs"]) arcs.push_back(arc_from_json(ja));
    return spaces::Region::arcs(arcs);
  }
  if (kind == "boxes") {
    if (!j.contains("boxes") || !j["boxes"].is_array())
      throw IoError("missing boxes list");
    std::vector<std::vector<spaces::Arc>> boxes;
    for (const auto& jb : j["boxes"]) {
      if (!jb.is_array()) throw IoError("box must be a list of arcs");
      std::vector<spaces::Arc> box;
      for (const auto& ja : jb) box.push_back(arc_from_json(ja));
      boxes.push_back(box);
    }
    return spaces::Region::boxes(boxes);
  }
  if (kind == "points") {
    std::vector<long long> idx = get_field<std::vector<long long>>(j, "indices");
    std::vector<spaces::Point> pts;
    for (long long i : idx) pts.push_back(sp.point_at(i));
    return spaces::Region::points(sp, pts);
  }
  throw IoError("unknown region kind: " + kind);
}

std::string map_to_json(const dynamics::Map& m) {
  json j;
  switch (m.kind()) {
    case dynamics::Map::Kind::rotation: {
      j["kind"] = "rotation";
      const auto& a = m.angle();
      json ja;
      if (a.exact_rational() && a.den_cap() == 0) {
        ja["exact"] = a.value().str();
      } else {
        ja["cf"] = a.input_quotients();
        ja["den_cap"] = a.den_cap();
      }
      j["angle"] = ja;
      break;
    }
    case dynamics::Map::Kind::shift:
      j["kind"] = "shift";
      j["modulus"] = m.space().components()[0].modulus;
      j["step"] = m.shift_step();
      break;
    case dynamics::Map::Kind::doubling:
      j["kind"] = "doubling";
      break;
    case dynamics::Map::Kind::cat:
      j["kind"] = "cat";
      break;
    case dynamics::Map::Kind::product: {
      j["kind"] = "product";
      json list = json::array();
      for (const auto& f : m.factors())
        list.push_back(json::parse(map_to_json(f)));
      j["factors"] = list;
      break;
    }
  }
  return j.dump(2) + "\n";
}

dynamics::Map map_from_json(const std::string& text) {
  json j = parse_json(text);
  std::string kind = get_field<std::string>(j, "kind");
  if (kind == "rotation") {
    if (!j.contains("angle")) throw IoError("rotation needs an angle");
    const json& ja = j["angle"];
    if (ja.contains("exact")) {
      return dynamics::Map::rotation(dynamics::RotationAngle::exact(
          rat_from_string(ja.at("exact").get<std::string>())));
    }
    std::vector<long long> cf = get_field<std::vector<long long>>(ja, "cf");
    long long cap = get_field<long long>(ja, "den_cap");
    return dynamics::Map::rotation(dynamics::RotationAngle::from_cf(cf, cap));
  }
  if (kind == "shift")
    return dynamics::Map::cyclic_shift(get_field<long long>(j, "modulus"),
                                       get_field<long long>(j, "step"));
  if (kind == "doubling") return dynamics::Map::doubling();
  if (kind == "cat") return dynamics::Map::cat();
  if (kind == "product") {
    if (!j.contains("factors") || !j["factors"].is_array())
      throw IoError("product needs a factors list");
    std::vector<dynamics::Map> factors;
    for (const auto& jf : j["factors"]) factors.push_back(map_from_json(jf.dump()));
    return dynamics::Map::product(factors);
  }
  throw IoError("unknown map kind: " + kind);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << content;
  if (!os) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open: " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace recurlab::io

#include "doctest.h"
#include "recurlab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

using namespace recurlab;
using namespace recurlab::io;

TEST_SUITE("io") {

TEST_CASE("grid witness round trip") {
  auto r = corners::max_corner_free_exhaustive(3);
  std::string text = witness_to_text(r.witness);
  CHECK(text.rfind("N=3\n", 0) == 0);
  auto back = witness_from_text(text);
  CHECK(back == r.witness);
  CHECK(witness_to_text(back) == text);
}

TEST_CASE("grid witness rejects malformed text") {
  CHECK_THROWS_AS(witness_from_text(""), IoError);
  CHECK_THROWS_AS(witness_from_text("M=3\n1 1\n"), IoError);
  CHECK_THROWS_AS(witness_from_text("N=3\n1\n"), IoError);
  CHECK_THROWS_AS(witness_from_text("N=3\n0 1\n"), IoError);   // below range
  CHECK_THROWS_AS(witness_from_text("N=3\n1 4\n"), IoError);   // above range
  CHECK_THROWS_AS(witness_from_text("N=3\n1 a\n"), IoError);
  CHECK_NOTHROW(witness_from_text("N=3\n"));  // empty set is fine
}

TEST_CASE("progression witness round trip") {
  auto b = corners::behrend_set(150);
  std::string text = ap_witness_to_text(b);
  CHECK(text.rfind("N=150\n", 0) == 0);
  auto back = ap_witness_from_text(text);
  CHECK(back.bound == 150);
  CHECK(back.members == b.members);
  CHECK_THROWS_AS(ap_witness_from_text("N=10\n3\n2\n"), IoError);  // not increasing
  CHECK_THROWS_AS(ap_witness_from_text("N=10\n11\n"), IoError);    // out of range
}

TEST_CASE("certificate json round trip keeps exact rationals") {
  auto c = corners::certified_L(4, corners::CertMode::exact_required);
  std::string text = certificate_to_json(c);
  auto back = certificate_from_json(text);
  CHECK(back.t == 4);
  CHECK(back.lower == Rational(11, 16));
  CHECK(back.upper == Rational(11, 16));
  CHECK(back.provenance == c.provenance);
  CHECK(certificate_to_json(back) == text);
  CHECK_THROWS_AS(certificate_from_json("{}"), IoError);
  CHECK_THROWS_AS(certificate_from_json("not json"), IoError);
}

TEST_CASE("provenance names round trip through the parser") {
  using corners::Provenance;
  for (auto p : {Provenance::exact, Provenance::exhaustive, Provenance::branch_and_bound,
                 Provenance::behrend_lift, Provenance::vu_bound, Provenance::trivial})
    CHECK(provenance_from_name(corners::provenance_name(p)) == p);
  CHECK_THROWS_AS(provenance_from_name("mystery"), IoError);
}

TEST_CASE("report json round trip") {
  verify::Report r;
  r.check = "thm-x2";
  r.statistic = 0.125;
  r.bound = 0.25;
  r.margin = 0.001;
  r.samples = 100000;
  r.seed = 20250823;
  r.certificate_provenance = "exact";
  r.pass = true;
  std::string text = report_to_json(r);
  auto back = report_from_json(text);
  CHECK(back.check == r.check);
  CHECK(back.statistic == r.statistic);
  CHECK(back.bound == r.bound);
  CHECK(back.margin == r.margin);
  CHECK(back.samples == r.samples);
  CHECK(back.seed == r.seed);
  CHECK(back.certificate_provenance == r.certificate_provenance);
  CHECK(back.pass == r.pass);
  CHECK(report_to_json(back) == text);
  CHECK(text.find("\"verdict\": \"pass\"") != std::string::npos);
  CHECK_THROWS_AS(report_from_json("{\"check\":\"x\"}"), IoError);
}

TEST_CASE("report csv shape") {
  verify::Report r;
  r.check = "lemma";
  r.statistic = 0.1;
  r.bound = 0.5;
  r.pass = true;
  std::string header = report_csv_header();
  std::string row = report_csv_row(r);
  CHECK(std::count(header.begin(), header.end(), ',') ==
        std::count(row.begin(), row.end(), ','));
  CHECK(row.find("lemma") != std::string::npos);
  CHECK(row.find("pass") != std::string::npos);
}

TEST_CASE("space json round trip") {
  for (const auto& sp :
       {spaces::Space::torus(), spaces::Space::torus(2), spaces::Space::cyclic(12),
        spaces::Space::product({spaces::Space::torus(), spaces::Space::cyclic(5)})}) {
    auto back = space_from_json(space_to_json(sp));
    CHECK(back.same(sp));
    CHECK(space_to_json(back) == space_to_json(sp));
  }
  CHECK_THROWS_AS(space_from_json("{\"components\":[]}"), IoError);
  CHECK_THROWS_AS(space_from_json("{\"components\":[{\"kind\":\"weird\"}]}"), IoError);
}

TEST_CASE("region json round trip on each kind") {
  spaces::Space t = spaces::Space::torus();
  spaces::Region arcs = spaces::Region::arcs(
      {{Rational(3, 4), Rational(1, 8)}, {Rational(1, 4), Rational(1, 2)}});
  auto arcs_back = region_from_json(region_to_json(arcs), t);
  CHECK(region_to_json(arcs_back) == region_to_json(arcs));
  CHECK(arcs_back.measure(t) == arcs.measure(t));

  spaces::Space z10 = spaces::Space::cyclic(10);
  spaces::Region pts = spaces::Region::points(z10, {{Rational(2)}, {Rational(7)}});
  auto pts_back = region_from_json(region_to_json(pts), z10);
  CHECK(pts_back.point_indices() == pts.point_indices());

  spaces::Space t2 = spaces::Space::torus(2);
  spaces::Region boxes = spaces::Region::boxes(
      {{{Rational(0), Rational(1, 2)}, {Rational(1, 4), Rational(3, 4)}}});
  auto boxes_back = region_from_json(region_to_json(boxes), t2);
  CHECK(region_to_json(boxes_back) == region_to_json(boxes));

  CHECK(region_from_json(region_to_json(spaces::Region::whole()), t).kind() ==
        spaces::Region::Kind::whole);
  CHECK(region_from_json(region_to_json(spaces::Region::empty()), t).kind() ==
        spaces::Region::Kind::empty);
  CHECK_THROWS_AS(region_from_json("{\"kind\":\"blob\"}", t), IoError);
}

TEST_CASE("map json round trip preserves truncated angles bit for bit") {
  using dynamics::Map;
  using dynamics::RotationAngle;
  Map exact_rot = Map::rotation(RotationAngle::exact(Rational(2, 7)));
  Map golden = Map::rotation(RotationAngle::golden(1ll << 20));
  Map shift = Map::cyclic_shift(12, 5);
  Map prod = Map::product({golden, shift});
  for (const Map* m : {&exact_rot, &golden, &shift, &prod}) {
    auto back = map_from_json(map_to_json(*m));
    CHECK(map_to_json(back) == map_to_json(*m));
    CHECK(back.kind() == m->kind());
  }
  auto golden_back = map_from_json(map_to_json(golden));
  CHECK(golden_back.angle().value() == golden.angle().value());
  CHECK(golden_back.angle().error_bound() == golden.angle().error_bound());
  auto dbl = map_from_json(map_to_json(Map::doubling()));
  CHECK(dbl.kind() == Map::Kind::doubling);
  auto cat = map_from_json(map_to_json(Map::cat()));
  CHECK(cat.kind() == Map::Kind::cat);
  CHECK_THROWS_AS(map_from_json("{\"kind\":\"teleport\"}"), IoError);
}

TEST_CASE("text files write and read back") {
  std::string path = "/tmp/recurlab_io_test.txt";
  write_text_file(path, "line1\nline2\n");
  CHECK(read_text_file(path) == "line1\nline2\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file("/tmp/recurlab_definitely_missing_493"), IoError);
  CHECK_THROWS_AS(write_text_file("/tmp/no_such_dir_493/x.txt", "y"), IoError);
}

}  // TEST_SUITE

#pragma once

#include <stdexcept>
#include <string>

#include "recurlab/corners.hpp"
#include "recurlab/dynamics.hpp"
#include "recurlab/spaces.hpp"
#include "recurlab/verify.hpp"

namespace recurlab::io {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grid witness text: first line "N=<side>", then one "x y" member per line,
// sorted lexicographically.
std::string witness_to_text(const corners::GridSubset& a);
corners::GridSubset witness_from_text(const std::string& text);

// Progression-free witness text: "N=<bound>" then one member per line.
std::string ap_witness_to_text(const corners::ApFreeSet& b);
corners::ApFreeSet ap_witness_from_text(const std::string& text);

std::string certificate_to_json(const corners::DensityCertificate& c);
corners::DensityCertificate certificate_from_json(const std::string& text);

corners::Provenance provenance_from_name(const std::string& name);

std::string report_to_json(const verify::Report& r);
verify::Report report_from_json(const std::string& text);

// batch form: one row per report
std::string report_csv_header();
std::string report_csv_row(const verify::Report& r);

std::string space_to_json(const spaces::Space& sp);
spaces::Space space_from_json(const std::string& text);

std::string region_to_json(const spaces::Region& r);
spaces::Region region_from_json(const std::string& text, const spaces::Space& sp);

std::string map_to_json(const dynamics::Map& m);
dynamics::Map map_from_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace recurlab::io

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace recurlab::cli {

// One frozen value: a named deterministic operation, a description of the
// oracle that justifies it, and the expected output rendered as text.
struct GoldenEntry {
  std::string name;
  std::string oracle;
  std::string value;
};

// Recomputes every golden operation from scratch (deterministic, no
// timestamps, no floating-point formatting ambiguity).
std::vector<GoldenEntry> golden_compute();

// Compares the store against freshly computed values; prints a diff listing
// per mismatch.  0 = clean, 1 = mismatch, 2 = store missing or unreadable.
int golden_check(const std::string& store_dir, std::ostream& diag);

// Rewrites records.json (values) and meta.json (timestamp block, kept
// separate so record bytes never depend on the clock).  Refuses without
// `confirmed` and returns 2.
int golden_regenerate(const std::string& store_dir, bool confirmed, std::ostream& diag);

}  // namespace recurlab::cli

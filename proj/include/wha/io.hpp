#pragma once

// JSON interchange for weak Hopf structures and bare elements.  The numeric
// payload round-trips bit-exactly (doubles serialize with shortest-round-trip
// precision); loading re-verifies shapes but never runs the axiom suite.

#include <map>
#include <string>

#include "wha/report.hpp"
#include "wha/weak_hopf.hpp"

namespace wha {

inline constexpr int kFormatVersion = 1;

std::string save(const WeakHopf& w,
                 const std::map<std::string, std::string>& metadata = {});
WeakHopf load(const std::string& bytes);

std::string save_element(const AlgElement& x);
AlgElement load_element(const std::string& bytes);

std::string report_to_json(const StructureReport& report, bool pass);

}  // namespace wha

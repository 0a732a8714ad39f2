#pragma once

#include <ostream>
#include <string>

#include "bundlekit/bounds.hpp"
#include "bundlekit/trace.hpp"
#include "json.hpp"

namespace bundlekit::cli {

/// Fixed column order; gap_to_phistar is empty when phi* is unknown.
void write_trace_csv(const RunTrace& trace, std::ostream& out);

nlohmann::json bound_report_json(const BoundReport& report);

/// Null-cycle lengths l1 - l0 between consecutive serious indices.
std::vector<int> cycle_lengths(const RunTrace& trace);

/// phi(z^_k) - phi* (log scale, when phi* is known) and t_j against j.
std::string render_svg(const RunTrace& trace, const std::string& title);

/// Shortest round-trip decimal form, used for every number written out.
std::string format_number(double v);

}  // namespace bundlekit::cli

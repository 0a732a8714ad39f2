#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace bundlekit::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(const RunTrace& trace, std::ostream& out) {
  out << "j,k,kind,t_j,m_j,phi_xj,phi_xtilde,phi_zhat,gap_to_phistar,bundle_size,subproblem_gap,"
         "subproblem_iters,oracle_f_calls,oracle_g_calls\n";
  for (const auto& r : trace.records) {
    out << r.j << ',' << r.k << ',' << (r.kind == StepKind::serious ? "serious" : "null") << ','
        << format_number(r.t) << ',' << format_number(r.m) << ',' << format_number(r.phi_x) << ','
        << format_number(r.phi_x_tilde) << ',' << format_number(r.phi_zhat) << ',';
    if (trace.phi_star) out << format_number(r.phi_zhat - *trace.phi_star);
    out << ',' << r.bundle_size << ',' << format_number(r.subproblem_gap) << ',' << r.subproblem_iterations << ','
        << r.f_calls << ',' << r.g_calls << '\n';
  }
}

namespace {

nlohmann::json optional_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  if (!std::isfinite(*v)) return format_number(*v);
  return *v;
}

}  // namespace

nlohmann::json bound_report_json(const BoundReport& r) {
  nlohmann::json j;
  j["lambda"] = r.lambda;
  j["M_f"] = r.M_f;
  j["M_h"] = optional_number(r.M_h);
  j["mu"] = r.mu;
  j["d0"] = r.d0;
  j["eps_bar"] = r.eps_bar;
  j["bound_serious"] = optional_number(r.serious);
  j["bound_null"] = optional_number(r.null_cycle);
  j["bound_total"] = optional_number(r.total);
  j["bound_cscs"] = optional_number(r.cscs);
  j["lower_bound"] = r.lower ? nlohmann::json(*r.lower) : nlohmann::json(nullptr);
  j["comparator"] = optional_number(r.comparator);
  j["reduction_regime"] = r.reduction_regime;
  return j;
}

std::vector<int> cycle_lengths(const RunTrace& trace) {
  const auto idx = trace.serious_indices();
  std::vector<int> out;
  for (std::size_t i = 1; i < idx.size(); ++i) out.push_back(idx[i] - idx[i - 1]);
  return out;
}

namespace {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

// One log-scale panel; nonpositive values are clipped to the floor.
void panel(std::ostringstream& svg, const Series& s, double top, double height, const std::string& label,
           const char* colour) {
  const double left = 70.0, width = 620.0, floor_value = 1e-16;
  svg << "<text x=\"" << left << "\" y=\"" << top - 8 << "\" font-size=\"13\">" << label << "</text>\n";
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
  if (s.x.empty()) return;
  double lo = kInfinity, hi = -kInfinity;
  for (double v : s.y) {
    const double l = std::log10(std::max(v, floor_value));
    lo = std::min(lo, l);
    hi = std::max(hi, l);
  }
  lo = std::floor(lo);
  hi = std::max(std::ceil(hi), lo + 1.0);
  const double xmax = std::max(s.x.back(), 1.0);
  auto px = [&](double x) { return left + width * x / xmax; };
  auto py = [&](double v) { return top + height * (hi - std::log10(std::max(v, floor_value))) / (hi - lo); };
  for (double e = lo; e <= hi; e += 1.0) {
    const double y = top + height * (hi - e) / (hi - lo);
    svg << "<text x=\"" << left - 6 << "\" y=\"" << y + 4 << "\" font-size=\"10\" text-anchor=\"end\">1e"
        << static_cast<int>(e) << "</text>\n";
  }
  svg << "<text x=\"" << left + width << "\" y=\"" << top + height + 14
      << "\" font-size=\"10\" text-anchor=\"end\">j = " << format_number(xmax) << "</text>\n";
  svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\" points=\"";
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    svg << format_number(std::round(px(s.x[i]) * 100) / 100) << ','
        << format_number(std::round(py(s.y[i]) * 100) / 100) << ' ';
  }
  svg << "\"/>\n";
}

}  // namespace

std::string render_svg(const RunTrace& trace, const std::string& title) {
  Series gap, t;
  for (const auto& r : trace.records) {
    t.x.push_back(r.j);
    t.y.push_back(r.t);
    if (trace.phi_star) {
      gap.x.push_back(r.j);
      gap.y.push_back(r.phi_zhat - *trace.phi_star);
    }
  }
  std::ostringstream svg;
  const bool two = trace.phi_star.has_value();
  const double height = two ? 560.0 : 300.0;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"" << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"360\" y=\"20\" font-size=\"15\" text-anchor=\"middle\">" << title << "</text>\n";
  double top = 50.0;
  if (two) {
    panel(svg, gap, top, 200.0, "phi(z_hat) - phi*", "#1f5fb4");
    top += 260.0;
  }
  panel(svg, t, top, 200.0, "t_j", "#c0392b");
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace bundlekit::cli

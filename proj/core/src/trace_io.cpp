#include "ceqp/diagnostics.hpp"
#include "ceqp/runner.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

namespace ceqp {

namespace {

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double max_or_zero(const std::vector<double>& values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  return m;
}

}  // namespace

void write_trace_csv(const IterateTrace& trace, std::ostream& out, bool emit_timing) {
  out << "n,active_index,x_norm_change,anchor_dist,max_y_residual,max_z_residual,"
         "fejer_slack,containment_ok,wall_ms\n";
  for (const auto& rec : trace.records) {
    out << rec.n << ',';
    if (rec.active_index >= 0) out << rec.active_index;
    out << ',' << fmt(rec.step_norm) << ',' << fmt(rec.anchor_dist) << ','
        << fmt(max_or_zero(rec.y_dist)) << ',' << fmt(max_or_zero(rec.z_dist)) << ',';
    if (!std::isnan(rec.fejer_slack)) out << fmt(rec.fejer_slack);
    out << ',';
    if (!std::isnan(rec.containment_violation))
      out << (rec.containment_violation <= diag::kLemmaTol ? '1' : '0');
    out << ',';
    if (emit_timing) out << fmt(rec.wall_ms);
    out << '\n';
  }
}

void write_trace_json(const IterateTrace& trace, std::ostream& out, bool emit_timing) {
  nlohmann::ordered_json doc;
  doc["stop_reason"] = to_string(trace.stop);
  auto& records = doc["records"] = nlohmann::ordered_json::array();
  for (const auto& rec : trace.records) {
    nlohmann::ordered_json row;
    row["n"] = rec.n;
    if (rec.active_index >= 0)
      row["active_index"] = rec.active_index;
    else
      row["active_index"] = nullptr;
    row["x_norm_change"] = rec.step_norm;
    row["anchor_dist"] = rec.anchor_dist;
    row["max_y_residual"] = max_or_zero(rec.y_dist);
    row["max_z_residual"] = max_or_zero(rec.z_dist);
    if (std::isnan(rec.fejer_slack))
      row["fejer_slack"] = nullptr;
    else
      row["fejer_slack"] = rec.fejer_slack;
    if (std::isnan(rec.containment_violation))
      row["containment_ok"] = nullptr;
    else
      row["containment_ok"] = rec.containment_violation <= diag::kLemmaTol;
    if (emit_timing) row["wall_ms"] = rec.wall_ms;
    records.push_back(std::move(row));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace ceqp

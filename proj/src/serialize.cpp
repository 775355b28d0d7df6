#include "gapsense/serialize.hpp"

#include <charconv>
#include <sstream>

namespace gapsense {

std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void to_json(Json& j, const IirRecord& r) {
  j = Json{{"index", r.index},
           {"side", r.side == Side::Low ? "low" : "high"},
           {"value", r.value},
           {"gap", r.gap},
           {"max_prev", r.max_prev},
           {"er", r.er},
           {"ihr", r.ihr ? Json(*r.ihr) : Json(nullptr)},
           {"iir", r.iir},
           {"accepted", r.accepted}};
}

void from_json(const Json& j, IirRecord& r) {
  j.at("index").get_to(r.index);
  r.side = j.at("side").get<std::string>() == "low" ? Side::Low : Side::High;
  j.at("value").get_to(r.value);
  j.at("gap").get_to(r.gap);
  j.at("max_prev").get_to(r.max_prev);
  j.at("er").get_to(r.er);
  if (j.at("ihr").is_null()) r.ihr.reset();
  else r.ihr = j.at("ihr").get<double>();
  j.at("iir").get_to(r.iir);
  j.at("accepted").get_to(r.accepted);
}

void to_json(Json& j, const Detection& d) {
  j = Json{{"method", d.method},
           {"params", d.params},
           {"outliers", d.outlier_values},
           {"outlier_indices", d.outlier_indices},
           {"normal_interval", {d.normal_low, d.normal_high}},
           {"degenerate", d.degenerate},
           {"border", d.border ? Json(*d.border) : Json(nullptr)},
           {"trace", d.trace}};
}

void from_json(const Json& j, Detection& d) {
  j.at("method").get_to(d.method);
  j.at("params").get_to(d.params);
  j.at("outliers").get_to(d.outlier_values);
  j.at("outlier_indices").get_to(d.outlier_indices);
  const auto& iv = j.at("normal_interval");
  d.normal_low = iv.at(0).get<double>();
  d.normal_high = iv.at(1).get<double>();
  j.at("degenerate").get_to(d.degenerate);
  if (j.at("border").is_null()) d.border.reset();
  else d.border = j.at("border").get<IirRecord>();
  j.at("trace").get_to(d.trace);
}

void to_json(Json& j, const CurvePoint& p) {
  j = Json{{"x", p.x},
           {"method", p.method},
           {"detected_pct", p.detected_pct},
           {"stderr", p.stderr_pct},
           {"recall_pct", p.recall_pct}};
}

void from_json(const Json& j, CurvePoint& p) {
  j.at("x").get_to(p.x);
  j.at("method").get_to(p.method);
  j.at("detected_pct").get_to(p.detected_pct);
  j.at("stderr").get_to(p.stderr_pct);
  j.at("recall_pct").get_to(p.recall_pct);
}

void to_json(Json& j, const ResonanceRun& r) {
  j = Json{{"seed", r.seed}, {"fired", r.fired}, {"silent", r.silent}, {"rounds", r.rounds}};
}

void from_json(const Json& j, ResonanceRun& r) {
  j.at("seed").get_to(r.seed);
  j.at("fired").get_to(r.fired);
  j.at("silent").get_to(r.silent);
  j.at("rounds").get_to(r.rounds);
}

void to_json(Json& j, const ClusterSummary& c) {
  j = Json{{"id", c.id},
           {"members", c.members},
           {"right_count", c.right_count},
           {"right_fraction", c.right_fraction()},
           {"silent_members", c.silent_members}};
}

void from_json(const Json& j, ClusterSummary& c) {
  j.at("id").get_to(c.id);
  j.at("members").get_to(c.members);
  j.at("right_count").get_to(c.right_count);
  j.at("silent_members").get_to(c.silent_members);
}

void to_json(Json& j, const ClusterPartition& p) {
  Json labels = Json::array();
  for (const auto& l : p.labels) labels.push_back(l ? Json(*l) : Json(nullptr));
  j = Json{{"labels", labels}, {"silent_ids", p.silent_ids}, {"clusters", p.clusters}, {"runs", p.runs}};
}

void from_json(const Json& j, ClusterPartition& p) {
  p.labels.clear();
  for (const auto& l : j.at("labels")) {
    if (l.is_null()) p.labels.emplace_back(std::nullopt);
    else p.labels.emplace_back(l.get<std::size_t>());
  }
  j.at("silent_ids").get_to(p.silent_ids);
  j.at("clusters").get_to(p.clusters);
  j.at("runs").get_to(p.runs);
}

std::string detection_csv(const Detection& d) {
  std::ostringstream out;
  out << "method,index,value\n";
  for (std::size_t i = 0; i < d.outlier_values.size(); ++i)
    out << d.method << ',' << d.outlier_indices[i] << ',' << format_number(d.outlier_values[i]) << '\n';
  return out.str();
}

std::string trace_csv(const Detection& d) {
  std::ostringstream out;
  out << "kind,index,side,value,gap,max_prev,er,ihr,iir,accepted\n";
  for (const auto& r : d.trace) {
    const bool is_border = d.border && *d.border == r;
    out << (is_border ? "border" : "step") << ',' << r.index << ','
        << (r.side == Side::Low ? "low" : "high") << ',' << format_number(r.value) << ','
        << format_number(r.gap) << ',' << format_number(r.max_prev) << ',' << format_number(r.er) << ','
        << (r.ihr ? format_number(*r.ihr) : "") << ',' << format_number(r.iir) << ','
        << (r.accepted ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string curve_csv(std::span<const CurvePoint> curve) {
  std::ostringstream out;
  out << "x,method,detected_pct,stderr,recall_pct\n";
  for (const auto& p : curve)
    out << format_number(p.x) << ',' << p.method << ',' << format_number(p.detected_pct) << ','
        << format_number(p.stderr_pct) << ',' << format_number(p.recall_pct) << '\n';
  return out.str();
}

std::string partition_csv(const ClusterPartition& p) {
  std::ostringstream out;
  out << "id,cluster,silent\n";
  for (std::size_t i = 0; i < p.labels.size(); ++i) {
    const bool silent = i < p.runs.size() && p.runs[i].silent;
    out << (i + 1) << ',' << (p.labels[i] ? std::to_string(*p.labels[i]) : "") << ','
        << (silent ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace gapsense

#pragma once

#include <json.hpp>

#include <span>
#include <string>

#include "gapsense/iir.hpp"
#include "gapsense/monte_carlo.hpp"
#include "gapsense/oscillator.hpp"

namespace gapsense {

using Json = nlohmann::json;

// JSON schemas
//
// Detection: {method, params{}, outliers[], outlier_indices[], normal_interval[lo, hi],
//             degenerate, border (IirRecord | null), trace[IirRecord]}
// IirRecord: {index, side: "low"|"high", value, gap, max_prev, er, ihr (number | null),
//             iir, accepted}
// CurvePoint: {x, method, detected_pct, stderr, recall_pct}
// ClusterPartition: {labels[(id | null)], silent_ids[], clusters[{id, members[],
//                    right_count, silent_members[]}], runs[{seed, fired[], silent, rounds}]}

void to_json(Json& j, const IirRecord& r);
void from_json(const Json& j, IirRecord& r);
void to_json(Json& j, const Detection& d);
void from_json(const Json& j, Detection& d);
void to_json(Json& j, const CurvePoint& p);
void from_json(const Json& j, CurvePoint& p);
void to_json(Json& j, const ResonanceRun& r);
void from_json(const Json& j, ResonanceRun& r);
void to_json(Json& j, const ClusterSummary& c);
void from_json(const Json& j, ClusterSummary& c);
void to_json(Json& j, const ClusterPartition& p);
void from_json(const Json& j, ClusterPartition& p);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double x);

/// Header `method,index,value`, one row per flagged value.
std::string detection_csv(const Detection& d);
/// Header `kind,index,side,value,gap,max_prev,er,ihr,iir,accepted`.
std::string trace_csv(const Detection& d);
/// Header `x,method,detected_pct,stderr,recall_pct`.
std::string curve_csv(std::span<const CurvePoint> curve);
/// Header `id,cluster,silent`, one row per point; cluster empty when unlabeled.
std::string partition_csv(const ClusterPartition& p);

}  // namespace gapsense

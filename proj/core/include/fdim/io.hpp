#pragma once

#include "fdim/algodim.hpp"
#include "fdim/estimators.hpp"
#include "fdim/experiments.hpp"
#include "fdim/geometry.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fractal {

// Ordered key-value snapshot embedded in outputs (run configuration, tool
// version); order is preserved so reruns serialize byte-identically.
using Provenance = std::vector<std::pair<std::string, std::string>>;

// All writers go through temp-file + rename so a crashed run never leaves a
// truncated artifact behind.
void write_file_atomic(const std::string& path, const std::string& content);

// ---------------------------------------------------------------------------
// Point clouds. Binary layout: magic "FDIM1", u8 ambient_dim, u8 precision,
// u64 count, then count*n little-endian int64 mantissas, then an optional
// length-prefixed provenance text trailer (readers skip it). The CSV twin has
// a "x1,...,xn" header with decimal values and '#' comment lines for the
// provenance. Both readers re-validate set invariants on load.
// ---------------------------------------------------------------------------
void write_points_binary(const std::string& path, const PointSet& set,
                         const Provenance& provenance = {});
PointSet read_points_binary(const std::string& path);

void write_points_csv(const std::string& path, const PointSet& set,
                      const Provenance& provenance = {});
PointSet read_points_csv(const std::string& path, int precision = kDefaultPrecision);

// ---------------------------------------------------------------------------
// Derived-data serializers (pure string builders; callers pick the path).
// ---------------------------------------------------------------------------
std::string profile_csv(const ScaleProfile& profile, const Provenance& provenance = {});
std::string complexity_csv(const ComplexityProfile& profile, const Provenance& provenance = {});

// JSON record {value, lower_slope, upper_slope, r_min, r_max, residual}.
std::string estimate_json(const DimensionEstimate& estimate);

// Full report JSON with stable field order, and the per-sample sidecar CSV
// (one row per sample and thickening: estimate vs bound).
std::string report_json(const ExperimentReport& report);
std::string report_csv(const ExperimentReport& report);

} // namespace fractal

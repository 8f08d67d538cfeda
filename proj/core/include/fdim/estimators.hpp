#pragma once

#include "fdim/geometry.hpp"

#include <functional>
#include <string>
#include <vector>

namespace fractal {

// ---------------------------------------------------------------------------
// ScaleProfile: per-scale occupied-cell counts, the raw material of every
// dimension estimate. Counts are exact integers; log2 values are derived.
// ---------------------------------------------------------------------------
struct ScaleProfile {
    std::vector<int> scales;          // increasing r
    std::vector<std::uint64_t> counts; // N_r, positive and nondecreasing
    std::string label;

    std::vector<double> log2_counts() const;
};

// ---------------------------------------------------------------------------
// DimensionEstimate: least-squares slope of log2 N_r vs r plus envelope
// slopes. lower/upper are the min/max of two-point difference quotients taken
// `lag` scales apart; lag 1 (the default everywhere) means consecutive
// scales. Larger lags damp the grid-phase oscillation that self-similar sets
// with non-power-of-two ratios show on dyadic grids; campaigns that assert
// envelope agreement pass an explicit lag and record it. For lag > 1 the
// envelope is widened to include the regression value, keeping
// lower <= value <= upper by construction (with lag 1 it already holds).
// ---------------------------------------------------------------------------
struct DimensionEstimate {
    double value = 0.0;
    double lower_slope = 0.0;
    double upper_slope = 0.0;
    int r_min = 0;
    int r_max = 0;
    double residual = 0.0; // regression RMS
    int lag = 1;
    bool degenerate = false; // all counts equal (e.g. singleton input)
};

// Number of distinct dyadic cells of side 2^-r meeting the set. Exact.
std::uint64_t box_count(const PointSet& set, int r);

// Counts at every integer scale in [r_min, r_max].
ScaleProfile scale_profile(const PointSet& set, int r_min, int r_max);

// Regression over a precomputed profile (log-count vector), used both for
// point sets and for product profiles assembled arithmetically.
DimensionEstimate estimate_from_log_counts(const std::vector<int>& scales,
                                           const std::vector<double>& log2_counts, int lag = 1);

// Box-counting dimension over [r_min, r_max]. Degenerate profiles (all counts
// equal) yield value 0 with the flag set rather than an error.
DimensionEstimate box_dimension(const PointSet& set, int r_min, int r_max, int lag = 1);

// Auto-chosen range: the longest scale window in which consecutive two-point
// slopes vary by less than 0.2, searched below the saturation scale. The
// chosen window is returned inside the estimate (r_min/r_max fields).
DimensionEstimate box_dimension_auto(const PointSet& set);

// ---------------------------------------------------------------------------
// Direct cover / packing sum evaluators.
// ---------------------------------------------------------------------------

// Sum of diam(U)^s over the cover; singletons take effective diameter 2^-p so
// every element has positive diameter.
double hausdorff_sum(const std::vector<PointSet>& cover, double s);

// Partition of the set into dyadic cells of side <= delta/sqrt(n) (so each
// element has diameter <= delta), in deterministic cell order.
std::vector<PointSet> greedy_cover(const PointSet& set, double delta);

// Greedy disjoint ball selection, descending radii delta/2, delta/4, ... down
// to the stored resolution; at each level points are visited in canonical
// order and a ball is kept only if strictly disjoint from all kept balls.
struct PackedBall {
    std::size_t center_index = 0;
    double radius = 0.0;
};
std::vector<PackedBall> greedy_packing_balls(const PointSet& set, double delta);

// Sum of diam(B)^s = (2*radius)^s over the greedy packing.
double greedy_packing(const PointSet& set, double delta, double s);

// ---------------------------------------------------------------------------
// Critical exponent: bisection on s in [0, n] for the crossover where the
// evaluator's sum at the smallest delta passes through 1 (tolerance 1e-3 in
// s). If the sum fails to decrease in s (possible when some element diameter
// exceeds 1) the result falls back to the auto-ranged box dimension and says
// so.
// ---------------------------------------------------------------------------
using SumEvaluator = std::function<double(const PointSet&, double delta, double s)>;

double cover_sum_evaluator(const PointSet& set, double delta, double s);
double packing_sum_evaluator(const PointSet& set, double delta, double s);

struct CriticalExponent {
    double value = 0.0;
    bool fallback_used = false;
};
CriticalExponent critical_exponent(const PointSet& set, const SumEvaluator& sums,
                                   const std::vector<double>& delta_sequence);

} // namespace fractal

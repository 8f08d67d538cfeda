#pragma once

#include "fdim/algodim.hpp"
#include "fdim/calibration.hpp"
#include "fdim/estimators.hpp"
#include "fdim/geometry.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fractal {

// ---------------------------------------------------------------------------
// Campaign harness: each theorem-shaped claim becomes a seeded, falsifiable
// batch run whose outcome is a structured report. A sample violates iff its
// estimate exceeds bound + tolerance; empty intersections never violate (the
// claim holds trivially there). pass = violations/samples <= allowed_fraction,
// with every knob snapshotted into provenance so reruns are byte-identical.
// ---------------------------------------------------------------------------

struct NamedEstimate {
    std::string name;
    double value = 0;
    int r_min = 0;
    int r_max = 0;
    double delta = 0; // 0 when not applicable
};

struct SampleRow {
    int index = 0;
    std::string kind; // "translate", "motion", "aligned", "pair", "point", ...
    double delta = 0;
    double estimate = 0;
    double bound = 0;
    bool violation = false;
    std::size_t points = 0; // intersection size where applicable
};

struct ExperimentReport {
    std::string name;
    std::string theorem_tag; // stable claim identifier, one of the tags below
    int samples = 0;
    std::vector<NamedEstimate> estimates;
    double bound = 0;
    int violations = 0;
    double tolerance = 0;
    bool pass = false;
    std::vector<std::pair<std::string, std::string>> provenance; // ordered snapshot
    std::vector<SampleRow> sample_rows;                          // CSV sidecar content
};

inline constexpr const char* kTagIntersection = "T1-intersection";
inline constexpr const char* kTagMotion = "C4.1-motion";
inline constexpr const char* kTagPacking = "T4.3-packing";
inline constexpr const char* kTagProduct = "T5.1-product";
inline constexpr const char* kTagInvariance = "L3.2-invariance";
inline constexpr const char* kTagChain = "T3.4-chain";
inline constexpr const char* kTagProbe = "P2S-probe";

// ---------------------------------------------------------------------------
// Intersection-family campaigns (random translations / rigid motions, box vs
// packing readout). Translations are drawn uniformly from a box of side
// 2*(diam E + diam F) centered on the offset that aligns the two sets'
// bounding-box centers; each sample gets its own PRNG substream. The
// thickening delta is swept over {delta, 2*delta, 4*delta}; the budget is
// judged at the primary delta and all three are reported.
// ---------------------------------------------------------------------------
struct IntersectionParams {
    std::uint64_t seed = 0;
    int count = 100;
    double tolerance = 0.1;
    double allowed_fraction = 0.05;
    double delta = 0.000244140625; // 2^-12
    int r_min = 3;
    int r_max = 8;
    int sample_lag = 1;      // slope lag for per-sample estimates
    int bound_lag = 1;       // slope lag for the product-profile bound
    bool include_aligned = true; // extra z = 0 row when E == F (never budgeted)
    std::vector<double> scale_choices{1.0}; // motion campaign only
};

ExperimentReport intersection_campaign(const PointSet& E, const PointSet& F,
                                       const IntersectionParams& params);

ExperimentReport motion_campaign(const PointSet& E, const PointSet& F,
                                 const IntersectionParams& params);

// Same harness, but samples are judged on the upper envelope slope (the
// packing-side readout), after first checking that lower and upper slopes
// agree within 0.1 on E and F themselves — the self-similarity precondition
// that makes one estimator serve both sides.
ExperimentReport packing_intersection_campaign(const PointSet& E, const PointSet& F,
                                               const IntersectionParams& params);

// ---------------------------------------------------------------------------
// Product campaign: five chain quantities
//   q1 = lower(E) + lower(F)   q2 = lower(ExF)   q3 = lower(E) + upper(F)
//   q4 = upper(ExF)            q5 = upper(E) + upper(F)
// checked as q1 <= q2 + tau, q2 <= q3 + 2*tau, q3 <= q4 + 3*tau,
// q4 <= q5 + 4*tau, plus the exact per-scale count identity
// N_r(ExF) = N_r(E) * N_r(F).
// ---------------------------------------------------------------------------
struct ProductParams {
    int r_min = 4;
    int r_max = 10;
    int lag = 1;
    double tau = 0.05;
    std::size_t cap = 100'000'000;
};

ExperimentReport product_campaign(const PointSet& E, const PointSet& F,
                                  const ProductParams& params);

// ---------------------------------------------------------------------------
// Invariance campaign: estimates must not move under rigid motions, and must
// not move at all under exact power-of-two rescaling (cells map bijectively,
// so counts shift index and nothing else). Also checks the encoding-side
// analogue: per-point density estimates shift <= 0.1 under power-of-two
// scaling.
// ---------------------------------------------------------------------------
struct InvarianceParams {
    int r_min = 3;
    int r_max = 8;
    double tolerance = 0.05;      // |value(sigma E) - value(E)| budget for rotations
    double density_tolerance = 0.1;
    std::vector<double> rotation_degrees{17, 30, 45, 77};
    std::vector<int> pow2_exponents{1, 2};
};

ExperimentReport invariance_campaign(const std::vector<PointSet>& sets,
                                     const InvarianceParams& params);

// ---------------------------------------------------------------------------
// Chain-rule campaign over seeded pseudorandom point pairs; aggregates the
// per-pair residual PASS at calibrated slack. allowed_fraction defaults to
// 0.1 (>= 90% of pairs must pass).
// ---------------------------------------------------------------------------
struct ChainParams {
    std::uint64_t seed = 0;
    int count = 50;
    int ambient_dim = 1;
    int r = 512;
    double allowed_fraction = 0.1;
};

ExperimentReport chain_campaign(const ChainParams& params, const Calibration& calibration);

// ---------------------------------------------------------------------------
// Pointwise probe: max per-point density estimate over points sampled from
// the set, reported against the set's box dimension as a gap. Report-only —
// no pass/fail semantics beyond "it ran" (the bridge between pointwise and
// classical dimensions involves a minimization this artifact cannot search).
// ---------------------------------------------------------------------------
struct ProbeParams {
    std::uint64_t seed = 0;
    int count = 50;
    std::vector<int> r_list{16, 20, 24, 26};
};

ExperimentReport p2s_probe(const PointSet& set, const ProbeParams& params);

} // namespace fractal

#include "fdim/experiments.hpp"

#include "fdim/error.hpp"
#include "fdim/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace fractal {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(v));
    return buf;
}

std::string fmt(int v) { return std::to_string(v); }

void prov(ExperimentReport& report, std::string key, std::string value) {
    report.provenance.emplace_back(std::move(key), std::move(value));
}

std::array<double, kMaxAmbientDim> bbox_center(const PointSet& set) {
    std::array<double, kMaxAmbientDim> lo{}, hi{};
    for (int axis = 0; axis < set.ambient_dim(); ++axis) {
        lo[axis] = hi[axis] = set.point(0).value(axis);
    }
    for (std::size_t i = 1; i < set.size(); ++i) {
        Point pt = set.point(i);
        for (int axis = 0; axis < set.ambient_dim(); ++axis) {
            lo[axis] = std::min(lo[axis], pt.value(axis));
            hi[axis] = std::max(hi[axis], pt.value(axis));
        }
    }
    std::array<double, kMaxAmbientDim> center{};
    for (int axis = 0; axis < set.ambient_dim(); ++axis)
        center[axis] = 0.5 * (lo[axis] + hi[axis]);
    return center;
}

bool within_budget(int violations, int samples, double allowed_fraction) {
    return static_cast<double>(violations) <=
           allowed_fraction * static_cast<double>(samples) + 1e-12;
}

// Per-sample readout: regression value for the box side, upper envelope slope
// for the packing side. Fewer than two points cannot support a slope and
// count as dimension zero.
double sample_estimate(const PointSet& intersection, const IntersectionParams& P,
                       bool packing_readout) {
    if (intersection.size() < 2) return 0.0;
    DimensionEstimate est =
        box_dimension(intersection, P.r_min, P.r_max, P.sample_lag);
    return packing_readout ? est.upper_slope : est.value;
}

ExperimentReport run_intersection_family(const PointSet& E, const PointSet& F,
                                         const IntersectionParams& P, bool rigid,
                                         bool packing_readout) {
    if (E.ambient_dim() != F.ambient_dim()) throw Error("ambient dimension mismatch");
    if (E.precision() != F.precision()) throw Error("precision mismatch");
    if (P.count < 30) throw Error("insufficient samples");
    if (E.empty() || F.empty()) throw Error("diameter of empty set");

    const int n = E.ambient_dim();

    ExperimentReport report;
    report.theorem_tag = packing_readout ? kTagPacking : (rigid ? kTagMotion : kTagIntersection);
    report.name = std::string(packing_readout ? "packing-intersection"
                                              : (rigid ? "motion" : "intersection")) +
                  ":" + E.label() + ":" + F.label();
    report.samples = P.count;
    report.tolerance = P.tolerance;

    // Bound from the product profile: counts multiply on the product grid, so
    // the log-profiles add and the product's estimate never needs the (often
    // enormous) materialized product set.
    ScaleProfile profE = scale_profile(E, P.r_min, P.r_max);
    ScaleProfile profF = scale_profile(F, P.r_min, P.r_max);
    std::vector<double> sum_logs = profE.log2_counts();
    {
        std::vector<double> logF = profF.log2_counts();
        for (std::size_t i = 0; i < sum_logs.size(); ++i) sum_logs[i] += logF[i];
    }
    DimensionEstimate est_product =
        estimate_from_log_counts(profE.scales, sum_logs, P.bound_lag);
    report.bound = std::max(0.0, est_product.value - n);
    report.estimates.push_back(
        {"bound_product", est_product.value, P.r_min, P.r_max, 0.0});

    DimensionEstimate estE = box_dimension(E, P.r_min, P.r_max, P.sample_lag);
    DimensionEstimate estF = box_dimension(F, P.r_min, P.r_max, P.sample_lag);
    report.estimates.push_back({"value_E", estE.value, P.r_min, P.r_max, 0.0});
    report.estimates.push_back({"value_F", estF.value, P.r_min, P.r_max, 0.0});

    bool precheck_ok = true;
    if (packing_readout) {
        double spread_E = estE.upper_slope - estE.lower_slope;
        double spread_F = estF.upper_slope - estF.lower_slope;
        report.estimates.push_back({"slope_spread_E", spread_E, P.r_min, P.r_max, 0.0});
        report.estimates.push_back({"slope_spread_F", spread_F, P.r_min, P.r_max, 0.0});
        precheck_ok = spread_E < 0.1 && spread_F < 0.1;
    }

    const double diam_E = diameter(E);
    const double diam_F = diameter(F);
    const double side = 2.0 * (diam_E + diam_F);
    const std::array<double, kMaxAmbientDim> cE = bbox_center(E);
    const std::array<double, kMaxAmbientDim> cF = bbox_center(F);
    std::array<double, kMaxAmbientDim> center{};
    for (int axis = 0; axis < n; ++axis) center[axis] = cE[axis] - cF[axis];

    const std::array<double, 3> deltas{P.delta, 2 * P.delta, 4 * P.delta};

    // Exceptional aligned sample (never part of the violation budget): with
    // E == F the zero offset realizes the measure-zero configuration where
    // the intersection is all of E.
    if (P.include_aligned && E == F) {
        const PointSet aligned = proximal_intersection(E, F, deltas[0]);
        double est = sample_estimate(aligned, P, packing_readout);
        report.estimates.push_back({"aligned_estimate", est, P.r_min, P.r_max, deltas[0]});
        report.sample_rows.push_back(
            {-1, "aligned", deltas[0], est, report.bound, est > report.bound + P.tolerance,
             aligned.size()});
    }

    std::array<int, 3> violations_by_delta{0, 0, 0};
    for (int k = 0; k < P.count; ++k) {
        Prng prng(Prng::substream_seed(P.seed, static_cast<std::uint64_t>(k)));

        PointSet moved = F;
        std::string kind = "translate";
        if (rigid) {
            kind = "motion";
            RigidMotion motion = RigidMotion::identity(n);
            if (n == 2) {
                double degrees = prng.next_in(0.0, 360.0);
                motion = RigidMotion::planar_rotation(degrees * std::numbers::pi / 180.0);
            }
            if (P.scale_choices.size() > 1)
                motion.scale = P.scale_choices[prng.next_u64() % P.scale_choices.size()];
            else if (!P.scale_choices.empty())
                motion.scale = P.scale_choices.front();
            moved = apply_motion(F, motion);
        }

        std::vector<double> z(static_cast<std::size_t>(n));
        for (int axis = 0; axis < n; ++axis)
            z[static_cast<std::size_t>(axis)] =
                prng.next_in(center[axis] - side / 2, center[axis] + side / 2);
        moved = translate(moved, z);

        for (std::size_t d = 0; d < deltas.size(); ++d) {
            PointSet inter = proximal_intersection(E, moved, deltas[d]);
            double est = sample_estimate(inter, P, packing_readout);
            bool violation = !inter.empty() && est > report.bound + P.tolerance;
            if (violation) ++violations_by_delta[d];
            report.sample_rows.push_back(
                {k, kind, deltas[d], est, report.bound, violation, inter.size()});
        }
    }

    report.violations = violations_by_delta[0];
    report.pass =
        within_budget(report.violations, report.samples, P.allowed_fraction) && precheck_ok;

    prov(report, "seed", fmt(P.seed));
    prov(report, "count", fmt(P.count));
    prov(report, "tolerance", fmt(P.tolerance));
    prov(report, "allowed_fraction", fmt(P.allowed_fraction));
    prov(report, "delta", fmt(deltas[0]));
    prov(report, "delta_x2", fmt(deltas[1]));
    prov(report, "delta_x4", fmt(deltas[2]));
    prov(report, "violations_delta_x2", fmt(violations_by_delta[1]));
    prov(report, "violations_delta_x4", fmt(violations_by_delta[2]));
    prov(report, "r_min", fmt(P.r_min));
    prov(report, "r_max", fmt(P.r_max));
    prov(report, "sample_lag", fmt(P.sample_lag));
    prov(report, "bound_lag", fmt(P.bound_lag));
    prov(report, "box_side", fmt(side));
    for (int axis = 0; axis < n; ++axis)
        prov(report, "box_center_" + std::to_string(axis), fmt(center[axis]));
    prov(report, "label_E", E.label());
    prov(report, "label_F", F.label());
    prov(report, "readout", packing_readout ? "packing-upper-slope" : "box-regression");
    prov(report, "motion_family", rigid ? "rigid" : "translation");
    if (rigid) {
        std::string scales;
        for (double s : P.scale_choices) scales += (scales.empty() ? "" : ",") + fmt(s);
        prov(report, "scale_choices", scales);
    }
    prov(report, "version", kVersion);
    return report;
}

} // namespace

ExperimentReport intersection_campaign(const PointSet& E, const PointSet& F,
                                       const IntersectionParams& params) {
    return run_intersection_family(E, F, params, /*rigid=*/false, /*packing=*/false);
}

ExperimentReport motion_campaign(const PointSet& E, const PointSet& F,
                                 const IntersectionParams& params) {
    return run_intersection_family(E, F, params, /*rigid=*/true, /*packing=*/false);
}

ExperimentReport packing_intersection_campaign(const PointSet& E, const PointSet& F,
                                               const IntersectionParams& params) {
    return run_intersection_family(E, F, params, /*rigid=*/false, /*packing=*/true);
}

ExperimentReport product_campaign(const PointSet& E, const PointSet& F,
                                  const ProductParams& params) {
    PointSet product = cartesian_product(E, F, params.cap);

    ExperimentReport report;
    report.theorem_tag = kTagProduct;
    report.name = "product:" + E.label() + ":" + F.label();
    report.tolerance = params.tau;

    DimensionEstimate estE = box_dimension(E, params.r_min, params.r_max, params.lag);
    DimensionEstimate estF = box_dimension(F, params.r_min, params.r_max, params.lag);
    DimensionEstimate estP = box_dimension(product, params.r_min, params.r_max, params.lag);

    const double q1 = estE.lower_slope + estF.lower_slope;
    const double q2 = estP.lower_slope;
    const double q3 = estE.lower_slope + estF.upper_slope;
    const double q4 = estP.upper_slope;
    const double q5 = estE.upper_slope + estF.upper_slope;

    report.estimates.push_back({"lower_E", estE.lower_slope, params.r_min, params.r_max, 0.0});
    report.estimates.push_back({"upper_E", estE.upper_slope, params.r_min, params.r_max, 0.0});
    report.estimates.push_back({"lower_F", estF.lower_slope, params.r_min, params.r_max, 0.0});
    report.estimates.push_back({"upper_F", estF.upper_slope, params.r_min, params.r_max, 0.0});
    report.estimates.push_back({"lower_product", q2, params.r_min, params.r_max, 0.0});
    report.estimates.push_back({"upper_product", q4, params.r_min, params.r_max, 0.0});
    report.estimates.push_back({"chain_q1", q1, params.r_min, params.r_max, 0.0});
    report.estimates.push_back({"chain_q2", q2, params.r_min, params.r_max, 0.0});
    report.estimates.push_back({"chain_q3", q3, params.r_min, params.r_max, 0.0});
    report.estimates.push_back({"chain_q4", q4, params.r_min, params.r_max, 0.0});
    report.estimates.push_back({"chain_q5", q5, params.r_min, params.r_max, 0.0});

    const double tau = params.tau;
    const std::array<std::array<double, 2>, 4> rungs{{
        {q1, q2 + tau},
        {q2, q3 + 2 * tau},
        {q3, q4 + 3 * tau},
        {q4, q5 + 4 * tau},
    }};
    int violations = 0;
    int row_index = 0;
    for (const auto& rung : rungs) {
        bool violation = rung[0] > rung[1];
        if (violation) ++violations;
        report.sample_rows.push_back(
            {row_index++, "rung", 0.0, rung[0], rung[1], violation, product.size()});
    }

    // Exact per-scale identity: the product grid is the grid product.
    for (int r = 0; r <= params.r_max; ++r) {
        std::uint64_t direct = box_count(product, r);
        std::uint64_t split = box_count(E, r) * box_count(F, r);
        bool violation = direct != split;
        if (violation) ++violations;
        report.sample_rows.push_back({row_index++, "count_identity", std::ldexp(1.0, -r),
                                      static_cast<double>(direct), static_cast<double>(split),
                                      violation, product.size()});
    }

    report.samples = row_index;
    report.violations = violations;
    report.bound = q5; // top of the chain
    report.pass = violations == 0;

    prov(report, "tau", fmt(params.tau));
    prov(report, "r_min", fmt(params.r_min));
    prov(report, "r_max", fmt(params.r_max));
    prov(report, "lag", fmt(params.lag));
    prov(report, "cap", fmt(static_cast<std::uint64_t>(params.cap)));
    prov(report, "allowed_fraction", fmt(0.0));
    prov(report, "label_E", E.label());
    prov(report, "label_F", F.label());
    prov(report, "product_points", fmt(static_cast<std::uint64_t>(product.size())));
    prov(report, "version", kVersion);
    return report;
}

ExperimentReport invariance_campaign(const std::vector<PointSet>& sets,
                                     const InvarianceParams& params) {
    ExperimentReport report;
    report.theorem_tag = kTagInvariance;
    report.name = "invariance";
    report.tolerance = params.tolerance;
    report.bound = params.tolerance;

    int row_index = 0;
    int violations = 0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const PointSet& set = sets[s];
        DimensionEstimate base = box_dimension(set, params.r_min, params.r_max);
        report.estimates.push_back(
            {"value:" + set.label(), base.value, params.r_min, params.r_max, 0.0});

        if (set.ambient_dim() == 2) {
            for (double degrees : params.rotation_degrees) {
                RigidMotion motion =
                    RigidMotion::planar_rotation(degrees * std::numbers::pi / 180.0);
                PointSet rotated = apply_motion(set, motion);
                DimensionEstimate est =
                    box_dimension(rotated, params.r_min, params.r_max);
                double shift = std::abs(est.value - base.value);
                bool violation = shift > params.tolerance;
                if (violation) ++violations;
                report.sample_rows.push_back({row_index++, "rotation", degrees, shift,
                                              params.tolerance, violation, rotated.size()});
            }
        }

        for (int k : params.pow2_exponents) {
            // Cells of the 2^k-dilated set at scale r are exactly the cells of
            // the original at scale r + k, so counts must agree bit-for-bit
            // over the overlapping window and the fitted slope cannot move.
            PointSet scaled = scale_pow2(set, k);
            int mismatches = 0;
            for (int r = params.r_min; r + k <= params.r_max; ++r)
                if (box_count(scaled, r) != box_count(set, r + k)) ++mismatches;
            bool violation = mismatches > 0;
            if (violation) ++violations;
            report.sample_rows.push_back({row_index++, "pow2_counts", std::ldexp(1.0, k),
                                          static_cast<double>(mismatches), 0.0, violation,
                                          scaled.size()});

            // Encoding-side analogue on sample points: scaling by 2^-k
            // prepends k zero bits to every axis expansion, so the density
            // estimate may shift only by the header's share of the precision.
            const std::vector<int> ladder{32, 64, 96, 128};
            const std::size_t stride = std::max<std::size_t>(1, set.size() / 3);
            for (std::size_t i = 0; i < set.size(); i += stride) {
                Point pt = set.point(i);
                const std::int64_t unit = std::int64_t{1} << pt.precision;
                std::vector<std::int64_t> fracs(static_cast<std::size_t>(pt.n));
                for (int axis = 0; axis < pt.n; ++axis)
                    fracs[static_cast<std::size_t>(axis)] =
                        ((pt.m[axis] % unit) + unit) % unit;
                PointSource plain =
                    PointSource::from_point(Point::from_mantissas(fracs, pt.precision));
                PointSource shifted =
                    PointSource::from_point(Point::from_mantissas(fracs, pt.precision + k));

                DensityEstimate d0 = dim_estimate(plain, ladder);
                DensityEstimate dk = dim_estimate(shifted, ladder);
                double shift_lo = std::abs(d0.lower - dk.lower);
                double shift_hi = std::abs(d0.upper - dk.upper);
                double shift = std::max(shift_lo, shift_hi);
                bool density_violation = shift > params.density_tolerance;
                if (density_violation) ++violations;
                report.sample_rows.push_back({row_index++, "pow2_density",
                                              std::ldexp(1.0, k), shift,
                                              params.density_tolerance, density_violation, 1});
            }
        }
    }

    report.samples = row_index;
    report.violations = violations;
    report.pass = violations == 0;

    prov(report, "r_min", fmt(params.r_min));
    prov(report, "r_max", fmt(params.r_max));
    prov(report, "tolerance", fmt(params.tolerance));
    prov(report, "density_tolerance", fmt(params.density_tolerance));
    prov(report, "allowed_fraction", fmt(0.0));
    {
        std::string degrees;
        for (double d : params.rotation_degrees)
            degrees += (degrees.empty() ? "" : ",") + fmt(d);
        prov(report, "rotation_degrees", degrees);
        std::string exponents;
        for (int k : params.pow2_exponents)
            exponents += (exponents.empty() ? "" : ",") + fmt(k);
        prov(report, "pow2_exponents", exponents);
    }
    for (std::size_t s = 0; s < sets.size(); ++s)
        prov(report, "set_" + std::to_string(s), sets[s].label());
    prov(report, "version", kVersion);
    return report;
}

ExperimentReport chain_campaign(const ChainParams& params, const Calibration& calibration) {
    if (params.count < 20) throw Error("insufficient samples");

    ExperimentReport report;
    report.theorem_tag = kTagChain;
    report.name = "chain";
    report.samples = params.count;

    double worst = 0.0;
    double slack = 0.0;
    int violations = 0;
    for (int k = 0; k < params.count; ++k) {
        PointSource x = PointSource::pseudorandom(
            params.ambient_dim, Prng::substream_seed(params.seed, 2 * static_cast<std::uint64_t>(k)));
        PointSource y = PointSource::pseudorandom(
            params.ambient_dim,
            Prng::substream_seed(params.seed, 2 * static_cast<std::uint64_t>(k) + 1));
        ChainResiduals res = chain_rule_residuals(x, y, params.r, calibration);
        double pair_worst = res.residuals[0];
        for (double v : res.residuals) pair_worst = std::min(pair_worst, v);
        if (k == 0 || pair_worst < worst) worst = pair_worst;
        slack = res.slack;
        bool violation = !res.pass;
        if (violation) ++violations;
        report.sample_rows.push_back({k, "pair", 0.0, pair_worst, -res.slack, violation,
                                      static_cast<std::size_t>(params.r)});
    }

    report.bound = -slack;
    report.tolerance = slack;
    report.violations = violations;
    report.pass = within_budget(violations, params.count, params.allowed_fraction);
    report.estimates.push_back({"worst_residual", worst, params.r, params.r, 0.0});
    report.estimates.push_back({"slack", slack, params.r, params.r, 0.0});

    prov(report, "seed", fmt(params.seed));
    prov(report, "count", fmt(params.count));
    prov(report, "ambient_dim", fmt(params.ambient_dim));
    prov(report, "r", fmt(params.r));
    prov(report, "allowed_fraction", fmt(params.allowed_fraction));
    prov(report, "codec_version", calibration.codec_version);
    prov(report, "c0", fmt(calibration.c0));
    prov(report, "c1", fmt(calibration.c1));
    prov(report, "version", kVersion);
    return report;
}

ExperimentReport p2s_probe(const PointSet& set, const ProbeParams& params) {
    if (params.count < 50) throw Error("insufficient samples");
    if (set.empty()) throw Error("box count of empty set");

    ExperimentReport report;
    report.theorem_tag = kTagProbe;
    report.name = "p2s-probe:" + set.label();
    report.samples = params.count;
    report.tolerance = 0.0;

    DimensionEstimate box = box_dimension_auto(set);
    report.bound = box.value;

    Prng prng(Prng::substream_seed(params.seed, 0));
    double max_density = 0.0;
    for (int k = 0; k < params.count; ++k) {
        std::size_t idx = static_cast<std::size_t>(prng.next_u64() % set.size());
        Point pt = set.point(idx);
        const std::int64_t unit = std::int64_t{1} << pt.precision;
        std::vector<std::int64_t> fracs(static_cast<std::size_t>(pt.n));
        for (int axis = 0; axis < pt.n; ++axis)
            fracs[static_cast<std::size_t>(axis)] = ((pt.m[axis] % unit) + unit) % unit;
        PointSource src = PointSource::from_point(Point::from_mantissas(fracs, pt.precision));
        DensityEstimate density = dim_estimate(src, params.r_list);
        if (k == 0 || density.upper > max_density) max_density = density.upper;
        report.sample_rows.push_back({k, "point", 0.0, density.upper, box.value, false, 1});
    }

    report.violations = 0;
    report.pass = true; // report-only: the gap is data, not a verdict
    report.estimates.push_back({"box_dimension", box.value, box.r_min, box.r_max, 0.0});
    report.estimates.push_back({"max_point_density", max_density,
                                params.r_list.front(), params.r_list.back(), 0.0});
    report.estimates.push_back({"gap", box.value - max_density, params.r_list.front(),
                                params.r_list.back(), 0.0});

    prov(report, "seed", fmt(params.seed));
    prov(report, "count", fmt(params.count));
    {
        std::string rl;
        for (int r : params.r_list) rl += (rl.empty() ? "" : ",") + fmt(r);
        prov(report, "r_list", rl);
    }
    prov(report, "allowed_fraction", fmt(1.0));
    prov(report, "label", set.label());
    prov(report, "density_source", "coordinate fractional parts");
    prov(report, "version", kVersion);
    return report;
}

} // namespace fractal

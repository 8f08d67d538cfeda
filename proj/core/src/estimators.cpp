#include "fdim/estimators.hpp"

#include "fdim/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <unordered_set>

namespace fractal {

namespace {

struct CellArrayHash {
    std::size_t operator()(const std::array<std::int64_t, kMaxAmbientDim>& cell) const {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL;
        for (std::int64_t c : cell) {
            std::uint64_t z = h ^ static_cast<std::uint64_t>(c);
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            h = z ^ (z >> 31);
        }
        return static_cast<std::size_t>(h);
    }
};

double mantissa_distance(const PointSet& set, std::size_t i, std::size_t j) {
    unsigned __int128 acc = 0;
    for (int axis = 0; axis < set.ambient_dim(); ++axis) {
        std::int64_t d = set.mantissa(i, axis) - set.mantissa(j, axis);
        unsigned __int128 mag =
            d < 0 ? static_cast<unsigned __int128>(-(d + 1)) + 1 : static_cast<unsigned __int128>(d);
        acc += mag * mag;
    }
    long double dist = sqrtl(static_cast<long double>(acc));
    return static_cast<double>(dist * exp2l(static_cast<long double>(-set.precision())));
}

} // namespace

std::vector<double> ScaleProfile::log2_counts() const {
    std::vector<double> out;
    out.reserve(counts.size());
    for (std::uint64_t c : counts) out.push_back(std::log2(static_cast<double>(c)));
    return out;
}

std::uint64_t box_count(const PointSet& set, int r) {
    if (set.empty()) throw Error("box count of empty set");
    if (r < 0 || r > set.precision()) throw Error("scale beyond stored precision");
    std::unordered_set<std::array<std::int64_t, kMaxAmbientDim>, CellArrayHash> cells;
    cells.reserve(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) cells.insert(dyadic_cell(set.point(i), r));
    return cells.size();
}

ScaleProfile scale_profile(const PointSet& set, int r_min, int r_max) {
    if (r_min > r_max) throw Error("scale range is empty");
    ScaleProfile profile;
    profile.label = set.label();
    for (int r = r_min; r <= r_max; ++r) {
        profile.scales.push_back(r);
        profile.counts.push_back(box_count(set, r));
    }
    return profile;
}

DimensionEstimate estimate_from_log_counts(const std::vector<int>& scales,
                                           const std::vector<double>& log2_counts, int lag) {
    if (scales.size() != log2_counts.size()) throw Error("scale/count length mismatch");
    if (scales.size() < 2) throw Error("fewer than 2 scales");
    if (lag < 1 || static_cast<std::size_t>(lag) >= scales.size())
        throw Error("slope lag too large for scale range");

    DimensionEstimate est;
    est.r_min = scales.front();
    est.r_max = scales.back();
    est.lag = lag;

    const std::size_t k = scales.size();
    bool all_equal = true;
    for (std::size_t i = 1; i < k; ++i)
        if (log2_counts[i] != log2_counts[0]) all_equal = false;
    if (all_equal) {
        est.degenerate = true;
        return est; // value/slopes/residual all 0
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        double x = scales[i], y = log2_counts[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double nk = static_cast<double>(k);
    const double denom = nk * sxx - sx * sx;
    const double slope = (nk * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / nk;
    est.value = slope;

    double ss = 0;
    for (std::size_t i = 0; i < k; ++i) {
        double e = log2_counts[i] - (intercept + slope * scales[i]);
        ss += e * e;
    }
    est.residual = std::sqrt(ss / nk);

    double lo = 0, hi = 0;
    for (std::size_t i = 0; i + lag < k; ++i) {
        double q = (log2_counts[i + lag] - log2_counts[i]) /
                   static_cast<double>(scales[i + lag] - scales[i]);
        if (i == 0 || q < lo) lo = q;
        if (i == 0 || q > hi) hi = q;
    }
    est.lower_slope = lo;
    est.upper_slope = hi;
    if (lag > 1) {
        // Coarser quotient envelopes need not straddle the regression value;
        // widen so the estimate invariant (lower <= value <= upper) holds.
        est.lower_slope = std::min(est.lower_slope, est.value);
        est.upper_slope = std::max(est.upper_slope, est.value);
    }
    return est;
}

DimensionEstimate box_dimension(const PointSet& set, int r_min, int r_max, int lag) {
    if (r_min < 0 || r_max > set.precision()) throw Error("scale beyond stored precision");
    if (r_min >= r_max) throw Error("scale range must contain at least two scales");
    ScaleProfile profile = scale_profile(set, r_min, r_max);
    return estimate_from_log_counts(profile.scales, profile.log2_counts(), lag);
}

DimensionEstimate box_dimension_auto(const PointSet& set) {
    if (set.empty()) throw Error("box count of empty set");
    const int p = set.precision();

    // Profile up to the saturation scale (every point in its own cell) —
    // beyond it slopes are identically zero and would masquerade as the most
    // stable window.
    std::vector<int> scales;
    std::vector<std::uint64_t> counts;
    for (int r = 0; r <= p; ++r) {
        scales.push_back(r);
        counts.push_back(box_count(set, r));
        if (counts.back() == set.size()) break;
    }
    if (scales.size() < 2) {
        DimensionEstimate est;
        est.degenerate = true;
        est.r_min = est.r_max = scales.front();
        return est;
    }

    std::vector<double> y;
    y.reserve(counts.size());
    for (std::uint64_t c : counts) y.push_back(std::log2(static_cast<double>(c)));

    std::vector<double> slopes;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) slopes.push_back(y[i + 1] - y[i]);

    // Longest contiguous slope window with spread < 0.2 (ties to the earliest
    // start); fall back to the full range when no window has two slopes.
    std::size_t best_a = 0, best_b = slopes.size();
    if (slopes.size() >= 2) {
        best_b = best_a; // empty until a window qualifies
        for (std::size_t a = 0; a < slopes.size(); ++a) {
            double lo = slopes[a], hi = slopes[a];
            for (std::size_t b = a + 1; b < slopes.size(); ++b) {
                lo = std::min(lo, slopes[b]);
                hi = std::max(hi, slopes[b]);
                if (hi - lo >= 0.2) break;
                if (b + 1 - a > best_b - best_a) {
                    best_a = a;
                    best_b = b + 1;
                }
            }
        }
        if (best_b - best_a < 2) {
            best_a = 0;
            best_b = slopes.size();
        }
    }

    const int r_lo = scales[best_a];
    const int r_hi = scales[best_b]; // window of slopes [a,b) spans scales [a, b]
    std::vector<int> ws(scales.begin() + best_a, scales.begin() + best_b + 1);
    std::vector<double> wy(y.begin() + best_a, y.begin() + best_b + 1);
    DimensionEstimate est = estimate_from_log_counts(ws, wy, 1);
    est.r_min = r_lo;
    est.r_max = r_hi;
    return est;
}

double hausdorff_sum(const std::vector<PointSet>& cover, double s) {
    if (s < 0) throw Error("negative exponent");
    double sum = 0;
    for (const PointSet& element : cover) {
        if (element.empty()) throw Error("empty cover element");
        double d = element.size() == 1 ? std::ldexp(1.0, -element.precision())
                                       : diameter(element);
        sum += std::pow(d, s);
    }
    return sum;
}

std::vector<PointSet> greedy_cover(const PointSet& set, double delta) {
    if (delta <= 0) throw Error("cover scale must be positive");
    std::vector<PointSet> cover;
    if (set.empty()) return cover;

    const int n = set.ambient_dim();
    const int p = set.precision();
    const double target = delta / std::sqrt(static_cast<double>(n));
    int r = std::max(0, static_cast<int>(std::ceil(std::log2(1.0 / target))));
    while (r < p && std::ldexp(1.0, -r) > target) ++r; // guard the rounding edge
    r = std::min(r, p);

    std::map<std::array<std::int64_t, kMaxAmbientDim>, std::vector<Point>> cells;
    for (std::size_t i = 0; i < set.size(); ++i) {
        Point pt = set.point(i);
        cells[dyadic_cell(pt, r)].push_back(pt);
    }
    cover.reserve(cells.size());
    for (auto& [cell, members] : cells) cover.push_back(PointSet::from_points(members));
    return cover;
}

std::vector<PackedBall> greedy_packing_balls(const PointSet& set, double delta) {
    if (delta <= 0) throw Error("packing scale must be positive");
    std::vector<PackedBall> balls;
    if (set.empty()) return balls;

    const double floor_radius = std::ldexp(1.0, -set.precision());
    for (double rho = delta / 2; rho >= floor_radius; rho /= 2) {
        for (std::size_t i = 0; i < set.size(); ++i) {
            bool disjoint = true;
            for (const PackedBall& b : balls) {
                if (mantissa_distance(set, i, b.center_index) <= rho + b.radius) {
                    disjoint = false;
                    break;
                }
            }
            if (disjoint) balls.push_back({i, rho});
        }
    }
    return balls;
}

double greedy_packing(const PointSet& set, double delta, double s) {
    if (s < 0) throw Error("negative exponent");
    double sum = 0;
    for (const PackedBall& b : greedy_packing_balls(set, delta))
        sum += std::pow(2 * b.radius, s);
    return sum;
}

double cover_sum_evaluator(const PointSet& set, double delta, double s) {
    return hausdorff_sum(greedy_cover(set, delta), s);
}

double packing_sum_evaluator(const PointSet& set, double delta, double s) {
    return greedy_packing(set, delta, s);
}

CriticalExponent critical_exponent(const PointSet& set, const SumEvaluator& sums,
                                   const std::vector<double>& delta_sequence) {
    if (delta_sequence.size() < 2) throw Error("fewer than 2 scales");
    for (std::size_t i = 1; i < delta_sequence.size(); ++i)
        if (!(delta_sequence[i] < delta_sequence[i - 1]))
            throw Error("delta sequence must be strictly decreasing");

    const double delta = delta_sequence.back();
    const double n = set.ambient_dim();

    CriticalExponent result;
    const double at_zero = sums(set, delta, 0.0);
    const double at_n = sums(set, delta, n);
    if (at_zero < at_n) {
        // The sum should decay in s (all diameters <= delta < 1 in the
        // intended regime); if it grows instead, the crossover is undefined
        // and the regression estimate substitutes.
        result.fallback_used = true;
        result.value = box_dimension_auto(set).value;
        return result;
    }
    if (at_n > 1.0) {
        result.value = n;
        return result;
    }

    double lo = 0.0, hi = n;
    while (hi - lo > 1e-3) {
        double mid = 0.5 * (lo + hi);
        if (sums(set, delta, mid) >= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    result.value = 0.5 * (lo + hi);
    return result;
}

} // namespace fractal

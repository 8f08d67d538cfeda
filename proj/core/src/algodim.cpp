#include "fdim/algodim.hpp"

#include "fdim/error.hpp"

#include <algorithm>
#include <cmath>

namespace fractal {

namespace {

void validate_r_list(const std::vector<int>& r_list) {
    if (r_list.size() < 4) throw Error("fewer than 4 precisions");
    if (r_list.front() < 1) throw Error("precision must be positive");
    for (std::size_t i = 1; i < r_list.size(); ++i)
        if (r_list[i] <= r_list[i - 1]) throw Error("precision list must be increasing");
}

// Tail-half window start: the last ceil(k/2) entries carry the estimate.
std::size_t tail_start(std::size_t k) { return k / 2; }

DensityEstimate tail_min_max(const std::vector<double>& ratios) {
    DensityEstimate est;
    std::size_t start = tail_start(ratios.size());
    est.lower = est.upper = ratios[start];
    for (std::size_t i = start + 1; i < ratios.size(); ++i) {
        est.lower = std::min(est.lower, ratios[i]);
        est.upper = std::max(est.upper, ratios[i]);
    }
    return est;
}

} // namespace

PointSource PointSource::from_point(const Point& x) {
    PointSource src;
    for (int axis = 0; axis < x.n; ++axis)
        src.axes_.push_back(std::make_shared<DyadicBitSource>(x.m[axis], x.precision));
    return src;
}

PointSource PointSource::from_values(std::span<const double> values, int precision) {
    Point x = Point::from_values(values, precision);
    return from_point(x);
}

PointSource PointSource::pseudorandom(int ambient_dim, std::uint64_t seed) {
    PointSource src;
    for (int axis = 0; axis < ambient_dim; ++axis)
        src.axes_.push_back(
            std::make_shared<PrngBitSource>(Prng::substream_seed(seed, axis)));
    return src;
}

PointSource PointSource::join(const PointSource& a, const PointSource& b) {
    PointSource src;
    src.axes_ = a.axes_;
    src.axes_.insert(src.axes_.end(), b.axes_.begin(), b.axes_.end());
    return src;
}

BitEncoding encode(const Point& x, int r, Scheme scheme) {
    if (r < 0 || r > x.precision) throw Error("scale beyond stored precision");
    return encode_source(PointSource::from_point(x), r, scheme);
}

BitEncoding encode_source(const PointSource& src, int r, Scheme scheme) {
    if (r < 0) throw Error("precision must be nonnegative");
    BitEncoding enc;
    enc.precision = r;
    enc.ambient_dim = src.ambient_dim();
    enc.scheme = scheme;
    const int n = enc.ambient_dim;
    if (scheme == Scheme::interleaved) {
        for (int j = 1; j <= r; ++j)
            for (int axis = 0; axis < n; ++axis) enc.bits.push_back(src.bit(axis, j));
    } else {
        for (int axis = 0; axis < n; ++axis)
            for (int j = 1; j <= r; ++j) enc.bits.push_back(src.bit(axis, j));
    }
    return enc;
}

std::array<std::int64_t, kMaxAmbientDim> decode_cell(const BitEncoding& enc) {
    if (enc.precision > 62) throw Error("cell index overflow");
    std::array<std::int64_t, kMaxAmbientDim> cell{};
    const int n = enc.ambient_dim;
    const int r = enc.precision;
    for (int axis = 0; axis < n; ++axis) {
        std::int64_t c = 0;
        for (int j = 1; j <= r; ++j) {
            std::size_t idx = enc.scheme == Scheme::interleaved
                                  ? static_cast<std::size_t>(j - 1) * n + axis
                                  : static_cast<std::size_t>(axis) * r + (j - 1);
            c = (c << 1) | (enc.bits[idx] ? 1 : 0);
        }
        cell[axis] = c;
    }
    return cell;
}

std::size_t cond_klen(const BitString& p, const BitString& q) {
    std::array<BitString, 2> segments{q, p};
    std::size_t joint = klen_joint(segments);
    std::size_t base = klen(q);
    return joint > base ? joint - base : 0;
}

std::int64_t mutual_info(const BitString& p, const BitString& q) {
    return static_cast<std::int64_t>(klen(p)) - static_cast<std::int64_t>(cond_klen(p, q));
}

std::int64_t mutual_info_clamped(const BitString& p, const BitString& q) {
    return std::max<std::int64_t>(0, mutual_info(p, q));
}

ComplexityProfile complexity_profile(const PointSource& src, const std::vector<int>& r_list,
                                     Scheme scheme) {
    if (r_list.empty()) throw Error("fewer than 4 precisions");
    for (std::size_t i = 1; i < r_list.size(); ++i)
        if (r_list[i] <= r_list[i - 1]) throw Error("precision list must be increasing");
    ComplexityProfile profile;
    for (int r : r_list) {
        std::size_t k = klen(encode_source(src, r, scheme).bits);
        profile.precisions.push_back(r);
        profile.klens.push_back(k);
        profile.ratios.push_back(static_cast<double>(k) / r);
    }
    return profile;
}

DensityEstimate dim_estimate(const PointSource& src, const std::vector<int>& r_list,
                             Scheme scheme) {
    validate_r_list(r_list);
    std::vector<double> ratios;
    ratios.reserve(r_list.size());
    for (int r : r_list)
        ratios.push_back(static_cast<double>(klen(encode_source(src, r, scheme).bits)) / r);
    return tail_min_max(ratios);
}

DensityEstimate mdim_estimate(const PointSource& x, const PointSource& y,
                              const std::vector<int>& r_list, Scheme scheme) {
    validate_r_list(r_list);
    std::vector<double> ratios;
    ratios.reserve(r_list.size());
    for (int r : r_list) {
        BitEncoding ex = encode_source(x, r, scheme);
        BitEncoding ey = encode_source(y, r, scheme);
        ratios.push_back(static_cast<double>(mutual_info(ex.bits, ey.bits)) / r);
    }
    return tail_min_max(ratios);
}

DensityEstimate cdim_estimate(const PointSource& x, const PointSource& given_y,
                              const std::vector<int>& r_list, Scheme scheme) {
    validate_r_list(r_list);
    std::vector<double> ratios;
    ratios.reserve(r_list.size());
    for (int r : r_list) {
        BitEncoding ex = encode_source(x, r, scheme);
        BitEncoding ey = encode_source(given_y, r, scheme);
        ratios.push_back(static_cast<double>(cond_klen(ex.bits, ey.bits)) / r);
    }
    return tail_min_max(ratios);
}

ChainResiduals chain_rule_residuals(const PointSource& x, const PointSource& y, int r,
                                    const Calibration& calibration, Scheme scheme) {
    std::vector<int> ladder;
    for (int k = 1; k <= 8; ++k) {
        int rung = static_cast<int>(
            std::llround(static_cast<double>(r) * k / 8.0));
        if (rung >= 1 && (ladder.empty() || rung > ladder.back())) ladder.push_back(rung);
    }
    if (ladder.size() < 4) throw Error("fewer than 4 precisions");

    std::vector<double> dx_ratios, dxy_ratios, cyx_ratios;
    for (int rung : ladder) {
        BitEncoding ex = encode_source(x, rung, scheme);
        BitEncoding ey = encode_source(y, rung, scheme);
        std::size_t kx = klen(ex.bits);
        std::array<BitString, 2> segments{ex.bits, ey.bits};
        std::size_t kj = klen_joint(segments);
        std::size_t cyx = kj > kx ? kj - kx : 0;
        dx_ratios.push_back(static_cast<double>(kx) / rung);
        dxy_ratios.push_back(static_cast<double>(kj) / rung);
        cyx_ratios.push_back(static_cast<double>(cyx) / rung);
    }

    DensityEstimate dx = tail_min_max(dx_ratios);
    DensityEstimate dxy = tail_min_max(dxy_ratios);
    DensityEstimate cyx = tail_min_max(cyx_ratios);

    ChainResiduals out;
    out.residuals[0] = dxy.lower - (dx.lower + cyx.lower);
    out.residuals[1] = (dx.lower + cyx.upper) - dxy.lower;
    out.residuals[2] = dxy.upper - (dx.lower + cyx.upper);
    out.residuals[3] = (dx.upper + cyx.upper) - dxy.upper;
    out.slack = calibration.sigma(r) / r;
    out.pass = true;
    for (double res : out.residuals)
        if (res < -out.slack) out.pass = false;
    return out;
}

} // namespace fractal

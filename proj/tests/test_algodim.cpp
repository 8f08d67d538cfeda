// Bit-encoding and density-estimate tests:
//  - cell encodings: hand-checked layouts, decode round trips, input guards
//  - expansions: stored points are zero beyond their precision, seeded
//    sources draw reproducible bits per axis
//  - conditional description length: self-conditioning is near free,
//    conditioning on nothing costs the full description
//  - density estimates separate dyadic from pseudorandom coordinates and mix
//    additively across independent axes
//  - chain-rule residuals on the four-inequality ladder

#include "fdim/algodim.hpp"
#include "fdim/calibration.hpp"
#include "fdim/compressor.hpp"
#include "fdim/error.hpp"
#include "fdim/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

using namespace fractal;

namespace {

Point pt(std::initializer_list<double> values, int precision = kDefaultPrecision) {
    const std::vector<double> v(values);
    return Point::from_values(v, precision);
}

const std::vector<int> kDensityLadder{512, 1024, 2048, 4096};

BitString prng_bits(std::size_t count, std::uint64_t seed) {
    BitString s;
    Prng rng(seed);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (i % 64 == 0) word = rng.next_u64();
        s.push_back((word >> (63 - (i % 64))) & 1);
    }
    return s;
}

} // namespace

TEST_CASE("encodings of (1/2, 1/2) at two bits per axis") {
    const Point center = pt({0.5, 0.5});
    CHECK(encode(center, 2, Scheme::interleaved).bits.to_text() == "1100");
    CHECK(encode(center, 2, Scheme::concatenated).bits.to_text() == "1010");
    CHECK(encode(center, 2).bits.to_text() == "1100"); // interleaved is the default

    const BitEncoding enc = encode(center, 2);
    CHECK(enc.precision == 2);
    CHECK(enc.ambient_dim == 2);
    CHECK(enc.bits.size() == 4);
}

TEST_CASE("decoded cells equal the grid cells of the point") {
    Prng rng(555);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 4);
        std::vector<double> values;
        for (int a = 0; a < n; ++a) values.push_back(rng.next_unit());
        const Point x = Point::from_values(values, 26);
        const int r = 1 + static_cast<int>(rng.next_u64() % 26);
        for (Scheme scheme : {Scheme::interleaved, Scheme::concatenated}) {
            const auto decoded = decode_cell(encode(x, r, scheme));
            const auto direct = dyadic_cell(x, r);
            for (int a = 0; a < n; ++a) CHECK(decoded[a] == direct[a]);
        }
    }
}

TEST_CASE("encoding guards") {
    CHECK_THROWS_WITH_AS(encode(pt({0.5}, 10), 11), "scale beyond stored precision", Error);
    CHECK_THROWS_WITH_AS(PointSource::from_point(pt({-0.25})), "normalize to unit cube first",
                         Error);
    CHECK_THROWS_WITH_AS(PointSource::from_point(pt({1.0})), "normalize to unit cube first",
                         Error);

    const PointSource src = PointSource::pseudorandom(1, 3);
    CHECK_THROWS_WITH_AS(decode_cell(encode_source(src, 63)), "cell index overflow", Error);
}

TEST_CASE("stored points expand to zero beyond their precision") {
    const PointSource src = PointSource::from_point(pt({0.625}, 4)); // 0.1010
    CHECK(src.bit(0, 1));
    CHECK_FALSE(src.bit(0, 2));
    CHECK(src.bit(0, 3));
    CHECK_FALSE(src.bit(0, 4));
    for (std::size_t j = 5; j < 200; ++j) CHECK_FALSE(src.bit(0, j));
}

TEST_CASE("seeded sources are reproducible and differ per axis") {
    const PointSource a = PointSource::pseudorandom(2, 17);
    const PointSource b = PointSource::pseudorandom(2, 17);
    bool axes_differ = false;
    for (std::size_t j = 1; j <= 128; ++j) {
        CHECK(a.bit(0, j) == b.bit(0, j));
        CHECK(a.bit(1, j) == b.bit(1, j));
        axes_differ = axes_differ || (a.bit(0, j) != a.bit(1, j));
    }
    CHECK(axes_differ);
}

TEST_CASE("conditioning on itself is near free, on nothing costs everything") {
    const BitString s = prng_bits(4096, 7);
    CHECK(cond_klen(s, s) <= 614); // 0.15 bits per bit
    CHECK(cond_klen(s, BitString{}) == klen(s));

    // Mutual information: everything with itself, nothing with independent.
    CHECK(mutual_info(s, s) >= static_cast<std::int64_t>(klen(s)) - 700);
    const BitString t = prng_bits(4096, 8);
    CHECK(mutual_info_clamped(s, t) <= 614);
    CHECK(mutual_info_clamped(s, t) >= 0);
}

TEST_CASE("density estimates separate dyadic from pseudorandom points") {
    const PointSource dyadic = PointSource::from_point(pt({0.3828125}, 26));
    const DensityEstimate low = dim_estimate(dyadic, kDensityLadder);
    CHECK(low.upper <= 0.2);
    CHECK(low.lower >= 0.0);

    const PointSource random = PointSource::pseudorandom(1, 42);
    const DensityEstimate high = dim_estimate(random, kDensityLadder);
    CHECK(high.lower >= 0.8);
    CHECK(high.upper <= 1.1);
    CHECK(high.lower <= high.upper);
}

TEST_CASE("a mixed pair of axes has density near one") {
    const PointSource mixed = PointSource::join(PointSource::from_point(pt({0.3828125}, 26)),
                                                PointSource::pseudorandom(1, 43));
    CHECK(mixed.ambient_dim() == 2);
    const DensityEstimate d = dim_estimate(mixed, kDensityLadder);
    CHECK(d.lower >= 0.8);
    CHECK(d.upper <= 1.2);
}

TEST_CASE("joint density of a source with itself stays near the marginal") {
    const PointSource x = PointSource::pseudorandom(1, 42);
    const DensityEstimate dx = dim_estimate(x, kDensityLadder);
    const DensityEstimate dxx = mdim_estimate(x, x, kDensityLadder);
    CHECK(std::fabs(dxx.upper - dx.upper) <= 0.15);
    CHECK(std::fabs(dxx.lower - dx.lower) <= 0.15);

    const DensityEstimate self_cost = cdim_estimate(x, x, kDensityLadder);
    CHECK(self_cost.upper <= 0.2);
}

TEST_CASE("independent sources add and share almost nothing") {
    const PointSource x = PointSource::pseudorandom(1, 1001);
    const PointSource y = PointSource::pseudorandom(1, 1002);
    const BitString ex = encode_source(x, 4096, Scheme::concatenated).bits;
    const BitString ey = encode_source(y, 4096, Scheme::concatenated).bits;
    CHECK(mutual_info_clamped(ex, ey) <= 614); // 0.15 * 4096

    // Shared density stays near zero (slightly negative is possible because
    // the joint encoding pays a small subadditivity overhead).
    const DensityEstimate shared = mdim_estimate(x, y, kDensityLadder);
    CHECK(shared.upper <= 0.15);
    CHECK(shared.lower >= -0.15);

    // Description lengths add: the joint stream costs what the parts cost.
    const DensityEstimate dx = dim_estimate(x, kDensityLadder);
    const DensityEstimate dy = dim_estimate(y, kDensityLadder);
    const std::vector<BitString> pair{ex, ey};
    const double joint_ratio = static_cast<double>(klen_joint(pair)) / 4096.0;
    CHECK(joint_ratio <= dx.upper + dy.upper + 0.1);
    CHECK(joint_ratio >= dx.lower + dy.lower - 0.3);
}

TEST_CASE("density estimates validate the precision list") {
    const PointSource x = PointSource::pseudorandom(1, 5);
    CHECK_THROWS_WITH_AS(dim_estimate(x, {512, 1024, 2048}), "fewer than 4 precisions", Error);
    CHECK_THROWS_WITH_AS(dim_estimate(x, {512, 1024, 1024, 2048}),
                         "precision list must be increasing", Error);
}

TEST_CASE("chain-rule residuals hold with calibrated slack on seeded pairs") {
    const Calibration cal = calibrate_compressor();
    const PointSource x = PointSource::pseudorandom(1, 11);
    const PointSource y = PointSource::pseudorandom(1, 12);
    const ChainResiduals res = chain_rule_residuals(x, y, 512, cal);

    CHECK(res.slack == doctest::Approx(cal.sigma(512) / 512.0));
    CHECK(res.pass);
    for (double residual : res.residuals) CHECK(residual >= -res.slack);
}

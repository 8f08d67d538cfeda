#pragma once

#include "fdim/bits.hpp"
#include "fdim/calibration.hpp"
#include "fdim/compressor.hpp"
#include "fdim/geometry.hpp"

#include <array>
#include <memory>
#include <vector>

namespace fractal {

// ---------------------------------------------------------------------------
// Algorithmic-information proxies: description lengths of precision-r cell
// encodings, and the dimension-like densities klen/r built from them.
// ---------------------------------------------------------------------------

enum class Scheme { interleaved, concatenated };

// ---------------------------------------------------------------------------
// PointSource: per-axis binary expansions queryable to any depth. Stored
// points expand to their mantissa bits and are exactly zero beyond; seeded
// pseudorandom sources draw further bits deterministically. This is what lets
// density estimates run at precisions far beyond the mantissa width.
// ---------------------------------------------------------------------------
class PointSource {
public:
    PointSource() = default;

    // Dyadic expansions of a stored point; every coordinate must lie in [0,1).
    static PointSource from_point(const Point& x);

    // Quantize reals in [0,1) at the given precision, then expand.
    static PointSource from_values(std::span<const double> values,
                                   int precision = kDefaultPrecision);

    // Axis k draws from substream k of the seed.
    static PointSource pseudorandom(int ambient_dim, std::uint64_t seed);

    // Concatenated axes (a's axes first): the joint point (a, b).
    static PointSource join(const PointSource& a, const PointSource& b);

    int ambient_dim() const { return static_cast<int>(axes_.size()); }
    bool bit(int axis, std::size_t j) const { return axes_[axis]->bit(j); }

private:
    std::vector<std::shared_ptr<BitSource>> axes_;
};

// ---------------------------------------------------------------------------
// Cell encodings.
// ---------------------------------------------------------------------------
struct BitEncoding {
    BitString bits; // length = ambient_dim * precision exactly
    int precision = 0;
    int ambient_dim = 0;
    Scheme scheme = Scheme::interleaved;
};

// Precision-r encoding of the dyadic cell containing x. Interleaved order
// emits bit j of every axis before bit j+1 of any, so nearby points share
// long prefixes; concatenated order emits per-axis blocks. Requires r <= p
// and coordinates in [0,1).
BitEncoding encode(const Point& x, int r, Scheme scheme = Scheme::interleaved);

// Same, from expansions; r is unrestricted.
BitEncoding encode_source(const PointSource& src, int r, Scheme scheme = Scheme::interleaved);

// Per-axis cell indices at scale r recovered from the encoding; inverse of
// encode in the sense decode_cell(encode(x, r)) == dyadic_cell(x, r).
std::array<std::int64_t, kMaxAmbientDim> decode_cell(const BitEncoding& enc);

// ---------------------------------------------------------------------------
// Conditional and mutual description length. Conditioning is priced as the
// marginal cost of appending p to an already-encoded q (the stream's segment
// boundary is the separator), clamped at zero.
// ---------------------------------------------------------------------------
std::size_t cond_klen(const BitString& p, const BitString& q);
std::int64_t mutual_info(const BitString& p, const BitString& q);  // may be slightly negative
std::int64_t mutual_info_clamped(const BitString& p, const BitString& q);

// ---------------------------------------------------------------------------
// Density estimates. The finite stand-in for liminf/limsup of K_r/r is the
// min/max of klen ratios over the tail half of an increasing precision list
// (early precisions are header-dominated). Outputs name these "lower/upper
// density estimate" — they bound, not equal, the limiting dimensions.
// ---------------------------------------------------------------------------
struct ComplexityProfile {
    std::vector<int> precisions;
    std::vector<std::size_t> klens;
    std::vector<double> ratios; // klens[i] / precisions[i]
};

struct DensityEstimate {
    double lower = 0;
    double upper = 0;
};

ComplexityProfile complexity_profile(const PointSource& src, const std::vector<int>& r_list,
                                     Scheme scheme = Scheme::concatenated);

// Requires >= 4 increasing precisions. Multi-axis estimates default to the
// concatenated scheme: per-axis blocks keep a compressible axis's savings
// intact, which the bit-interleaved order destroys at the 16-bit match
// granularity of the codec.
DensityEstimate dim_estimate(const PointSource& src, const std::vector<int>& r_list,
                             Scheme scheme = Scheme::concatenated);

DensityEstimate mdim_estimate(const PointSource& x, const PointSource& y,
                              const std::vector<int>& r_list,
                              Scheme scheme = Scheme::concatenated);

DensityEstimate cdim_estimate(const PointSource& x, const PointSource& given_y,
                              const std::vector<int>& r_list,
                              Scheme scheme = Scheme::concatenated);

// ---------------------------------------------------------------------------
// Chain-rule residuals at target precision r, evaluated on an 8-rung ladder
// k*r/8. In chain order, RHS - LHS of:
//   1. dim(x) + dim(y|x) <= dim(x,y)
//   2. dim(x,y)          <= dim(x) + Dim(y|x)
//   3. dim(x) + Dim(y|x) <= Dim(x,y)
//   4. Dim(x,y)          <= Dim(x) + Dim(y|x)
// where dim/Dim are the lower/upper density estimates over the ladder tail.
// Each passes iff residual >= -sigma(r)/r with sigma from calibration.
// ---------------------------------------------------------------------------
struct ChainResiduals {
    std::array<double, 4> residuals{};
    double slack = 0; // sigma(r) / r
    bool pass = false;
};

ChainResiduals chain_rule_residuals(const PointSource& x, const PointSource& y, int r,
                                    const Calibration& calibration,
                                    Scheme scheme = Scheme::concatenated);

} // namespace fractal

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fractal {

inline constexpr int kMaxAmbientDim = 4;
inline constexpr int kDefaultPrecision = 30;

// Mantissas are bounded so every derived quantity (cell indices, squared
// distances in mantissa units) fits comfortably in 64/128-bit integers.
inline constexpr std::int64_t kMantissaBound = std::int64_t{1} << 31;

// ---------------------------------------------------------------------------
// Point: n dyadic-rational coordinates stored as signed integer mantissas at a
// shared precision p (value = mantissa * 2^-p). Fixed-point storage keeps grid
// cells, encodings, and box counts exact and platform independent.
// ---------------------------------------------------------------------------
struct Point {
    int n = 0;
    int precision = kDefaultPrecision;
    std::array<std::int64_t, kMaxAmbientDim> m{};

    static Point from_values(std::span<const double> values, int precision = kDefaultPrecision);
    static Point from_mantissas(std::span<const std::int64_t> mantissas, int precision);

    double value(int axis) const;
};

// Quantize one real to a mantissa at precision p (round to nearest, ties to
// even), with workspace bound check.
std::int64_t quantize(double value, int precision);

// ---------------------------------------------------------------------------
// PointSet: finite discretization of a fractal. Canonical form — points are
// deduplicated and sorted lexicographically by mantissas — so identical sets
// always compare and serialize identically.
// ---------------------------------------------------------------------------
class PointSet {
public:
    PointSet() = default;
    PointSet(int ambient_dim, int precision, std::vector<std::int64_t> flat_mantissas,
             std::string label = {});

    static PointSet from_points(const std::vector<Point>& points, std::string label = {});

    int ambient_dim() const { return ambient_dim_; }
    int precision() const { return precision_; }
    std::size_t size() const { return ambient_dim_ == 0 ? 0 : flat_.size() / ambient_dim_; }
    bool empty() const { return flat_.empty(); }
    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    Point point(std::size_t i) const;
    std::int64_t mantissa(std::size_t i, int axis) const {
        return flat_[i * ambient_dim_ + axis];
    }
    const std::vector<std::int64_t>& flat() const { return flat_; }

    bool operator==(const PointSet& other) const {
        return ambient_dim_ == other.ambient_dim_ && precision_ == other.precision_ &&
               flat_ == other.flat_;
    }

private:
    void canonicalize();

    int ambient_dim_ = 0;
    int precision_ = kDefaultPrecision;
    std::vector<std::int64_t> flat_; // size() * ambient_dim mantissas, row-major
    std::string label_;
};

// ---------------------------------------------------------------------------
// RigidMotion: x -> scale * R * x + t with R orthogonal (within 1e-9) and
// scale > 0 (1 for isometries).
// ---------------------------------------------------------------------------
struct RigidMotion {
    int n = 2;
    std::array<std::array<double, kMaxAmbientDim>, kMaxAmbientDim> rotation{};
    std::array<double, kMaxAmbientDim> translation{};
    double scale = 1.0;

    static RigidMotion identity(int n);
    static RigidMotion planar_rotation(double radians);

    // Throws unless the rotation block is orthogonal within 1e-9 and scale > 0.
    void validate() const;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Index of the half-open dyadic cube of side 2^-r containing the point:
// floor(coord * 2^r) per axis. Requires 0 <= r <= p.
std::array<std::int64_t, kMaxAmbientDim> dyadic_cell(const Point& point, int r);

// Max pairwise Euclidean distance; 0 for a singleton; error on the empty set.
double diameter(const PointSet& set);

// All concatenated pairs (x, y), canonical order. |E|*|F| must stay within
// cap (default 1e8) and m+n within the ambient limit.
PointSet cartesian_product(const PointSet& E, const PointSet& F,
                           std::size_t cap = 100'000'000);

// Shift by z. The real-vector overload quantizes z once (ties to even) and
// then shifts mantissas exactly, so translate(translate(F, z), -z) == F
// bit-for-bit.
PointSet translate(const PointSet& F, std::span<const double> z);
PointSet translate_exact(const PointSet& F, std::span<const std::int64_t> z_mantissas);

// scale * R * x + t per point, rounded to nearest (ties to even mantissa).
PointSet apply_motion(const PointSet& F, const RigidMotion& motion);

// Exact multiplication by 2^k (k may be negative only when no mantissa bit is
// lost; otherwise an error, since approximate scaling would break the
// cell-bijection properties this operation exists for).
PointSet scale_pow2(const PointSet& set, int k);

// {x in E : dist(x, F) <= delta} via grid hashing at scale ceil(log2(1/delta))
// with neighbor-cell search. Must agree exactly with the brute-force filter,
// which is exposed for oracle tests.
PointSet proximal_intersection(const PointSet& E, const PointSet& F, double delta);
PointSet proximal_intersection_brute(const PointSet& E, const PointSet& F, double delta);

namespace detail {
// Shared distance predicate: squared mantissa distance <= cutoff, where
// cutoff = floor(delta^2 * 4^p). Both intersection paths use this so they
// agree bit-for-bit even on boundary cases.
unsigned __int128 proximity_cutoff(double delta, int precision);
bool within_cutoff(const PointSet& A, std::size_t i, const PointSet& B, std::size_t j,
                   unsigned __int128 cutoff);
} // namespace detail

} // namespace fractal

#pragma once

#include "fdim/geometry.hpp"

#include <string>
#include <vector>

namespace fractal {

// ---------------------------------------------------------------------------
// Similarity: x -> ratio * R * x + offset with 0 < ratio < 1 and R orthogonal.
// ---------------------------------------------------------------------------
struct Similarity {
    int n = 1;
    double ratio = 1.0 / 3.0;
    std::array<std::array<double, kMaxAmbientDim>, kMaxAmbientDim> rotation{};
    std::array<double, kMaxAmbientDim> offset{};

    static Similarity scaling(int n, double ratio, std::span<const double> offset);
    static Similarity planar(double ratio, double rotate_degrees, double ox, double oy);

    void validate() const;
    // Image of x under the map, in real coordinates.
    std::array<double, kMaxAmbientDim> apply(const std::array<double, kMaxAmbientDim>& x) const;
    // Fixed point x* = ratio*R*x* + offset (unique since ratio < 1).
    std::array<double, kMaxAmbientDim> fixed_point() const;
};

struct IteratedFunctionSystem {
    int ambient_dim = 1;
    std::vector<Similarity> maps;
    std::string label;

    void validate() const;
};

// Canonical systems used throughout the tests and experiments.
IteratedFunctionSystem cantor_ifs(double ratio);
IteratedFunctionSystem koch_curve_ifs();
IteratedFunctionSystem sierpinski_ifs();

// ---------------------------------------------------------------------------
// Generators. All constructions are deterministic full-composition iterations
// (not chaos-game sampling) so the resulting point sets — and hence every box
// count downstream — are bit-reproducible.
// ---------------------------------------------------------------------------

// Applies every length-`depth` composition of the maps to the seed (the fixed
// point of the first map). Composition count |maps|^depth must stay within cap.
PointSet attractor(const IteratedFunctionSystem& ifs, int depth,
                   int precision = kDefaultPrecision, std::size_t cap = 1u << 24);

// Vertex set of the order-k snowflake: three third-scaling curves on the sides
// of an equilateral triangle (turtle expansion of F++F++F with F -> F-F++F-F,
// 60-degree turns, step 3^-order). 3*4^order vertices.
PointSet koch_snowflake(int order, int precision = kDefaultPrecision);

// Left endpoints of the depth-d middle-gap Cantor construction; 2^depth points.
PointSet cantor_set(double ratio, int depth, int precision = kDefaultPrecision);

// Corner triangle iteration; 3^depth points.
PointSet sierpinski(int depth, int precision = kDefaultPrecision);

// The unique s solving sum_i ratio_i^s = 1, by bisection on [0, n] to 1e-12.
// For an overlapping system (sum ratio_i^n > 1) the root lies beyond the
// ambient dimension; the value is clamped to n and flagged.
struct MoranResult {
    double value = 0.0;
    bool overlapping = false;
};
MoranResult moran_dimension(const IteratedFunctionSystem& ifs);

// ---------------------------------------------------------------------------
// Plain-text system description, one map per line:
//   dim 2
//   label koch-curve
//   map ratio=0.333333 rotate=60 offset=0.333333,0
// The parser rejects non-contracting ratios.
// ---------------------------------------------------------------------------
IteratedFunctionSystem parse_ifs(const std::string& text);
std::string format_ifs(const IteratedFunctionSystem& ifs);

} // namespace fractal

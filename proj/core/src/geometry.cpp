#include "fdim/geometry.hpp"

#include "fdim/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <unordered_map>

namespace fractal {

namespace {

void check_dim(int n) {
    if (n < 1 || n > kMaxAmbientDim) throw Error("ambient dimension must be in [1,4]");
}

void check_precision(int p) {
    if (p < 1 || p > 62) throw Error("precision out of range");
}

void check_workspace(std::int64_t mantissa) {
    if (mantissa > kMantissaBound || mantissa < -kMantissaBound)
        throw Error("bounded workspace overflow");
}

// Squared distance in mantissa units; exact for workspace-bounded mantissas.
unsigned __int128 dist2_mantissa(const PointSet& A, std::size_t i, const PointSet& B,
                                 std::size_t j) {
    unsigned __int128 acc = 0;
    const int n = A.ambient_dim();
    for (int axis = 0; axis < n; ++axis) {
        const std::int64_t d = A.mantissa(i, axis) - B.mantissa(j, axis);
        const unsigned __int128 ad = d < 0 ? static_cast<unsigned __int128>(-(d + 1)) + 1
                                           : static_cast<unsigned __int128>(d);
        acc += ad * ad;
    }
    return acc;
}

struct CellKey {
    std::array<std::int64_t, kMaxAmbientDim> idx;
    bool operator==(const CellKey& other) const { return idx == other.idx; }
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& key) const {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL;
        for (std::int64_t v : key.idx) {
            std::uint64_t x = static_cast<std::uint64_t>(v);
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
            h ^= (x ^ (x >> 31)) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace

std::int64_t quantize(double value, int precision) {
    check_precision(precision);
    const double scaled = std::ldexp(value, precision);
    if (!(std::fabs(scaled) <= static_cast<double>(kMantissaBound)))
        throw Error("bounded workspace overflow");
    // nearbyint under the default rounding mode: to nearest, ties to even.
    const std::int64_t m = static_cast<std::int64_t>(std::nearbyint(scaled));
    check_workspace(m);
    return m;
}

Point Point::from_values(std::span<const double> values, int precision) {
    check_dim(static_cast<int>(values.size()));
    check_precision(precision);
    Point pt;
    pt.n = static_cast<int>(values.size());
    pt.precision = precision;
    for (int i = 0; i < pt.n; ++i) pt.m[i] = quantize(values[i], precision);
    return pt;
}

Point Point::from_mantissas(std::span<const std::int64_t> mantissas, int precision) {
    check_dim(static_cast<int>(mantissas.size()));
    check_precision(precision);
    Point pt;
    pt.n = static_cast<int>(mantissas.size());
    pt.precision = precision;
    for (int i = 0; i < pt.n; ++i) {
        check_workspace(mantissas[i]);
        pt.m[i] = mantissas[i];
    }
    return pt;
}

double Point::value(int axis) const {
    return std::ldexp(static_cast<double>(m[axis]), -precision);
}

PointSet::PointSet(int ambient_dim, int precision, std::vector<std::int64_t> flat_mantissas,
                   std::string label)
    : ambient_dim_(ambient_dim), precision_(precision), flat_(std::move(flat_mantissas)),
      label_(std::move(label)) {
    check_dim(ambient_dim_);
    check_precision(precision_);
    if (flat_.size() % ambient_dim_ != 0)
        throw Error("flat mantissa array size must be a multiple of the ambient dimension");
    for (std::int64_t m : flat_) check_workspace(m);
    canonicalize();
}

PointSet PointSet::from_points(const std::vector<Point>& points, std::string label) {
    if (points.empty()) throw Error("cannot build a set from zero points");
    const int n = points.front().n;
    const int p = points.front().precision;
    std::vector<std::int64_t> flat;
    flat.reserve(points.size() * n);
    for (const Point& pt : points) {
        if (pt.n != n || pt.precision != p)
            throw Error("all points must share ambient dimension and precision");
        for (int i = 0; i < n; ++i) flat.push_back(pt.m[i]);
    }
    return PointSet(n, p, std::move(flat), std::move(label));
}

Point PointSet::point(std::size_t i) const {
    Point pt;
    pt.n = ambient_dim_;
    pt.precision = precision_;
    for (int axis = 0; axis < ambient_dim_; ++axis) pt.m[axis] = mantissa(i, axis);
    return pt;
}

void PointSet::canonicalize() {
    const std::size_t count = size();
    if (count == 0) return;
    const int n = ambient_dim_;
    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        for (int axis = 0; axis < n; ++axis) {
            const std::int64_t va = flat_[a * n + axis];
            const std::int64_t vb = flat_[b * n + axis];
            if (va != vb) return va < vb;
        }
        return false;
    });
    std::vector<std::int64_t> sorted;
    sorted.reserve(flat_.size());
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t i = order[k];
        const bool duplicate =
            !sorted.empty() &&
            std::memcmp(sorted.data() + sorted.size() - n, flat_.data() + i * n,
                        sizeof(std::int64_t) * n) == 0;
        if (!duplicate)
            sorted.insert(sorted.end(), flat_.begin() + i * n, flat_.begin() + (i + 1) * n);
    }
    flat_ = std::move(sorted);
}

RigidMotion RigidMotion::identity(int n) {
    check_dim(n);
    RigidMotion motion;
    motion.n = n;
    for (int i = 0; i < n; ++i) motion.rotation[i][i] = 1.0;
    return motion;
}

RigidMotion RigidMotion::planar_rotation(double radians) {
    RigidMotion motion = identity(2);
    const double c = std::cos(radians);
    const double s = std::sin(radians);
    motion.rotation[0][0] = c;
    motion.rotation[0][1] = -s;
    motion.rotation[1][0] = s;
    motion.rotation[1][1] = c;
    return motion;
}

void RigidMotion::validate() const {
    check_dim(n);
    if (!(scale > 0.0)) throw Error("motion scale must be positive");
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double dot = 0.0;
            for (int k = 0; k < n; ++k) dot += rotation[k][i] * rotation[k][j];
            const double expect = i == j ? 1.0 : 0.0;
            if (std::fabs(dot - expect) > 1e-9)
                throw Error("rotation matrix is not orthogonal");
        }
    }
}

std::array<std::int64_t, kMaxAmbientDim> dyadic_cell(const Point& point, int r) {
    if (r < 0 || r > point.precision) throw Error("scale beyond stored precision");
    std::array<std::int64_t, kMaxAmbientDim> idx{};
    const int shift = point.precision - r;
    for (int axis = 0; axis < point.n; ++axis) idx[axis] = point.m[axis] >> shift;
    return idx;
}

double diameter(const PointSet& set) {
    if (set.empty()) throw Error("diameter of empty set");
    unsigned __int128 best = 0;
    const std::size_t count = set.size();
    for (std::size_t i = 0; i + 1 < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j)
            best = std::max(best, dist2_mantissa(set, i, set, j));
    const double d2 = static_cast<double>(best);
    return std::ldexp(std::sqrt(d2), -set.precision());
}

PointSet cartesian_product(const PointSet& E, const PointSet& F, std::size_t cap) {
    if (E.precision() != F.precision())
        throw Error("precision mismatch between product factors");
    const int n = E.ambient_dim() + F.ambient_dim();
    check_dim(n);
    if (E.empty() || F.empty()) throw Error("cannot build a set from zero points");
    if (E.size() > cap / F.size()) throw Error("product too large");
    std::vector<std::int64_t> flat;
    flat.reserve(E.size() * F.size() * n);
    for (std::size_t i = 0; i < E.size(); ++i)
        for (std::size_t j = 0; j < F.size(); ++j) {
            for (int a = 0; a < E.ambient_dim(); ++a) flat.push_back(E.mantissa(i, a));
            for (int b = 0; b < F.ambient_dim(); ++b) flat.push_back(F.mantissa(j, b));
        }
    return PointSet(n, E.precision(), std::move(flat),
                    E.label().empty() || F.label().empty() ? std::string{}
                                                           : E.label() + "x" + F.label());
}

PointSet translate_exact(const PointSet& F, std::span<const std::int64_t> z_mantissas) {
    if (static_cast<int>(z_mantissas.size()) != F.ambient_dim())
        throw Error("translation vector dimension mismatch");
    std::vector<std::int64_t> flat(F.flat());
    const int n = F.ambient_dim();
    for (std::size_t i = 0; i < flat.size(); ++i) {
        flat[i] += z_mantissas[i % n];
        check_workspace(flat[i]);
    }
    return PointSet(n, F.precision(), std::move(flat), F.label());
}

PointSet translate(const PointSet& F, std::span<const double> z) {
    std::vector<std::int64_t> zq(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) zq[i] = quantize(z[i], F.precision());
    return translate_exact(F, zq);
}

PointSet apply_motion(const PointSet& F, const RigidMotion& motion) {
    motion.validate();
    if (motion.n != F.ambient_dim()) throw Error("motion dimension mismatch");
    const int n = F.ambient_dim();
    std::vector<std::int64_t> flat;
    flat.reserve(F.flat().size());
    for (std::size_t i = 0; i < F.size(); ++i) {
        for (int row = 0; row < n; ++row) {
            double acc = motion.translation[row];
            for (int col = 0; col < n; ++col)
                acc += motion.scale * motion.rotation[row][col] *
                       std::ldexp(static_cast<double>(F.mantissa(i, col)), -F.precision());
            flat.push_back(quantize(acc, F.precision()));
        }
    }
    return PointSet(n, F.precision(), std::move(flat), F.label());
}

PointSet scale_pow2(const PointSet& set, int k) {
    std::vector<std::int64_t> flat(set.flat());
    if (k > 31 || k < -31) throw Error("power-of-two exponent out of range");
    if (k >= 0) {
        for (std::int64_t& m : flat) {
            if (std::abs(m) > (kMantissaBound >> k)) throw Error("bounded workspace overflow");
            m <<= k;
        }
    } else {
        const std::int64_t mask = (std::int64_t{1} << -k) - 1;
        for (std::int64_t& m : flat) {
            if (m & mask) throw Error("power-of-two scale loses precision");
            m >>= -k;
        }
    }
    return PointSet(set.ambient_dim(), set.precision(), std::move(flat), set.label());
}

namespace detail {

unsigned __int128 proximity_cutoff(double delta, int precision) {
    // floor(delta^2 * 4^p) in extended precision; exact for power-of-two delta.
    const long double scaled =
        static_cast<long double>(delta) * static_cast<long double>(delta) *
        exp2l(static_cast<long double>(2 * precision));
    if (scaled >= exp2l(100)) throw Error("proximity radius too large for workspace");
    return static_cast<unsigned __int128>(floorl(scaled));
}

bool within_cutoff(const PointSet& A, std::size_t i, const PointSet& B, std::size_t j,
                   unsigned __int128 cutoff) {
    return dist2_mantissa(A, i, B, j) <= cutoff;
}

} // namespace detail

PointSet proximal_intersection_brute(const PointSet& E, const PointSet& F, double delta) {
    if (!(delta > 0.0)) throw Error("proximity radius must be positive");
    if (E.ambient_dim() != F.ambient_dim() || E.precision() != F.precision())
        throw Error("sets must share ambient dimension and precision");
    const unsigned __int128 cutoff = detail::proximity_cutoff(delta, E.precision());
    const int n = E.ambient_dim();
    std::vector<std::int64_t> flat;
    for (std::size_t i = 0; i < E.size(); ++i) {
        for (std::size_t j = 0; j < F.size(); ++j) {
            if (detail::within_cutoff(E, i, F, j, cutoff)) {
                for (int axis = 0; axis < n; ++axis) flat.push_back(E.mantissa(i, axis));
                break;
            }
        }
    }
    return PointSet(n, E.precision(), std::move(flat), E.label());
}

PointSet proximal_intersection(const PointSet& E, const PointSet& F, double delta) {
    if (!(delta > 0.0)) throw Error("proximity radius must be positive");
    if (E.ambient_dim() != F.ambient_dim() || E.precision() != F.precision())
        throw Error("sets must share ambient dimension and precision");
    const int p = E.precision();
    const int n = E.ambient_dim();

    // Grid scale: finest s whose cell side 2^-s still covers delta, i.e.
    // s = ceil(log2(1/delta)) clamped into [0, p]. Cells then have side c with
    // c <= delta < 2c (until the p clamp), so a radius-delta ball spans at most
    // reach = ceil(delta / c) neighbor cells per axis.
    int s = static_cast<int>(std::ceil(std::log2(1.0 / delta)));
    s = std::clamp(s, 0, p);
    const double cell_side = std::ldexp(1.0, -s);
    const std::int64_t reach = static_cast<std::int64_t>(std::ceil(delta / cell_side));
    // Wildly coarse grids (huge delta) degrade to brute force rather than
    // enumerating an enormous neighbor block.
    if (reach > 16) return proximal_intersection_brute(E, F, delta);

    const unsigned __int128 cutoff = detail::proximity_cutoff(delta, p);
    const int shift = p - s;

    std::unordered_map<CellKey, std::vector<std::uint32_t>, CellKeyHash> grid;
    grid.reserve(F.size() * 2);
    for (std::size_t j = 0; j < F.size(); ++j) {
        CellKey key{};
        for (int axis = 0; axis < n; ++axis) key.idx[axis] = F.mantissa(j, axis) >> shift;
        grid[key].push_back(static_cast<std::uint32_t>(j));
    }

    const std::int64_t span = 2 * reach + 1;
    std::int64_t neighbor_count = 1;
    for (int axis = 0; axis < n; ++axis) neighbor_count *= span;

    std::vector<std::int64_t> flat;
    for (std::size_t i = 0; i < E.size(); ++i) {
        CellKey base{};
        for (int axis = 0; axis < n; ++axis) base.idx[axis] = E.mantissa(i, axis) >> shift;
        bool hit = false;
        for (std::int64_t code = 0; code < neighbor_count && !hit; ++code) {
            CellKey key = base;
            std::int64_t rem = code;
            for (int axis = 0; axis < n; ++axis) {
                key.idx[axis] += rem % span - reach;
                rem /= span;
            }
            auto it = grid.find(key);
            if (it == grid.end()) continue;
            for (std::uint32_t j : it->second) {
                if (detail::within_cutoff(E, i, F, j, cutoff)) {
                    hit = true;
                    break;
                }
            }
        }
        if (hit)
            for (int axis = 0; axis < n; ++axis) flat.push_back(E.mantissa(i, axis));
    }
    return PointSet(n, p, std::move(flat), E.label());
}

} // namespace fractal

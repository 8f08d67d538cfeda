#include "fdim/generators.hpp"

#include "fdim/error.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace fractal {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

std::array<std::array<double, kMaxAmbientDim>, kMaxAmbientDim> identity_matrix(int n) {
    std::array<std::array<double, kMaxAmbientDim>, kMaxAmbientDim> mat{};
    for (int i = 0; i < n; ++i) mat[i][i] = 1.0;
    return mat;
}

} // namespace

Similarity Similarity::scaling(int n, double ratio, std::span<const double> offset) {
    Similarity map;
    map.n = n;
    map.ratio = ratio;
    map.rotation = identity_matrix(n);
    for (int i = 0; i < n; ++i) map.offset[i] = offset[i];
    map.validate();
    return map;
}

Similarity Similarity::planar(double ratio, double rotate_degrees, double ox, double oy) {
    Similarity map;
    map.n = 2;
    map.ratio = ratio;
    const double a = rotate_degrees * std::numbers::pi / 180.0;
    map.rotation[0][0] = std::cos(a);
    map.rotation[0][1] = -std::sin(a);
    map.rotation[1][0] = std::sin(a);
    map.rotation[1][1] = std::cos(a);
    map.offset[0] = ox;
    map.offset[1] = oy;
    map.validate();
    return map;
}

void Similarity::validate() const {
    if (n < 1 || n > kMaxAmbientDim) throw Error("ambient dimension must be in [1,4]");
    if (!(ratio > 0.0 && ratio < 1.0)) throw Error("non-contracting ratio");
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double dot = 0.0;
            for (int k = 0; k < n; ++k) dot += rotation[k][i] * rotation[k][j];
            if (std::fabs(dot - (i == j ? 1.0 : 0.0)) > 1e-9)
                throw Error("rotation matrix is not orthogonal");
        }
    }
}

std::array<double, kMaxAmbientDim> Similarity::apply(
    const std::array<double, kMaxAmbientDim>& x) const {
    std::array<double, kMaxAmbientDim> out{};
    for (int row = 0; row < n; ++row) {
        double acc = offset[row];
        for (int col = 0; col < n; ++col) acc += ratio * rotation[row][col] * x[col];
        out[row] = acc;
    }
    return out;
}

std::array<double, kMaxAmbientDim> Similarity::fixed_point() const {
    // Solve (I - ratio*R) x = offset by Gaussian elimination (n <= 4).
    double a[kMaxAmbientDim][kMaxAmbientDim + 1] = {};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - ratio * rotation[i][j];
        a[i][n] = offset[i];
    }
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
        for (int k = 0; k <= n; ++k) std::swap(a[col][k], a[pivot][k]);
        for (int row = 0; row < n; ++row) {
            if (row == col) continue;
            const double f = a[row][col] / a[col][col];
            for (int k = col; k <= n; ++k) a[row][k] -= f * a[col][k];
        }
    }
    std::array<double, kMaxAmbientDim> x{};
    for (int i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
    return x;
}

void IteratedFunctionSystem::validate() const {
    if (maps.empty()) throw Error("iterated function system needs at least one map");
    for (const Similarity& map : maps) {
        if (map.n != ambient_dim) throw Error("all maps must share the ambient dimension");
        map.validate();
    }
}

IteratedFunctionSystem cantor_ifs(double ratio) {
    if (!(ratio > 0.0 && ratio < 0.5)) throw Error("cantor ratio must lie in (0, 1/2)");
    IteratedFunctionSystem ifs;
    ifs.ambient_dim = 1;
    ifs.label = "cantor";
    const double left[] = {0.0};
    const double right[] = {1.0 - ratio};
    ifs.maps.push_back(Similarity::scaling(1, ratio, left));
    ifs.maps.push_back(Similarity::scaling(1, ratio, right));
    return ifs;
}

IteratedFunctionSystem koch_curve_ifs() {
    IteratedFunctionSystem ifs;
    ifs.ambient_dim = 2;
    ifs.label = "koch-curve";
    const double third = 1.0 / 3.0;
    ifs.maps.push_back(Similarity::planar(third, 0.0, 0.0, 0.0));
    ifs.maps.push_back(Similarity::planar(third, 60.0, third, 0.0));
    ifs.maps.push_back(Similarity::planar(third, -60.0, 0.5, kSqrt3 / 6.0));
    ifs.maps.push_back(Similarity::planar(third, 0.0, 2.0 * third, 0.0));
    return ifs;
}

IteratedFunctionSystem sierpinski_ifs() {
    IteratedFunctionSystem ifs;
    ifs.ambient_dim = 2;
    ifs.label = "sierpinski";
    ifs.maps.push_back(Similarity::planar(0.5, 0.0, 0.0, 0.0));
    ifs.maps.push_back(Similarity::planar(0.5, 0.0, 0.5, 0.0));
    ifs.maps.push_back(Similarity::planar(0.5, 0.0, 0.25, kSqrt3 / 4.0));
    return ifs;
}

PointSet attractor(const IteratedFunctionSystem& ifs, int depth, int precision,
                   std::size_t cap) {
    ifs.validate();
    if (depth < 0) throw Error("attractor depth must be nonnegative");
    const std::size_t m = ifs.maps.size();
    std::size_t required = 1;
    for (int k = 0; k < depth; ++k) {
        if (required > cap / m) {
            char msg[128];
            std::snprintf(msg, sizeof msg,
                          "attractor cap exceeded: %zu^%d compositions, cap %zu", m, depth, cap);
            throw Error(msg);
        }
        required *= m;
    }

    std::vector<std::array<double, kMaxAmbientDim>> frontier{ifs.maps.front().fixed_point()};
    for (int level = 0; level < depth; ++level) {
        std::vector<std::array<double, kMaxAmbientDim>> next;
        next.reserve(frontier.size() * m);
        for (const Similarity& map : ifs.maps)
            for (const auto& x : frontier) next.push_back(map.apply(x));
        frontier = std::move(next);
    }

    std::vector<std::int64_t> flat;
    flat.reserve(frontier.size() * ifs.ambient_dim);
    for (const auto& x : frontier)
        for (int axis = 0; axis < ifs.ambient_dim; ++axis)
            flat.push_back(quantize(x[axis], precision));
    return PointSet(ifs.ambient_dim, precision, std::move(flat), ifs.label);
}

namespace {

// Exact unit vectors for headings k*60 degrees, k = 0..5. Using tabulated
// components (not incremental trig) keeps vertex coordinates identical across
// platforms and immune to angle-accumulation drift.
constexpr double kHeadX[6] = {1.0, 0.5, -0.5, -1.0, -0.5, 0.5};
constexpr double kHeadY[6] = {0.0, kSqrt3 / 2, kSqrt3 / 2, 0.0, -kSqrt3 / 2, -kSqrt3 / 2};

struct Turtle {
    double x = 0.0, y = 0.0;
    int heading = 0; // multiples of 60 degrees
    double step;
    std::vector<double>* out;

    void forward() {
        x += step * kHeadX[heading];
        y += step * kHeadY[heading];
        out->push_back(x);
        out->push_back(y);
    }
    void turn(int sixths) { heading = ((heading + sixths) % 6 + 6) % 6; }
};

// One side at the given recursion order: F -> F-F++F-F.
void koch_segment(Turtle& t, int order) {
    if (order == 0) {
        t.forward();
        return;
    }
    koch_segment(t, order - 1);
    t.turn(-1);
    koch_segment(t, order - 1);
    t.turn(+2);
    koch_segment(t, order - 1);
    t.turn(-1);
    koch_segment(t, order - 1);
}

} // namespace

PointSet koch_snowflake(int order, int precision) {
    if (order < 1 || order > 8) throw Error("snowflake order must lie in [1,8]");
    std::vector<double> coords;
    coords.reserve((static_cast<std::size_t>(3) << (2 * order)) * 2 + 2);
    Turtle t{};
    t.step = std::pow(1.0 / 3.0, order);
    t.out = &coords;
    coords.push_back(0.0);
    coords.push_back(0.0);
    for (int side = 0; side < 3; ++side) { // axiom F++F++F
        koch_segment(t, order);
        t.turn(+2);
    }
    std::vector<std::int64_t> flat;
    flat.reserve(coords.size());
    for (double v : coords) flat.push_back(quantize(v, precision));
    char label[32];
    std::snprintf(label, sizeof label, "koch-%d", order);
    return PointSet(2, precision, std::move(flat), label);
}

PointSet cantor_set(double ratio, int depth, int precision) {
    if (depth < 0) throw Error("depth must be nonnegative");
    PointSet set = attractor(cantor_ifs(ratio), depth, precision);
    char label[48];
    std::snprintf(label, sizeof label, "cantor-%.6g-%d", ratio, depth);
    set.set_label(label);
    return set;
}

PointSet sierpinski(int depth, int precision) {
    if (depth < 0) throw Error("depth must be nonnegative");
    PointSet set = attractor(sierpinski_ifs(), depth, precision);
    char label[32];
    std::snprintf(label, sizeof label, "sierpinski-%d", depth);
    set.set_label(label);
    return set;
}

MoranResult moran_dimension(const IteratedFunctionSystem& ifs) {
    ifs.validate();
    const int n = ifs.ambient_dim;
    auto residual = [&](double s) {
        double sum = 0.0;
        for (const Similarity& map : ifs.maps) sum += std::pow(map.ratio, s);
        return sum - 1.0;
    };
    MoranResult result;
    if (residual(0.0) <= 0.0) return result; // single map: s = 0 exactly
    if (residual(static_cast<double>(n)) > 0.0) {
        result.value = static_cast<double>(n);
        result.overlapping = true; // root beyond ambient dimension
        return result;
    }
    double lo = 0.0, hi = static_cast<double>(n);
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    result.value = 0.5 * (lo + hi);
    return result;
}

IteratedFunctionSystem parse_ifs(const std::string& text) {
    IteratedFunctionSystem ifs;
    ifs.ambient_dim = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#') continue;
        if (word == "dim") {
            if (!(ls >> ifs.ambient_dim)) throw Error("malformed dim line");
        } else if (word == "label") {
            std::getline(ls, ifs.label);
            if (!ifs.label.empty() && ifs.label.front() == ' ') ifs.label.erase(0, 1);
        } else if (word == "map") {
            if (ifs.ambient_dim == 0) throw Error("dim line must precede map lines");
            double ratio = 0.0, rotate = 0.0;
            std::vector<double> offset;
            std::string field;
            while (ls >> field) {
                const auto eq = field.find('=');
                if (eq == std::string::npos) throw Error("malformed map field: " + field);
                const std::string key = field.substr(0, eq);
                const std::string value = field.substr(eq + 1);
                if (key == "ratio") {
                    ratio = std::stod(value);
                } else if (key == "rotate") {
                    rotate = std::stod(value);
                } else if (key == "offset") {
                    std::istringstream vs(value);
                    std::string item;
                    while (std::getline(vs, item, ',')) offset.push_back(std::stod(item));
                } else {
                    throw Error("unknown map field: " + key);
                }
            }
            if (!(ratio > 0.0 && ratio < 1.0)) throw Error("non-contracting ratio");
            if (static_cast<int>(offset.size()) != ifs.ambient_dim)
                throw Error("offset dimension mismatch");
            if (ifs.ambient_dim == 2) {
                ifs.maps.push_back(Similarity::planar(ratio, rotate, offset[0], offset[1]));
            } else {
                if (rotate != 0.0)
                    throw Error("rotate is only supported for two-dimensional systems");
                ifs.maps.push_back(Similarity::scaling(ifs.ambient_dim, ratio, offset));
            }
        } else {
            throw Error("unknown directive: " + word);
        }
    }
    ifs.validate();
    return ifs;
}

std::string format_ifs(const IteratedFunctionSystem& ifs) {
    ifs.validate();
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "dim %d\n", ifs.ambient_dim);
    out += buf;
    if (!ifs.label.empty()) {
        out += "label " + ifs.label + "\n";
    }
    for (const Similarity& map : ifs.maps) {
        double rotate = 0.0;
        if (map.n == 2) rotate = std::atan2(map.rotation[1][0], map.rotation[0][0]) * 180.0 /
                                 std::numbers::pi;
        std::snprintf(buf, sizeof buf, "map ratio=%.17g rotate=%.17g offset=", map.ratio, rotate);
        out += buf;
        for (int i = 0; i < map.n; ++i) {
            std::snprintf(buf, sizeof buf, i + 1 < map.n ? "%.17g," : "%.17g", map.offset[i]);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

} // namespace fractal

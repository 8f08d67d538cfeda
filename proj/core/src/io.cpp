#include "fdim/io.hpp"

#include "fdim/error.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace fractal {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr char kMagic[5] = {'F', 'D', 'I', 'M', '1'};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_i64(std::string& out, std::int64_t v) { put_u64(out, static_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(const std::string& in, std::size_t& pos) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos++])) << (8 * i);
    return v;
}

std::string provenance_text(const Provenance& provenance) {
    std::string text;
    for (const auto& [key, value] : provenance) text += key + "=" + value + "\n";
    return text;
}

std::string read_whole_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void validate_header(int n, int precision) {
    if (n < 1 || n > kMaxAmbientDim) throw Error("ambient dimension out of range");
    if (precision < 1 || precision > 62) throw Error("precision out of range");
}

} // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write file: " + path);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out.flush()) throw Error("cannot write file: " + path);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("cannot write file: " + path);
}

void write_points_binary(const std::string& path, const PointSet& set,
                         const Provenance& provenance) {
    std::string out;
    out.append(kMagic, sizeof kMagic);
    out.push_back(static_cast<char>(set.ambient_dim()));
    out.push_back(static_cast<char>(set.precision()));
    put_u64(out, set.size());
    for (std::int64_t m : set.flat()) put_i64(out, m);
    Provenance full = provenance;
    bool has_label = false;
    for (const auto& [key, value] : full) has_label = has_label || key == "label";
    if (!set.label().empty() && !has_label) full.emplace_back("label", set.label());
    const std::string trailer = provenance_text(full);
    if (!trailer.empty()) {
        put_u64(out, trailer.size());
        out += trailer;
    }
    write_file_atomic(path, out);
}

PointSet read_points_binary(const std::string& path) {
    const std::string in = read_whole_file(path);
    if (in.size() < sizeof kMagic + 2 + 8 || std::memcmp(in.data(), kMagic, sizeof kMagic) != 0)
        throw Error("not a point-cloud file: " + path);
    std::size_t pos = sizeof kMagic;
    const int n = static_cast<unsigned char>(in[pos++]);
    const int precision = static_cast<unsigned char>(in[pos++]);
    validate_header(n, precision);
    const std::uint64_t count = get_u64(in, pos);
    const std::uint64_t need = count * static_cast<std::uint64_t>(n) * 8;
    if (in.size() - pos < need) throw Error("truncated point-cloud file: " + path);
    std::vector<std::int64_t> flat;
    flat.reserve(count * static_cast<std::size_t>(n));
    for (std::uint64_t i = 0; i < count * static_cast<std::uint64_t>(n); ++i)
        flat.push_back(static_cast<std::int64_t>(get_u64(in, pos)));
    PointSet set(n, precision, std::move(flat)); // re-canonicalizes and validates

    // Optional provenance trailer; a stored label survives the round trip.
    if (in.size() - pos >= 8) {
        const std::uint64_t text_len = get_u64(in, pos);
        if (in.size() - pos < text_len) throw Error("truncated point-cloud file: " + path);
        std::istringstream text(in.substr(pos, text_len));
        std::string line;
        while (std::getline(text, line))
            if (line.rfind("label=", 0) == 0) set.set_label(line.substr(6));
    }
    return set;
}

void write_points_csv(const std::string& path, const PointSet& set,
                      const Provenance& provenance) {
    std::string out;
    for (const auto& [key, value] : provenance) out += "# " + key + "=" + value + "\n";
    for (int axis = 0; axis < set.ambient_dim(); ++axis)
        out += std::string(axis ? "," : "") + "x" + std::to_string(axis + 1);
    out += "\n";
    for (std::size_t i = 0; i < set.size(); ++i) {
        Point pt = set.point(i);
        for (int axis = 0; axis < set.ambient_dim(); ++axis)
            out += std::string(axis ? "," : "") + fmt(pt.value(axis));
        out += "\n";
    }
    write_file_atomic(path, out);
}

PointSet read_points_csv(const std::string& path, int precision) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);

    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        // Header row: count the columns, insist on the x1,... shape.
        n = 1;
        for (char c : line) n += c == ',';
        validate_header(n, precision);
        if (line.rfind("x1", 0) != 0) throw Error("point CSV must start with header x1,...,xn");
        break;
    }
    if (n == 0) throw Error("point CSV has no header: " + path);

    std::vector<Point> points;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> values;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
        if (static_cast<int>(values.size()) != n)
            throw Error("point CSV row width mismatch: " + line);
        points.push_back(Point::from_values(values, precision));
    }
    return PointSet::from_points(points);
}

std::string profile_csv(const ScaleProfile& profile, const Provenance& provenance) {
    std::string out;
    for (const auto& [key, value] : provenance) out += "# " + key + "=" + value + "\n";
    out += "r,N_r,log2_N\n";
    for (std::size_t i = 0; i < profile.scales.size(); ++i) {
        out += std::to_string(profile.scales[i]) + "," + std::to_string(profile.counts[i]) +
               "," + fmt(std::log2(static_cast<double>(profile.counts[i]))) + "\n";
    }
    return out;
}

std::string complexity_csv(const ComplexityProfile& profile, const Provenance& provenance) {
    std::string out;
    for (const auto& [key, value] : provenance) out += "# " + key + "=" + value + "\n";
    out += "r,klen,ratio\n";
    for (std::size_t i = 0; i < profile.precisions.size(); ++i) {
        out += std::to_string(profile.precisions[i]) + "," +
               std::to_string(profile.klens[i]) + "," + fmt(profile.ratios[i]) + "\n";
    }
    return out;
}

std::string estimate_json(const DimensionEstimate& estimate) {
    ordered_json j;
    j["value"] = estimate.value;
    j["lower_slope"] = estimate.lower_slope;
    j["upper_slope"] = estimate.upper_slope;
    j["r_min"] = estimate.r_min;
    j["r_max"] = estimate.r_max;
    j["residual"] = estimate.residual;
    return j.dump(2) + "\n";
}

std::string report_json(const ExperimentReport& report) {
    ordered_json j;
    j["name"] = report.name;
    j["theorem_tag"] = report.theorem_tag;
    j["samples"] = report.samples;
    j["estimates"] = ordered_json::array();
    for (const NamedEstimate& est : report.estimates) {
        ordered_json e;
        e["name"] = est.name;
        e["value"] = est.value;
        e["r_min"] = est.r_min;
        e["r_max"] = est.r_max;
        e["delta"] = est.delta;
        j["estimates"].push_back(e);
    }
    j["bound"] = report.bound;
    j["violations"] = report.violations;
    j["tolerance"] = report.tolerance;
    j["pass"] = report.pass;
    j["provenance"] = ordered_json::object();
    for (const auto& [key, value] : report.provenance) j["provenance"][key] = value;
    return j.dump(2) + "\n";
}

std::string report_csv(const ExperimentReport& report) {
    std::string out;
    out += "# name=" + report.name + "\n";
    out += "# theorem_tag=" + report.theorem_tag + "\n";
    out += "sample,kind,delta,estimate,bound,violation,points\n";
    for (const SampleRow& row : report.sample_rows) {
        out += std::to_string(row.index) + "," + row.kind + "," + fmt(row.delta) + "," +
               fmt(row.estimate) + "," + fmt(row.bound) + "," +
               (row.violation ? "1" : "0") + "," + std::to_string(row.points) + "\n";
    }
    return out;
}

} // namespace fractal

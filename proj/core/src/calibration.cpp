#include "fdim/calibration.hpp"

#include "fdim/bits.hpp"
#include "fdim/compressor.hpp"
#include "fdim/error.hpp"
#include "fdim/version.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace fractal {

namespace {

constexpr std::size_t kMaxSegmentLength = std::size_t{1} << 16;

BitString zeros_string(std::size_t len) {
    BitString s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(false);
    return s;
}

BitString prng_string(std::size_t len, std::uint64_t seed) {
    BitString s;
    Prng prng(seed);
    std::uint64_t block = 0;
    for (std::size_t i = 0; i < len; ++i) {
        if (i % 64 == 0) block = prng.next_u64();
        s.push_back((block >> (63 - i % 64)) & 1);
    }
    return s;
}

BitString periodic_string(std::size_t len, const BitString& period) {
    BitString s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(period[i % period.size()]);
    return s;
}

} // namespace

double Calibration::sigma(int r) const { return c0 + c1 * std::sqrt(static_cast<double>(r)); }

Calibration calibrate_compressor() {
    Calibration cal;
    cal.codec_version = kCodecVersion;

    // Framing bound: the worst per-segment overhead for any supported length
    // is the header of the longest segment (gamma of len+1 plus two mode
    // bits); raw mode caps content at the literal bits themselves.
    cal.header_overhead =
        static_cast<double>(gamma_length(kMaxSegmentLength + 1) + 2);

    const std::vector<std::size_t> lengths{256, 512, 1024, 2048, 4096, 8192, 16384};
    const BitString period8 = BitString::from_text("10110001");

    std::vector<BitString> corpus;
    for (std::size_t len : lengths) {
        corpus.push_back(zeros_string(len));
        corpus.push_back(prng_string(len, 0x1234567Full + len));
        corpus.push_back(periodic_string(len, period8));
    }
    corpus.push_back(BitString());
    corpus.push_back(zeros_string(kMaxSegmentLength));

    for (const BitString& s : corpus)
        if (klen(s) > s.size() + static_cast<std::size_t>(cal.header_overhead))
            throw Error("calibration failed: literal fallback exceeded");

    // Pairwise joint cost never exceeds the sum of the parts (the second
    // segment can always fall back to its standalone encoding); record the
    // worst measured excess, clamped at zero.
    double worst_join = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const BitString& p = corpus[i];
        const BitString& q = corpus[(i + 7) % corpus.size()];
        std::array<BitString, 2> segments{q, p};
        double excess = static_cast<double>(klen_joint(segments)) -
                        static_cast<double>(klen(q)) - static_cast<double>(klen(p));
        if (excess > worst_join) worst_join = excess;
    }
    cal.join_overhead = worst_join;

    // Slack curve: fit c0 + c1*sqrt(r) to the self-conditioning cost — the
    // concrete shape of the "description given itself" redundancy — then lift
    // c0 so the curve dominates every measurement.
    const std::vector<int> grid{256, 512, 1024, 2048, 4096};
    std::vector<double> xs, ys;
    for (int r : grid) {
        BitString s = prng_string(static_cast<std::size_t>(r), 0xC0FFEEull + r);
        std::array<BitString, 2> segments{s, s};
        double cost = static_cast<double>(klen_joint(segments)) - static_cast<double>(klen(s));
        xs.push_back(std::sqrt(static_cast<double>(r)));
        ys.push_back(cost < 0 ? 0 : cost);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double c1 = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    double c0 = (sy - c1 * sx) / m;
    if (c1 < 0) {
        c1 = 0;
        c0 = 0;
    }
    double lift = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        lift = std::max(lift, ys[i] - (c0 + c1 * xs[i]));
    cal.c0 = c0 + lift + 1.0; // one bit of headroom beyond the worst residual
    cal.c1 = c1;
    return cal;
}

void save_calibration(const std::string& path, const Calibration& calibration,
                      const std::vector<std::string>& extra_comments) {
    std::ostringstream body;
    char buf[64];
    body << "# compressor calibration constants; regenerate with: fdim calibrate\n";
    for (const std::string& comment : extra_comments) body << "# " << comment << "\n";
    body << "codec_version=" << calibration.codec_version << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", calibration.header_overhead);
    body << "header_overhead=" << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", calibration.join_overhead);
    body << "join_overhead=" << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", calibration.c0);
    body << "c0=" << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.17g", calibration.c1);
    body << "c1=" << buf << "\n";

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("cannot write calibration file: " + path);
        out << body.str();
        if (!out.flush()) throw Error("cannot write calibration file: " + path);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot write calibration file: " + path);
}

Calibration load_calibration(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("calibration file missing: " + path);

    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw Error("calibration file malformed: " + line);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }

    const std::array<const char*, 5> keys{"codec_version", "header_overhead", "join_overhead",
                                          "c0", "c1"};
    for (const auto& [key, value] : kv) {
        bool known = false;
        for (const char* k : keys) known = known || key == k;
        if (!known) throw Error("calibration file has unknown key: " + key);
    }
    for (const char* k : keys)
        if (!kv.count(k)) throw Error("calibration file incomplete: missing " + std::string(k));

    Calibration cal;
    cal.codec_version = kv["codec_version"];
    if (cal.codec_version != kCodecVersion)
        throw Error("calibration version mismatch: file has " + cal.codec_version + ", codec is " +
                    kCodecVersion);
    cal.header_overhead = std::stod(kv["header_overhead"]);
    cal.join_overhead = std::stod(kv["join_overhead"]);
    cal.c0 = std::stod(kv["c0"]);
    cal.c1 = std::stod(kv["c1"]);
    return cal;
}

} // namespace fractal

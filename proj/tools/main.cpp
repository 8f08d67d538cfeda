// fdim — command-line laboratory for fractal dimension estimation.
//
// Subcommands:
//   generate   build a canonical fractal (or a user-supplied IFS) point cloud
//   boxdim     box-counting dimension estimate of a stored point set
//   kdim       per-point density estimate via the bit-level compressor
//   intersect  random-translation intersection campaign (box or packing readout)
//   motion     random rigid-motion intersection campaign
//   product    product-set chain inequalities and the exact count identity
//   chain      conditional-complexity chain-rule campaign on seeded pairs
//   probe      pointwise density vs box dimension probe
//   calibrate  measure compressor constants and write the calibration file
//
// Every artifact written (point clouds, profiles, estimates, reports) embeds
// the run configuration and library version. Exit codes: 0 success or
// campaign PASS, 1 campaign FAIL, 2 usage or data error.

#include "fdim/algodim.hpp"
#include "fdim/calibration.hpp"
#include "fdim/compressor.hpp"
#include "fdim/error.hpp"
#include "fdim/estimators.hpp"
#include "fdim/experiments.hpp"
#include "fdim/generators.hpp"
#include "fdim/geometry.hpp"
#include "fdim/io.hpp"
#include "fdim/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace fractal;
using ordered_json = nlohmann::ordered_json;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// The one-line result contract shared by every subcommand.
void print_summary(const std::string& command, const std::string& label, double value,
                   double bound, int violations, int samples, bool pass) {
    std::printf("%s %s value=%s bound=%s violations=%d/%d status=%s\n", command.c_str(),
                label.c_str(), short_num(value).c_str(), short_num(bound).c_str(), violations,
                samples, pass ? "PASS" : "FAIL");
}

std::string file_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

PointSet load_points(const std::string& path) {
    PointSet set =
        path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0
            ? read_points_csv(path)
            : read_points_binary(path);
    if (set.label().empty()) set.set_label(file_stem(path));
    return set;
}

Scheme parse_scheme(const std::string& name) {
    return name == "interleaved" ? Scheme::interleaved : Scheme::concatenated;
}

double find_estimate(const ExperimentReport& report, const std::string& name) {
    for (const NamedEstimate& est : report.estimates)
        if (est.name == name) return est.value;
    return 0.0;
}

void write_report_files(const ExperimentReport& report, const std::string& json_path,
                        const std::string& csv_path) {
    if (!json_path.empty()) write_file_atomic(json_path, report_json(report));
    if (!csv_path.empty()) write_file_atomic(csv_path, report_csv(report));
}

// Reduce a point to its coordinate fractional parts so it lives in the unit
// cube, where binary expansions are defined.
Point fractional_point(const Point& x) {
    Point out = x;
    const std::int64_t unit = std::int64_t{1} << x.precision;
    for (int axis = 0; axis < x.n; ++axis) out.m[axis] = ((x.m[axis] % unit) + unit) % unit;
    return out;
}

// ---------------------------------------------------------------------------
// Per-subcommand options. Defaults here are the library defaults; a config
// file (--config, key=value with [subcommand] sections) fills in values and
// explicit flags win over it.
// ---------------------------------------------------------------------------

struct GenerateOpts {
    std::string fractal, ifs_path, out_path, csv_path;
    int order = 6;
    int depth = 8;
    int precision = 26;
    double ratio = 1.0 / 3.0;
};

struct BoxdimOpts {
    std::string in_path, out_path, profile_path;
    int r_min = 3;
    int r_max = 8;
    int lag = 1;
    bool auto_range = false;
};

struct KdimOpts {
    std::string in_path, out_path, profile_path;
    std::string scheme = "concatenated";
    std::string calibration = "calibration.txt";
    std::size_t index = 0;
    std::vector<int> r_list{16, 32, 64, 128};
};

struct IntersectOpts {
    std::string e_path, f_path, out_path, csv_path;
    int count = 100;
    int r_min = 3;
    int r_max = 8;
    int lag = 1;
    int bound_lag = 1;
    std::uint64_t seed = 0;
    double tolerance = 0.1;
    double budget = 0.05;
    double delta = 0.000244140625; // 2^-12
    bool packing = false;          // intersect only
    std::vector<double> scales{1.0}; // motion only
};

struct ProductOpts {
    std::string e_path, f_path, out_path, csv_path;
    int r_min = 4;
    int r_max = 10;
    int lag = 1;
    double tau = 0.05;
};

struct ChainOpts {
    std::string out_path, csv_path;
    std::string calibration = "calibration.txt";
    int count = 50;
    int ambient_dim = 1;
    int r = 512;
    std::uint64_t seed = 0;
    double budget = 0.1;
};

struct ProbeOpts {
    std::string in_path, out_path, csv_path;
    int count = 50;
    std::uint64_t seed = 0;
    std::vector<int> r_list{16, 20, 24, 26};
};

struct CalibrateOpts {
    std::string out_path = "calibration.txt";
};

// ---------------------------------------------------------------------------
// Command bodies. Each returns the process exit code.
// ---------------------------------------------------------------------------

int run_generate(const GenerateOpts& opt) {
    if (opt.fractal.empty() == opt.ifs_path.empty())
        throw Error("generate needs exactly one of --fractal or --ifs");

    PointSet set;
    if (!opt.ifs_path.empty()) {
        std::ifstream in(opt.ifs_path);
        if (!in) throw Error("cannot open file: " + opt.ifs_path);
        std::stringstream text;
        text << in.rdbuf();
        set = attractor(parse_ifs(text.str()), opt.depth, opt.precision);
    } else if (opt.fractal == "koch") {
        set = koch_snowflake(opt.order, opt.precision);
    } else if (opt.fractal == "cantor") {
        set = cantor_set(opt.ratio, opt.depth, opt.precision);
    } else {
        set = sierpinski(opt.depth, opt.precision);
    }

    Provenance prov;
    prov.emplace_back("command", "generate");
    if (!opt.fractal.empty()) prov.emplace_back("fractal", opt.fractal);
    if (!opt.ifs_path.empty()) prov.emplace_back("ifs", opt.ifs_path);
    prov.emplace_back("order", std::to_string(opt.order));
    prov.emplace_back("depth", std::to_string(opt.depth));
    prov.emplace_back("ratio", num(opt.ratio));
    prov.emplace_back("precision", std::to_string(opt.precision));
    prov.emplace_back("version", kVersion);

    write_points_binary(opt.out_path, set, prov);
    if (!opt.csv_path.empty()) write_points_csv(opt.csv_path, set, prov);

    print_summary("generate", set.label(), static_cast<double>(set.size()), 0.0, 0, 0, true);
    return 0;
}

int run_boxdim(const BoxdimOpts& opt) {
    const PointSet set = load_points(opt.in_path);
    const DimensionEstimate est = opt.auto_range
                                      ? box_dimension_auto(set)
                                      : box_dimension(set, opt.r_min, opt.r_max, opt.lag);
    if (opt.auto_range)
        std::fprintf(stderr, "boxdim: auto-selected scale range r in [%d, %d]\n", est.r_min,
                     est.r_max);
    if (est.degenerate)
        std::fprintf(stderr,
                     "boxdim: degenerate profile (all box counts equal); estimate pinned to 0\n");

    ordered_json config;
    config["command"] = "boxdim";
    config["input"] = opt.in_path;
    config["r_min"] = est.r_min;
    config["r_max"] = est.r_max;
    config["lag"] = est.lag;
    config["auto_range"] = opt.auto_range;

    if (!opt.out_path.empty()) {
        ordered_json doc;
        doc["estimate"] = ordered_json::parse(estimate_json(est));
        doc["config"] = config;
        doc["version"] = kVersion;
        write_file_atomic(opt.out_path, doc.dump(2) + "\n");
    }
    if (!opt.profile_path.empty()) {
        const ScaleProfile profile = scale_profile(set, est.r_min, est.r_max);
        Provenance prov;
        prov.emplace_back("command", "boxdim");
        prov.emplace_back("input", opt.in_path);
        prov.emplace_back("label", set.label());
        prov.emplace_back("version", kVersion);
        write_file_atomic(opt.profile_path, profile_csv(profile, prov));
    }

    print_summary("boxdim", set.label(), est.value, static_cast<double>(set.ambient_dim()), 0, 0,
                  true);
    return 0;
}

int run_kdim(const KdimOpts& opt) {
    const Calibration cal = load_calibration(opt.calibration);
    const PointSet set = load_points(opt.in_path);
    if (opt.index >= set.size()) throw Error("point index out of range");

    const Point x = fractional_point(set.point(opt.index));
    const PointSource src = PointSource::from_point(x);
    const Scheme scheme = parse_scheme(opt.scheme);
    const ComplexityProfile profile = complexity_profile(src, opt.r_list, scheme);
    const DensityEstimate density = dim_estimate(src, opt.r_list, scheme);

    const std::string label = set.label() + "[" + std::to_string(opt.index) + "]";

    ordered_json config;
    config["command"] = "kdim";
    config["input"] = opt.in_path;
    config["index"] = opt.index;
    config["r_list"] = opt.r_list;
    config["scheme"] = opt.scheme;
    config["codec_version"] = cal.codec_version;

    if (!opt.out_path.empty()) {
        ordered_json doc;
        doc["density"] = ordered_json{{"lower", density.lower}, {"upper", density.upper}};
        doc["config"] = config;
        doc["version"] = kVersion;
        write_file_atomic(opt.out_path, doc.dump(2) + "\n");
    }
    if (!opt.profile_path.empty()) {
        Provenance prov;
        prov.emplace_back("command", "kdim");
        prov.emplace_back("input", opt.in_path);
        prov.emplace_back("index", std::to_string(opt.index));
        prov.emplace_back("scheme", opt.scheme);
        prov.emplace_back("codec_version", cal.codec_version);
        prov.emplace_back("version", kVersion);
        write_file_atomic(opt.profile_path, complexity_csv(profile, prov));
    }

    print_summary("kdim", label, density.upper, static_cast<double>(set.ambient_dim()), 0, 0,
                  true);
    return 0;
}

IntersectionParams to_params(const IntersectOpts& opt) {
    IntersectionParams params;
    params.seed = opt.seed;
    params.count = opt.count;
    params.tolerance = opt.tolerance;
    params.allowed_fraction = opt.budget;
    params.delta = opt.delta;
    params.r_min = opt.r_min;
    params.r_max = opt.r_max;
    params.sample_lag = opt.lag;
    params.bound_lag = opt.bound_lag;
    params.scale_choices = opt.scales;
    return params;
}

// Worst sample estimate at the primary thickening — the number the campaign
// budget is judged against.
double worst_primary_estimate(const ExperimentReport& report, double delta) {
    double worst = 0.0;
    for (const SampleRow& row : report.sample_rows)
        if (row.kind == "random" && row.delta == delta && row.estimate > worst)
            worst = row.estimate;
    return worst;
}

int run_intersection_like(const char* command, const IntersectOpts& opt, bool motion) {
    const PointSet E = load_points(opt.e_path);
    const PointSet F = opt.f_path.empty() ? E : load_points(opt.f_path);
    const IntersectionParams params = to_params(opt);

    ExperimentReport report =
        motion ? motion_campaign(E, F, params)
               : (opt.packing ? packing_intersection_campaign(E, F, params)
                              : intersection_campaign(E, F, params));

    Provenance cli;
    cli.emplace_back("command", command);
    cli.emplace_back("input_E", opt.e_path);
    cli.emplace_back("input_F", opt.f_path.empty() ? opt.e_path : opt.f_path);
    report.provenance.insert(report.provenance.begin(), cli.begin(), cli.end());
    write_report_files(report, opt.out_path, opt.csv_path);

    print_summary(command, E.label() + ":" + F.label(),
                  worst_primary_estimate(report, params.delta), report.bound, report.violations,
                  report.samples, report.pass);
    return report.pass ? 0 : 1;
}

int run_product(const ProductOpts& opt) {
    const PointSet E = load_points(opt.e_path);
    const PointSet F = load_points(opt.f_path);
    ProductParams params;
    params.r_min = opt.r_min;
    params.r_max = opt.r_max;
    params.lag = opt.lag;
    params.tau = opt.tau;

    ExperimentReport report = product_campaign(E, F, params);

    Provenance cli;
    cli.emplace_back("command", "product");
    cli.emplace_back("input_E", opt.e_path);
    cli.emplace_back("input_F", opt.f_path);
    report.provenance.insert(report.provenance.begin(), cli.begin(), cli.end());
    write_report_files(report, opt.out_path, opt.csv_path);

    print_summary("product", E.label() + ":" + F.label(), find_estimate(report, "lower_product"),
                  report.bound, report.violations, report.samples, report.pass);
    return report.pass ? 0 : 1;
}

int run_chain(const ChainOpts& opt) {
    const Calibration cal = load_calibration(opt.calibration);
    ChainParams params;
    params.seed = opt.seed;
    params.count = opt.count;
    params.ambient_dim = opt.ambient_dim;
    params.r = opt.r;
    params.allowed_fraction = opt.budget;

    ExperimentReport report = chain_campaign(params, cal);

    Provenance cli;
    cli.emplace_back("command", "chain");
    cli.emplace_back("calibration_file", opt.calibration);
    report.provenance.insert(report.provenance.begin(), cli.begin(), cli.end());
    write_report_files(report, opt.out_path, opt.csv_path);

    const std::string label = "pairs-" + std::to_string(opt.count);
    print_summary("chain", label, find_estimate(report, "worst_residual"),
                  -find_estimate(report, "slack"), report.violations, report.samples, report.pass);
    return report.pass ? 0 : 1;
}

int run_probe(const ProbeOpts& opt) {
    const PointSet set = load_points(opt.in_path);
    ProbeParams params;
    params.seed = opt.seed;
    params.count = opt.count;
    params.r_list = opt.r_list;

    ExperimentReport report = p2s_probe(set, params);

    Provenance cli;
    cli.emplace_back("command", "probe");
    cli.emplace_back("input", opt.in_path);
    report.provenance.insert(report.provenance.begin(), cli.begin(), cli.end());
    write_report_files(report, opt.out_path, opt.csv_path);

    print_summary("probe", set.label(), find_estimate(report, "max_point_density"),
                  find_estimate(report, "box_dimension"), report.violations, report.samples,
                  report.pass);
    return report.pass ? 0 : 1;
}

int run_calibrate(const CalibrateOpts& opt) {
    const Calibration cal = calibrate_compressor();

    // Record the headline corpus measurement alongside the constants: the
    // density of the all-zeros string shows how far below |s| a maximally
    // regular input compresses.
    BitString zeros;
    for (int i = 0; i < 4096; ++i) zeros.push_back(false);
    const double zeros_density = static_cast<double>(klen(zeros)) / 4096.0;
    const std::vector<std::string> comments{
        "zeros-4096 density: " + num(zeros_density) + " bits/bit",
        "library version: " + std::string(kVersion),
    };

    save_calibration(opt.out_path, cal, comments);
    print_summary("calibrate", cal.codec_version, cal.header_overhead, 0.0, 0, 0, true);
    return 0;
}

// All option names across subcommands, for the usage-error footer.
void print_valid_keys(CLI::App& app) {
    std::fprintf(stderr, "valid keys:\n");
    for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) {
        std::string line = "  " + sub->get_name() + ":";
        for (const CLI::Option* option : sub->get_options())
            if (option->get_name() != "--help") line += " " + option->get_name();
        std::fprintf(stderr, "%s\n", line.c_str());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractal dimension laboratory: generators, estimators, campaigns"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(fractal::kVersion));
    app.set_config("--config", "", "read options from a key=value file ([subcommand] sections)");

    int status = 0;

    GenerateOpts gen;
    CLI::App* generate = app.add_subcommand("generate", "build a fractal point cloud");
    generate->add_option("--fractal", gen.fractal, "canonical family: koch, cantor, sierpinski")
        ->check(CLI::IsMember({"koch", "cantor", "sierpinski"}));
    generate->add_option("--ifs", gen.ifs_path, "iterated-function-system description file")
        ->check(CLI::ExistingFile);
    generate->add_option("--order", gen.order, "koch curve order (1..8)");
    generate->add_option("--depth", gen.depth, "iteration depth (cantor, sierpinski, --ifs)");
    generate->add_option("--ratio", gen.ratio, "cantor contraction ratio in (0, 1/2]");
    generate->add_option("--precision", gen.precision, "fixed-point precision in bits");
    generate->add_option("--out", gen.out_path, "output point-cloud file")->required();
    generate->add_option("--csv", gen.csv_path, "also write a CSV copy here");
    generate->callback([&] { status = run_generate(gen); });

    BoxdimOpts box;
    CLI::App* boxdim = app.add_subcommand("boxdim", "box-counting dimension of a point set");
    boxdim->add_option("--in", box.in_path, "point-cloud file (binary or .csv)")
        ->required()
        ->check(CLI::ExistingFile);
    boxdim->add_option("--rmin", box.r_min, "finest-side exponent lower end");
    boxdim->add_option("--rmax", box.r_max, "finest-side exponent upper end");
    boxdim->add_option("--lag", box.lag, "difference-quotient lag for slope envelopes");
    boxdim->add_flag("--auto", box.auto_range, "select the scale range automatically");
    boxdim->add_option("--out", box.out_path, "write the estimate as JSON here");
    boxdim->add_option("--profile", box.profile_path, "write the scale/count profile CSV here");
    boxdim->callback([&] { status = run_boxdim(box); });

    KdimOpts kdim;
    CLI::App* kdimc = app.add_subcommand("kdim", "per-point density estimate via compression");
    kdimc->add_option("--in", kdim.in_path, "point-cloud file (binary or .csv)")
        ->required()
        ->check(CLI::ExistingFile);
    kdimc->add_option("--index", kdim.index, "which stored point to analyse");
    kdimc->add_option("--rlist", kdim.r_list, "increasing precisions, comma separated")
        ->delimiter(',');
    kdimc->add_option("--scheme", kdim.scheme, "bit layout: concatenated or interleaved")
        ->check(CLI::IsMember({"concatenated", "interleaved"}));
    kdimc->add_option("--calibration", kdim.calibration, "calibration file path");
    kdimc->add_option("--out", kdim.out_path, "write the density estimate as JSON here");
    kdimc->add_option("--profile", kdim.profile_path, "write the complexity profile CSV here");
    kdimc->callback([&] { status = run_kdim(kdim); });

    IntersectOpts isect;
    CLI::App* intersect =
        app.add_subcommand("intersect", "random-translation intersection campaign");
    intersect->add_option("--e", isect.e_path, "first point-cloud file")
        ->required()
        ->check(CLI::ExistingFile);
    intersect->add_option("--f", isect.f_path, "second point-cloud file (defaults to --e)")
        ->check(CLI::ExistingFile);
    intersect->add_option("--count", isect.count, "number of random samples");
    intersect->add_option("--seed", isect.seed, "master seed for the sample substreams");
    intersect->add_option("--delta", isect.delta, "primary thickening half-width");
    intersect->add_option("--tolerance", isect.tolerance, "slack added to the bound");
    intersect->add_option("--budget", isect.budget, "allowed violating fraction");
    intersect->add_option("--rmin", isect.r_min, "estimate scale range lower end");
    intersect->add_option("--rmax", isect.r_max, "estimate scale range upper end");
    intersect->add_option("--lag", isect.lag, "per-sample slope lag");
    intersect->add_option("--boundlag", isect.bound_lag, "product-profile bound slope lag");
    intersect->add_flag("--packing", isect.packing, "judge samples on the upper envelope slope");
    intersect->add_option("--out", isect.out_path, "write the campaign report JSON here");
    intersect->add_option("--csv", isect.csv_path, "write the per-sample CSV here");
    intersect->callback([&] { status = run_intersection_like("intersect", isect, false); });

    IntersectOpts mot;
    CLI::App* motion = app.add_subcommand("motion", "random rigid-motion intersection campaign");
    motion->add_option("--e", mot.e_path, "first point-cloud file")
        ->required()
        ->check(CLI::ExistingFile);
    motion->add_option("--f", mot.f_path, "second point-cloud file (defaults to --e)")
        ->check(CLI::ExistingFile);
    motion->add_option("--count", mot.count, "number of random samples");
    motion->add_option("--seed", mot.seed, "master seed for the sample substreams");
    motion->add_option("--delta", mot.delta, "primary thickening half-width");
    motion->add_option("--tolerance", mot.tolerance, "slack added to the bound");
    motion->add_option("--budget", mot.budget, "allowed violating fraction");
    motion->add_option("--rmin", mot.r_min, "estimate scale range lower end");
    motion->add_option("--rmax", mot.r_max, "estimate scale range upper end");
    motion->add_option("--lag", mot.lag, "per-sample slope lag");
    motion->add_option("--boundlag", mot.bound_lag, "product-profile bound slope lag");
    motion->add_option("--scales", mot.scales, "scale factors the sampler may draw from")
        ->delimiter(',');
    motion->add_option("--out", mot.out_path, "write the campaign report JSON here");
    motion->add_option("--csv", mot.csv_path, "write the per-sample CSV here");
    motion->callback([&] { status = run_intersection_like("motion", mot, true); });

    ProductOpts prod;
    CLI::App* product = app.add_subcommand("product", "product-set chain inequalities");
    product->add_option("--e", prod.e_path, "first point-cloud file")
        ->required()
        ->check(CLI::ExistingFile);
    product->add_option("--f", prod.f_path, "second point-cloud file")
        ->required()
        ->check(CLI::ExistingFile);
    product->add_option("--rmin", prod.r_min, "estimate scale range lower end");
    product->add_option("--rmax", prod.r_max, "estimate scale range upper end");
    product->add_option("--lag", prod.lag, "slope lag for the envelopes");
    product->add_option("--tau", prod.tau, "per-step tolerance in the chain");
    product->add_option("--out", prod.out_path, "write the campaign report JSON here");
    product->add_option("--csv", prod.csv_path, "write the per-scale CSV here");
    product->callback([&] { status = run_product(prod); });

    ChainOpts chn;
    CLI::App* chain = app.add_subcommand("chain", "conditional-complexity chain-rule campaign");
    chain->add_option("--count", chn.count, "number of seeded point pairs");
    chain->add_option("--seed", chn.seed, "master seed for the pair substreams");
    chain->add_option("--n", chn.ambient_dim, "ambient dimension of each point");
    chain->add_option("--r", chn.r, "precision the residuals are evaluated at");
    chain->add_option("--budget", chn.budget, "allowed failing fraction");
    chain->add_option("--calibration", chn.calibration, "calibration file path");
    chain->add_option("--out", chn.out_path, "write the campaign report JSON here");
    chain->add_option("--csv", chn.csv_path, "write the per-pair CSV here");
    chain->callback([&] { status = run_chain(chn); });

    ProbeOpts prb;
    CLI::App* probe = app.add_subcommand("probe", "pointwise density vs box dimension probe");
    probe->add_option("--in", prb.in_path, "point-cloud file (binary or .csv)")
        ->required()
        ->check(CLI::ExistingFile);
    probe->add_option("--count", prb.count, "number of sampled points");
    probe->add_option("--seed", prb.seed, "sampling seed");
    probe->add_option("--rlist", prb.r_list, "increasing precisions, comma separated")
        ->delimiter(',');
    probe->add_option("--out", prb.out_path, "write the probe report JSON here");
    probe->add_option("--csv", prb.csv_path, "write the per-point CSV here");
    probe->callback([&] { status = run_probe(prb); });

    CalibrateOpts calb;
    CLI::App* calibrate =
        app.add_subcommand("calibrate", "measure compressor constants on the canonical corpus");
    calibrate->add_option("--out", calb.out_path, "calibration file to write");
    calibrate->callback([&] { status = run_calibrate(calb); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        if (code == 0) return 0; // --help / --version
        print_valid_keys(app);
        return 2;
    } catch (const fractal::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        if (std::string(e.what()).rfind("calibration", 0) == 0)
            std::fprintf(stderr, "hint: run `fdim calibrate` to write calibration.txt for codec %s\n",
                         fractal::kCodecVersion);
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return status;
}

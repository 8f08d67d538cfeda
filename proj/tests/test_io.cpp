// Serialization tests:
//  - binary point-cloud round trip, label survival via the provenance
//    trailer, and every malformed-file rejection with its exact message
//  - CSV round trip is exact for matching target precision
//  - atomic writes never leave a .tmp twin behind
//  - frozen byte-level formats for the derived-data serializers, so that
//    rerun reports can be compared with plain string equality

#include "fdim/error.hpp"
#include "fdim/estimators.hpp"
#include "fdim/generators.hpp"
#include "fdim/geometry.hpp"
#include "fdim/io.hpp"

#include <doctest.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

using namespace fractal;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

void append_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

// Minimal well-formed binary image: header only, no points, no trailer.
std::string binary_image(int ambient_dim, int precision, std::uint64_t count) {
    std::string out = "FDIM1";
    out.push_back(static_cast<char>(ambient_dim));
    out.push_back(static_cast<char>(precision));
    append_u64(out, count);
    return out;
}

} // namespace

TEST_CASE("binary point clouds round-trip, label included") {
    const PointSet koch3 = koch_snowflake(3, 26);
    TempFile file("io_test_points.fdim");

    write_points_binary(file.path, koch3, {{"seed", "7"}, {"tool", "test"}});
    const PointSet back = read_points_binary(file.path);

    CHECK(back.ambient_dim() == koch3.ambient_dim());
    CHECK(back.precision() == koch3.precision());
    CHECK(back.flat() == koch3.flat());
    CHECK(back.label() == "koch-3");

    // An explicit label key in the provenance wins over the set's own label.
    write_points_binary(file.path, koch3, {{"label", "renamed"}});
    CHECK(read_points_binary(file.path).label() == "renamed");

    // No label, no provenance: the trailer is omitted entirely and the
    // reader stops at the mantissa block.
    PointSet bare(1, 8, {128, 192});
    write_points_binary(file.path, bare);
    const PointSet bare_back = read_points_binary(file.path);
    CHECK(bare_back.flat() == bare.flat());
    CHECK(bare_back.label().empty());
    CHECK(slurp(file.path).size() == 5 + 2 + 8 + 2 * 8);
}

TEST_CASE("binary reader rejects malformed files with exact messages") {
    CHECK_THROWS_WITH_AS(read_points_binary("io_missing.fdim"),
                         "cannot open file: io_missing.fdim", Error);

    TempFile file("io_test_bad.fdim");

    write_file_atomic(file.path, "short");
    CHECK_THROWS_WITH_AS(read_points_binary(file.path),
                         "not a point-cloud file: io_test_bad.fdim", Error);

    write_file_atomic(file.path, "NOPE1" + std::string(32, '\0'));
    CHECK_THROWS_WITH_AS(read_points_binary(file.path),
                         "not a point-cloud file: io_test_bad.fdim", Error);

    // Header advertises more mantissas than the file holds.
    write_file_atomic(file.path, binary_image(2, 26, 100));
    CHECK_THROWS_WITH_AS(read_points_binary(file.path),
                         "truncated point-cloud file: io_test_bad.fdim", Error);

    write_file_atomic(file.path, binary_image(5, 26, 0));
    CHECK_THROWS_WITH_AS(read_points_binary(file.path),
                         "ambient dimension out of range", Error);

    write_file_atomic(file.path, binary_image(1, 63, 0));
    CHECK_THROWS_WITH_AS(read_points_binary(file.path), "precision out of range",
                         Error);

    // Trailer length field overruns the end of the file.
    std::string lying = binary_image(1, 8, 1);
    append_u64(lying, 128); // the single mantissa
    append_u64(lying, 9999); // trailer length, but no trailer bytes
    write_file_atomic(file.path, lying);
    CHECK_THROWS_WITH_AS(read_points_binary(file.path),
                         "truncated point-cloud file: io_test_bad.fdim", Error);
}

TEST_CASE("CSV point clouds round-trip exactly at matching precision") {
    const PointSet c4 = cantor_set(1.0 / 3.0, 4, 26);
    TempFile file("io_test_points.csv");

    write_points_csv(file.path, c4, {{"depth", "4"}});
    const PointSet back = read_points_csv(file.path, 26);

    CHECK(back.ambient_dim() == 1);
    CHECK(back.precision() == 26);
    CHECK(back.flat() == c4.flat());

    const std::string text = slurp(file.path);
    CHECK(text.rfind("# depth=4\nx1\n", 0) == 0);
}

TEST_CASE("CSV reader rejects malformed files with exact messages") {
    CHECK_THROWS_WITH_AS(read_points_csv("io_missing.csv"),
                         "cannot open file: io_missing.csv", Error);

    TempFile file("io_test_bad.csv");

    write_file_atomic(file.path, "# only a comment\n");
    CHECK_THROWS_WITH_AS(read_points_csv(file.path),
                         "point CSV has no header: io_test_bad.csv", Error);

    write_file_atomic(file.path, "a,b\n0.5,0.5\n");
    CHECK_THROWS_WITH_AS(read_points_csv(file.path),
                         "point CSV must start with header x1,...,xn", Error);

    write_file_atomic(file.path, "x1,x2,x3,x4,x5\n");
    CHECK_THROWS_WITH_AS(read_points_csv(file.path),
                         "ambient dimension out of range", Error);

    write_file_atomic(file.path, "x1,x2\n0.5\n");
    CHECK_THROWS_WITH_AS(read_points_csv(file.path),
                         "point CSV row width mismatch: 0.5", Error);
}

TEST_CASE("atomic writes leave no temporary twin behind") {
    TempFile file("io_test_atomic.txt");
    write_file_atomic(file.path, "payload\n");
    CHECK(slurp(file.path) == "payload\n");
    CHECK_FALSE(std::filesystem::exists(file.path + ".tmp"));

    // Writing into a directory that does not exist fails loudly.
    CHECK_THROWS_WITH_AS(write_file_atomic("no_such_dir/x.txt", "y"),
                         "cannot write file: no_such_dir/x.txt", Error);
}

TEST_CASE("estimate serializer freezes field order and formatting") {
    DimensionEstimate est;
    est.value = 1.25;
    est.lower_slope = 1.0;
    est.upper_slope = 1.5;
    est.r_min = 3;
    est.r_max = 8;
    est.residual = 0.001;

    const std::string expected = "{\n"
                                 "  \"value\": 1.25,\n"
                                 "  \"lower_slope\": 1.0,\n"
                                 "  \"upper_slope\": 1.5,\n"
                                 "  \"r_min\": 3,\n"
                                 "  \"r_max\": 8,\n"
                                 "  \"residual\": 0.001\n"
                                 "}\n";
    CHECK(estimate_json(est) == expected);
}

TEST_CASE("profile serializers freeze the comment and column layout") {
    ScaleProfile profile;
    profile.scales = {1, 2};
    profile.counts = {2, 4};
    CHECK(profile_csv(profile, {{"seed", "7"}}) ==
          "# seed=7\nr,N_r,log2_N\n1,2,1\n2,4,2\n");

    ComplexityProfile complexity;
    complexity.precisions = {16, 32};
    complexity.klens = {20, 40};
    complexity.ratios = {1.25, 1.25};
    CHECK(complexity_csv(complexity) == "r,klen,ratio\n16,20,1.25\n32,40,1.25\n");
}

TEST_CASE("report serializers freeze the full layout") {
    ExperimentReport report;
    report.name = "demo";
    report.theorem_tag = "T1-intersection";
    report.samples = 1;
    report.estimates.push_back({"value_E", 1.25, 3, 8, 0.0});
    report.bound = 0.5;
    report.violations = 0;
    report.tolerance = 0.1;
    report.pass = true;
    report.provenance = {{"seed", "7"}, {"version", "1.0.0"}};
    report.sample_rows.push_back({0, "translate", 0.000244140625, 0.0, 0.5, false, 42});

    const std::string expected_json = "{\n"
                                      "  \"name\": \"demo\",\n"
                                      "  \"theorem_tag\": \"T1-intersection\",\n"
                                      "  \"samples\": 1,\n"
                                      "  \"estimates\": [\n"
                                      "    {\n"
                                      "      \"name\": \"value_E\",\n"
                                      "      \"value\": 1.25,\n"
                                      "      \"r_min\": 3,\n"
                                      "      \"r_max\": 8,\n"
                                      "      \"delta\": 0.0\n"
                                      "    }\n"
                                      "  ],\n"
                                      "  \"bound\": 0.5,\n"
                                      "  \"violations\": 0,\n"
                                      "  \"tolerance\": 0.1,\n"
                                      "  \"pass\": true,\n"
                                      "  \"provenance\": {\n"
                                      "    \"seed\": \"7\",\n"
                                      "    \"version\": \"1.0.0\"\n"
                                      "  }\n"
                                      "}\n";
    CHECK(report_json(report) == expected_json);

    const std::string expected_csv = "# name=demo\n"
                                     "# theorem_tag=T1-intersection\n"
                                     "sample,kind,delta,estimate,bound,violation,points\n"
                                     "0,translate,0.000244140625,0,0.5,0,42\n";
    CHECK(report_csv(report) == expected_csv);
}

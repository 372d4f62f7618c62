#include <doctest.h>

#include <cmath>
#include <sstream>

#include "benfordsep/errors.hpp"
#include "benfordsep/features.hpp"
#include "support/test_support.hpp"

using namespace benfordsep;
using testsupport::TempDir;

TEST_CASE("a flat image is degenerate at every qf") {
    const GrayImage img = testsupport::flat_image(16, 16, 77);
    try {
        (void)image_feature_vector(img, 0, builtin_gbl_table());
        FAIL("expected degenerate_image");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::degenerate_image);
    }
}

TEST_CASE("a textured image yields six finite nonnegative divergences") {
    const GrayImage img = testsupport::noise_image(64, 48, 4242);
    const FeatureVector fv = image_feature_vector(img, 3, builtin_gbl_table());
    CHECK(fv.label == 3);
    REQUIRE(fv.d.size() == 6);
    for (double v : fv.d) {
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
    }
}

TEST_CASE("the chi-square scale constant is a plain multiplier") {
    const GrayImage img = testsupport::noise_image(32, 32, 9);
    const FeatureVector scaled = image_feature_vector(img, 0, builtin_gbl_table(), kDefaultQfOrder, 100.0);
    const FeatureVector raw = image_feature_vector(img, 0, builtin_gbl_table(), kDefaultQfOrder, 1.0);
    for (int i = 0; i < 6; ++i) CHECK(scaled.d[i] == doctest::Approx(100.0 * raw.d[i]).epsilon(1e-12));
}

TEST_CASE("missing parameter rows are rejected up front") {
    const GrayImage img = testsupport::noise_image(16, 16, 1);
    GblParamTable table = builtin_gbl_table();
    table.erase(70);
    CHECK_THROWS_AS((void)image_feature_vector(img, 0, table), Error);
}

TEST_CASE("build_dataset keeps order and reports rejections") {
    TempDir dir;
    std::filesystem::create_directories(dir.path() / "A");
    std::filesystem::create_directories(dir.path() / "B");
    const GrayImage noise_a = testsupport::noise_image(24, 24, 11);
    const GrayImage noise_b = testsupport::noise_image(24, 24, 12);
    std::vector<int> pix_a(noise_a.pixels.begin(), noise_a.pixels.end());
    std::vector<int> pix_b(noise_b.pixels.begin(), noise_b.pixels.end());
    testsupport::write_pgm_p5(dir.path() / "A" / "a0.pgm", 24, 24, pix_a);
    testsupport::write_pgm_p5(dir.path() / "A" / "a1_flat.pgm", 24, 24, std::vector<int>(24 * 24, 128));
    testsupport::write_pgm_p5(dir.path() / "B" / "b0.pgm", 24, 24, pix_b);

    const LabeledImageSet set = scan_dataset(dir.path());
    const BuildReport report = build_dataset(set, builtin_gbl_table());
    CHECK(report.dataset.rows.size() == 2);
    CHECK(report.rejected.size() == 1);
    CHECK(report.rejected[0].find("a1_flat") != std::string::npos);
    CHECK(report.dataset.rows[0].label == 0);
    CHECK(report.dataset.rows[1].label == 1);
    CHECK(report.dataset.label_names == std::vector<std::string>{"A", "B"});
}

TEST_CASE("an all-flat corpus errors out") {
    TempDir dir;
    std::filesystem::create_directories(dir.path() / "only");
    testsupport::write_pgm_p5(dir.path() / "only" / "flat.pgm", 8, 8, std::vector<int>(64, 10));
    const LabeledImageSet set = scan_dataset(dir.path());
    try {
        (void)build_dataset(set, builtin_gbl_table());
        FAIL("expected all_images_degenerate");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::all_images_degenerate);
    }
}

// ---------------------------------------------------------------------------
// CSV contract

namespace {

Dataset tiny_dataset() {
    Dataset ds;
    ds.qf_order = kDefaultQfOrder;
    ds.label_names = {"zero"};
    FeatureVector row;
    row.d = {1, 2, 3, 4, 5, 6};
    row.label = 0;
    ds.rows.push_back(row);
    return ds;
}

} // namespace

TEST_CASE("write_csv renders the exact header and 6-significant-digit rows") {
    std::ostringstream out;
    const std::size_t bytes = write_csv(tiny_dataset(), out);
    const std::string expected =
        "QF-50,QF-60,QF-70,QF-80,QF-90,QF-100,Class Label\n"
        "1.00000,2.00000,3.00000,4.00000,5.00000,6.00000,0\n";
    CHECK(out.str() == expected);
    CHECK(bytes == expected.size());
}

TEST_CASE("an empty dataset writes the header only") {
    Dataset ds;
    ds.qf_order = kDefaultQfOrder;
    std::ostringstream out;
    write_csv(ds, out);
    CHECK(out.str() == "QF-50,QF-60,QF-70,QF-80,QF-90,QF-100,Class Label\n");
}

TEST_CASE("write-read-write is byte stable") {
    // values shaped like the published pre-processed table
    Dataset ds;
    ds.qf_order = kDefaultQfOrder;
    ds.label_names = {"0"};
    FeatureVector row;
    row.d = {10.49719, 10.80152, 9.790624, 8.71157, 7.745091, 7.761463};
    row.label = 0;
    ds.rows.push_back(row);
    std::ostringstream first;
    write_csv(ds, first);

    std::istringstream back(first.str());
    const Dataset reread = read_csv(back);
    REQUIRE(reread.rows.size() == 1);
    for (int i = 0; i < 6; ++i)
        CHECK(reread.rows[0].d[i] == doctest::Approx(row.d[i]).epsilon(1e-5));

    std::ostringstream second;
    write_csv(reread, second);
    CHECK(second.str() == first.str());

    std::istringstream back2(second.str());
    std::ostringstream third;
    write_csv(read_csv(back2), third);
    CHECK(third.str() == second.str());
}

TEST_CASE("read_csv rejects header and row damage") {
    std::istringstream bad_header("QF-50,QF-60,Label\n1,2,0\n");
    CHECK_THROWS_AS((void)read_csv(bad_header), Error);

    std::istringstream unordered("QF-60,QF-50,Class Label\n1,2,0\n");
    CHECK_THROWS_AS((void)read_csv(unordered), Error);

    std::istringstream short_row("QF-50,QF-60,Class Label\n1.0,0\n");
    try {
        (void)read_csv(short_row);
        FAIL("expected malformed_row");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::malformed_row);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    std::istringstream eight_cols(
        "QF-50,QF-60,QF-70,QF-80,QF-90,QF-100,Class Label\n1,2,3,4,5,6,7,0\n");
    CHECK_THROWS_AS((void)read_csv(eight_cols), Error);

    std::istringstream bad_value("QF-50,QF-60,Class Label\n1.0,oops,0\n");
    CHECK_THROWS_AS((void)read_csv(bad_value), Error);

    std::istringstream negative("QF-50,QF-60,Class Label\n1.0,-2.0,0\n");
    CHECK_THROWS_AS((void)read_csv(negative), Error);

    std::istringstream bad_label("QF-50,QF-60,Class Label\n1.0,2.0,zero\n");
    CHECK_THROWS_AS((void)read_csv(bad_label), Error);
}

TEST_CASE("csv files round-trip through the filesystem") {
    TempDir dir;
    const Dataset ds = testsupport::synthetic_clusters(7);
    write_csv_file(ds, dir.file("data.csv"));
    const Dataset reread = read_csv_file(dir.file("data.csv"));
    CHECK(reread.rows.size() == ds.rows.size());
    CHECK(reread.qf_order == ds.qf_order);
    CHECK(reread.num_classes() == 5);

    // header is bit-exact
    const std::string text = testsupport::read_file(dir.file("data.csv"));
    CHECK(text.rfind("QF-50,QF-60,QF-70,QF-80,QF-90,QF-100,Class Label\n", 0) == 0);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "benfordsep/errors.hpp"
#include "benfordsep/jpeg_model.hpp"
#include "support/test_support.hpp"

using namespace benfordsep;

namespace {

std::array<double, 64> random_block(std::mt19937_64& rng) {
    std::array<double, 64> block;
    for (double& v : block) v = 256.0 * uniform_unit(rng) - 128.0;
    return block;
}

} // namespace

TEST_CASE("quant table at qf 50 is the base luminance table") {
    const QuantTable t = quant_table_for_qf(50);
    CHECK(t.at(0, 0) == 16);
    CHECK(t.at(0, 1) == 11);
    CHECK(t.at(7, 7) == 99);
    CHECK(t.at(4, 5) == 109);
}

TEST_CASE("quant table extremes") {
    const QuantTable top = quant_table_for_qf(100);
    for (int v : top.q) CHECK(v == 1);

    const QuantTable q90 = quant_table_for_qf(90);
    CHECK(q90.at(0, 0) == 3); // floor((16*20+50)/100)

    CHECK_THROWS_AS((void)quant_table_for_qf(0), Error);
    CHECK_THROWS_AS((void)quant_table_for_qf(101), Error);
}

TEST_CASE("quant table entries never grow with qf") {
    for (int qa = 1; qa < 100; qa += 7)
        for (int qb = qa + 1; qb <= 100; qb += 11) {
            const QuantTable coarse = quant_table_for_qf(qa);
            const QuantTable fine = quant_table_for_qf(qb);
            for (int i = 0; i < 64; ++i) CHECK(coarse.q[i] >= fine.q[i]);
        }
}

TEST_CASE("DCT of the zero and constant blocks") {
    std::array<double, 64> zeros{};
    const CoeffBlock z = forward_dct_block(zeros);
    for (double v : z.c) CHECK(v == 0.0);

    std::array<double, 64> eights;
    eights.fill(8.0);
    const CoeffBlock c = forward_dct_block(eights);
    CHECK(c.at(0, 0) == doctest::Approx(64.0).epsilon(1e-12)); // DC = 8 * mean
    for (int i = 1; i < 64; ++i) CHECK(std::fabs(c.c[i]) < 1e-12);
}

TEST_CASE("DCT matches the four-loop definition and preserves energy") {
    std::mt19937_64 rng(20240421);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::array<double, 64> block = random_block(rng);
        const CoeffBlock fast = forward_dct_block(block);
        const std::array<double, 64> direct = testsupport::oracle_dct(block);

        double in_energy = 0.0, out_energy = 0.0;
        for (int i = 0; i < 64; ++i) {
            CHECK(std::fabs(fast.c[i] - direct[i]) < 1e-9);
            in_energy += block[i] * block[i];
            out_energy += fast.c[i] * fast.c[i];
        }
        CHECK(std::fabs(out_energy - in_energy) <= 1e-6 * in_energy);
    }
}

TEST_CASE("constant images yield an empty stream") {
    const GrayImage img = testsupport::flat_image(32, 24, 200);
    for (int qf : {1, 50, 100}) {
        const CoefficientStream stream = extract_coefficients(img, qf);
        CHECK(stream.values.empty());
        CHECK(stream.n_blocks == 4 * 3);
        CHECK(stream.qf == qf);
    }
}

TEST_CASE("single-block extraction matches a hand-quantized oracle") {
    // impulse of +127 at (0,1) on a 128 background
    GrayImage img = testsupport::flat_image(8, 8, 128);
    img.pixels[1] = 255;

    std::array<double, 64> tile{};
    tile[1] = 127.0;
    const std::array<double, 64> direct = testsupport::oracle_dct(tile);

    for (int qf : {50, 100}) {
        const QuantTable table = quant_table_for_qf(qf);
        std::vector<int> expected;
        for (int i = 1; i < 64; ++i) {
            const long long q = std::llround(direct[i] / table.q[i]);
            if (q != 0) expected.push_back(static_cast<int>(q));
        }
        const CoefficientStream stream = extract_coefficients(img, qf);
        CHECK(stream.values == expected);
    }
    // qf=100 divides by ones, so the stream is just the rounded AC values
    const CoefficientStream full = extract_coefficients(img, 100);
    CHECK(!full.values.empty());
}

TEST_CASE("a weak impulse rounds away entirely") {
    // +1 above the 128 level shift: every |AC| <= 1/4, all round to zero
    GrayImage img = testsupport::flat_image(8, 8, 128);
    img.pixels[1] = 129;
    const CoefficientStream stream = extract_coefficients(img, 100);
    CHECK(stream.values.empty());
}

TEST_CASE("streams carry no zeros and no DC terms") {
    const GrayImage img = testsupport::noise_image(40, 24, 7);
    const CoefficientStream stream = extract_coefficients(img, 80);
    CHECK(!stream.values.empty());
    for (int v : stream.values) CHECK(v != 0);

    // DC exclusion: rebuild from the blocks and count AC-only values
    const std::vector<CoeffBlock> blocks = dct_blocks(img);
    const QuantTable table = quant_table_for_qf(80);
    std::size_t ac_nonzero = 0;
    for (const auto& block : blocks)
        for (int i = 1; i < 64; ++i)
            if (std::llround(block.c[i] / table.q[i]) != 0) ++ac_nonzero;
    CHECK(stream.values.size() == ac_nonzero);
}

TEST_CASE("finer quantization keeps at least as many coefficients") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        const GrayImage img = testsupport::noise_image(48, 32, seed);
        const std::size_t coarse = extract_coefficients(img, 50).values.size();
        const std::size_t fine = extract_coefficients(img, 100).values.size();
        CHECK(fine >= coarse);
    }
}

TEST_CASE("padding replicates edges for non-multiple-of-8 sizes") {
    // a 4x4 image padded by replication must equal the hand-padded 8x8
    GrayImage small = testsupport::noise_image(4, 4, 99);
    GrayImage padded;
    padded.width = 8;
    padded.height = 8;
    padded.pixels.resize(64);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            padded.pixels[r * 8 + c] = small.at(std::min(r, 3), std::min(c, 3));

    const CoefficientStream a = extract_coefficients(small, 70);
    const CoefficientStream b = extract_coefficients(padded, 70);
    CHECK(a.values == b.values);
}

TEST_CASE("extraction is deterministic") {
    const GrayImage img = testsupport::noise_image(33, 17, 321);
    const CoefficientStream a = extract_coefficients(img, 60);
    const CoefficientStream b = extract_coefficients(img, 60);
    CHECK(a.values == b.values);
    CHECK(a.n_blocks == b.n_blocks);
}

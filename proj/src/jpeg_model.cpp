#include "benfordsep/jpeg_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "benfordsep/errors.hpp"

namespace benfordsep {

namespace {

// ITU-T T.81 Annex K luminance quantization table.
constexpr std::array<int, 64> kBaseLuminance = {
    16, 11, 10, 16,  24,  40,  51,  61,
    12, 12, 14, 19,  26,  58,  60,  55,
    14, 13, 16, 24,  40,  57,  69,  56,
    14, 17, 22, 29,  51,  87,  80,  62,
    18, 22, 37, 56,  68, 109, 103,  77,
    24, 35, 55, 64,  81, 104, 113,  92,
    49, 64, 78, 87, 103, 121, 120, 101,
    72, 92, 95, 98, 112, 100, 103,  99,
};

// Orthonormal DCT-II basis: M[u][x] = c(u) cos((2x+1)u pi/16) with
// c(0) = sqrt(1/8), c(u>0) = 1/2, so that F = M f M^T matches the
// 1/4 C(u)C(v) convention exactly.
const std::array<std::array<double, 8>, 8>& dct_basis() {
    static const auto basis = [] {
        std::array<std::array<double, 8>, 8> m{};
        for (int u = 0; u < 8; ++u) {
            const double scale = u == 0 ? std::sqrt(1.0 / 8.0) : 0.5;
            for (int x = 0; x < 8; ++x)
                m[u][x] = scale * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0);
        }
        return m;
    }();
    return basis;
}

} // namespace

QuantTable quant_table_for_qf(int qf) {
    if (qf < 1 || qf > 100)
        fail(ErrorCode::qf_out_of_range, "quality factor must be in [1,100], got " + std::to_string(qf));
    const double scale = qf < 50 ? 5000.0 / qf : 200.0 - 2.0 * qf;
    QuantTable table;
    for (int i = 0; i < 64; ++i) {
        const long v = static_cast<long>(std::floor((kBaseLuminance[i] * scale + 50.0) / 100.0));
        table.q[i] = static_cast<int>(std::clamp(v, 1L, 255L));
    }
    return table;
}

CoeffBlock forward_dct_block(const std::array<double, 64>& block) {
    const auto& m = dct_basis();
    // rows first: tmp[u][y] = sum_x m[u][x] f[x][y]
    std::array<double, 64> tmp{};
    for (int u = 0; u < 8; ++u)
        for (int y = 0; y < 8; ++y) {
            double acc = 0.0;
            for (int x = 0; x < 8; ++x) acc += m[u][x] * block[x * 8 + y];
            tmp[u * 8 + y] = acc;
        }
    CoeffBlock out;
    for (int u = 0; u < 8; ++u)
        for (int v = 0; v < 8; ++v) {
            double acc = 0.0;
            for (int y = 0; y < 8; ++y) acc += tmp[u * 8 + y] * m[v][y];
            out.c[u * 8 + v] = acc;
        }
    return out;
}

std::vector<CoeffBlock> dct_blocks(const GrayImage& image) {
    const int bw = (image.width + 7) / 8;
    const int bh = (image.height + 7) / 8;
    std::vector<CoeffBlock> blocks;
    blocks.reserve(static_cast<std::size_t>(bw) * bh);

    std::array<double, 64> tile{};
    for (int by = 0; by < bh; ++by)
        for (int bx = 0; bx < bw; ++bx) {
            for (int y = 0; y < 8; ++y) {
                const int row = std::min(by * 8 + y, image.height - 1);
                for (int x = 0; x < 8; ++x) {
                    const int col = std::min(bx * 8 + x, image.width - 1);
                    tile[y * 8 + x] = static_cast<double>(image.at(row, col)) - 128.0;
                }
            }
            blocks.push_back(forward_dct_block(tile));
        }
    return blocks;
}

CoefficientStream quantize_blocks(const std::vector<CoeffBlock>& blocks, int qf) {
    const QuantTable table = quant_table_for_qf(qf);
    CoefficientStream stream;
    stream.qf = qf;
    stream.n_blocks = blocks.size();
    for (const auto& block : blocks)
        for (int i = 1; i < 64; ++i) { // i = 0 is DC
            // llround rounds halfway cases away from zero, like baseline JPEG
            const long long q = std::llround(block.c[i] / table.q[i]);
            if (q != 0) stream.values.push_back(static_cast<int>(q));
        }
    return stream;
}

CoefficientStream extract_coefficients(const GrayImage& image, int qf) {
    return quantize_blocks(dct_blocks(image), qf);
}

} // namespace benfordsep

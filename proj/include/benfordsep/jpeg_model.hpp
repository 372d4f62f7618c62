#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "benfordsep/image.hpp"

namespace benfordsep {

/// 8x8 quantization divisors, row-major, entries in [1, 255].
struct QuantTable {
    std::array<int, 64> q{};

    int at(int u, int v) const { return q[u * 8 + v]; }
};

/// 8x8 grid of real DCT coefficients; index (0,0) is the DC term.
struct CoeffBlock {
    std::array<double, 64> c{};

    double at(int u, int v) const { return c[u * 8 + v]; }
};

/// Nonzero quantized AC coefficients of one image at one quality factor.
/// An all-flat image produces an empty stream.
struct CoefficientStream {
    std::vector<int> values;
    int qf = 0;
    std::size_t n_blocks = 0;
};

/// Baseline luminance table (ITU-T T.81 Annex K) scaled for a quality factor:
/// S = 5000/qf for qf < 50 else 200 - 2*qf, entry = clamp(floor((base*S + 50)/100), 1, 255).
/// qf = 50 reproduces the base table; qf = 100 gives all ones.
QuantTable quant_table_for_qf(int qf);

/// Orthonormal 2-D DCT-II of one 8x8 tile (input already level-shifted):
/// F(u,v) = 1/4 C(u)C(v) sum f(x,y) cos((2x+1)u pi/16) cos((2y+1)v pi/16).
CoeffBlock forward_dct_block(const std::array<double, 64>& block);

/// Pre-quantization DCT blocks of the image, raster order. The image is
/// edge-replication-padded to multiples of 8 and each tile level-shifted by
/// -128 before the transform. Split out so one transform pass can be
/// quantized at several quality factors.
std::vector<CoeffBlock> dct_blocks(const GrayImage& image);

/// Divides each block by the qf table, rounds half away from zero, and keeps
/// the nonzero AC values in raster-block row-major order. DC terms and zeros
/// are discarded.
CoefficientStream quantize_blocks(const std::vector<CoeffBlock>& blocks, int qf);

/// dct_blocks followed by quantize_blocks.
CoefficientStream extract_coefficients(const GrayImage& image, int qf);

} // namespace benfordsep

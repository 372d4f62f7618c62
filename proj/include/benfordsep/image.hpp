#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace benfordsep {

/// 8-bit single-channel raster, row-major top-to-bottom.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // width * height entries
    std::string source_path;

    std::uint8_t at(int row, int col) const {
        return pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) + col];
    }
};

/// Image paths of one labeled corpus. Labels are contiguous integers 0..C-1;
/// images are loaded lazily by downstream stages.
struct LabeledImageSet {
    struct Entry {
        std::string path;
        int label = 0;
    };
    std::vector<Entry> entries;        // sorted by (label, filename)
    std::vector<std::string> label_names;
};

/// Loads a PGM (P2 or P5, maxval <= 255) or 8-bit PNG file. The format is
/// detected from the file's magic bytes, not the extension. RGB PNGs are
/// reduced to luminance by round(0.299 R + 0.587 G + 0.114 B).
///
/// Errors: unreadable_file, unsupported_format, bit_depth_unsupported (16-bit).
GrayImage load_image(const std::filesystem::path& path);

/// Enumerates a dataset laid out as <root>/<class_name>/*.{pgm,png}. Labels
/// follow label_order when given (a subdirectory not listed there is an
/// error); otherwise non-empty subdirectories are labeled in lexicographic
/// name order. Entries come out sorted by (label, filename).
LabeledImageSet scan_dataset(const std::filesystem::path& root,
                             const std::optional<std::vector<std::string>>& label_order = std::nullopt);

} // namespace benfordsep

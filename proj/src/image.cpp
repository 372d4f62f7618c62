#include "benfordsep/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>

#include <png.h>

#include "benfordsep/errors.hpp"

namespace benfordsep {

namespace {

// Skips PNM whitespace and '#' comments, then reads one unsigned integer.
long next_pnm_value(std::istream& in, const std::string& path) {
    for (;;) {
        const int c = in.peek();
        if (c == EOF) fail(ErrorCode::unreadable_file, path + ": truncated PGM header or raster");
        if (c == '#') {
            std::string line;
            std::getline(in, line);
            continue;
        }
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        break;
    }
    long value = 0;
    if (!(in >> value) || value < 0)
        fail(ErrorCode::unsupported_format, path + ": malformed PGM value");
    return value;
}

GrayImage load_pgm(std::ifstream& in, bool binary, const std::string& path) {
    const long width = next_pnm_value(in, path);
    const long height = next_pnm_value(in, path);
    const long maxval = next_pnm_value(in, path);
    if (width <= 0 || height <= 0)
        fail(ErrorCode::unsupported_format, path + ": non-positive PGM dimensions");
    if (maxval > 255)
        fail(ErrorCode::bit_depth_unsupported, path + ": PGM maxval > 255");
    if (maxval <= 0)
        fail(ErrorCode::unsupported_format, path + ": PGM maxval must be positive");

    GrayImage img;
    img.width = static_cast<int>(width);
    img.height = static_cast<int>(height);
    img.source_path = path;
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    img.pixels.resize(count);

    if (binary) {
        in.get(); // single whitespace byte after maxval
        in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in.gcount()) != count)
            fail(ErrorCode::unreadable_file, path + ": truncated P5 raster");
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const long v = next_pnm_value(in, path);
            if (v > maxval)
                fail(ErrorCode::unsupported_format, path + ": P2 sample exceeds maxval");
            img.pixels[i] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

GrayImage load_png_file(const std::string& path) {
    png_image png;
    std::memset(&png, 0, sizeof png);
    png.version = PNG_IMAGE_VERSION;

    if (!png_image_begin_read_from_file(&png, path.c_str()))
        fail(ErrorCode::unsupported_format, path + ": " + png.message);

    if (png.format & PNG_FORMAT_FLAG_LINEAR) {
        png_image_free(&png);
        fail(ErrorCode::bit_depth_unsupported, path + ": 16-bit PNG is not supported");
    }

    const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
    png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
        const std::string message = png.message;
        png_image_free(&png);
        fail(ErrorCode::unreadable_file, path + ": " + message);
    }

    GrayImage img;
    img.width = static_cast<int>(png.width);
    img.height = static_cast<int>(png.height);
    img.source_path = path;
    const std::size_t count = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
    img.pixels.resize(count);

    if (color) {
        for (std::size_t i = 0; i < count; ++i) {
            const double r = buffer[3 * i];
            const double g = buffer[3 * i + 1];
            const double b = buffer[3 * i + 2];
            const long y = std::lround(0.299 * r + 0.587 * g + 0.114 * b);
            img.pixels[i] = static_cast<std::uint8_t>(std::clamp(y, 0L, 255L));
        }
    } else {
        std::copy(buffer.begin(), buffer.end(), img.pixels.begin());
    }
    return img;
}

bool has_supported_extension(const std::filesystem::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".pgm" || ext == ".png";
}

} // namespace

GrayImage load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::unreadable_file, path.string() + ": cannot open");

    unsigned char magic[8] = {};
    in.read(reinterpret_cast<char*>(magic), sizeof magic);
    if (in.gcount() < 2)
        fail(ErrorCode::unreadable_file, path.string() + ": file too short");

    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (in.gcount() == 8 && std::memcmp(magic, png_sig, 8) == 0) {
        in.close();
        return load_png_file(path.string());
    }
    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) {
        in.clear();
        in.seekg(2);
        return load_pgm(in, magic[1] == '5', path.string());
    }
    fail(ErrorCode::unsupported_format, path.string() + ": not a PGM (P2/P5) or PNG file");
}

LabeledImageSet scan_dataset(const std::filesystem::path& root,
                             const std::optional<std::vector<std::string>>& label_order) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root))
        fail(ErrorCode::empty_dataset, root.string() + ": not a directory");

    std::set<std::string> on_disk;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (!entry.is_directory()) continue;
        const std::string name = entry.path().filename().string();
        if (!name.empty() && name.front() != '.') on_disk.insert(name);
    }

    auto list_files = [&](const std::string& dir_name) {
        std::vector<std::string> files;
        for (const auto& entry : fs::directory_iterator(root / dir_name)) {
            if (entry.is_regular_file() && has_supported_extension(entry.path()))
                files.push_back(entry.path().filename().string());
        }
        std::sort(files.begin(), files.end());
        return files;
    };

    std::vector<std::string> names;
    if (label_order) {
        for (const auto& dir : on_disk) {
            if (std::find(label_order->begin(), label_order->end(), dir) == label_order->end() &&
                !list_files(dir).empty())
                fail(ErrorCode::unknown_label_directory,
                     root.string() + ": subdirectory '" + dir + "' is not in the label order");
        }
        for (const auto& name : *label_order) {
            if (!on_disk.count(name) || list_files(name).empty())
                fail(ErrorCode::empty_dataset,
                     root.string() + ": label directory '" + name + "' is missing or has no images");
            names.push_back(name);
        }
    } else {
        for (const auto& dir : on_disk) // std::set iterates lexicographically
            if (!list_files(dir).empty()) names.push_back(dir);
    }

    LabeledImageSet set;
    for (std::size_t label = 0; label < names.size(); ++label) {
        set.label_names.push_back(names[label]);
        for (const auto& file : list_files(names[label]))
            set.entries.push_back({(root / names[label] / file).string(), static_cast<int>(label)});
    }
    if (set.entries.empty())
        fail(ErrorCode::empty_dataset, root.string() + ": no labeled images found");
    return set;
}

} // namespace benfordsep

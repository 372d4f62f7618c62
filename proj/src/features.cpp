#include "benfordsep/features.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "benfordsep/errors.hpp"

namespace benfordsep {

int Dataset::num_classes() const {
    int max_label = -1;
    for (const auto& row : rows) max_label = std::max(max_label, row.label);
    return max_label + 1;
}

FeatureVector image_feature_vector(const GrayImage& image, int label,
                                   const GblParamTable& params_by_qf,
                                   const std::vector<int>& qf_order, double chi_scale) {
    for (int qf : qf_order)
        if (!params_by_qf.count(qf))
            fail(ErrorCode::invalid_params,
                 "no generalized-law parameters for qf " + std::to_string(qf));

    const std::vector<CoeffBlock> blocks = dct_blocks(image);
    FeatureVector fv;
    fv.label = label;
    fv.source = image.source_path;
    fv.d.reserve(qf_order.size());
    for (int qf : qf_order) {
        const CoefficientStream stream = quantize_blocks(blocks, qf);
        if (stream.values.empty())
            fail(ErrorCode::degenerate_image,
                 image.source_path + ": no nonzero AC coefficients at qf " + std::to_string(qf));
        const auto [hist, dist] = digit_distribution(stream);
        const DigitDistribution model = generalized_benford(params_by_qf.at(qf));
        fv.d.push_back(chi_scale * chi_square_divergence(dist, model));
    }
    return fv;
}

BuildReport build_dataset(const LabeledImageSet& set,
                          const GblParamTable& params_by_qf,
                          const std::vector<int>& qf_order, double chi_scale) {
    BuildReport report;
    report.dataset.label_names = set.label_names;
    report.dataset.qf_order = qf_order;
    for (const auto& entry : set.entries) {
        const GrayImage image = load_image(entry.path);
        try {
            report.dataset.rows.push_back(
                image_feature_vector(image, entry.label, params_by_qf, qf_order, chi_scale));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::degenerate_image) throw;
            report.rejected.push_back(entry.path);
        }
    }
    if (report.dataset.rows.empty())
        fail(ErrorCode::all_images_degenerate, "every image produced an empty coefficient stream");
    return report;
}

// ---------------------------------------------------------------------------
// CSV: the interchange boundary between extraction and learning

namespace {

std::string format_feature(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%#.6g", v); // 6 significant digits, trailing zeros kept
    return buf;
}

std::string csv_header(const std::vector<int>& qf_order) {
    std::string header;
    for (int qf : qf_order) {
        header += "QF-";
        header += std::to_string(qf);
        header += ',';
    }
    header += "Class Label";
    return header;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

double parse_feature(const std::string& text, int line_no) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty() || errno == ERANGE || !std::isfinite(v) || v < 0.0)
        fail(ErrorCode::malformed_row,
             "line " + std::to_string(line_no) + ": bad feature value '" + text + "'");
    return v;
}

int parse_label(const std::string& text, int line_no) {
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (end != text.c_str() + text.size() || text.empty() || v < 0)
        fail(ErrorCode::malformed_row,
             "line " + std::to_string(line_no) + ": bad class label '" + text + "'");
    return static_cast<int>(v);
}

} // namespace

std::size_t write_csv(const Dataset& ds, std::ostream& sink) {
    std::string out = csv_header(ds.qf_order);
    out += '\n';
    for (const auto& row : ds.rows) {
        for (double v : row.d) {
            out += format_feature(v);
            out += ',';
        }
        out += std::to_string(row.label);
        out += '\n';
    }
    sink.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!sink)
        fail(ErrorCode::sink_write_failure, "CSV write failed");
    return out.size();
}

std::size_t write_csv_file(const Dataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorCode::sink_write_failure, path.string() + ": cannot open for writing");
    return write_csv(ds, out);
}

Dataset read_csv(std::istream& source) {
    std::string line;
    if (!std::getline(source, line))
        fail(ErrorCode::header_mismatch, "empty input, expected a QF header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    Dataset ds;
    const std::vector<std::string> head = split_fields(line);
    if (head.size() < 2 || head.back() != "Class Label")
        fail(ErrorCode::header_mismatch, "header must end with 'Class Label', got '" + line + "'");
    for (std::size_t i = 0; i + 1 < head.size(); ++i) {
        const std::string& h = head[i];
        if (h.size() < 4 || h.compare(0, 3, "QF-") != 0)
            fail(ErrorCode::header_mismatch, "bad header field '" + h + "'");
        char* end = nullptr;
        const long qf = std::strtol(h.c_str() + 3, &end, 10);
        if (end != h.c_str() + h.size() || qf < 1 || qf > 100)
            fail(ErrorCode::header_mismatch, "bad quality factor in header field '" + h + "'");
        if (!ds.qf_order.empty() && qf <= ds.qf_order.back())
            fail(ErrorCode::header_mismatch, "header quality factors must be strictly ascending");
        ds.qf_order.push_back(static_cast<int>(qf));
    }

    int line_no = 1;
    while (std::getline(source, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != ds.qf_order.size() + 1)
            fail(ErrorCode::malformed_row,
                 "line " + std::to_string(line_no) + ": expected " +
                     std::to_string(ds.qf_order.size() + 1) + " fields, got " +
                     std::to_string(fields.size()));
        FeatureVector row;
        for (std::size_t i = 0; i < ds.qf_order.size(); ++i)
            row.d.push_back(parse_feature(fields[i], line_no));
        row.label = parse_label(fields.back(), line_no);
        ds.rows.push_back(std::move(row));
    }

    for (int label = 0; label < ds.num_classes(); ++label)
        ds.label_names.push_back(std::to_string(label));
    return ds;
}

Dataset read_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::unreadable_file, path.string() + ": cannot open");
    return read_csv(in);
}

} // namespace benfordsep

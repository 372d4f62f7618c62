#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "benfordsep/errors.hpp"
#include "benfordsep/learn.hpp"

namespace benfordsep {

namespace {

constexpr const char* kMagic = "benfordsep-model v1";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v); // exact double round-trip
    return buf;
}

void write_values(std::ostream& out, const char* name, const std::vector<double>& values) {
    out << name;
    for (double v : values) out << ' ' << fmt(v);
    out << '\n';
}

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    std::string line() {
        std::string text;
        if (!std::getline(in_, text))
            fail(ErrorCode::malformed_row, "model file truncated");
        if (!text.empty() && text.back() == '\r') text.pop_back();
        return text;
    }

    std::string keyword(const std::string& expected) {
        std::string text = line();
        if (text.compare(0, expected.size(), expected) != 0 ||
            (text.size() > expected.size() && text[expected.size()] != ' '))
            fail(ErrorCode::malformed_row, "expected '" + expected + "' line, got '" + text + "'");
        return text.size() > expected.size() ? text.substr(expected.size() + 1) : std::string();
    }

    long integer(const std::string& key) {
        std::istringstream row(keyword(key));
        long v = 0;
        if (!(row >> v)) fail(ErrorCode::malformed_row, "bad integer for '" + key + "'");
        return v;
    }

    std::vector<double> values(const std::string& key, std::size_t count) {
        std::istringstream row(keyword(key));
        std::vector<double> out(count);
        for (double& v : out)
            if (!(row >> v)) fail(ErrorCode::malformed_row, "short value list for '" + key + "'");
        return out;
    }

private:
    std::istream& in_;
};

Standardizer read_standardizer(Reader& reader, std::size_t features) {
    Standardizer stats;
    stats.mean = reader.values("std_mean", features);
    stats.sd = reader.values("std_sd", features);
    return stats;
}

} // namespace

void save_model(const AnyModel& model, std::ostream& out) {
    out << kMagic << '\n';
    out << "kind " << model_kind(model) << '\n';

    if (const auto* nb = std::get_if<NbModel>(&model)) {
        out << "classes " << nb->num_classes << '\n';
        out << "features " << nb->num_features << '\n';
        write_values(out, "priors", nb->priors);
        write_values(out, "mean", nb->mean);
        write_values(out, "variance", nb->variance);
    } else if (const auto* tree = std::get_if<TreeModel>(&model)) {
        out << "classes " << tree->num_classes << '\n';
        out << "features " << tree->num_features << '\n';
        out << "criterion " << tree->criterion << '\n';
        out << "nodes " << tree->nodes.size() << '\n';
        for (const auto& node : tree->nodes)
            out << node.feature << ' ' << fmt(node.threshold) << ' ' << node.left << ' '
                << node.right << ' ' << node.leaf_label << '\n';
    } else if (const auto* lr = std::get_if<LrModel>(&model)) {
        out << "classes " << lr->num_classes << '\n';
        out << "features " << lr->num_features << '\n';
        write_values(out, "std_mean", lr->standardizer.mean);
        write_values(out, "std_sd", lr->standardizer.sd);
        write_values(out, "weights", lr->weights);
        write_values(out, "bias", lr->bias);
    } else if (const auto* cnn = std::get_if<CnnModel>(&model)) {
        out << "classes " << cnn->num_classes << '\n';
        out << "features " << cnn->num_features << '\n';
        out << "kernel " << CnnModel::kKernel << '\n';
        out << "channels " << CnnModel::kChannels << '\n';
        write_values(out, "std_mean", cnn->standardizer.mean);
        write_values(out, "std_sd", cnn->standardizer.sd);
        write_values(out, "conv_w", cnn->conv_w);
        write_values(out, "conv_b", cnn->conv_b);
        write_values(out, "dense_w", cnn->dense_w);
        write_values(out, "dense_b", cnn->dense_b);
    }
    out << "end\n";
    if (!out) fail(ErrorCode::sink_write_failure, "model write failed");
}

void save_model_file(const AnyModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::sink_write_failure, path.string() + ": cannot open for writing");
    save_model(model, out);
}

AnyModel load_model(std::istream& in) {
    Reader reader(in);
    if (reader.line() != kMagic)
        fail(ErrorCode::header_mismatch, "not a benfordsep model file");
    const std::string kind = reader.keyword("kind");

    AnyModel model;
    if (kind == "naive_bayes") {
        NbModel nb;
        nb.num_classes = static_cast<int>(reader.integer("classes"));
        nb.num_features = static_cast<int>(reader.integer("features"));
        const auto cf = static_cast<std::size_t>(nb.num_classes) * nb.num_features;
        nb.priors = reader.values("priors", nb.num_classes);
        nb.mean = reader.values("mean", cf);
        nb.variance = reader.values("variance", cf);
        model = std::move(nb);
    } else if (kind == "decision_tree") {
        TreeModel tree;
        tree.num_classes = static_cast<int>(reader.integer("classes"));
        tree.num_features = static_cast<int>(reader.integer("features"));
        tree.criterion = reader.keyword("criterion");
        const long count = reader.integer("nodes");
        for (long i = 0; i < count; ++i) {
            std::istringstream row(reader.line());
            TreeModel::Node node;
            if (!(row >> node.feature >> node.threshold >> node.left >> node.right >> node.leaf_label))
                fail(ErrorCode::malformed_row, "bad tree node row");
            tree.nodes.push_back(node);
        }
        model = std::move(tree);
    } else if (kind == "logistic_regression") {
        LrModel lr;
        lr.num_classes = static_cast<int>(reader.integer("classes"));
        lr.num_features = static_cast<int>(reader.integer("features"));
        lr.standardizer = read_standardizer(reader, lr.num_features);
        lr.weights = reader.values("weights", static_cast<std::size_t>(lr.num_classes) * lr.num_features);
        lr.bias = reader.values("bias", lr.num_classes);
        model = std::move(lr);
    } else if (kind == "cnn") {
        CnnModel cnn;
        cnn.num_classes = static_cast<int>(reader.integer("classes"));
        cnn.num_features = static_cast<int>(reader.integer("features"));
        if (reader.integer("kernel") != CnnModel::kKernel ||
            reader.integer("channels") != CnnModel::kChannels)
            fail(ErrorCode::malformed_row, "conv architecture constants do not match this build");
        cnn.standardizer = read_standardizer(reader, cnn.num_features);
        const auto hidden = static_cast<std::size_t>(CnnModel::kChannels) * cnn.num_features;
        cnn.conv_w = reader.values("conv_w", static_cast<std::size_t>(CnnModel::kChannels) * CnnModel::kKernel);
        cnn.conv_b = reader.values("conv_b", CnnModel::kChannels);
        cnn.dense_w = reader.values("dense_w", static_cast<std::size_t>(cnn.num_classes) * hidden);
        cnn.dense_b = reader.values("dense_b", cnn.num_classes);
        model = std::move(cnn);
    } else {
        fail(ErrorCode::malformed_row, "unknown model kind '" + kind + "'");
    }
    reader.keyword("end");
    return model;
}

AnyModel load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::unreadable_file, path.string() + ": cannot open");
    return load_model(in);
}

} // namespace benfordsep

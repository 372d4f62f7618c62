#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "benfordsep/cli.hpp"
#include "benfordsep/errors.hpp"
#include "benfordsep/learn.hpp"

namespace py = pybind11;
using namespace benfordsep;

namespace {

GrayImage image_from_array(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a,
                           const std::string& source) {
    if (a.ndim() != 2)
        throw py::value_error("expected a 2-D uint8 array (height x width)");
    GrayImage img;
    img.height = static_cast<int>(a.shape(0));
    img.width = static_cast<int>(a.shape(1));
    img.source_path = source;
    img.pixels.assign(a.data(), a.data() + a.size());
    return img;
}

py::array_t<std::uint8_t> image_to_array(const GrayImage& img) {
    py::array_t<std::uint8_t> out({img.height, img.width});
    std::copy(img.pixels.begin(), img.pixels.end(), out.mutable_data());
    return out;
}

template <typename Model>
AnyModel as_any(const Model& m) {
    return AnyModel(m);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "First-digit-law divergence features from JPEG-model coefficients, "
              "with from-scratch classifiers for image source identification";
    m.attr("__version__") = kToolVersion;

    py::register_exception<Error>(m, "BenfordsepError");

    // -- images ------------------------------------------------------------
    py::class_<GrayImage>(m, "GrayImage")
        .def(py::init(&image_from_array), py::arg("pixels"), py::arg("source") = "")
        .def_readonly("width", &GrayImage::width)
        .def_readonly("height", &GrayImage::height)
        .def_readonly("source_path", &GrayImage::source_path)
        .def_property_readonly("pixels", &image_to_array)
        .def("__repr__", [](const GrayImage& img) {
            std::ostringstream out;
            out << "GrayImage(" << img.width << "x" << img.height << ")";
            return out.str();
        });

    py::class_<LabeledImageSet::Entry>(m, "DatasetEntry")
        .def_readonly("path", &LabeledImageSet::Entry::path)
        .def_readonly("label", &LabeledImageSet::Entry::label);

    py::class_<LabeledImageSet>(m, "LabeledImageSet")
        .def_readonly("entries", &LabeledImageSet::entries)
        .def_readonly("label_names", &LabeledImageSet::label_names);

    m.def("load_image", &load_image, py::arg("path"));
    m.def("scan_dataset", &scan_dataset, py::arg("root"), py::arg("label_order") = std::nullopt);

    // -- jpeg model ----------------------------------------------------------
    py::class_<QuantTable>(m, "QuantTable")
        .def_property_readonly("q", [](const QuantTable& t) {
            return std::vector<int>(t.q.begin(), t.q.end());
        });

    py::class_<CoefficientStream>(m, "CoefficientStream")
        .def_readonly("values", &CoefficientStream::values)
        .def_readonly("qf", &CoefficientStream::qf)
        .def_readonly("n_blocks", &CoefficientStream::n_blocks)
        .def("__len__", [](const CoefficientStream& s) { return s.values.size(); });

    m.def("quant_table_for_qf", &quant_table_for_qf, py::arg("qf"));
    m.def("forward_dct_block", [](const std::vector<double>& block) {
        if (block.size() != 64) throw py::value_error("expected 64 level-shifted samples");
        std::array<double, 64> tile;
        std::copy(block.begin(), block.end(), tile.begin());
        const CoeffBlock out = forward_dct_block(tile);
        return std::vector<double>(out.c.begin(), out.c.end());
    }, py::arg("block"));
    m.def("extract_coefficients", &extract_coefficients, py::arg("image"), py::arg("qf"));

    // -- first-digit law -----------------------------------------------------
    py::class_<DigitHistogram>(m, "DigitHistogram")
        .def_property_readonly("counts", [](const DigitHistogram& h) {
            return std::vector<std::int64_t>(h.counts.begin(), h.counts.end());
        })
        .def_readonly("total", &DigitHistogram::total);

    py::class_<DigitDistribution>(m, "DigitDistribution")
        .def(py::init([](const std::vector<double>& p) {
            if (p.size() != 9) throw py::value_error("expected 9 probabilities");
            DigitDistribution d;
            std::copy(p.begin(), p.end(), d.p.begin());
            return d;
        }), py::arg("p"))
        .def_property_readonly("p", [](const DigitDistribution& d) {
            return std::vector<double>(d.p.begin(), d.p.end());
        })
        .def("sum", &DigitDistribution::sum);

    py::class_<GblParams>(m, "GblParams")
        .def(py::init([](double n, double q, double s, std::optional<int> qf) {
            return GblParams{n, q, s, qf};
        }), py::arg("n_factor"), py::arg("q_exp"), py::arg("s_shift"), py::arg("qf") = std::nullopt)
        .def_readwrite("n_factor", &GblParams::n_factor)
        .def_readwrite("q_exp", &GblParams::q_exp)
        .def_readwrite("s_shift", &GblParams::s_shift)
        .def_readwrite("qf", &GblParams::qf);

    py::class_<FitResult>(m, "FitResult")
        .def_readonly("params", &FitResult::params)
        .def_readonly("sse", &FitResult::sse)
        .def_readonly("iterations", &FitResult::iterations)
        .def_readonly("converged", &FitResult::converged);

    py::class_<FitConfig>(m, "FitConfig")
        .def(py::init<>())
        .def_readwrite("n_lo", &FitConfig::n_lo)
        .def_readwrite("n_hi", &FitConfig::n_hi)
        .def_readwrite("q_lo", &FitConfig::q_lo)
        .def_readwrite("q_hi", &FitConfig::q_hi)
        .def_readwrite("s_lo", &FitConfig::s_lo)
        .def_readwrite("s_hi", &FitConfig::s_hi)
        .def_readwrite("starts_per_axis", &FitConfig::starts_per_axis)
        .def_readwrite("tolerance", &FitConfig::tolerance)
        .def_readwrite("max_iterations", &FitConfig::max_iterations);

    m.def("first_digit", [](double v) { return first_digit(v); }, py::arg("value"));
    m.def("standard_benford", &standard_benford);
    m.def("generalized_benford", &generalized_benford, py::arg("params"));
    m.def("digit_distribution", &digit_distribution, py::arg("stream"));
    m.def("chi_square_divergence", &chi_square_divergence, py::arg("actual"), py::arg("model"));
    m.def("fit_gbl_params", &fit_gbl_params, py::arg("empirical"), py::arg("config") = FitConfig{});
    m.def("gbl_sse", &gbl_sse, py::arg("empirical"), py::arg("params"));
    m.def("builtin_gbl_table", [] { return builtin_gbl_table(); });
    m.def("load_gbl_params", &load_gbl_params, py::arg("file"));

    // -- features --------------------------------------------------------------
    py::class_<FeatureVector>(m, "FeatureVector")
        .def_readonly("d", &FeatureVector::d)
        .def_readonly("label", &FeatureVector::label)
        .def_readonly("source", &FeatureVector::source);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<>())
        .def_readwrite("rows", &Dataset::rows)
        .def_readwrite("label_names", &Dataset::label_names)
        .def_readwrite("qf_order", &Dataset::qf_order)
        .def("num_classes", &Dataset::num_classes)
        .def("__len__", [](const Dataset& ds) { return ds.rows.size(); });

    py::class_<BuildReport>(m, "BuildReport")
        .def_readonly("dataset", &BuildReport::dataset)
        .def_readonly("rejected", &BuildReport::rejected);

    m.attr("DEFAULT_QF_ORDER") = kDefaultQfOrder;
    m.attr("CHI_SQUARE_SCALE") = kChiSquareScale;

    m.def("image_feature_vector", &image_feature_vector, py::arg("image"), py::arg("label"),
          py::arg("params_by_qf"), py::arg("qf_order") = kDefaultQfOrder,
          py::arg("chi_scale") = kChiSquareScale);
    m.def("build_dataset", &build_dataset, py::arg("set"), py::arg("params_by_qf"),
          py::arg("qf_order") = kDefaultQfOrder, py::arg("chi_scale") = kChiSquareScale);
    m.def("write_csv", &write_csv_file, py::arg("dataset"), py::arg("path"));
    m.def("read_csv", &read_csv_file, py::arg("path"));

    // -- learning ----------------------------------------------------------------
    py::class_<SplitConfig>(m, "SplitConfig")
        .def(py::init([](double train_fraction, std::uint64_t seed, bool stratified) {
            return SplitConfig{train_fraction, seed, stratified};
        }), py::arg("train_fraction") = 0.7, py::arg("seed") = 42, py::arg("stratified") = true)
        .def_readwrite("train_fraction", &SplitConfig::train_fraction)
        .def_readwrite("seed", &SplitConfig::seed)
        .def_readwrite("stratified", &SplitConfig::stratified);

    py::class_<Standardizer>(m, "Standardizer")
        .def_readonly("mean", &Standardizer::mean)
        .def_readonly("sd", &Standardizer::sd)
        .def("apply", &Standardizer::apply, py::arg("features"));

    py::class_<NbModel>(m, "NbModel")
        .def_readonly("num_classes", &NbModel::num_classes)
        .def_readonly("num_features", &NbModel::num_features)
        .def_readonly("priors", &NbModel::priors)
        .def_readonly("mean", &NbModel::mean)
        .def_readonly("variance", &NbModel::variance);

    py::class_<TreeModel>(m, "TreeModel")
        .def_readonly("num_classes", &TreeModel::num_classes)
        .def_readonly("num_features", &TreeModel::num_features)
        .def_property_readonly("node_count", [](const TreeModel& t) { return t.nodes.size(); });

    py::class_<LrModel>(m, "LrModel")
        .def_readonly("num_classes", &LrModel::num_classes)
        .def_readonly("num_features", &LrModel::num_features)
        .def_readonly("weights", &LrModel::weights)
        .def_readonly("bias", &LrModel::bias)
        .def_readonly("loss_curve", &LrModel::loss_curve);

    py::class_<CnnModel>(m, "CnnModel")
        .def_readonly("num_classes", &CnnModel::num_classes)
        .def_readonly("num_features", &CnnModel::num_features)
        .def_readonly("conv_w", &CnnModel::conv_w)
        .def_readonly("conv_b", &CnnModel::conv_b)
        .def_readonly("dense_w", &CnnModel::dense_w)
        .def_readonly("dense_b", &CnnModel::dense_b)
        .def_readonly("loss_curve", &CnnModel::loss_curve)
        .def_readonly("accuracy_curve", &CnnModel::accuracy_curve);

    py::class_<Prediction>(m, "Prediction")
        .def_readonly("label", &Prediction::label)
        .def_readonly("scores", &Prediction::scores);

    py::class_<EvalReport::PerClass>(m, "PerClassMetrics")
        .def_readonly("tp", &EvalReport::PerClass::tp)
        .def_readonly("tn", &EvalReport::PerClass::tn)
        .def_readonly("fp", &EvalReport::PerClass::fp)
        .def_readonly("fn", &EvalReport::PerClass::fn)
        .def_readonly("precision", &EvalReport::PerClass::precision)
        .def_readonly("recall", &EvalReport::PerClass::recall)
        .def_readonly("f1", &EvalReport::PerClass::f1);

    py::class_<EvalReport>(m, "EvalReport")
        .def_readonly("accuracy", &EvalReport::accuracy)
        .def_readonly("macro_precision", &EvalReport::macro_precision)
        .def_readonly("macro_recall", &EvalReport::macro_recall)
        .def_readonly("macro_f1", &EvalReport::macro_f1)
        .def_readonly("confusion", &EvalReport::confusion)
        .def_readonly("per_class", &EvalReport::per_class)
        .def_readonly("zero_prediction_classes", &EvalReport::zero_prediction_classes);

    m.def("stratified_split", &stratified_split, py::arg("dataset"), py::arg("config") = SplitConfig{});
    m.def("fit_standardizer", &fit_standardizer, py::arg("train"));
    m.def("apply_standardizer", &apply_standardizer, py::arg("stats"), py::arg("dataset"));
    m.def("standardize", &standardize, py::arg("train"), py::arg("others"));

    m.def("train_naive_bayes", &train_naive_bayes, py::arg("train"));
    m.def("train_decision_tree",
          [](const Dataset& train, int max_depth, int min_leaf) {
              return train_decision_tree(train, TreeConfig{max_depth, min_leaf});
          },
          py::arg("train"), py::arg("max_depth") = -1, py::arg("min_leaf") = 1);
    m.def("train_logistic_regression",
          [](const Dataset& scaled_train, const Standardizer& stats, double learning_rate,
             int epochs, double l2) {
              return train_logistic_regression(scaled_train, stats, LrHyper{learning_rate, epochs, l2});
          },
          py::arg("scaled_train"), py::arg("stats"), py::arg("learning_rate") = 0.1,
          py::arg("epochs") = 500, py::arg("l2") = 0.0);
    m.def("train_cnn",
          [](const Dataset& scaled_train, const Standardizer& stats, double learning_rate,
             int epochs, int batch_size, std::uint64_t seed) {
              return train_cnn(scaled_train, stats, CnnHyper{learning_rate, epochs, batch_size, seed});
          },
          py::arg("scaled_train"), py::arg("stats"), py::arg("learning_rate") = 0.01,
          py::arg("epochs") = 150, py::arg("batch_size") = 16, py::arg("seed") = 42);

    m.def("predict", [](const NbModel& m_, const std::vector<double>& x) { return predict(m_, x); });
    m.def("predict", [](const TreeModel& m_, const std::vector<double>& x) { return predict(m_, x); });
    m.def("predict", [](const LrModel& m_, const std::vector<double>& x) { return predict(m_, x); });
    m.def("predict", [](const CnnModel& m_, const std::vector<double>& x) { return predict(m_, x); });

    m.def("evaluate", [](const NbModel& m_, const Dataset& test) { return evaluate(as_any(m_), test); });
    m.def("evaluate", [](const TreeModel& m_, const Dataset& test) { return evaluate(as_any(m_), test); });
    m.def("evaluate", [](const LrModel& m_, const Dataset& test) { return evaluate(as_any(m_), test); });
    m.def("evaluate", [](const CnnModel& m_, const Dataset& test) { return evaluate(as_any(m_), test); });

    auto save = [](const AnyModel& model, const std::filesystem::path& path) {
        save_model_file(model, path);
    };
    m.def("save_model", [save](const NbModel& m_, const std::filesystem::path& p) { save(m_, p); });
    m.def("save_model", [save](const TreeModel& m_, const std::filesystem::path& p) { save(m_, p); });
    m.def("save_model", [save](const LrModel& m_, const std::filesystem::path& p) { save(m_, p); });
    m.def("save_model", [save](const CnnModel& m_, const std::filesystem::path& p) { save(m_, p); });
    m.def("load_model", [](const std::filesystem::path& path) -> py::object {
        return std::visit([](auto&& m_) -> py::object { return py::cast(m_); },
                          load_model_file(path));
    }, py::arg("path"));

    // -- CLI ------------------------------------------------------------------
    m.def("run_cli", &run_cli, py::arg("args"),
          "Run one CLI invocation in-process; returns the exit code");
}

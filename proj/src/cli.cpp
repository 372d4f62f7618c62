#include "benfordsep/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "benfordsep/errors.hpp"
#include "benfordsep/learn.hpp"

namespace benfordsep {

namespace {

using ordered_json = nlohmann::ordered_json;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::unreadable_file:
        case ErrorCode::sink_write_failure:
            return 1;
        case ErrorCode::class_too_small:
        case ErrorCode::class_absent:
        case ErrorCode::single_class:
            return 3;
        default:
            return 2;
    }
}

void validate_qf_list(const std::vector<int>& qfs) {
    if (qfs.empty())
        fail(ErrorCode::invalid_params, "the qf list must not be empty");
    for (std::size_t i = 0; i < qfs.size(); ++i) {
        if (qfs[i] < 1 || qfs[i] > 100)
            fail(ErrorCode::qf_out_of_range, "qf " + std::to_string(qfs[i]) + " out of [1,100]");
        if (i > 0 && qfs[i] <= qfs[i - 1])
            fail(ErrorCode::invalid_params, "qf list must be strictly ascending with no duplicates");
    }
}

GblParamTable resolve_param_table(const std::string& override_path, const std::vector<int>& qfs) {
    GblParamTable table = builtin_gbl_table();
    if (!override_path.empty())
        for (const auto& [qf, params] : load_gbl_params(override_path)) table[qf] = params;
    for (int qf : qfs)
        if (!table.count(qf))
            fail(ErrorCode::invalid_params,
                 "no model parameters for qf " + std::to_string(qf) + "; supply them via --params");
    return table;
}

// ---------------------------------------------------------------------------

struct ExtractOptions {
    std::string data_dir;
    std::string out_csv;
    std::vector<int> qfs = kDefaultQfOrder;
    std::string params_file;
    double chi_scale = kChiSquareScale;
};

int cmd_extract(const ExtractOptions& opt) {
    validate_qf_list(opt.qfs);
    const GblParamTable table = resolve_param_table(opt.params_file, opt.qfs);
    const LabeledImageSet set = scan_dataset(opt.data_dir);
    const BuildReport report = build_dataset(set, table, opt.qfs, opt.chi_scale);
    write_csv_file(report.dataset, opt.out_csv);

    ordered_json config;
    config["data"] = opt.data_dir;
    config["out"] = opt.out_csv;
    config["qf"] = opt.qfs;
    config["params"] = opt.params_file;
    config["chi_scale"] = opt.chi_scale;
    std::cout << "config: " << config.dump() << '\n';
    std::cout << "rows: " << report.dataset.rows.size() << '\n';
    std::cout << "classes: " << report.dataset.label_names.size() << '\n';
    std::cout << "rejected: " << report.rejected.size() << '\n';
    for (const auto& path : report.rejected) std::cout << "rejected-image: " << path << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

struct FitOptions {
    std::string dist_file;
    std::string image_path;
    int qf = 0;
};

DigitDistribution read_distribution_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::unreadable_file, path + ": cannot open");
    DigitDistribution dist;
    for (int i = 0; i < 9; ++i)
        if (!(in >> dist.p[i]))
            fail(ErrorCode::invalid_params, path + ": expected 9 probabilities");
    double extra;
    if (in >> extra)
        fail(ErrorCode::invalid_params, path + ": more than 9 values");
    for (double v : dist.p)
        if (!(v >= 0.0) || !std::isfinite(v))
            fail(ErrorCode::invalid_params, path + ": probabilities must be finite and non-negative");
    const double sum = dist.sum();
    if (sum < 0.99 || sum > 1.01)
        fail(ErrorCode::invalid_params,
             path + ": probabilities sum to " + std::to_string(sum) + ", expected ~1");
    return dist;
}

int cmd_fit(const FitOptions& opt) {
    DigitDistribution empirical;
    if (!opt.dist_file.empty()) {
        empirical = read_distribution_file(opt.dist_file);
    } else {
        const GrayImage image = load_image(opt.image_path);
        const CoefficientStream stream = extract_coefficients(image, opt.qf);
        empirical = digit_distribution(stream).second;
    }

    const FitResult fit = fit_gbl_params(empirical);
    ordered_json out;
    out["n_factor"] = fit.params.n_factor;
    out["q_exp"] = fit.params.q_exp;
    out["s_shift"] = fit.params.s_shift;
    out["sse"] = fit.sse;
    out["iterations"] = fit.iterations;
    out["converged"] = fit.converged;
    std::cout << out.dump(2) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

struct TrainEvalOptions {
    std::string csv_path;
    std::string model = "all";
    std::uint64_t seed = 42;
    double train_fraction = 0.7;
    std::string report_path;
    std::string curves_dir;
};

ordered_json eval_to_json(const EvalReport& report) {
    ordered_json out;
    out["accuracy"] = report.accuracy;
    out["macro_precision"] = report.macro_precision;
    out["macro_recall"] = report.macro_recall;
    out["macro_f1"] = report.macro_f1;
    out["confusion"] = report.confusion;
    ordered_json per_class = ordered_json::array();
    for (const auto& pc : report.per_class) {
        ordered_json row;
        row["tp"] = pc.tp;
        row["tn"] = pc.tn;
        row["fp"] = pc.fp;
        row["fn"] = pc.fn;
        row["precision"] = pc.precision;
        row["recall"] = pc.recall;
        row["f1"] = pc.f1;
        per_class.push_back(std::move(row));
    }
    out["per_class"] = std::move(per_class);
    out["zero_prediction_classes"] = report.zero_prediction_classes;
    return out;
}

void write_curve_csv(const std::filesystem::path& path, const char* value_name,
                     const std::vector<double>& values) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorCode::sink_write_failure, path.string() + ": cannot open for writing");
    out << "epoch," << value_name << '\n';
    for (std::size_t i = 0; i < values.size(); ++i) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", values[i]);
        out << (i + 1) << ',' << buf << '\n';
    }
    if (!out)
        fail(ErrorCode::sink_write_failure, path.string() + ": write failed");
}

int cmd_train_eval(const TrainEvalOptions& opt) {
    const auto t_total = Clock::now();
    const Dataset ds = read_csv_file(opt.csv_path);

    const bool want_all = opt.model == "all";
    auto wants = [&](const char* name) { return want_all || opt.model == name; };

    SplitConfig split_cfg;
    split_cfg.seed = opt.seed;
    split_cfg.train_fraction = opt.train_fraction;
    const auto [train, test] = stratified_split(ds, split_cfg);

    ordered_json report;
    report["tool"] = {{"name", "benfordsep"}, {"version", kToolVersion}};
    report["command"] = "train-eval";
    report["config"] = {
        {"csv", opt.csv_path},
        {"model", opt.model},
        {"seed", opt.seed},
        {"train_fraction", opt.train_fraction},
        {"report", opt.report_path},
        {"curves_dir", opt.curves_dir},
    };

    std::vector<std::int64_t> per_class_rows(ds.num_classes(), 0);
    for (const auto& row : ds.rows) ++per_class_rows[row.label];
    report["data"] = {
        {"rows", ds.rows.size()},
        {"classes", ds.num_classes()},
        {"label_names", ds.label_names},
        {"per_class_rows", per_class_rows},
        {"train_rows", train.rows.size()},
        {"test_rows", test.rows.size()},
    };

    ordered_json results = ordered_json::object();
    ordered_json curves = ordered_json::object();
    ordered_json timings = ordered_json::object();

    Standardizer stats;
    Dataset scaled_train;
    if (wants("logreg") || wants("cnn")) {
        stats = fit_standardizer(train);
        scaled_train = apply_standardizer(stats, train);
    }

    if (wants("nb")) {
        const auto t = Clock::now();
        const NbModel model = train_naive_bayes(train);
        results["naive_bayes"] = eval_to_json(evaluate(model, test));
        timings["naive_bayes_ms"] = ms_since(t);
    }
    if (wants("tree")) {
        const auto t = Clock::now();
        const TreeModel model = train_decision_tree(train);
        results["decision_tree"] = eval_to_json(evaluate(model, test));
        timings["decision_tree_ms"] = ms_since(t);
    }
    if (wants("logreg")) {
        const auto t = Clock::now();
        const LrModel model = train_logistic_regression(scaled_train, stats);
        results["logistic_regression"] = eval_to_json(evaluate(model, test));
        curves["logistic_regression"] = {{"loss", model.loss_curve}};
        if (!opt.curves_dir.empty())
            write_curve_csv(std::filesystem::path(opt.curves_dir) / "logreg_loss.csv", "loss",
                            model.loss_curve);
        timings["logistic_regression_ms"] = ms_since(t);
    }
    if (wants("cnn")) {
        const auto t = Clock::now();
        CnnHyper hyper;
        hyper.seed = opt.seed;
        const CnnModel model = train_cnn(scaled_train, stats, hyper);
        results["cnn"] = eval_to_json(evaluate(model, test));
        curves["cnn"] = {{"loss", model.loss_curve}, {"accuracy", model.accuracy_curve}};
        if (!opt.curves_dir.empty()) {
            write_curve_csv(std::filesystem::path(opt.curves_dir) / "cnn_loss.csv", "loss",
                            model.loss_curve);
            write_curve_csv(std::filesystem::path(opt.curves_dir) / "cnn_accuracy.csv", "accuracy",
                            model.accuracy_curve);
        }
        timings["cnn_ms"] = ms_since(t);
    }

    report["results"] = std::move(results);
    report["curves"] = std::move(curves);
    report["rejected_images"] = ordered_json::array();
    timings["total_ms"] = ms_since(t_total);
    report["timings_ms"] = std::move(timings);

    const std::string text = report.dump(2) + "\n";
    if (opt.report_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opt.report_path, std::ios::binary);
        if (!out)
            fail(ErrorCode::sink_write_failure, opt.report_path + ": cannot open for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out)
            fail(ErrorCode::sink_write_failure, opt.report_path + ": write failed");
    }

    for (const auto& [name, result] : report["results"].items())
        std::cout << name << " accuracy: " << result["accuracy"].dump() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

struct CoeffsOptions {
    std::string image_path;
    int qf = 0;
    std::string out_path;
};

int cmd_coeffs(const CoeffsOptions& opt) {
    const GrayImage image = load_image(opt.image_path);
    const CoefficientStream stream = extract_coefficients(image, opt.qf);
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out)
        fail(ErrorCode::sink_write_failure, opt.out_path + ": cannot open for writing");
    for (int v : stream.values) out << v << '\n';
    if (!out)
        fail(ErrorCode::sink_write_failure, opt.out_path + ": write failed");
    std::cout << "coefficients: " << stream.values.size() << '\n';
    std::cout << "blocks: " << stream.n_blocks << '\n';
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"First-digit-law divergence features from JPEG-model coefficients, with from-scratch classifiers"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    ExtractOptions extract;
    auto* cmd_ex = app.add_subcommand("extract", "Scan a labeled image tree and write the divergence feature CSV");
    cmd_ex->add_option("--data", extract.data_dir, "Dataset root: one subdirectory per class")->required();
    cmd_ex->add_option("--out", extract.out_csv, "Output CSV path")->required();
    cmd_ex->add_option("--qf", extract.qfs, "Quality factors, ascending")->delimiter(',');
    cmd_ex->add_option("--params", extract.params_file, "Model parameter override file: lines 'qf N q s'");
    cmd_ex->add_option("--chi-scale", extract.chi_scale, "Scale applied to chi-square divergences");

    FitOptions fit;
    auto* cmd_f = app.add_subcommand("fit", "Fit generalized-law parameters to a digit distribution");
    auto* dist_opt = cmd_f->add_option("--dist", fit.dist_file, "File with 9 digit probabilities");
    auto* image_opt = cmd_f->add_option("--image", fit.image_path, "Image to reduce to a digit distribution");
    cmd_f->add_option("--qf", fit.qf, "Quality factor for --image")->check(CLI::Range(1, 100));
    image_opt->excludes(dist_opt);
    image_opt->needs(cmd_f->get_option("--qf"));

    TrainEvalOptions train_eval;
    auto* cmd_te = app.add_subcommand("train-eval", "Split a feature CSV, train classifiers, evaluate, write a report");
    cmd_te->add_option("--csv", train_eval.csv_path, "Feature CSV")->required();
    cmd_te->add_option("--model", train_eval.model, "nb|tree|logreg|cnn|all")
        ->check(CLI::IsMember({"nb", "tree", "logreg", "cnn", "all"}));
    cmd_te->add_option("--seed", train_eval.seed, "Split and training seed");
    cmd_te->add_option("--train-frac", train_eval.train_fraction, "Training fraction of each class");
    cmd_te->add_option("--report", train_eval.report_path, "Report JSON path (stdout when omitted)");
    cmd_te->add_option("--curves-dir", train_eval.curves_dir, "Directory for epoch,loss / epoch,accuracy CSVs");

    CoeffsOptions coeffs;
    auto* cmd_co = app.add_subcommand("coeffs", "Dump quantized coefficients of one image, one integer per line");
    cmd_co->add_option("--image", coeffs.image_path, "Image path")->required();
    cmd_co->add_option("--qf", coeffs.qf, "Quality factor")->required()->check(CLI::Range(1, 100));
    cmd_co->add_option("--out", coeffs.out_path, "Output text file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForVersion& e) {
        std::cout << kToolVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }

    try {
        if (cmd_ex->parsed()) return cmd_extract(extract);
        if (cmd_f->parsed()) {
            if (fit.dist_file.empty() && fit.image_path.empty()) {
                std::cerr << "fit: either --dist or --image is required\n";
                return 2;
            }
            return cmd_fit(fit);
        }
        if (cmd_te->parsed()) {
            if (!train_eval.curves_dir.empty())
                std::filesystem::create_directories(train_eval.curves_dir);
            return cmd_train_eval(train_eval);
        }
        if (cmd_co->parsed()) return cmd_coeffs(coeffs);
    } catch (const Error& e) {
        std::cerr << "error (" << error_code_name(e.code()) << "): " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace benfordsep

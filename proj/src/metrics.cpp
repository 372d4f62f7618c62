#include <algorithm>
#include <variant>

#include "benfordsep/errors.hpp"
#include "benfordsep/learn.hpp"

namespace benfordsep {

const char* model_kind(const AnyModel& model) {
    switch (model.index()) {
        case 0: return "naive_bayes";
        case 1: return "decision_tree";
        case 2: return "logistic_regression";
        case 3: return "cnn";
    }
    return "unknown";
}

Prediction predict(const AnyModel& model, const std::vector<double>& features) {
    return std::visit([&](const auto& m) { return predict(m, features); }, model);
}

EvalReport evaluate(const AnyModel& model, const Dataset& test) {
    if (test.rows.empty())
        fail(ErrorCode::empty_dataset, "no test rows to evaluate");

    int classes = test.num_classes();
    classes = std::max(classes,
                       std::visit([](const auto& m) { return m.num_classes; }, model));

    EvalReport report;
    report.confusion.assign(classes, std::vector<std::int64_t>(classes, 0));
    for (const auto& row : test.rows) {
        const Prediction pred = predict(model, row.d);
        ++report.confusion[row.label][pred.label];
    }

    const auto total = static_cast<std::int64_t>(test.rows.size());
    std::int64_t trace = 0;
    for (int c = 0; c < classes; ++c) trace += report.confusion[c][c];
    report.accuracy = static_cast<double>(trace) / static_cast<double>(total);

    report.per_class.resize(classes);
    for (int c = 0; c < classes; ++c) {
        auto& pc = report.per_class[c];
        std::int64_t row_sum = 0, col_sum = 0;
        for (int k = 0; k < classes; ++k) {
            row_sum += report.confusion[c][k];
            col_sum += report.confusion[k][c];
        }
        pc.tp = report.confusion[c][c];
        pc.fp = col_sum - pc.tp;
        pc.fn = row_sum - pc.tp;
        pc.tn = total - pc.tp - pc.fp - pc.fn;

        if (pc.tp + pc.fp > 0) {
            pc.precision = static_cast<double>(pc.tp) / static_cast<double>(pc.tp + pc.fp);
        } else {
            pc.precision = 0.0;
            report.zero_prediction_classes.push_back(c);
        }
        pc.recall = pc.tp + pc.fn > 0
                        ? static_cast<double>(pc.tp) / static_cast<double>(pc.tp + pc.fn)
                        : 0.0;
        pc.f1 = pc.precision + pc.recall > 0.0
                    ? 2.0 * pc.precision * pc.recall / (pc.precision + pc.recall)
                    : 0.0;

        report.macro_precision += pc.precision;
        report.macro_recall += pc.recall;
        report.macro_f1 += pc.f1;
    }
    report.macro_precision /= classes;
    report.macro_recall /= classes;
    report.macro_f1 /= classes;
    return report;
}

} // namespace benfordsep

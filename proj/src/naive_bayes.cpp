#include <algorithm>
#include <cmath>
#include <numbers>

#include "benfordsep/errors.hpp"
#include "benfordsep/learn.hpp"

namespace benfordsep {

NbModel train_naive_bayes(const Dataset& train) {
    if (train.rows.empty())
        fail(ErrorCode::empty_dataset, "no training rows");
    const int classes = train.num_classes();
    const int features = static_cast<int>(train.rows.front().d.size());

    NbModel model;
    model.num_classes = classes;
    model.num_features = features;
    model.priors.assign(classes, 0.0);
    model.mean.assign(static_cast<std::size_t>(classes) * features, 0.0);
    model.variance.assign(static_cast<std::size_t>(classes) * features, 0.0);

    std::vector<std::int64_t> counts(classes, 0);
    for (const auto& row : train.rows) ++counts[row.label];
    for (int c = 0; c < classes; ++c)
        if (counts[c] == 0)
            fail(ErrorCode::class_absent, "class " + std::to_string(c) + " has no training rows");

    for (const auto& row : train.rows)
        for (int f = 0; f < features; ++f)
            model.mean[static_cast<std::size_t>(row.label) * features + f] += row.d[f];
    for (int c = 0; c < classes; ++c)
        for (int f = 0; f < features; ++f)
            model.mean[static_cast<std::size_t>(c) * features + f] /= static_cast<double>(counts[c]);

    for (const auto& row : train.rows)
        for (int f = 0; f < features; ++f) {
            const std::size_t i = static_cast<std::size_t>(row.label) * features + f;
            const double dev = row.d[f] - model.mean[i];
            model.variance[i] += dev * dev;
        }
    for (int c = 0; c < classes; ++c)
        for (int f = 0; f < features; ++f) {
            const std::size_t i = static_cast<std::size_t>(c) * features + f;
            model.variance[i] = std::max(model.variance[i] / static_cast<double>(counts[c]), 1e-9);
        }

    for (int c = 0; c < classes; ++c)
        model.priors[c] = static_cast<double>(counts[c]) / static_cast<double>(train.rows.size());
    return model;
}

Prediction predict(const NbModel& model, const std::vector<double>& features) {
    if (static_cast<int>(features.size()) != model.num_features)
        fail(ErrorCode::arity_mismatch, "expected " + std::to_string(model.num_features) +
                                            " features, got " + std::to_string(features.size()));
    std::vector<double> log_post(model.num_classes);
    for (int c = 0; c < model.num_classes; ++c) {
        double acc = std::log(model.priors[c]);
        for (int f = 0; f < model.num_features; ++f) {
            const std::size_t i = static_cast<std::size_t>(c) * model.num_features + f;
            const double var = model.variance[i];
            const double dev = features[f] - model.mean[i];
            acc += -0.5 * std::log(2.0 * std::numbers::pi * var) - dev * dev / (2.0 * var);
        }
        log_post[c] = acc;
    }

    Prediction pred;
    pred.label = 0;
    for (int c = 1; c < model.num_classes; ++c)
        if (log_post[c] > log_post[pred.label]) pred.label = c; // ties keep the lowest index

    const double peak = *std::max_element(log_post.begin(), log_post.end());
    double norm = 0.0;
    pred.scores.resize(model.num_classes);
    for (int c = 0; c < model.num_classes; ++c) {
        pred.scores[c] = std::exp(log_post[c] - peak);
        norm += pred.scores[c];
    }
    for (double& s : pred.scores) s /= norm;
    return pred;
}

} // namespace benfordsep

#include <algorithm>
#include <cmath>
#include <vector>

#include "benfordsep/errors.hpp"
#include "benfordsep/learn.hpp"

namespace benfordsep {

namespace {

// Stable softmax in place.
void softmax(std::vector<double>& logits) {
    const double peak = *std::max_element(logits.begin(), logits.end());
    double norm = 0.0;
    for (double& v : logits) {
        v = std::exp(v - peak);
        norm += v;
    }
    for (double& v : logits) v /= norm;
}

std::vector<double> lr_logits(const LrModel& model, const std::vector<double>& x) {
    std::vector<double> logits(model.num_classes);
    for (int c = 0; c < model.num_classes; ++c) {
        double acc = model.bias[c];
        for (int f = 0; f < model.num_features; ++f)
            acc += model.weights[static_cast<std::size_t>(c) * model.num_features + f] * x[f];
        logits[c] = acc;
    }
    return logits;
}

} // namespace

double lr_loss_and_gradients(const LrModel& model,
                             const std::vector<std::vector<double>>& rows,
                             const std::vector<int>& labels,
                             double l2, LrGradients& out) {
    const int classes = model.num_classes;
    const int features = model.num_features;
    const double n = static_cast<double>(rows.size());

    out.weights.assign(model.weights.size(), 0.0);
    out.bias.assign(model.bias.size(), 0.0);

    double loss = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<double> probs = lr_logits(model, rows[i]);
        softmax(probs);
        loss += -std::log(std::max(probs[labels[i]], 1e-300));
        for (int c = 0; c < classes; ++c) {
            const double delta = (probs[c] - (c == labels[i] ? 1.0 : 0.0)) / n;
            out.bias[c] += delta;
            for (int f = 0; f < features; ++f)
                out.weights[static_cast<std::size_t>(c) * features + f] += delta * rows[i][f];
        }
    }
    loss /= n;

    if (l2 > 0.0) {
        double reg = 0.0;
        for (std::size_t i = 0; i < model.weights.size(); ++i) {
            reg += model.weights[i] * model.weights[i];
            out.weights[i] += l2 * model.weights[i];
        }
        loss += 0.5 * l2 * reg;
    }
    return loss;
}

LrModel train_logistic_regression(const Dataset& scaled_train, const Standardizer& stats,
                                  const LrHyper& hyper) {
    if (scaled_train.rows.empty())
        fail(ErrorCode::empty_dataset, "no training rows");
    const int classes = scaled_train.num_classes();
    if (classes < 2)
        fail(ErrorCode::single_class, "logistic regression needs at least two classes");

    LrModel model;
    model.num_classes = classes;
    model.num_features = static_cast<int>(scaled_train.rows.front().d.size());
    model.weights.assign(static_cast<std::size_t>(classes) * model.num_features, 0.0);
    model.bias.assign(classes, 0.0);
    model.standardizer = stats;

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    rows.reserve(scaled_train.rows.size());
    for (const auto& row : scaled_train.rows) {
        rows.push_back(row.d);
        labels.push_back(row.label);
    }

    LrGradients grads;
    model.loss_curve.reserve(hyper.epochs);
    for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
        const double loss = lr_loss_and_gradients(model, rows, labels, hyper.l2, grads);
        model.loss_curve.push_back(loss);
        for (std::size_t i = 0; i < model.weights.size(); ++i)
            model.weights[i] -= hyper.learning_rate * grads.weights[i];
        for (int c = 0; c < classes; ++c)
            model.bias[c] -= hyper.learning_rate * grads.bias[c];
    }
    return model;
}

Prediction predict(const LrModel& model, const std::vector<double>& features) {
    if (static_cast<int>(features.size()) != model.num_features)
        fail(ErrorCode::arity_mismatch, "expected " + std::to_string(model.num_features) +
                                            " features, got " + std::to_string(features.size()));
    std::vector<double> probs = lr_logits(model, model.standardizer.apply(features));
    softmax(probs);
    Prediction pred;
    pred.label = 0;
    for (int c = 1; c < model.num_classes; ++c)
        if (probs[c] > probs[pred.label]) pred.label = c;
    pred.scores = std::move(probs);
    return pred;
}

} // namespace benfordsep

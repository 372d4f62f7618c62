#include <algorithm>
#include <cmath>
#include <vector>

#include "benfordsep/errors.hpp"
#include "benfordsep/learn.hpp"
#include "benfordsep/random.hpp"

namespace benfordsep {

namespace {

constexpr int kK = CnnModel::kKernel;
constexpr int kC = CnnModel::kChannels;

// Conv activations (pre-ReLU), channels x length, same zero padding.
void conv_forward(const CnnModel& m, const std::vector<double>& x, std::vector<double>& z) {
    const int len = m.num_features;
    z.assign(static_cast<std::size_t>(kC) * len, 0.0);
    for (int c = 0; c < kC; ++c)
        for (int t = 0; t < len; ++t) {
            double acc = m.conv_b[c];
            for (int k = 0; k < kK; ++k) {
                const int src = t + k - kK / 2;
                if (src >= 0 && src < len) acc += m.conv_w[c * kK + k] * x[src];
            }
            z[static_cast<std::size_t>(c) * len + t] = acc;
        }
}

std::vector<double> logits_from_hidden(const CnnModel& m, const std::vector<double>& h) {
    std::vector<double> logits(m.num_classes);
    const int hidden = kC * m.num_features;
    for (int j = 0; j < m.num_classes; ++j) {
        double acc = m.dense_b[j];
        for (int i = 0; i < hidden; ++i)
            acc += m.dense_w[static_cast<std::size_t>(j) * hidden + i] * h[i];
        logits[j] = acc;
    }
    return logits;
}

void softmax(std::vector<double>& logits) {
    const double peak = *std::max_element(logits.begin(), logits.end());
    double norm = 0.0;
    for (double& v : logits) {
        v = std::exp(v - peak);
        norm += v;
    }
    for (double& v : logits) v /= norm;
}

std::vector<double> cnn_probabilities(const CnnModel& m, const std::vector<double>& x) {
    std::vector<double> z;
    conv_forward(m, x, z);
    std::vector<double> h(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) h[i] = std::max(z[i], 0.0);
    std::vector<double> probs = logits_from_hidden(m, h);
    softmax(probs);
    return probs;
}

} // namespace

double cnn_loss_and_gradients(const CnnModel& model,
                              const std::vector<std::vector<double>>& rows,
                              const std::vector<int>& labels,
                              CnnGradients& out) {
    const int len = model.num_features;
    const int hidden = kC * len;
    const double n = static_cast<double>(rows.size());

    out.conv_w.assign(model.conv_w.size(), 0.0);
    out.conv_b.assign(model.conv_b.size(), 0.0);
    out.dense_w.assign(model.dense_w.size(), 0.0);
    out.dense_b.assign(model.dense_b.size(), 0.0);

    double loss = 0.0;
    std::vector<double> z, h(hidden), dh(hidden);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::vector<double>& x = rows[i];
        conv_forward(model, x, z);
        for (int a = 0; a < hidden; ++a) h[a] = std::max(z[a], 0.0);
        std::vector<double> probs = logits_from_hidden(model, h);
        softmax(probs);
        loss += -std::log(std::max(probs[labels[i]], 1e-300));

        std::fill(dh.begin(), dh.end(), 0.0);
        for (int j = 0; j < model.num_classes; ++j) {
            const double dlogit = (probs[j] - (j == labels[i] ? 1.0 : 0.0)) / n;
            out.dense_b[j] += dlogit;
            for (int a = 0; a < hidden; ++a) {
                out.dense_w[static_cast<std::size_t>(j) * hidden + a] += dlogit * h[a];
                dh[a] += model.dense_w[static_cast<std::size_t>(j) * hidden + a] * dlogit;
            }
        }
        for (int c = 0; c < kC; ++c)
            for (int t = 0; t < len; ++t) {
                const std::size_t a = static_cast<std::size_t>(c) * len + t;
                if (z[a] <= 0.0) continue;
                const double dz = dh[a];
                out.conv_b[c] += dz;
                for (int k = 0; k < kK; ++k) {
                    const int src = t + k - kK / 2;
                    if (src >= 0 && src < len) out.conv_w[c * kK + k] += dz * x[src];
                }
            }
    }
    return loss / n;
}

CnnModel train_cnn(const Dataset& scaled_train, const Standardizer& stats, const CnnHyper& hyper) {
    if (scaled_train.rows.empty())
        fail(ErrorCode::empty_dataset, "no training rows");
    const int classes = scaled_train.num_classes();
    if (classes < 2)
        fail(ErrorCode::single_class, "the conv net needs at least two classes");

    CnnModel model;
    model.num_classes = classes;
    model.num_features = static_cast<int>(scaled_train.rows.front().d.size());
    model.standardizer = stats;
    const int hidden = kC * model.num_features;

    std::mt19937_64 rng(hyper.seed);
    auto glorot = [&](std::size_t count, int fan_in, int fan_out) {
        const double r = std::sqrt(6.0 / (fan_in + fan_out));
        std::vector<double> w(count);
        for (double& v : w) v = r * (2.0 * uniform_unit(rng) - 1.0);
        return w;
    };
    model.conv_w = glorot(static_cast<std::size_t>(kC) * kK, kK, kK * kC);
    model.conv_b.assign(kC, 0.0);
    model.dense_w = glorot(static_cast<std::size_t>(classes) * hidden, hidden, classes);
    model.dense_b.assign(classes, 0.0);

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (const auto& row : scaled_train.rows) {
        rows.push_back(row.d);
        labels.push_back(row.label);
    }

    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    CnnGradients grads;
    std::vector<std::vector<double>> batch_rows;
    std::vector<int> batch_labels;
    for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
        deterministic_shuffle(order, rng);
        for (std::size_t at = 0; at < order.size(); at += hyper.batch_size) {
            const std::size_t stop = std::min(at + hyper.batch_size, order.size());
            batch_rows.clear();
            batch_labels.clear();
            for (std::size_t i = at; i < stop; ++i) {
                batch_rows.push_back(rows[order[i]]);
                batch_labels.push_back(labels[order[i]]);
            }
            cnn_loss_and_gradients(model, batch_rows, batch_labels, grads);
            for (std::size_t i = 0; i < model.conv_w.size(); ++i)
                model.conv_w[i] -= hyper.learning_rate * grads.conv_w[i];
            for (std::size_t i = 0; i < model.conv_b.size(); ++i)
                model.conv_b[i] -= hyper.learning_rate * grads.conv_b[i];
            for (std::size_t i = 0; i < model.dense_w.size(); ++i)
                model.dense_w[i] -= hyper.learning_rate * grads.dense_w[i];
            for (std::size_t i = 0; i < model.dense_b.size(); ++i)
                model.dense_b[i] -= hyper.learning_rate * grads.dense_b[i];
        }

        // Full-train loss and accuracy after this epoch's updates.
        double loss = 0.0;
        std::int64_t correct = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::vector<double> probs = cnn_probabilities(model, rows[i]);
            loss += -std::log(std::max(probs[labels[i]], 1e-300));
            int arg = 0;
            for (int c = 1; c < classes; ++c)
                if (probs[c] > probs[arg]) arg = c;
            if (arg == labels[i]) ++correct;
        }
        model.loss_curve.push_back(loss / static_cast<double>(rows.size()));
        model.accuracy_curve.push_back(static_cast<double>(correct) / static_cast<double>(rows.size()));
    }
    return model;
}

Prediction predict(const CnnModel& model, const std::vector<double>& features) {
    if (static_cast<int>(features.size()) != model.num_features)
        fail(ErrorCode::arity_mismatch, "expected " + std::to_string(model.num_features) +
                                            " features, got " + std::to_string(features.size()));
    std::vector<double> probs = cnn_probabilities(model, model.standardizer.apply(features));
    Prediction pred;
    pred.label = 0;
    for (int c = 1; c < model.num_classes; ++c)
        if (probs[c] > probs[pred.label]) pred.label = c;
    pred.scores = std::move(probs);
    return pred;
}

} // namespace benfordsep

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "benfordsep/features.hpp"

namespace benfordsep {

// ---------------------------------------------------------------------------
// Splitting and scaling

struct SplitConfig {
    double train_fraction = 0.7;
    std::uint64_t seed = 42;
    bool stratified = true;
};

/// Seeded per-class shuffle; floor(train_fraction * n_c) rows of each class go
/// to train, the rest to test. Output rows keep the input dataset's order.
/// Errors when a class would leave either partition empty.
std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, const SplitConfig& cfg);

/// Per-feature z-score statistics, population sd floored at 1e-12.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> sd;

    std::vector<double> apply(const std::vector<double>& x) const;
};

Standardizer fit_standardizer(const Dataset& train);
Dataset apply_standardizer(const Standardizer& stats, const Dataset& ds);

/// Fits on train, applies the same statistics to train and every other set.
std::tuple<Dataset, std::vector<Dataset>, Standardizer>
standardize(const Dataset& train, const std::vector<Dataset>& others);

// ---------------------------------------------------------------------------
// Models

/// Gaussian Naive Bayes over raw features. Variances floored at 1e-9.
struct NbModel {
    int num_classes = 0;
    int num_features = 0;
    std::vector<double> priors;        // C
    std::vector<double> mean;          // C x F row-major
    std::vector<double> variance;      // C x F row-major
};

/// CART tree with Gini splits; leaves carry a class label.
struct TreeModel {
    struct Node {
        int feature = -1;      // -1 for leaves
        double threshold = 0.0;
        int left = -1;         // x[feature] <  threshold
        int right = -1;        // x[feature] >= threshold
        int leaf_label = -1;
    };
    int num_classes = 0;
    int num_features = 0;
    std::string criterion = "gini";
    std::vector<Node> nodes; // nodes[0] is the root
};

/// Multinomial softmax regression over standardized features. predict()
/// applies the stored standardizer to raw inputs.
struct LrModel {
    int num_classes = 0;
    int num_features = 0;
    std::vector<double> weights;   // C x F row-major
    std::vector<double> bias;      // C
    Standardizer standardizer;
    std::vector<double> loss_curve; // one entry per epoch
};

/// 1-D conv net over the feature sequence: conv (kernel 3, 16 channels,
/// stride 1, same zero padding), ReLU, dense to C logits, softmax. Works on
/// standardized features via the stored standardizer.
struct CnnModel {
    static constexpr int kKernel = 3;
    static constexpr int kChannels = 16;

    int num_classes = 0;
    int num_features = 0;          // sequence length
    std::vector<double> conv_w;    // kChannels x kKernel row-major
    std::vector<double> conv_b;    // kChannels
    std::vector<double> dense_w;   // C x (kChannels * num_features) row-major
    std::vector<double> dense_b;   // C
    Standardizer standardizer;
    std::vector<double> loss_curve;     // full-train loss after each epoch
    std::vector<double> accuracy_curve; // full-train accuracy after each epoch
};

using AnyModel = std::variant<NbModel, TreeModel, LrModel, CnnModel>;

const char* model_kind(const AnyModel& model);

// ---------------------------------------------------------------------------
// Training

NbModel train_naive_bayes(const Dataset& train);

struct TreeConfig {
    int max_depth = -1; // unbounded
    int min_leaf = 1;
};

TreeModel train_decision_tree(const Dataset& train, const TreeConfig& cfg = {});

struct LrHyper {
    double learning_rate = 0.1;
    int epochs = 500;
    double l2 = 0.0;
};

/// Full-batch gradient descent on mean cross-entropy. The input must already
/// be standardized; stats are stored on the model for inference on raw
/// features. loss_curve[e] is the loss before update e+1.
LrModel train_logistic_regression(const Dataset& scaled_train, const Standardizer& stats,
                                  const LrHyper& hyper = {});

struct CnnHyper {
    double learning_rate = 0.01;
    int epochs = 150;
    int batch_size = 16;
    std::uint64_t seed = 42;
};

/// Seeded Glorot-uniform init, seeded mini-batch order, gradient descent on
/// cross-entropy. Same seed gives bit-identical weight trajectories.
CnnModel train_cnn(const Dataset& scaled_train, const Standardizer& stats,
                   const CnnHyper& hyper = {});

// ---------------------------------------------------------------------------
// Inference and evaluation

struct Prediction {
    int label = 0;
    std::vector<double> scores; // probabilities (one-hot for trees)
};

Prediction predict(const NbModel& model, const std::vector<double>& features);
Prediction predict(const TreeModel& model, const std::vector<double>& features);
Prediction predict(const LrModel& model, const std::vector<double>& features);
Prediction predict(const CnnModel& model, const std::vector<double>& features);
Prediction predict(const AnyModel& model, const std::vector<double>& features);

struct EvalReport {
    double accuracy = 0.0;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    std::vector<std::vector<std::int64_t>> confusion; // rows = truth, cols = prediction
    struct PerClass {
        std::int64_t tp = 0, tn = 0, fp = 0, fn = 0;
        double precision = 0.0, recall = 0.0, f1 = 0.0;
    };
    std::vector<PerClass> per_class;
    std::vector<int> zero_prediction_classes; // precision undefined, reported as 0
};

EvalReport evaluate(const AnyModel& model, const Dataset& test);

// ---------------------------------------------------------------------------
// Loss/gradient entry points (also the training path; used by gradient checks)

struct LrGradients {
    std::vector<double> weights; // C x F
    std::vector<double> bias;    // C
};

/// Mean cross-entropy (+ L2 term) and its gradients at the model's current
/// parameters over the given standardized rows.
double lr_loss_and_gradients(const LrModel& model,
                             const std::vector<std::vector<double>>& rows,
                             const std::vector<int>& labels,
                             double l2, LrGradients& out);

struct CnnGradients {
    std::vector<double> conv_w, conv_b, dense_w, dense_b;
};

double cnn_loss_and_gradients(const CnnModel& model,
                              const std::vector<std::vector<double>>& rows,
                              const std::vector<int>& labels,
                              CnnGradients& out);

// ---------------------------------------------------------------------------
// Serialization: self-describing text, round-trips prediction behavior.

void save_model(const AnyModel& model, std::ostream& out);
void save_model_file(const AnyModel& model, const std::filesystem::path& path);
AnyModel load_model(std::istream& in);
AnyModel load_model_file(const std::filesystem::path& path);

} // namespace benfordsep

#include <algorithm>
#include <cmath>
#include <vector>

#include "benfordsep/errors.hpp"
#include "benfordsep/learn.hpp"

namespace benfordsep {

namespace {

struct SplitCandidate {
    double decrease = -1.0;
    int feature = -1;
    double threshold = 0.0;
    bool valid() const { return feature >= 0; }
};

double gini(const std::vector<std::int64_t>& counts, std::int64_t total) {
    double acc = 1.0;
    for (std::int64_t c : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(total);
        acc -= p * p;
    }
    return acc;
}

int majority_label(const std::vector<std::int64_t>& counts) {
    int best = 0;
    for (int c = 1; c < static_cast<int>(counts.size()); ++c)
        if (counts[c] > counts[best]) best = c; // ties keep the lowest index
    return best;
}

struct TreeBuilder {
    const Dataset& train;
    const TreeConfig& cfg;
    int classes;
    int features;
    std::vector<TreeModel::Node> nodes;

    int build(const std::vector<std::size_t>& members, int depth) {
        std::vector<std::int64_t> counts(classes, 0);
        for (std::size_t i : members) ++counts[train.rows[i].label];

        const bool pure = std::count_if(counts.begin(), counts.end(),
                                        [](std::int64_t c) { return c > 0; }) <= 1;
        const bool depth_capped = cfg.max_depth >= 0 && depth >= cfg.max_depth;

        SplitCandidate best;
        if (!pure && !depth_capped)
            best = best_split(members, counts);

        const int node_index = static_cast<int>(nodes.size());
        nodes.emplace_back();
        if (!best.valid()) {
            nodes[node_index].leaf_label = majority_label(counts);
            return node_index;
        }

        std::vector<std::size_t> left, right;
        for (std::size_t i : members)
            (train.rows[i].d[best.feature] < best.threshold ? left : right).push_back(i);

        nodes[node_index].feature = best.feature;
        nodes[node_index].threshold = best.threshold;
        const int l = build(left, depth + 1);
        const int r = build(right, depth + 1);
        nodes[node_index].left = l;
        nodes[node_index].right = r;
        return node_index;
    }

    // Greedy best (feature, threshold) by Gini impurity decrease; thresholds
    // at midpoints of consecutive distinct sorted values. Ties go to the
    // lowest feature index, then the lowest threshold.
    SplitCandidate best_split(const std::vector<std::size_t>& members,
                              const std::vector<std::int64_t>& counts) {
        const auto total = static_cast<std::int64_t>(members.size());
        const double parent = gini(counts, total);
        SplitCandidate best;

        std::vector<std::pair<double, int>> column(members.size());
        for (int f = 0; f < features; ++f) {
            for (std::size_t i = 0; i < members.size(); ++i)
                column[i] = {train.rows[members[i]].d[f], train.rows[members[i]].label};
            std::sort(column.begin(), column.end());

            std::vector<std::int64_t> left_counts(classes, 0);
            std::int64_t n_left = 0;
            for (std::size_t i = 0; i + 1 < column.size(); ++i) {
                ++left_counts[column[i].second];
                ++n_left;
                const double a = column[i].first;
                const double b = column[i + 1].first;
                if (a == b) continue;
                const double threshold = 0.5 * (a + b);
                if (!(threshold > a) || !(threshold < b)) continue; // adjacent doubles
                const std::int64_t n_right = total - n_left;
                if (n_left < cfg.min_leaf || n_right < cfg.min_leaf) continue;

                std::vector<std::int64_t> right_counts(classes);
                for (int c = 0; c < classes; ++c) right_counts[c] = counts[c] - left_counts[c];
                const double child =
                    (static_cast<double>(n_left) * gini(left_counts, n_left) +
                     static_cast<double>(n_right) * gini(right_counts, n_right)) /
                    static_cast<double>(total);
                // an impure node splits even at zero decrease (xor-style data
                // needs the zero-gain first cut); ties keep the first
                // candidate, i.e. the lowest (feature, threshold)
                const double decrease = parent - child;
                if (decrease > best.decrease)
                    best = {decrease, f, threshold};
            }
        }
        return best;
    }
};

} // namespace

TreeModel train_decision_tree(const Dataset& train, const TreeConfig& cfg) {
    if (train.rows.empty())
        fail(ErrorCode::empty_dataset, "no training rows");
    TreeModel model;
    model.num_classes = train.num_classes();
    model.num_features = static_cast<int>(train.rows.front().d.size());

    TreeBuilder builder{train, cfg, model.num_classes, model.num_features, {}};
    std::vector<std::size_t> all(train.rows.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    builder.build(all, 0);
    model.nodes = std::move(builder.nodes);
    return model;
}

Prediction predict(const TreeModel& model, const std::vector<double>& features) {
    if (static_cast<int>(features.size()) != model.num_features)
        fail(ErrorCode::arity_mismatch, "expected " + std::to_string(model.num_features) +
                                            " features, got " + std::to_string(features.size()));
    int index = 0;
    while (model.nodes[index].leaf_label < 0) {
        const auto& node = model.nodes[index];
        index = features[node.feature] < node.threshold ? node.left : node.right;
    }
    Prediction pred;
    pred.label = model.nodes[index].leaf_label;
    pred.scores.assign(model.num_classes, 0.0);
    pred.scores[pred.label] = 1.0;
    return pred;
}

} // namespace benfordsep

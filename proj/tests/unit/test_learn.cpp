#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "benfordsep/errors.hpp"
#include "benfordsep/learn.hpp"
#include "support/test_support.hpp"

using namespace benfordsep;

namespace {

Dataset rows_1d(const std::vector<std::pair<double, int>>& points) {
    Dataset ds;
    ds.qf_order = {50};
    int classes = 0;
    for (const auto& [x, label] : points) {
        FeatureVector row;
        row.d = {x};
        row.label = label;
        ds.rows.push_back(row);
        classes = std::max(classes, label + 1);
    }
    for (int c = 0; c < classes; ++c) ds.label_names.push_back(std::to_string(c));
    return ds;
}

std::string row_key(const FeatureVector& row) {
    std::string key = std::to_string(row.label) + "|" + row.source;
    for (double v : row.d) key += "," + std::to_string(v);
    return key;
}

} // namespace

TEST_CASE("stratified split sizes match the paper-shaped corpus") {
    const Dataset ds = testsupport::synthetic_clusters(42);
    REQUIRE(ds.rows.size() == 368);

    SplitConfig cfg;
    const auto [train, test] = stratified_split(ds, cfg);
    CHECK(train.rows.size() == 257); // 56*4 + 33
    CHECK(test.rows.size() == 111);

    std::array<int, 5> train_counts{};
    for (const auto& row : train.rows) ++train_counts[row.label];
    CHECK(train_counts == std::array<int, 5>{56, 56, 56, 56, 33});
}

TEST_CASE("split is an exact partition") {
    const Dataset ds = testsupport::synthetic_clusters(3);
    SplitConfig cfg;
    cfg.seed = 99;
    const auto [train, test] = stratified_split(ds, cfg);

    std::multiset<std::string> combined;
    for (const auto& row : train.rows) combined.insert(row_key(row));
    for (const auto& row : test.rows) combined.insert(row_key(row));
    std::multiset<std::string> original;
    for (const auto& row : ds.rows) original.insert(row_key(row));
    CHECK(combined == original);
    CHECK(train.rows.size() + test.rows.size() == ds.rows.size());
}

TEST_CASE("a 50/50 split of ten rows gives five and five") {
    Dataset ds = rows_1d({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 0}, {7, 0}, {8, 0}, {9, 0}});
    SplitConfig cfg;
    cfg.train_fraction = 0.5;
    const auto [train, test] = stratified_split(ds, cfg);
    CHECK(train.rows.size() == 5);
    CHECK(test.rows.size() == 5);
}

TEST_CASE("same seed, same partition; different seed, different partition") {
    const Dataset ds = testsupport::synthetic_clusters(8);
    SplitConfig cfg;
    cfg.seed = 1234;
    const auto [train_a, test_a] = stratified_split(ds, cfg);
    const auto [train_b, test_b] = stratified_split(ds, cfg);
    REQUIRE(train_a.rows.size() == train_b.rows.size());
    bool identical = true;
    for (std::size_t i = 0; i < train_a.rows.size(); ++i)
        identical = identical && row_key(train_a.rows[i]) == row_key(train_b.rows[i]);
    CHECK(identical);

    cfg.seed = 4321;
    const auto [train_c, test_c] = stratified_split(ds, cfg);
    bool same_as_a = train_c.rows.size() == train_a.rows.size();
    if (same_as_a)
        for (std::size_t i = 0; i < train_a.rows.size(); ++i)
            same_as_a = same_as_a && row_key(train_a.rows[i]) == row_key(train_c.rows[i]);
    CHECK(!same_as_a);
}

TEST_CASE("classes too small to split are rejected") {
    Dataset ds = rows_1d({{0, 0}, {1, 0}, {2, 1}}); // class 1 has one row
    try {
        (void)stratified_split(ds, SplitConfig{});
        FAIL("expected class_too_small");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::class_too_small);
    }
}

// ---------------------------------------------------------------------------

TEST_CASE("standardize produces zero mean, unit sd, and the hand z-score") {
    const Dataset ds = testsupport::synthetic_clusters(12);
    const auto [scaled, others, stats] = standardize(ds, {});
    (void)others;
    for (int f = 0; f < 6; ++f) {
        double mean = 0.0;
        for (const auto& row : scaled.rows) mean += row.d[f];
        mean /= static_cast<double>(scaled.rows.size());
        double var = 0.0;
        for (const auto& row : scaled.rows) var += (row.d[f] - mean) * (row.d[f] - mean);
        var /= static_cast<double>(scaled.rows.size());
        CHECK(std::fabs(mean) < 1e-9);
        CHECK(std::fabs(std::sqrt(var) - 1.0) < 1e-9);
    }

    // population sd of {1,3} is 1, so the scaled values are -1 and +1
    Dataset two = rows_1d({{1, 0}, {3, 0}});
    const auto [scaled_two, o2, s2] = standardize(two, {});
    (void)o2;
    CHECK(scaled_two.rows[0].d[0] == doctest::Approx(-1.0));
    CHECK(scaled_two.rows[1].d[0] == doctest::Approx(1.0));
    CHECK(s2.mean[0] == doctest::Approx(2.0));
    CHECK(s2.sd[0] == doctest::Approx(1.0));
}

TEST_CASE("a constant column scales to zero through the sd floor") {
    Dataset ds = rows_1d({{5, 0}, {5, 0}, {5, 0}});
    const auto [scaled, others, stats] = standardize(ds, {});
    (void)others;
    CHECK(stats.sd[0] == 1e-12);
    for (const auto& row : scaled.rows) CHECK(row.d[0] == 0.0);
}

TEST_CASE("standardize applies train statistics to other sets") {
    Dataset train = rows_1d({{0, 0}, {10, 0}});
    Dataset other = rows_1d({{5, 0}});
    const auto [scaled_train, scaled_others, stats] = standardize(train, {other});
    (void)scaled_train;
    REQUIRE(scaled_others.size() == 1);
    CHECK(scaled_others[0].rows[0].d[0] == doctest::Approx(0.0)); // midpoint of train
}

// ---------------------------------------------------------------------------
// Gaussian Naive Bayes

TEST_CASE("naive bayes splits two symmetric classes at the midpoint") {
    const Dataset train = rows_1d({{0, 0}, {10, 1}});
    const NbModel model = train_naive_bayes(train);
    CHECK(predict(model, {4.0}).label == 0);
    CHECK(predict(model, {6.0}).label == 1);
    // equidistant point: tie resolves to the lowest class index
    CHECK(predict(model, {5.0}).label == 0);
}

TEST_CASE("naive bayes posteriors match a brute-force Bayes computation") {
    const Dataset train = rows_1d({{1, 0}, {2, 0}, {7, 1}});
    const NbModel model = train_naive_bayes(train);

    // hand model: class 0 ~ N(1.5, 0.25), prior 2/3; class 1 ~ N(7, 1e-9 floor), prior 1/3
    auto density = [](double x, double mu, double var) {
        return std::exp(-(x - mu) * (x - mu) / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
    };
    const double x = 2.5;
    const double j0 = (2.0 / 3.0) * density(x, 1.5, 0.25);
    const double j1 = (1.0 / 3.0) * density(x, 7.0, 1e-9);
    const Prediction pred = predict(model, {x});
    CHECK(pred.scores[0] == doctest::Approx(j0 / (j0 + j1)).epsilon(1e-9));
    CHECK(pred.scores[1] == doctest::Approx(j1 / (j0 + j1)).epsilon(1e-9));
    CHECK(pred.scores[0] + pred.scores[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("naive bayes on a single-class set predicts that class") {
    Dataset ds = rows_1d({{1, 0}, {1, 0}, {1, 0}});
    const NbModel model = train_naive_bayes(ds);
    CHECK(predict(model, {-100.0}).label == 0);
    CHECK(predict(model, {100.0}).label == 0);
}

TEST_CASE("naive bayes separates the benchmark clusters") {
    const Dataset ds = testsupport::synthetic_clusters(21);
    const auto [train, test] = stratified_split(ds, SplitConfig{});
    const NbModel model = train_naive_bayes(train);
    const EvalReport report = evaluate(model, test);
    CHECK(report.accuracy >= 0.95);
}

TEST_CASE("naive bayes priors sum to one and variances respect the floor") {
    const Dataset ds = testsupport::synthetic_clusters(34);
    const NbModel model = train_naive_bayes(ds);
    double prior_sum = 0.0;
    for (double p : model.priors) prior_sum += p;
    CHECK(std::fabs(prior_sum - 1.0) < 1e-12);
    for (double v : model.variance) CHECK(v >= 1e-9);
}

// ---------------------------------------------------------------------------
// CART decision tree

TEST_CASE("a linearly separable problem needs a single split") {
    const Dataset train = rows_1d({{0, 0}, {1, 0}, {5, 1}, {6, 1}});
    const TreeModel model = train_decision_tree(train);
    CHECK(model.nodes.size() == 3); // root + two leaves
    CHECK(model.nodes[0].feature == 0);
    CHECK(model.nodes[0].threshold == doctest::Approx(3.0));
    for (const auto& row : train.rows) CHECK(predict(model, row.d).label == row.label);
}

TEST_CASE("xor needs depth two and still memorizes") {
    Dataset ds;
    ds.qf_order = {50, 60};
    ds.label_names = {"0", "1"};
    auto add = [&](double a, double b, int label) {
        FeatureVector row;
        row.d = {a, b};
        row.label = label;
        ds.rows.push_back(row);
    };
    add(0, 0, 0);
    add(0, 1, 1);
    add(1, 0, 1);
    add(1, 1, 0);
    const TreeModel model = train_decision_tree(ds);
    for (const auto& row : ds.rows) CHECK(predict(model, row.d).label == row.label);
    CHECK(model.nodes.size() == 7); // root, two internals, four leaves
}

TEST_CASE("consistent data is memorized perfectly at unbounded depth") {
    const Dataset ds = testsupport::synthetic_clusters(55);
    const TreeModel model = train_decision_tree(ds);
    for (const auto& row : ds.rows) CHECK(predict(model, row.d).label == row.label);
}

TEST_CASE("internal thresholds sit strictly between training values") {
    const Dataset ds = testsupport::synthetic_clusters(17);
    const TreeModel model = train_decision_tree(ds);
    for (const auto& node : model.nodes) {
        if (node.feature < 0) continue;
        bool below = false, above = false;
        for (const auto& row : ds.rows) {
            if (row.d[node.feature] < node.threshold) below = true;
            if (row.d[node.feature] > node.threshold) above = true;
        }
        CHECK(below);
        CHECK(above);
    }
}

TEST_CASE("conflicting duplicates fall back to the majority leaf") {
    const Dataset ds = rows_1d({{1, 0}, {1, 1}, {1, 1}});
    const TreeModel model = train_decision_tree(ds);
    CHECK(model.nodes.size() == 1);
    CHECK(model.nodes[0].leaf_label == 1);
}

TEST_CASE("depth limit caps memorization") {
    const Dataset ds = rows_1d({{0, 0}, {1, 1}, {2, 0}, {3, 1}});
    TreeConfig cfg;
    cfg.max_depth = 0;
    const TreeModel stump = train_decision_tree(ds, cfg);
    CHECK(stump.nodes.size() == 1);
    CHECK(stump.nodes[0].leaf_label == 0); // 2-2 tie resolves to the lowest label
}

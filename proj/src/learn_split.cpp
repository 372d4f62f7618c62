#include <algorithm>
#include <cmath>
#include <numeric>

#include "benfordsep/errors.hpp"
#include "benfordsep/learn.hpp"
#include "benfordsep/random.hpp"

namespace benfordsep {

namespace {

Dataset take_rows(const Dataset& ds, std::vector<std::size_t> indices) {
    std::sort(indices.begin(), indices.end()); // keep the input dataset's order
    Dataset out;
    out.label_names = ds.label_names;
    out.qf_order = ds.qf_order;
    out.rows.reserve(indices.size());
    for (std::size_t i : indices) out.rows.push_back(ds.rows[i]);
    return out;
}

} // namespace

std::pair<Dataset, Dataset> stratified_split(const Dataset& ds, const SplitConfig& cfg) {
    if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0))
        fail(ErrorCode::class_too_small, "train fraction must lie in (0,1)");

    const int classes = ds.num_classes();
    std::mt19937_64 rng(cfg.seed);
    std::vector<std::size_t> train_idx, test_idx;

    if (cfg.stratified) {
        std::vector<std::vector<std::size_t>> by_class(classes);
        for (std::size_t i = 0; i < ds.rows.size(); ++i)
            by_class[ds.rows[i].label].push_back(i);
        for (int c = 0; c < classes; ++c) {
            auto& members = by_class[c];
            const std::size_t n_train =
                static_cast<std::size_t>(std::floor(cfg.train_fraction * static_cast<double>(members.size())));
            if (n_train == 0 || n_train == members.size())
                fail(ErrorCode::class_too_small,
                     "class " + std::to_string(c) + " has " + std::to_string(members.size()) +
                         " rows; both partitions must stay non-empty");
            deterministic_shuffle(members, rng);
            train_idx.insert(train_idx.end(), members.begin(), members.begin() + n_train);
            test_idx.insert(test_idx.end(), members.begin() + n_train, members.end());
        }
    } else {
        std::vector<std::size_t> all(ds.rows.size());
        std::iota(all.begin(), all.end(), 0);
        const std::size_t n_train =
            static_cast<std::size_t>(std::floor(cfg.train_fraction * static_cast<double>(all.size())));
        if (n_train == 0 || n_train == all.size())
            fail(ErrorCode::class_too_small, "dataset too small for the requested split");
        deterministic_shuffle(all, rng);
        train_idx.assign(all.begin(), all.begin() + n_train);
        test_idx.assign(all.begin() + n_train, all.end());
    }

    return {take_rows(ds, std::move(train_idx)), take_rows(ds, std::move(test_idx))};
}

std::vector<double> Standardizer::apply(const std::vector<double>& x) const {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = (x[i] - mean[i]) / sd[i];
    return out;
}

Standardizer fit_standardizer(const Dataset& train) {
    if (train.rows.empty())
        fail(ErrorCode::empty_dataset, "cannot standardize an empty dataset");
    const std::size_t features = train.rows.front().d.size();
    const double n = static_cast<double>(train.rows.size());

    Standardizer stats;
    stats.mean.assign(features, 0.0);
    stats.sd.assign(features, 0.0);
    for (const auto& row : train.rows)
        for (std::size_t f = 0; f < features; ++f) stats.mean[f] += row.d[f];
    for (double& m : stats.mean) m /= n;
    for (const auto& row : train.rows)
        for (std::size_t f = 0; f < features; ++f) {
            const double dev = row.d[f] - stats.mean[f];
            stats.sd[f] += dev * dev;
        }
    for (double& s : stats.sd) s = std::max(std::sqrt(s / n), 1e-12);
    return stats;
}

Dataset apply_standardizer(const Standardizer& stats, const Dataset& ds) {
    Dataset out = ds;
    for (auto& row : out.rows) row.d = stats.apply(row.d);
    return out;
}

std::tuple<Dataset, std::vector<Dataset>, Standardizer>
standardize(const Dataset& train, const std::vector<Dataset>& others) {
    Standardizer stats = fit_standardizer(train);
    std::vector<Dataset> scaled_others;
    scaled_others.reserve(others.size());
    for (const auto& ds : others) scaled_others.push_back(apply_standardizer(stats, ds));
    return {apply_standardizer(stats, train), std::move(scaled_others), std::move(stats)};
}

} // namespace benfordsep

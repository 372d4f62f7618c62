#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "benfordsep/benford.hpp"
#include "benfordsep/image.hpp"

namespace benfordsep {

/// Divergence values of one image, ordered by the dataset's qf_order, plus
/// its class label.
struct FeatureVector {
    std::vector<double> d;
    int label = 0;
    std::string source;
};

struct Dataset {
    std::vector<FeatureVector> rows;
    std::vector<std::string> label_names;
    std::vector<int> qf_order; // ascending

    int num_classes() const;
};

/// Divergences are reported in percentage-point probabilities: the
/// probability-based chi-square is multiplied by this. Set to 1 for raw
/// chi-square values.
inline constexpr double kChiSquareScale = 100.0;

inline const std::vector<int> kDefaultQfOrder = {50, 60, 70, 80, 90, 100};

/// One feature row: for each QF, extract coefficients, take the first-digit
/// distribution, and measure chi-square divergence against the generalized
/// law at that QF's parameters. An empty coefficient stream at any QF makes
/// the image degenerate (error), never an imputed value.
FeatureVector image_feature_vector(const GrayImage& image, int label,
                                   const GblParamTable& params_by_qf,
                                   const std::vector<int>& qf_order = kDefaultQfOrder,
                                   double chi_scale = kChiSquareScale);

struct BuildReport {
    Dataset dataset;
    std::vector<std::string> rejected; // paths of degenerate images
};

/// One row per non-degenerate image, in set order. Degenerate images land in
/// the rejection list; all of them degenerate is an error.
BuildReport build_dataset(const LabeledImageSet& set,
                          const GblParamTable& params_by_qf,
                          const std::vector<int>& qf_order = kDefaultQfOrder,
                          double chi_scale = kChiSquareScale);

/// Writes `QF-50,...,QF-100,Class Label` plus one row per vector, features
/// with 6 significant digits, '\n' newlines. Returns the byte count.
std::size_t write_csv(const Dataset& ds, std::ostream& sink);
std::size_t write_csv_file(const Dataset& ds, const std::filesystem::path& path);

/// Inverse of write_csv up to the 6-significant-digit precision.
Dataset read_csv(std::istream& source);
Dataset read_csv_file(const std::filesystem::path& path);

} // namespace benfordsep

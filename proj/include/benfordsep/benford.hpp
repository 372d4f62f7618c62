#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <utility>

#include "benfordsep/jpeg_model.hpp"

namespace benfordsep {

/// Tallies of first digits 1..9; digit d lives at index d-1.
struct DigitHistogram {
    std::array<std::int64_t, 9> counts{};
    std::int64_t total = 0;
};

/// Probability vector over first digits 1..9; digit d lives at index d-1.
/// Empirical distributions sum to 1; model distributions may be slightly off.
struct DigitDistribution {
    std::array<double, 9> p{};

    double sum() const;
};

/// Parameters of the generalized first-digit law N*log10(1 + 1/(s + x^q)).
struct GblParams {
    double n_factor = 1.0; // N
    double q_exp = 1.0;    // q
    double s_shift = 0.0;  // s
    std::optional<int> qf; // quality factor this row describes, if any
};

using GblParamTable = std::map<int, GblParams>;

struct FitResult {
    GblParams params;
    double sse = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Multi-start downhill-simplex configuration for fit_gbl_params. Starts are
/// a starts_per_axis^3 grid over the box, endpoints included.
struct FitConfig {
    double n_lo = 0.5, n_hi = 2.0;
    double q_lo = 0.5, q_hi = 3.0;
    double s_lo = -0.5, s_hi = 0.5;
    int starts_per_axis = 5;
    double tolerance = 1e-14;  // on the simplex SSE spread
    int max_iterations = 2000; // per start
};

/// Leading decimal digit of |v|. Errors on zero and non-finite input.
int first_digit(double v);
int first_digit(std::int64_t v);

/// p(x) = log10(1 + 1/x), x = 1..9.
DigitDistribution standard_benford();

/// p(x) = N*log10(1 + 1/(s + x^q)). Errors when N <= 0 or s + x^q <= 0 for
/// some x in 1..9.
DigitDistribution generalized_benford(const GblParams& params);

/// First-digit tallies and the normalized empirical distribution of a
/// coefficient stream. Errors on an empty stream (divergence is undefined).
std::pair<DigitHistogram, DigitDistribution> digit_distribution(const CoefficientStream& stream);

/// chi^2 = sum_x (actual_x - model_x)^2 / model_x. Asymmetric in its
/// arguments; the second one must be strictly positive in every bin.
double chi_square_divergence(const DigitDistribution& actual, const DigitDistribution& model);

/// Least-squares fit of (N, q, s) to an empirical digit distribution by
/// multi-start downhill simplex. Deterministic for a fixed config; the best
/// start wins, ties broken by start index.
FitResult fit_gbl_params(const DigitDistribution& empirical, const FitConfig& config = {});

/// Sum of squared errors between a distribution and the law at the given
/// parameters; the quantity fit_gbl_params minimizes.
double gbl_sse(const DigitDistribution& empirical, const GblParams& params);

/// Published generalized-law parameters keyed by QF in {50,60,70,80,90,100}.
const GblParamTable& builtin_gbl_table();

/// Parses a plain-text parameter file, one "qf N q s" row per line. Blank
/// lines and lines starting with '#' are skipped.
GblParamTable load_gbl_params(const std::filesystem::path& file);

} // namespace benfordsep

#include "benfordsep/benford.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "benfordsep/errors.hpp"

namespace benfordsep {

double DigitDistribution::sum() const {
    double acc = 0.0;
    for (double v : p) acc += v;
    return acc;
}

int first_digit(double v) {
    if (!std::isfinite(v))
        fail(ErrorCode::non_finite_input, "first digit of a non-finite value");
    if (v == 0.0)
        fail(ErrorCode::zero_has_no_first_digit, "zero has no first significant digit");
    const double a = std::fabs(v);
    int e = static_cast<int>(std::floor(std::log10(a)));
    double m = a / std::pow(10.0, e);
    // log10/pow rounding can leave m just outside [1, 10)
    while (m < 1.0) m *= 10.0;
    while (m >= 10.0) m /= 10.0;
    return static_cast<int>(m);
}

int first_digit(std::int64_t v) {
    if (v == 0)
        fail(ErrorCode::zero_has_no_first_digit, "zero has no first significant digit");
    std::uint64_t a = v < 0 ? -static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    while (a >= 10) a /= 10;
    return static_cast<int>(a);
}

DigitDistribution standard_benford() {
    DigitDistribution d;
    for (int x = 1; x <= 9; ++x)
        d.p[x - 1] = std::log10(1.0 + 1.0 / x);
    return d;
}

DigitDistribution generalized_benford(const GblParams& params) {
    if (!(params.n_factor > 0.0))
        fail(ErrorCode::invalid_params, "normalization factor must be positive");
    DigitDistribution d;
    for (int x = 1; x <= 9; ++x) {
        const double den = params.s_shift + std::pow(static_cast<double>(x), params.q_exp);
        if (!(den > 0.0))
            fail(ErrorCode::invalid_params,
                 "s + x^q must stay positive, violated at x = " + std::to_string(x));
        d.p[x - 1] = params.n_factor * std::log10(1.0 + 1.0 / den);
    }
    return d;
}

std::pair<DigitHistogram, DigitDistribution> digit_distribution(const CoefficientStream& stream) {
    if (stream.values.empty())
        fail(ErrorCode::empty_stream, "no coefficients to count digits of");
    DigitHistogram hist;
    for (int v : stream.values)
        ++hist.counts[first_digit(static_cast<std::int64_t>(v)) - 1];
    hist.total = static_cast<std::int64_t>(stream.values.size());
    DigitDistribution dist;
    for (int i = 0; i < 9; ++i)
        dist.p[i] = static_cast<double>(hist.counts[i]) / static_cast<double>(hist.total);
    return {hist, dist};
}

double chi_square_divergence(const DigitDistribution& actual, const DigitDistribution& model) {
    double acc = 0.0;
    for (int i = 0; i < 9; ++i) {
        if (!(model.p[i] > 0.0))
            fail(ErrorCode::model_has_zero_bin,
                 "model probability for digit " + std::to_string(i + 1) + " is not positive");
        const double diff = actual.p[i] - model.p[i];
        acc += diff * diff / model.p[i];
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Nonlinear least squares: multi-start Nelder-Mead over (N, q, s)

namespace {

using Point = std::array<double, 3>; // N, q, s

double sse_objective(const DigitDistribution& emp, const Point& p) {
    const double n = p[0], q = p[1], s = p[2];
    if (!(n > 0.0)) return std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (int x = 1; x <= 9; ++x) {
        const double den = s + std::pow(static_cast<double>(x), q);
        if (!(den > 0.0)) return std::numeric_limits<double>::infinity();
        const double model = n * std::log10(1.0 + 1.0 / den);
        const double diff = emp.p[x - 1] - model;
        acc += diff * diff;
    }
    return acc;
}

struct SimplexRun {
    Point best{};
    double fbest = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

// Standard Nelder-Mead (reflect 1, expand 2, contract 0.5, shrink 0.5).
SimplexRun nelder_mead(const DigitDistribution& emp, const Point& start,
                       double tolerance, int max_iterations) {
    constexpr double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    constexpr int dim = 3;

    std::array<Point, dim + 1> x;
    std::array<double, dim + 1> f;
    x[0] = start;
    for (int i = 0; i < dim; ++i) {
        x[i + 1] = start;
        const double step = start[i] != 0.0 ? 0.05 * std::fabs(start[i]) : 0.025;
        x[i + 1][i] += step;
    }
    for (int i = 0; i <= dim; ++i) f[i] = sse_objective(emp, x[i]);

    auto order = [&] {
        for (int i = 1; i <= dim; ++i) {
            Point px = x[i];
            double pf = f[i];
            int j = i - 1;
            while (j >= 0 && f[j] > pf) {
                x[j + 1] = x[j];
                f[j + 1] = f[j];
                --j;
            }
            x[j + 1] = px;
            f[j + 1] = pf;
        }
    };

    SimplexRun run;
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        order();
        if (std::fabs(f[dim] - f[0]) <= tolerance) {
            run.converged = true;
            break;
        }
        Point centroid{};
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) centroid[j] += x[i][j] / dim;

        Point reflected;
        for (int j = 0; j < dim; ++j)
            reflected[j] = centroid[j] + alpha * (centroid[j] - x[dim][j]);
        const double fr = sse_objective(emp, reflected);

        if (fr < f[0]) {
            Point expanded;
            for (int j = 0; j < dim; ++j)
                expanded[j] = centroid[j] + gamma * (reflected[j] - centroid[j]);
            const double fe = sse_objective(emp, expanded);
            if (fe < fr) {
                x[dim] = expanded;
                f[dim] = fe;
            } else {
                x[dim] = reflected;
                f[dim] = fr;
            }
        } else if (fr < f[dim - 1]) {
            x[dim] = reflected;
            f[dim] = fr;
        } else {
            const bool outside = fr < f[dim];
            Point contracted;
            const Point& toward = outside ? reflected : x[dim];
            for (int j = 0; j < dim; ++j)
                contracted[j] = centroid[j] + rho * (toward[j] - centroid[j]);
            const double fc = sse_objective(emp, contracted);
            if (fc < (outside ? fr : f[dim])) {
                x[dim] = contracted;
                f[dim] = fc;
            } else {
                for (int i = 1; i <= dim; ++i) {
                    for (int j = 0; j < dim; ++j)
                        x[i][j] = x[0][j] + sigma * (x[i][j] - x[0][j]);
                    f[i] = sse_objective(emp, x[i]);
                }
            }
        }
    }
    order();
    run.best = x[0];
    run.fbest = f[0];
    run.iterations = iter;
    return run;
}

} // namespace

double gbl_sse(const DigitDistribution& empirical, const GblParams& params) {
    return sse_objective(empirical, {params.n_factor, params.q_exp, params.s_shift});
}

FitResult fit_gbl_params(const DigitDistribution& empirical, const FitConfig& config) {
    const int k = std::max(1, config.starts_per_axis);
    auto axis = [&](double lo, double hi, int i) {
        return k == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (k - 1);
    };

    bool any_valid = false;
    SimplexRun best;
    for (int in = 0; in < k; ++in)
        for (int iq = 0; iq < k; ++iq)
            for (int is = 0; is < k; ++is) {
                const Point start = {axis(config.n_lo, config.n_hi, in),
                                     axis(config.q_lo, config.q_hi, iq),
                                     axis(config.s_lo, config.s_hi, is)};
                if (!std::isfinite(sse_objective(empirical, start))) continue;
                any_valid = true;
                SimplexRun run = nelder_mead(empirical, start, config.tolerance, config.max_iterations);
                if (run.fbest < best.fbest) best = run; // strict <: ties keep the earlier start
            }
    if (!any_valid)
        fail(ErrorCode::no_valid_start, "every start point violates s + x^q > 0 or N > 0");

    // Polish: restart the simplex at the winner until it stops improving.
    for (int round = 0; round < 3; ++round) {
        SimplexRun again = nelder_mead(empirical, best.best, config.tolerance, config.max_iterations);
        again.iterations += best.iterations;
        if (again.fbest < best.fbest)
            best = again;
        else
            break;
    }

    FitResult result;
    result.params.n_factor = best.best[0];
    result.params.q_exp = best.best[1];
    result.params.s_shift = best.best[2];
    result.sse = best.fbest;
    result.iterations = best.iterations;
    result.converged = best.converged;
    return result;
}

// ---------------------------------------------------------------------------
// Published model parameters

const GblParamTable& builtin_gbl_table() {
    static const GblParamTable table = {
        {50, {1.579, 1.882, -0.2725, 50}},
        {60, {1.501, 1.813, -0.3025, 60}},
        {70, {1.412, 1.732, -0.337, 70}},
        {80, {1.324, 1.653, -0.3739, 80}},
        {90, {1.255, 1.563, -0.3784, 90}},
        {100, {1.456, 1.47, 0.0372, 100}},
    };
    return table;
}

GblParamTable load_gbl_params(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        fail(ErrorCode::unreadable_file, file.string() + ": cannot open");
    GblParamTable table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        int qf = 0;
        GblParams p;
        if (!(row >> qf >> p.n_factor >> p.q_exp >> p.s_shift) || qf < 1 || qf > 100)
            fail(ErrorCode::malformed_row,
                 file.string() + ":" + std::to_string(line_no) + ": expected 'qf N q s'");
        std::string extra;
        if (row >> extra)
            fail(ErrorCode::malformed_row,
                 file.string() + ":" + std::to_string(line_no) + ": trailing content");
        p.qf = qf;
        table[qf] = p;
    }
    return table;
}

} // namespace benfordsep

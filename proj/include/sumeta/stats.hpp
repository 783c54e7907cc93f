#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sumeta/error.hpp"
#include "sumeta/rng.hpp"

namespace sumeta {

enum class CorrelationMeasure { Pearson, KendallTauB };

inline const char* correlation_measure_name(CorrelationMeasure m) {
    return m == CorrelationMeasure::Pearson ? "pearson" : "kendall";
}

inline std::optional<CorrelationMeasure> parse_correlation_measure(std::string_view s) {
    if (s == "pearson") return CorrelationMeasure::Pearson;
    if (s == "kendall") return CorrelationMeasure::KendallTauB;
    return std::nullopt;
}

namespace detail {

inline void check_paired_lengths(std::size_t nx, std::size_t ny) {
    if (nx != ny)
        raise(ErrorCode::LengthMismatch,
              "vectors differ in length (" + std::to_string(nx) + " vs " + std::to_string(ny) + ")");
}

// Rounding in the final division can push a correlation one ulp past the
// mathematical range; clamp so |r| <= 1 holds for every consumer.
inline double clamp_correlation(double r) {
    if (r > 1.0) return 1.0;
    if (r < -1.0) return -1.0;
    return r;
}

} // namespace detail

// Sample Pearson r. Undefined (nullopt) when either vector has zero
// variance; the caller decides what a degenerate correlation means.
inline std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    detail::check_paired_lengths(x.size(), y.size());
    if (x.size() < 2) raise(ErrorCode::TooShort, "need at least 2 observations");
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return detail::clamp_correlation(sxy / std::sqrt(sxx * syy));
}

// Kendall tau-b with tie correction, by exhaustive pair counting (inputs
// here are small system/document vectors). Undefined when either vector
// is entirely tied.
inline std::optional<double> kendall_tau_b(std::span<const double> x, std::span<const double> y) {
    detail::check_paired_lengths(x.size(), y.size());
    if (x.size() < 2) raise(ErrorCode::TooShort, "need at least 2 observations");
    const std::size_t n = x.size();
    std::int64_t concordant = 0, discordant = 0, pairs_x = 0, pairs_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double dx = x[i] - x[j], dy = y[i] - y[j];
            if (dx != 0.0) ++pairs_x; // pairs not tied in x
            if (dy != 0.0) ++pairs_y;
            if (dx != 0.0 && dy != 0.0) {
                if ((dx > 0.0) == (dy > 0.0)) ++concordant;
                else ++discordant;
            }
        }
    }
    if (pairs_x == 0 || pairs_y == 0) return std::nullopt;
    return detail::clamp_correlation(
        static_cast<double>(concordant - discordant) /
        std::sqrt(static_cast<double>(pairs_x) * static_cast<double>(pairs_y)));
}

inline std::optional<double> correlate(CorrelationMeasure measure, std::span<const double> x,
                                       std::span<const double> y) {
    return measure == CorrelationMeasure::Pearson ? pearson(x, y) : kendall_tau_b(x, y);
}

namespace detail {

// Continued fraction for the regularized incomplete beta, modified Lentz
// method.
inline double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 500;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h;
}

} // namespace detail

// I_x(a, b), accurate to well below 1e-10 over the parameter range used
// here (a = df/2, b = 1/2).
inline double regularized_incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) raise(ErrorCode::InvalidArgument, "beta parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                      b * std::log1p(-x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * detail::beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

// Central Student-t CDF via the incomplete beta; exact 0.5 at t = 0 and
// exactly symmetric, so one-tailed p-values obey p(-t) = 1 - p(t).
inline double student_t_cdf(double t, int df) {
    if (df < 1) raise(ErrorCode::InvalidArgument, "degrees of freedom must be >= 1");
    if (t == 0.0) return 0.5;
    double nu = static_cast<double>(df);
    double x = nu / (nu + t * t);
    double half_tail = 0.5 * regularized_incomplete_beta(nu / 2.0, 0.5, x);
    return t > 0.0 ? 1.0 - half_tail : half_tail;
}

struct WilliamsResult {
    double t_statistic = 0.0;
    int degrees_of_freedom = 0;
    double p_value = 0.5; // one-tailed, small when r13 is credibly above r23
};

// Williams' test for two dependent correlations sharing variable 3 (the
// human scores): H1 is r13 > r23, with r12 the correlation between the
// two metrics themselves.
//
//   t = (r13 - r23) * sqrt( (n-1)(1+r12) /
//         ( 2 (n-1)/(n-3) |R| + rbar^2 (1-r12)^3 ) )
//   |R| = 1 - r12^2 - r13^2 - r23^2 + 2 r12 r13 r23,  rbar = (r13+r23)/2
//
// with n - 3 degrees of freedom.
inline WilliamsResult williams_test(double r13, double r23, double r12, int n) {
    if (n < 4) raise(ErrorCode::TooShort, "Williams test needs n >= 4");
    for (double r : {r13, r23, r12})
        if (!(r >= -1.0 && r <= 1.0))
            raise(ErrorCode::InvalidArgument, "correlations must lie in [-1, 1]");
    double nn = static_cast<double>(n);
    double det = 1.0 - r12 * r12 - r13 * r13 - r23 * r23 + 2.0 * r12 * r13 * r23;
    double rbar = 0.5 * (r13 + r23);
    double denom = 2.0 * det * (nn - 1.0) / (nn - 3.0) + rbar * rbar * std::pow(1.0 - r12, 3);
    if (denom <= 0.0)
        raise(ErrorCode::DegenerateCorrelationMatrix, "non-positive variance term in Williams test");
    WilliamsResult result;
    result.degrees_of_freedom = n - 3;
    result.t_statistic = (r13 - r23) * std::sqrt((nn - 1.0) * (1.0 + r12) / denom);
    result.p_value = 1.0 - student_t_cdf(result.t_statistic, result.degrees_of_freedom);
    return result;
}

// 0: no significant difference, 1: first is better, 2: second is better.
enum class ComparisonLabel : int { NoDifference = 0, FirstBetter = 1, SecondBetter = 2 };

// Paired bootstrap over documents: resample indices with replacement,
// count strict wins of each side's resampled mean (ties count for
// neither), and require the win rate to reach the confidence level.
// Fully determined by the seed; the resample index stream is
// SplitMix64(seed) consumed row-major (samples x n).
inline ComparisonLabel paired_bootstrap_compare(std::span<const double> a, std::span<const double> b,
                                                int samples, double confidence,
                                                std::uint64_t seed) {
    detail::check_paired_lengths(a.size(), b.size());
    if (a.empty()) raise(ErrorCode::InvalidArgument, "need at least one paired observation");
    if (samples < 1) raise(ErrorCode::InvalidArgument, "samples must be >= 1");
    if (!(confidence > 0.0 && confidence < 1.0))
        raise(ErrorCode::InvalidArgument, "confidence must lie in (0, 1)");
    const std::size_t n = a.size();
    SplitMix64 rng(seed);
    std::int64_t wins_a = 0, wins_b = 0;
    for (int s = 0; s < samples; ++s) {
        double sum_a = 0.0, sum_b = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t idx = static_cast<std::size_t>(rng.next_below(n));
            sum_a += a[idx];
            sum_b += b[idx];
        }
        if (sum_a > sum_b) ++wins_a;
        else if (sum_b > sum_a) ++wins_b;
    }
    double total = static_cast<double>(samples);
    if (static_cast<double>(wins_a) / total >= confidence) return ComparisonLabel::FirstBetter;
    if (static_cast<double>(wins_b) / total >= confidence) return ComparisonLabel::SecondBetter;
    return ComparisonLabel::NoDifference;
}

// Per-class F1 over the three comparison labels, averaged with weights
// proportional to true-class support. A class with no true or predicted
// instances contributes an F1 of 0 (and weight 0 if unsupported).
inline double weighted_macro_f1(std::span<const ComparisonLabel> truth,
                                std::span<const ComparisonLabel> predicted) {
    detail::check_paired_lengths(truth.size(), predicted.size());
    if (truth.empty()) raise(ErrorCode::InvalidArgument, "need at least one label");
    // Sum f1 * support first and divide once, so a perfect prediction is
    // exactly 1 regardless of the support split.
    double weighted = 0.0;
    for (int cls = 0; cls <= 2; ++cls) {
        std::int64_t tp = 0, fp = 0, fn = 0, support = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            bool t = static_cast<int>(truth[i]) == cls;
            bool p = static_cast<int>(predicted[i]) == cls;
            if (t) ++support;
            if (t && p) ++tp;
            else if (!t && p) ++fp;
            else if (t && !p) ++fn;
        }
        double precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
        double recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
        double f1 = precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
        weighted += f1 * static_cast<double>(support);
    }
    return weighted / static_cast<double>(truth.size());
}

} // namespace sumeta

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sumeta/annotations.hpp"
#include "sumeta/corpus.hpp"
#include "sumeta/error.hpp"
#include "sumeta/rng.hpp"
#include "sumeta/score_table.hpp"
#include "sumeta/stats.hpp"

namespace sumeta {

enum class EvalLevel { System, Summary };

inline const char* eval_level_name(EvalLevel level) {
    return level == EvalLevel::System ? "system" : "summary";
}

struct MetricCorrelation {
    std::optional<double> value;  // nullopt when the correlation is undefined
    int skipped_documents = 0;    // summary level: documents with undefined per-doc correlation
};

struct CorrelationReport {
    EvalLevel level = EvalLevel::System;
    CorrelationMeasure measure = CorrelationMeasure::Pearson;
    SystemGroup group = SystemGroup::Mix;
    std::vector<std::pair<std::string, MetricCorrelation>> values; // lexicographic metric order
};

namespace detail {

// Per-system document-mean scores for one metric, in `systems` order.
inline std::vector<double> system_mean_scores(const ScoreTable& scores, const std::string& metric,
                                              const std::vector<std::string>& systems,
                                              const std::vector<std::string>& docs) {
    std::vector<double> means;
    means.reserve(systems.size());
    for (const auto& s : systems) {
        double sum = 0.0;
        for (const auto& d : docs) sum += scores.at(metric, s, d);
        means.push_back(sum / static_cast<double>(docs.size()));
    }
    return means;
}

inline std::vector<double> human_mean_vector(const HumanScoreTable& human,
                                             const std::vector<std::string>& systems) {
    std::vector<double> means;
    means.reserve(systems.size());
    for (const auto& s : systems) {
        auto it = human.per_system_mean.find(s);
        if (it == human.per_system_mean.end())
            raise(ErrorCode::IncompleteScores, "no human mean for system '" + s + "'");
        means.push_back(it->second);
    }
    return means;
}

inline void require_human_total(const HumanScoreTable& human,
                                const std::vector<std::string>& systems,
                                const std::vector<std::string>& docs) {
    for (const auto& s : systems)
        for (const auto& d : docs)
            if (!human.per_summary.count({s, d}))
                raise(ErrorCode::IncompleteScores,
                      "no human score for (" + s + ", " + d + ")");
}

} // namespace detail

// Correlation between per-system mean metric scores and per-system mean
// human scores, over the given system group.
inline CorrelationReport system_level_correlation(const ScoreTable& scores,
                                                  const HumanScoreTable& human,
                                                  const std::vector<std::string>& docs,
                                                  const std::vector<std::string>& systems,
                                                  CorrelationMeasure measure,
                                                  SystemGroup group = SystemGroup::Mix) {
    if (systems.size() < 3) raise(ErrorCode::TooFewSystems, "system level needs at least 3 systems");
    if (docs.empty()) raise(ErrorCode::InvalidArgument, "no documents");
    auto metrics = scores.metrics_without_human();
    require_total(scores, metrics, systems, docs);
    auto human_means = detail::human_mean_vector(human, systems);

    CorrelationReport report{EvalLevel::System, measure, group, {}};
    for (const auto& metric : metrics) {
        auto metric_means = detail::system_mean_scores(scores, metric, systems, docs);
        MetricCorrelation cell;
        cell.value = correlate(measure, metric_means, human_means);
        report.values.emplace_back(metric, cell);
    }
    return report;
}

// Per document, correlate the systems' metric scores against their human
// scores; report the mean over documents where that correlation is
// defined, counting the skipped ones. Documents where either side is
// constant are skipped, not zero-filled.
inline CorrelationReport summary_level_correlation(const ScoreTable& scores,
                                                   const HumanScoreTable& human,
                                                   const std::vector<std::string>& docs,
                                                   const std::vector<std::string>& systems,
                                                   CorrelationMeasure measure,
                                                   SystemGroup group = SystemGroup::Mix) {
    if (systems.size() < 2) raise(ErrorCode::TooFewSystems, "summary level needs at least 2 systems");
    if (docs.empty()) raise(ErrorCode::InvalidArgument, "no documents");
    auto metrics = scores.metrics_without_human();
    require_total(scores, metrics, systems, docs);
    detail::require_human_total(human, systems, docs);

    CorrelationReport report{EvalLevel::Summary, measure, group, {}};
    bool any_defined = false;
    for (const auto& metric : metrics) {
        double sum = 0.0;
        int defined = 0, skipped = 0;
        std::vector<double> metric_vec(systems.size()), human_vec(systems.size());
        for (const auto& d : docs) {
            for (std::size_t i = 0; i < systems.size(); ++i) {
                metric_vec[i] = scores.at(metric, systems[i], d);
                human_vec[i] = human.per_summary.at({systems[i], d});
            }
            auto r = correlate(measure, metric_vec, human_vec);
            if (r) {
                sum += *r;
                ++defined;
            } else {
                ++skipped;
            }
        }
        MetricCorrelation cell;
        cell.skipped_documents = skipped;
        if (defined > 0) {
            cell.value = sum / static_cast<double>(defined);
            any_defined = true;
        }
        report.values.emplace_back(metric, cell);
    }
    if (!any_defined)
        raise(ErrorCode::AllDocumentsDegenerate,
              "every per-document correlation is undefined for every metric");
    return report;
}

// Pairwise one-tailed Williams p-values at the system level. Cell (i, j)
// is present only when metric i's Pearson correlation with human scores
// strictly exceeds metric j's (and both are defined), so at most one of
// (i, j) and (j, i) is unmasked and the diagonal never is.
struct WilliamsMatrix {
    std::vector<std::string> metrics;
    std::vector<std::vector<std::optional<double>>> p;
    int n_systems = 0;
};

inline WilliamsMatrix williams_matrix(const ScoreTable& scores, const HumanScoreTable& human,
                                      const std::vector<std::string>& docs,
                                      const std::vector<std::string>& systems) {
    if (systems.size() < 4)
        raise(ErrorCode::TooFewSystems, "Williams matrix needs at least 4 systems");
    auto metrics = scores.metrics_without_human();
    require_total(scores, metrics, systems, docs);
    auto human_means = detail::human_mean_vector(human, systems);

    std::vector<std::vector<double>> means;
    std::vector<std::optional<double>> with_human;
    for (const auto& metric : metrics) {
        means.push_back(detail::system_mean_scores(scores, metric, systems, docs));
        with_human.push_back(pearson(means.back(), human_means));
    }

    WilliamsMatrix matrix;
    matrix.metrics = metrics;
    matrix.n_systems = static_cast<int>(systems.size());
    matrix.p.assign(metrics.size(), std::vector<std::optional<double>>(metrics.size()));
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        for (std::size_t j = 0; j < metrics.size(); ++j) {
            if (i == j || !with_human[i] || !with_human[j]) continue;
            if (!(*with_human[i] > *with_human[j])) continue;
            auto r12 = pearson(means[i], means[j]);
            if (!r12) continue; // a constant metric cannot be tested against
            matrix.p[i][j] =
                williams_test(*with_human[i], *with_human[j], *r12, matrix.n_systems).p_value;
        }
    }
    return matrix;
}

// System-level correlation restricted to the k systems with the highest
// mean human score, for k from |systems| down to k_min. Ties in the human
// mean break towards the lexicographically smaller system id.
struct TopKPoint {
    int k = 0;
    std::optional<double> value;
};

struct TopKCurve {
    CorrelationMeasure measure = CorrelationMeasure::Pearson;
    SystemGroup group = SystemGroup::Mix;
    int k_min = 3;
    std::vector<std::pair<std::string, std::vector<TopKPoint>>> per_metric; // k descending
};

inline TopKCurve topk_correlation_curve(const ScoreTable& scores, const HumanScoreTable& human,
                                        const std::vector<std::string>& docs,
                                        const std::vector<std::string>& systems,
                                        CorrelationMeasure measure, int k_min = 3,
                                        SystemGroup group = SystemGroup::Mix) {
    if (k_min < 3) raise(ErrorCode::InvalidArgument, "k_min must be >= 3");
    if (static_cast<int>(systems.size()) < k_min)
        raise(ErrorCode::TooFewSystems, "need at least k_min systems");

    auto human_means = detail::human_mean_vector(human, systems);
    std::vector<std::size_t> order(systems.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (human_means[a] != human_means[b]) return human_means[a] > human_means[b];
        return systems[a] < systems[b];
    });

    TopKCurve curve;
    curve.measure = measure;
    curve.group = group;
    curve.k_min = k_min;
    auto metrics = scores.metrics_without_human();
    for (const auto& metric : metrics) curve.per_metric.emplace_back(metric, std::vector<TopKPoint>{});

    for (int k = static_cast<int>(systems.size()); k >= k_min; --k) {
        std::vector<std::string> top(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) top[static_cast<std::size_t>(i)] = systems[order[static_cast<std::size_t>(i)]];
        auto report = system_level_correlation(scores, human, docs, top, measure, group);
        for (std::size_t m = 0; m < metrics.size(); ++m) {
            TopKPoint point;
            point.k = k;
            point.value = report.values[m].second.value;
            curve.per_metric[m].second.push_back(point);
        }
    }
    return curve;
}

// All-pairs system comparison. Ground-truth labels come from the paired
// bootstrap on per-document human scores; each metric predicts labels by
// the identical procedure on its own per-document scores, with the same
// per-pair seed, and is scored by weighted macro F1 against the truth.
struct PairwiseResult {
    struct PairRow {
        std::string sys1, sys2;
        ComparisonLabel truth = ComparisonLabel::NoDifference;
        std::vector<ComparisonLabel> predicted; // parallel to `metrics`
    };
    std::vector<std::string> metrics;
    std::vector<PairRow> pairs;
    std::vector<std::pair<std::string, double>> f1; // per metric
    int samples = 0;
    double confidence = 0.0;
    std::uint64_t seed = 0;
};

inline PairwiseResult pairwise_system_f1(const ScoreTable& scores, const HumanScoreTable& human,
                                         const std::vector<std::string>& docs,
                                         const std::vector<std::string>& systems, int samples,
                                         double confidence, std::uint64_t seed) {
    if (systems.size() < 2) raise(ErrorCode::TooFewSystems, "pairwise comparison needs >= 2 systems");
    auto metrics = scores.metrics_without_human();
    require_total(scores, metrics, systems, docs);
    detail::require_human_total(human, systems, docs);

    PairwiseResult result;
    result.metrics = metrics;
    result.samples = samples;
    result.confidence = confidence;
    result.seed = seed;

    auto doc_vector = [&](const std::string& system,
                          const std::optional<std::string>& metric) {
        std::vector<double> v;
        v.reserve(docs.size());
        for (const auto& d : docs)
            v.push_back(metric ? scores.at(*metric, system, d) : human.per_summary.at({system, d}));
        return v;
    };

    for (std::size_t i = 0; i < systems.size(); ++i) {
        for (std::size_t j = i + 1; j < systems.size(); ++j) {
            PairwiseResult::PairRow row;
            row.sys1 = systems[i];
            row.sys2 = systems[j];
            std::uint64_t pair_seed = derive_seed(seed, row.sys1 + '\x1f' + row.sys2);
            auto human_a = doc_vector(row.sys1, std::nullopt);
            auto human_b = doc_vector(row.sys2, std::nullopt);
            row.truth = paired_bootstrap_compare(human_a, human_b, samples, confidence, pair_seed);
            for (const auto& metric : metrics) {
                auto a = doc_vector(row.sys1, metric);
                auto b = doc_vector(row.sys2, metric);
                row.predicted.push_back(
                    paired_bootstrap_compare(a, b, samples, confidence, pair_seed));
            }
            result.pairs.push_back(std::move(row));
        }
    }

    std::vector<ComparisonLabel> truth;
    truth.reserve(result.pairs.size());
    for (const auto& row : result.pairs) truth.push_back(row.truth);
    for (std::size_t m = 0; m < metrics.size(); ++m) {
        std::vector<ComparisonLabel> predicted;
        predicted.reserve(result.pairs.size());
        for (const auto& row : result.pairs) predicted.push_back(row.predicted[m]);
        result.f1.emplace_back(metrics[m], weighted_macro_f1(truth, predicted));
    }
    return result;
}

// Per metric: system-level value minus summary-level value. Metrics whose
// value is undefined at either level are omitted.
inline std::vector<std::pair<std::string, double>>
level_difference(const CorrelationReport& system_report, const CorrelationReport& summary_report) {
    if (system_report.level != EvalLevel::System || summary_report.level != EvalLevel::Summary)
        raise(ErrorCode::MetricSetMismatch, "reports must be system level and summary level");
    if (system_report.measure != summary_report.measure ||
        system_report.group != summary_report.group)
        raise(ErrorCode::MetricSetMismatch, "reports differ in measure or group");
    if (system_report.values.size() != summary_report.values.size())
        raise(ErrorCode::MetricSetMismatch, "reports cover different metric sets");
    std::vector<std::pair<std::string, double>> deltas;
    for (std::size_t i = 0; i < system_report.values.size(); ++i) {
        const auto& [sys_metric, sys_cell] = system_report.values[i];
        const auto& [sum_metric, sum_cell] = summary_report.values[i];
        if (sys_metric != sum_metric)
            raise(ErrorCode::MetricSetMismatch, "reports cover different metric sets");
        if (sys_cell.value && sum_cell.value)
            deltas.emplace_back(sys_metric, *sys_cell.value - *sum_cell.value);
    }
    return deltas;
}

} // namespace sumeta

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "sumeta/error.hpp"
#include "sumeta/rng.hpp"
#include "sumeta/score_table.hpp"

namespace sumeta {

// Proxy for how hard a document is to summarize: mean and population
// standard deviation of the systems' scores on it, per metric.
struct DocumentDifficulty {
    std::string doc;
    double mean = 0.0;
    double stddev = 0.0;
};

struct MetricDifficulties {
    std::string metric;
    std::vector<DocumentDifficulty> docs;
};

inline std::vector<DocumentDifficulty> compute_difficulty(const ScoreTable& scores,
                                                          const std::string& metric,
                                                          const std::vector<std::string>& systems,
                                                          const std::vector<std::string>& docs) {
    if (systems.empty()) raise(ErrorCode::InvalidArgument, "no systems");
    require_total(scores, {metric}, systems, docs);
    std::vector<DocumentDifficulty> out;
    out.reserve(docs.size());
    for (const auto& d : docs) {
        double sum = 0.0;
        for (const auto& s : systems) sum += scores.at(metric, s, d);
        double mean = sum / static_cast<double>(systems.size());
        double var = 0.0;
        for (const auto& s : systems) {
            double delta = scores.at(metric, s, d) - mean;
            var += delta * delta;
        }
        var /= static_cast<double>(systems.size());
        out.push_back({d, mean, std::sqrt(var)});
    }
    return out;
}

struct SamplePlan {
    std::vector<std::string> metrics_used;
    int bins_mean = 5;
    int bins_std = 4;
    std::uint64_t seed = 0;
    std::vector<std::string> selected; // selection order, no duplicates
    std::vector<std::string> warnings; // sub-bins whose documents were all taken already
};

namespace detail {

// Contiguous equal-size blocks; any remainder goes to the last block.
inline std::vector<std::pair<std::size_t, std::size_t>> split_blocks(std::size_t n,
                                                                     std::size_t blocks) {
    std::size_t base = n / blocks;
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t start = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
        std::size_t end = (b + 1 == blocks) ? n : start + base;
        out.emplace_back(start, end);
        start = end;
    }
    return out;
}

} // namespace detail

// Stratified document sampling: per metric, sort documents by mean score
// into 5 contiguous bins, sort each bin by score standard deviation into
// 4 sub-bins, and draw one uniformly random unselected document per
// sub-bin. A sub-bin whose documents were all selected by earlier passes
// is skipped with a warning. Ties in mean or stddev break by document id;
// draws consume a single SplitMix64(seed) stream in metric, bin, sub-bin
// order, so the plan is a pure function of (difficulties, metrics, seed).
inline SamplePlan stratified_sample(const std::vector<MetricDifficulties>& difficulties,
                                    std::uint64_t seed) {
    SamplePlan plan;
    plan.seed = seed;
    const std::size_t total_bins =
        static_cast<std::size_t>(plan.bins_mean) * static_cast<std::size_t>(plan.bins_std);
    for (const auto& md : difficulties) {
        plan.metrics_used.push_back(md.metric);
        if (md.docs.size() < total_bins)
            raise(ErrorCode::CorpusTooSmall,
                  "metric '" + md.metric + "' covers " + std::to_string(md.docs.size()) +
                      " documents, need at least " + std::to_string(total_bins));
    }

    SplitMix64 rng(seed);
    std::set<std::string> taken;
    for (const auto& md : difficulties) {
        std::vector<const DocumentDifficulty*> by_mean;
        by_mean.reserve(md.docs.size());
        for (const auto& d : md.docs) by_mean.push_back(&d);
        std::sort(by_mean.begin(), by_mean.end(),
                  [](const DocumentDifficulty* a, const DocumentDifficulty* b) {
                      if (a->mean != b->mean) return a->mean < b->mean;
                      return a->doc < b->doc;
                  });
        auto bins = detail::split_blocks(by_mean.size(), static_cast<std::size_t>(plan.bins_mean));
        for (std::size_t k = 0; k < bins.size(); ++k) {
            std::vector<const DocumentDifficulty*> by_std(by_mean.begin() + static_cast<std::ptrdiff_t>(bins[k].first),
                                                          by_mean.begin() + static_cast<std::ptrdiff_t>(bins[k].second));
            std::sort(by_std.begin(), by_std.end(),
                      [](const DocumentDifficulty* a, const DocumentDifficulty* b) {
                          if (a->stddev != b->stddev) return a->stddev < b->stddev;
                          return a->doc < b->doc;
                      });
            auto sub_bins = detail::split_blocks(by_std.size(), static_cast<std::size_t>(plan.bins_std));
            for (std::size_t l = 0; l < sub_bins.size(); ++l) {
                std::vector<const std::string*> candidates;
                for (std::size_t i = sub_bins[l].first; i < sub_bins[l].second; ++i)
                    if (!taken.count(by_std[i]->doc)) candidates.push_back(&by_std[i]->doc);
                if (candidates.empty()) {
                    plan.warnings.push_back("metric '" + md.metric + "' bin " + std::to_string(k) +
                                            " sub-bin " + std::to_string(l) +
                                            " exhausted, no document sampled");
                    continue;
                }
                const std::string& pick =
                    *candidates[static_cast<std::size_t>(rng.next_below(candidates.size()))];
                taken.insert(pick);
                plan.selected.push_back(pick);
            }
        }
    }
    return plan;
}

inline void write_sample_plan(const SamplePlan& plan, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IoError, "cannot write " + path.string());
    out << "# seed = " << plan.seed << '\n';
    out << "# metrics =";
    for (const auto& m : plan.metrics_used) out << ' ' << m;
    out << '\n';
    out << "# bins_mean = " << plan.bins_mean << '\n';
    out << "# bins_std = " << plan.bins_std << '\n';
    for (const auto& w : plan.warnings) out << "# warning: " << w << '\n';
    for (const auto& d : plan.selected) out << d << '\n';
}

} // namespace sumeta

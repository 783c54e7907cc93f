#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sumeta/corpus.hpp"
#include "sumeta/error.hpp"
#include "sumeta/score_table.hpp"
#include "sumeta/text.hpp"

namespace sumeta {

// Bag of n-grams with multiplicities. N-grams are keyed by their tokens
// joined with 0x1f, which cannot occur inside a token.
struct NGramDistribution {
    int order = 1;
    std::map<std::string, std::int64_t> counts;
    std::int64_t total = 0;

    bool empty() const { return total == 0; }

    double probability(const std::string& gram) const {
        if (total == 0) return 0.0;
        auto it = counts.find(gram);
        return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
    }
};

inline NGramDistribution ngram_distribution(const TokenSequence& tokens, int order) {
    if (order < 1) raise(ErrorCode::InvalidArgument, "n-gram order must be >= 1");
    NGramDistribution dist;
    dist.order = order;
    if (static_cast<int>(tokens.size()) < order) return dist;
    for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (int j = 1; j < order; ++j) {
            key += '\x1f';
            key += tokens[i + j];
        }
        ++dist.counts[key];
        ++dist.total;
    }
    return dist;
}

// Clipped n-gram recall: overlap is counted at most as often as the n-gram
// occurs in the reference. 0 when the reference has fewer than n tokens.
inline double rouge_n_recall(const TokenSequence& reference, const TokenSequence& candidate, int n) {
    NGramDistribution ref = ngram_distribution(reference, n);
    if (ref.total == 0) return 0.0;
    NGramDistribution cand = ngram_distribution(candidate, n);
    std::int64_t overlap = 0;
    for (const auto& [gram, count] : ref.counts) {
        auto it = cand.counts.find(gram);
        if (it != cand.counts.end()) overlap += std::min(count, it->second);
    }
    return static_cast<double>(overlap) / static_cast<double>(ref.total);
}

namespace detail {

inline std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<std::size_t> prev(b.size() + 1, 0), curr(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            if (a[i - 1] == b[j - 1]) curr[j] = prev[j - 1] + 1;
            else curr[j] = std::max(prev[j], curr[j - 1]);
        }
        std::swap(prev, curr);
    }
    return prev[b.size()];
}

} // namespace detail

// Whole-sequence LCS recall (no sentence splitting): LCS / |reference|.
inline double rouge_l_recall(const TokenSequence& reference, const TokenSequence& candidate) {
    if (reference.empty()) return 0.0;
    return static_cast<double>(detail::lcs_length(reference, candidate)) /
           static_cast<double>(reference.size());
}

// Negated Jensen-Shannon divergence between the bigram distributions, log
// base 2 so the divergence lies in [0, 1] and the score in [-1, 0]. Higher
// is better, matching every other metric. Each KL term runs over the
// support of its first argument, where the mixture is strictly positive,
// so no smoothing is needed. One empty distribution scores -1; two empty
// distributions score 0.
inline double js2_score(const TokenSequence& reference, const TokenSequence& candidate) {
    NGramDistribution p = ngram_distribution(reference, 2);
    NGramDistribution q = ngram_distribution(candidate, 2);
    if (p.empty() && q.empty()) return 0.0;
    if (p.empty() || q.empty()) return -1.0;
    double divergence = 0.0;
    for (const auto& [gram, count] : p.counts) {
        double pp = static_cast<double>(count) / static_cast<double>(p.total);
        double mm = 0.5 * (pp + q.probability(gram));
        divergence += 0.5 * pp * std::log2(pp / mm);
    }
    for (const auto& [gram, count] : q.counts) {
        double qq = static_cast<double>(count) / static_cast<double>(q.total);
        double mm = 0.5 * (p.probability(gram) + qq);
        divergence += 0.5 * qq * std::log2(qq / mm);
    }
    // summation rounding can drift an ulp past the mathematical range
    if (divergence <= 0.0) return 0.0;
    return -std::min(1.0, divergence);
}

inline const std::vector<std::string>& native_metrics() {
    static const std::vector<std::string> metrics = {"js-2", "rouge-1", "rouge-2", "rouge-l"};
    return metrics;
}

inline bool is_native_metric(const std::string& name) {
    const auto& m = native_metrics();
    return std::find(m.begin(), m.end(), name) != m.end();
}

struct ScoringConfig {
    TokenizerConfig tokenizer;
    // Tokens equal to one of these (after tokenization) are replaced by a
    // placeholder symbol before scoring, mirroring how out-of-vocabulary
    // markers were masked for annotators. Off by default.
    std::vector<std::string> unknown_tokens;
};

namespace detail {

inline TokenSequence apply_unknown_mapping(TokenSequence tokens,
                                           const std::vector<std::string>& unknown_tokens) {
    if (unknown_tokens.empty()) return tokens;
    for (auto& t : tokens)
        if (std::find(unknown_tokens.begin(), unknown_tokens.end(), t) != unknown_tokens.end())
            t = "\xE2\x96\xA1"; // U+25A1 white square
    return tokens;
}

} // namespace detail

inline double score_native_metric(const std::string& metric, const TokenSequence& reference,
                                  const TokenSequence& candidate) {
    if (metric == "rouge-1") return rouge_n_recall(reference, candidate, 1);
    if (metric == "rouge-2") return rouge_n_recall(reference, candidate, 2);
    if (metric == "rouge-l") return rouge_l_recall(reference, candidate);
    if (metric == "js-2") return js2_score(reference, candidate);
    raise(ErrorCode::InvalidArgument, "unknown native metric '" + metric + "'");
}

// One entry per (metric, system, document). Pure in (corpus, config);
// cell order of evaluation does not affect the result.
inline ScoreTable score_corpus(const Corpus& corpus, const std::vector<std::string>& metrics,
                               const ScoringConfig& config = {}) {
    for (const auto& m : metrics)
        if (!is_native_metric(m))
            raise(ErrorCode::InvalidArgument, "'" + m + "' is not a native metric");

    std::map<std::string, TokenSequence> ref_tokens;
    for (const auto& doc : corpus.documents)
        ref_tokens[doc.id] = tokenize(doc.reference, config.tokenizer);

    ScoreTable table;
    for (const auto& system : corpus.systems) {
        for (const auto& doc : corpus.documents) {
            TokenSequence cand = detail::apply_unknown_mapping(
                tokenize(corpus.output(system.id, doc.id), config.tokenizer), config.unknown_tokens);
            for (const auto& metric : metrics)
                table.insert(metric, system.id, doc.id,
                             score_native_metric(metric, ref_tokens[doc.id], cand));
        }
    }
    return table;
}

} // namespace sumeta

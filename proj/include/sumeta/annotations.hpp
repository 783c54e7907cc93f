#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sumeta/corpus.hpp"
#include "sumeta/error.hpp"
#include "sumeta/score_table.hpp"

namespace sumeta {

// One worker's call on whether one SCU is conveyed by one system summary.
struct ScuJudgment {
    std::string doc;
    std::string system;
    std::string worker;
    std::string scu;
    bool present = false;

    bool operator==(const ScuJudgment&) const = default;
};

struct AnnotationSet {
    std::vector<ScuJudgment> judgments;
    int workers_per_summary = 4;
};

// A judged unit: (system, doc, scu).
using UnitKey = std::tuple<std::string, std::string, std::string>;
using MajorityLabels = std::map<UnitKey, bool>;

// Per-summary scores plus per-system means; a mean is always the
// unweighted arithmetic mean of that system's per-summary scores.
struct HumanScoreTable {
    std::map<std::pair<std::string, std::string>, double> per_summary; // (system, doc)
    std::map<std::string, double> per_system_mean;
};

// Annotation file: CSV with header doc_id,system_id,worker_id,scu_id,present
// and present in {0,1}. Ids are validated against the corpus, including
// SCU membership; (doc, system, worker, scu) must be unique.
inline AnnotationSet load_annotations(const std::filesystem::path& path, const Corpus& corpus) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::IoError, "cannot open " + path.string());

    std::map<std::string, std::set<std::string>> doc_scus;
    for (const auto& d : corpus.documents) {
        auto& scus = doc_scus[d.id];
        for (const auto& scu : d.scus) scus.insert(scu.id);
    }
    std::set<std::string> system_ids;
    for (const auto& s : corpus.systems) system_ids.insert(s.id);

    AnnotationSet annotations;
    std::set<std::tuple<std::string, std::string, std::string, std::string>> seen;
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line))
        raise(ErrorCode::MalformedRecord, path.string() + ": empty annotation file");
    ++line_no;
    if (line != "doc_id,system_id,worker_id,scu_id,present")
        raise(ErrorCode::MalformedRecord,
              path.string() + ":1: expected header 'doc_id,system_id,worker_id,scu_id,present'");
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::string where = path.string() + ":" + std::to_string(line_no);
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (fields.size() != 5)
            raise(ErrorCode::MalformedRecord, where + ": expected 5 comma-separated fields");
        ScuJudgment j;
        j.doc = fields[0];
        j.system = fields[1];
        j.worker = fields[2];
        j.scu = fields[3];
        require_valid_id(j.worker, where);
        auto scus = doc_scus.find(j.doc);
        if (scus == doc_scus.end())
            raise(ErrorCode::UnknownDocument, where + ": unknown document '" + j.doc + "'");
        if (!system_ids.count(j.system))
            raise(ErrorCode::UnknownSystem, where + ": unknown system '" + j.system + "'");
        if (!scus->second.count(j.scu))
            raise(ErrorCode::UnknownScu,
                  where + ": scu '" + j.scu + "' not in document '" + j.doc + "'");
        if (fields[4] == "1") j.present = true;
        else if (fields[4] == "0") j.present = false;
        else raise(ErrorCode::MalformedRecord, where + ": present must be 0 or 1");
        if (!seen.insert({j.doc, j.system, j.worker, j.scu}).second)
            raise(ErrorCode::DuplicateEntry, where + ": duplicate judgment");
        annotations.judgments.push_back(std::move(j));
    }
    return annotations;
}

// Soft invariants: every worker who touched a summary should have judged
// all of its SCUs, and each summary should have the expected number of
// workers. Violations are reported, not fatal; the alpha computation
// tolerates missing cells.
inline std::vector<std::string> annotation_warnings(const AnnotationSet& annotations) {
    std::map<std::pair<std::string, std::string>, std::set<std::string>> summary_scus;
    std::map<std::pair<std::string, std::string>, std::map<std::string, std::set<std::string>>>
        summary_worker_scus;
    for (const auto& j : annotations.judgments) {
        summary_scus[{j.system, j.doc}].insert(j.scu);
        summary_worker_scus[{j.system, j.doc}][j.worker].insert(j.scu);
    }
    std::vector<std::string> warnings;
    for (const auto& [summary, workers] : summary_worker_scus) {
        const auto& scus = summary_scus[summary];
        for (const auto& [worker, judged] : workers)
            if (judged.size() != scus.size())
                warnings.push_back("worker '" + worker + "' judged " + std::to_string(judged.size()) +
                                   " of " + std::to_string(scus.size()) + " SCUs for (" +
                                   summary.first + ", " + summary.second + ")");
        if (static_cast<int>(workers.size()) != annotations.workers_per_summary)
            warnings.push_back("(" + summary.first + ", " + summary.second + ") has " +
                               std::to_string(workers.size()) + " workers, expected " +
                               std::to_string(annotations.workers_per_summary));
    }
    return warnings;
}

namespace detail {

// Majority label for one unit's votes: present only on a strict majority,
// ties resolve to not-present.
inline bool majority_label(int present_votes, int total_votes) {
    return 2 * present_votes > total_votes;
}

} // namespace detail

// Removes, per document, the single worker who disagrees with the
// all-worker majority label on the largest number of that document's SCU
// judgments (the majority includes the candidate worker). Ties go to the
// lexicographically greatest worker id, so exactly one worker per document
// is removed even under unanimity.
inline AnnotationSet filter_noisy_workers(const AnnotationSet& annotations) {
    // votes per (doc, system, scu)
    std::map<std::tuple<std::string, std::string, std::string>, std::pair<int, int>> votes;
    std::map<std::string, std::set<std::string>> doc_workers;
    for (const auto& j : annotations.judgments) {
        auto& v = votes[{j.doc, j.system, j.scu}];
        if (j.present) ++v.first;
        ++v.second;
        doc_workers[j.doc].insert(j.worker);
    }
    for (const auto& [doc, workers] : doc_workers)
        if (workers.size() < 2)
            raise(ErrorCode::TooFewWorkers, "document '" + doc + "' has fewer than 2 workers");

    std::map<std::string, std::map<std::string, int>> disagreements; // doc -> worker -> count
    for (const auto& [doc, workers] : doc_workers) {
        auto& counts = disagreements[doc];
        for (const auto& w : workers) counts[w] = 0;
    }
    for (const auto& j : annotations.judgments) {
        const auto& v = votes[{j.doc, j.system, j.scu}];
        if (j.present != detail::majority_label(v.first, v.second)) ++disagreements[j.doc][j.worker];
    }

    std::map<std::string, std::string> removed; // doc -> noisy worker
    for (const auto& [doc, counts] : disagreements) {
        std::string worst;
        int worst_count = -1;
        for (const auto& [worker, count] : counts) {
            if (count > worst_count || (count == worst_count && worker > worst)) {
                worst = worker;
                worst_count = count;
            }
        }
        removed[doc] = worst;
    }

    AnnotationSet filtered;
    filtered.workers_per_summary = annotations.workers_per_summary;
    for (const auto& j : annotations.judgments)
        if (removed.at(j.doc) != j.worker) filtered.judgments.push_back(j);
    return filtered;
}

// Majority vote per (system, doc, scu) over the remaining workers;
// present needs a strict majority, exact ties count as not present.
inline MajorityLabels majority_vote(const AnnotationSet& annotations) {
    std::map<UnitKey, std::pair<int, int>> votes;
    for (const auto& j : annotations.judgments) {
        auto& v = votes[{j.system, j.doc, j.scu}];
        if (j.present) ++v.first;
        ++v.second;
    }
    MajorityLabels labels;
    for (const auto& [unit, v] : votes) labels[unit] = detail::majority_label(v.first, v.second);
    return labels;
}

// Fraction of the document's SCUs the summary conveys.
inline double pyramid_human_score(const MajorityLabels& labels, const Document& doc,
                                  const std::string& system) {
    if (doc.scus.empty()) raise(ErrorCode::NoScus, "document '" + doc.id + "' has no SCUs");
    int present = 0;
    for (const auto& scu : doc.scus) {
        auto it = labels.find({system, doc.id, scu.id});
        if (it == labels.end())
            raise(ErrorCode::NoJudgments, "no judgments for (" + system + ", " + doc.id + ", " +
                                              scu.id + ")");
        if (it->second) ++present;
    }
    return static_cast<double>(present) / static_cast<double>(doc.scus.size());
}

// Scores every (system, document) pair of the corpus and fills in the
// per-system means.
inline HumanScoreTable human_scores_from_labels(const MajorityLabels& labels, const Corpus& corpus) {
    HumanScoreTable table;
    for (const auto& system : corpus.systems) {
        double sum = 0.0;
        for (const auto& doc : corpus.documents) {
            double score = pyramid_human_score(labels, doc, system.id);
            table.per_summary[{system.id, doc.id}] = score;
            sum += score;
        }
        table.per_system_mean[system.id] =
            corpus.documents.empty() ? 0.0 : sum / static_cast<double>(corpus.documents.size());
    }
    return table;
}

// Unweighted mean over documents, recomputed from the per-summary scores.
inline std::map<std::string, double> mean_system_human_score(const HumanScoreTable& scores) {
    std::map<std::string, std::pair<double, int>> sums;
    for (const auto& [key, score] : scores.per_summary) {
        auto& s = sums[key.first];
        s.first += score;
        ++s.second;
    }
    std::map<std::string, double> means;
    for (const auto& [system, s] : sums) means[system] = s.first / static_cast<double>(s.second);
    return means;
}

// Builds a HumanScoreTable from the reserved "human" metric of a score
// table; coverage must be total over (systems x documents).
inline HumanScoreTable human_scores_from_table(const ScoreTable& table,
                                               const std::vector<std::string>& systems,
                                               const std::vector<std::string>& docs) {
    if (!table.has_metric(kHumanMetricId))
        raise(ErrorCode::IncompleteScores, "score table has no '" + std::string(kHumanMetricId) +
                                               "' metric");
    require_total(table, {kHumanMetricId}, systems, docs);
    HumanScoreTable human;
    for (const auto& s : systems) {
        double sum = 0.0;
        for (const auto& d : docs) {
            double score = table.at(kHumanMetricId, s, d);
            human.per_summary[{s, d}] = score;
            sum += score;
        }
        human.per_system_mean[s] = docs.empty() ? 0.0 : sum / static_cast<double>(docs.size());
    }
    return human;
}

namespace detail {

struct UnitVotes {
    int present = 0;
    int total = 0;
};

// Krippendorff's alpha for nominal binary data from per-unit vote counts,
// via the coincidence matrix. Units with fewer than 2 judgments are
// ignored (missing-data rule). Returns nullopt when expected disagreement
// is zero (only one value observed overall).
inline std::optional<double> alpha_from_votes(const std::vector<UnitVotes>& units) {
    double n_present = 0.0, n_absent = 0.0, o_mismatch = 0.0;
    bool any_pairable = false;
    for (const auto& u : units) {
        if (u.total < 2) continue;
        any_pairable = true;
        double m = static_cast<double>(u.total);
        double p = static_cast<double>(u.present);
        double a = m - p;
        // ordered within-unit pairs, each weighted 1/(m-1)
        n_present += p;
        n_absent += a;
        o_mismatch += 2.0 * p * a / (m - 1.0);
    }
    if (!any_pairable)
        raise(ErrorCode::InsufficientData, "no unit has at least 2 judgments");
    double n = n_present + n_absent;
    double expected = 2.0 * n_present * n_absent / (n * (n - 1.0));
    if (expected == 0.0) return std::nullopt;
    double observed = o_mismatch / n;
    return 1.0 - observed / expected;
}

inline std::map<UnitKey, UnitVotes> unit_votes(const AnnotationSet& annotations) {
    std::map<UnitKey, UnitVotes> votes;
    for (const auto& j : annotations.judgments) {
        auto& v = votes[{j.system, j.doc, j.scu}];
        if (j.present) ++v.present;
        ++v.total;
    }
    return votes;
}

} // namespace detail

// Pooled alpha over all (system, doc, scu) units.
inline std::optional<double> krippendorff_alpha(const AnnotationSet& annotations) {
    std::vector<detail::UnitVotes> units;
    for (const auto& [unit, v] : detail::unit_votes(annotations)) units.push_back(v);
    return detail::alpha_from_votes(units);
}

// Mean of per-document alphas; documents whose alpha is undefined are
// skipped. Nullopt when no document yields a defined alpha.
inline std::optional<double> krippendorff_alpha_per_document_mean(const AnnotationSet& annotations) {
    std::map<std::string, std::vector<detail::UnitVotes>> per_doc;
    for (const auto& [unit, v] : detail::unit_votes(annotations))
        per_doc[std::get<1>(unit)].push_back(v);
    double sum = 0.0;
    int count = 0;
    for (const auto& [doc, units] : per_doc) {
        std::optional<double> alpha;
        try {
            alpha = detail::alpha_from_votes(units);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::InsufficientData) throw;
            continue;
        }
        if (alpha) {
            sum += *alpha;
            ++count;
        }
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

// Judgments whose system belongs to the given set; used for the Ext/Abs
// agreement breakdown.
inline AnnotationSet filter_by_systems(const AnnotationSet& annotations,
                                       const std::vector<std::string>& systems) {
    std::set<std::string> keep(systems.begin(), systems.end());
    AnnotationSet out;
    out.workers_per_summary = annotations.workers_per_summary;
    for (const auto& j : annotations.judgments)
        if (keep.count(j.system)) out.judgments.push_back(j);
    return out;
}

} // namespace sumeta

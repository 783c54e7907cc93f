#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "sumeta/corpus.hpp"
#include "sumeta/error.hpp"
#include "sumeta/format.hpp"

namespace sumeta {

// Reserved metric id carrying aggregated human judgments, so experiments
// treat human scores as just another column of the table.
inline constexpr const char* kHumanMetricId = "human";

// (metric, system, document) -> finite real score, higher is better for
// every metric. The universal exchange format between scoring and the
// experiments.
class ScoreTable {
public:
    using Key = std::pair<std::string, std::string>; // (system, doc)

    void insert(const std::string& metric, const std::string& system, const std::string& doc,
                double score) {
        if (!std::isfinite(score))
            raise(ErrorCode::NonFiniteScore,
                  "(" + metric + ", " + system + ", " + doc + ") is not finite");
        auto [it, inserted] = entries_[metric].emplace(Key{system, doc}, score);
        if (!inserted)
            raise(ErrorCode::DuplicateEntry,
                  "duplicate entry (" + metric + ", " + system + ", " + doc + ")");
    }

    bool contains(const std::string& metric, const std::string& system,
                  const std::string& doc) const {
        auto it = entries_.find(metric);
        return it != entries_.end() && it->second.count({system, doc}) > 0;
    }

    double at(const std::string& metric, const std::string& system, const std::string& doc) const {
        auto it = entries_.find(metric);
        if (it != entries_.end()) {
            auto jt = it->second.find({system, doc});
            if (jt != it->second.end()) return jt->second;
        }
        raise(ErrorCode::IncompleteScores,
              "missing entry (" + metric + ", " + system + ", " + doc + ")");
    }

    bool has_metric(const std::string& metric) const { return entries_.count(metric) > 0; }

    // Lexicographic metric order; iteration over this defines report row order.
    std::vector<std::string> metrics() const {
        std::vector<std::string> out;
        out.reserve(entries_.size());
        for (const auto& [metric, rows] : entries_) out.push_back(metric);
        return out;
    }

    std::vector<std::string> metrics_without_human() const {
        std::vector<std::string> out;
        for (const auto& [metric, rows] : entries_)
            if (metric != kHumanMetricId) out.push_back(metric);
        return out;
    }

    std::size_t size() const {
        std::size_t n = 0;
        for (const auto& [metric, rows] : entries_) n += rows.size();
        return n;
    }

    bool operator==(const ScoreTable&) const = default;

    const std::map<std::string, std::map<Key, double>>& entries() const { return entries_; }

private:
    std::map<std::string, std::map<Key, double>> entries_;
};

// Triples the table is missing for full (metrics x systems x documents)
// coverage; empty means the table is total.
inline std::vector<std::tuple<std::string, std::string, std::string>>
missing_entries(const ScoreTable& table, const std::vector<std::string>& metrics,
                const std::vector<std::string>& systems, const std::vector<std::string>& docs) {
    std::vector<std::tuple<std::string, std::string, std::string>> missing;
    for (const auto& m : metrics)
        for (const auto& s : systems)
            for (const auto& d : docs)
                if (!table.contains(m, s, d)) missing.emplace_back(m, s, d);
    return missing;
}

inline void require_total(const ScoreTable& table, const std::vector<std::string>& metrics,
                          const std::vector<std::string>& systems,
                          const std::vector<std::string>& docs) {
    auto missing = missing_entries(table, metrics, systems, docs);
    if (missing.empty()) return;
    std::ostringstream msg;
    msg << missing.size() << " missing entries:";
    std::size_t shown = 0;
    for (const auto& [m, s, d] : missing) {
        if (shown == 10) {
            msg << " ...";
            break;
        }
        msg << " (" << m << ", " << s << ", " << d << ")";
        ++shown;
    }
    raise(ErrorCode::IncompleteScores, msg.str());
}

// Score file: CSV with header metric,system_id,doc_id,score. Ids are
// validated against the corpus; scores must be finite decimals.
inline ScoreTable load_score_file(const std::filesystem::path& path, const Corpus& corpus) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::IoError, "cannot open " + path.string());

    std::set<std::string> doc_ids, system_ids;
    for (const auto& d : corpus.documents) doc_ids.insert(d.id);
    for (const auto& s : corpus.systems) system_ids.insert(s.id);

    ScoreTable table;
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line))
        raise(ErrorCode::MalformedRecord, path.string() + ": empty score file");
    ++line_no;
    if (line != "metric,system_id,doc_id,score")
        raise(ErrorCode::MalformedRecord,
              path.string() + ":1: expected header 'metric,system_id,doc_id,score'");
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
        if (fields.size() != 4)
            raise(ErrorCode::MalformedRecord, where + ": expected 4 comma-separated fields");
        const std::string& metric = fields[0];
        const std::string& system = fields[1];
        const std::string& doc = fields[2];
        require_valid_id(metric, where);
        if (!system_ids.count(system))
            raise(ErrorCode::UnknownSystem, where + ": unknown system '" + system + "'");
        if (!doc_ids.count(doc))
            raise(ErrorCode::UnknownDocument, where + ": unknown document '" + doc + "'");
        double score = parse_finite_double(fields[3], where);
        table.insert(metric, system, doc, score);
    }
    return table;
}

// Union of tables; any key collision is an error. Empty input merges to an
// empty table.
inline ScoreTable merge(const std::vector<ScoreTable>& tables) {
    ScoreTable out;
    for (const auto& table : tables)
        for (const auto& [metric, rows] : table.entries())
            for (const auto& [key, score] : rows)
                out.insert(metric, key.first, key.second, score);
    return out;
}

// Rows are emitted metric-major in the given metric order, then systems in
// the given system order, then documents; reruns are byte-identical.
inline void write_score_file(const ScoreTable& table, const std::vector<std::string>& metrics,
                             const std::vector<std::string>& systems,
                             const std::vector<std::string>& docs,
                             const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IoError, "cannot write " + path.string());
    out << "metric,system_id,doc_id,score\n";
    for (const auto& m : metrics)
        for (const auto& s : systems)
            for (const auto& d : docs)
                out << m << ',' << s << ',' << d << ',' << dtos(table.at(m, s, d)) << '\n';
}

} // namespace sumeta

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sumeta/error.hpp"
#include "sumeta/format.hpp"
#include "sumeta/metaeval.hpp"

namespace sumeta {

// Report files are tab-separated tables preceded by "# key = value"
// provenance lines; undefined correlations print as NA. Rerunning a
// command with the same config yields byte-identical files.

using ReportMeta = std::vector<std::pair<std::string, std::string>>;

namespace detail {

inline std::ofstream open_report(const std::filesystem::path& path, const ReportMeta& meta) {
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IoError, "cannot write " + path.string());
    for (const auto& [key, value] : meta) out << "# " << key << " = " << value << '\n';
    return out;
}

inline std::string opt_to_field(const std::optional<double>& v) {
    return v ? dtos(*v) : "NA";
}

} // namespace detail

inline void write_correlation_report(const CorrelationReport& report,
                                     const std::filesystem::path& path, const ReportMeta& meta) {
    auto out = detail::open_report(path, meta);
    out << "# level = " << eval_level_name(report.level) << '\n';
    if (report.level == EvalLevel::Summary) {
        out << "metric\tcorrelation\tskipped_documents\n";
        for (const auto& [metric, cell] : report.values)
            out << metric << '\t' << detail::opt_to_field(cell.value) << '\t'
                << cell.skipped_documents << '\n';
    } else {
        out << "metric\tcorrelation\n";
        for (const auto& [metric, cell] : report.values)
            out << metric << '\t' << detail::opt_to_field(cell.value) << '\n';
    }
}

inline void write_topk_curve(const TopKCurve& curve, const std::filesystem::path& path,
                             const ReportMeta& meta) {
    auto out = detail::open_report(path, meta);
    out << "metric\tk\tcorrelation\n";
    for (const auto& [metric, points] : curve.per_metric)
        for (const auto& point : points)
            out << metric << '\t' << point.k << '\t' << detail::opt_to_field(point.value) << '\n';
}

// Square table; masked cells are left empty.
inline void write_williams_matrix(const WilliamsMatrix& matrix, const std::filesystem::path& path,
                                  const ReportMeta& meta) {
    auto out = detail::open_report(path, meta);
    out << "metric";
    for (const auto& m : matrix.metrics) out << '\t' << m;
    out << '\n';
    for (std::size_t i = 0; i < matrix.metrics.size(); ++i) {
        out << matrix.metrics[i];
        for (std::size_t j = 0; j < matrix.metrics.size(); ++j) {
            out << '\t';
            if (matrix.p[i][j]) out << dtos(*matrix.p[i][j]);
        }
        out << '\n';
    }
}

inline void write_pairwise_f1(const PairwiseResult& result, const std::filesystem::path& path,
                              const ReportMeta& meta) {
    auto out = detail::open_report(path, meta);
    out << "metric\tweighted_macro_f1\n";
    for (const auto& [metric, f1] : result.f1) out << metric << '\t' << dtos(f1) << '\n';
}

inline void write_pairwise_labels(const PairwiseResult& result, const std::filesystem::path& path,
                                  const ReportMeta& meta) {
    auto out = detail::open_report(path, meta);
    out << "sys1\tsys2\thuman";
    for (const auto& m : result.metrics) out << '\t' << m;
    out << '\n';
    for (const auto& row : result.pairs) {
        out << row.sys1 << '\t' << row.sys2 << '\t' << static_cast<int>(row.truth);
        for (const auto& label : row.predicted) out << '\t' << static_cast<int>(label);
        out << '\n';
    }
}

inline void write_level_difference(const CorrelationReport& system_report,
                                   const CorrelationReport& summary_report,
                                   const std::vector<std::pair<std::string, double>>& deltas,
                                   const std::filesystem::path& path, const ReportMeta& meta) {
    auto out = detail::open_report(path, meta);
    out << "metric\tsystem_level\tsummary_level\tdifference\n";
    for (const auto& [metric, delta] : deltas) {
        std::optional<double> sys_value, sum_value;
        for (const auto& [m, cell] : system_report.values)
            if (m == metric) sys_value = cell.value;
        for (const auto& [m, cell] : summary_report.values)
            if (m == metric) sum_value = cell.value;
        out << metric << '\t' << detail::opt_to_field(sys_value) << '\t'
            << detail::opt_to_field(sum_value) << '\t' << dtos(delta) << '\n';
    }
}

} // namespace sumeta

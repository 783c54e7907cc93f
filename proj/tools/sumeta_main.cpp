// sumeta: command-line front end for the meta-evaluation harness.
//
// Subcommands:
//   score     compute the native lexical metrics over a corpus
//   human     aggregate SCU judgments into human scores + agreement report
//   metaeval  run one experiment (system|summary|topk|williams|pairwise|delta)
//   sample    stratified representative-document sampling
//
// Every command is deterministic given its flags (including --seed);
// reruns produce byte-identical output files. Exit code 2 signals a
// validation failure, with a line-numbered message where a file is at
// fault.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sumeta/sumeta.hpp"

namespace fs = std::filesystem;
using namespace sumeta;

namespace {

struct RunConfig {
    std::string corpus_refs;
    std::string systems_manifest;
    std::string outputs_dir;
    std::string scus_path;
    std::string annotations_path;
    std::vector<std::string> score_files;
    std::string group = "mix";
    std::string measure = "pearson";
    int samples = 1000;
    double confidence = 0.95;
    std::uint64_t seed = 0;
    int k_min = 3;
    std::string out_dir = ".";
    bool lowercase = true;
    bool stem = false;
    bool alpha_per_document = false;
    std::vector<std::string> map_unknown;
};

void add_corpus_flags(CLI::App& cmd, RunConfig& cfg) {
    cmd.add_option("--corpus-refs", cfg.corpus_refs, "References file (JSONL)")->required();
    cmd.add_option("--systems-manifest", cfg.systems_manifest, "Systems manifest (JSONL)")->required();
}

void add_out_flag(CLI::App& cmd, RunConfig& cfg) {
    cmd.add_option("--out", cfg.out_dir, "Output directory")->required();
}

fs::path ensure_out_dir(const RunConfig& cfg) {
    fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    return dir;
}

SystemGroup group_of(const RunConfig& cfg) {
    auto g = parse_system_group(cfg.group);
    if (!g) raise(ErrorCode::InvalidArgument, "--group must be ext, abs or mix");
    return *g;
}

CorrelationMeasure measure_of(const RunConfig& cfg) {
    auto m = parse_correlation_measure(cfg.measure);
    if (!m) raise(ErrorCode::InvalidArgument, "--measure must be pearson or kendall");
    return *m;
}

ScoreTable load_all_scores(const RunConfig& cfg, const Corpus& corpus) {
    if (cfg.score_files.empty()) raise(ErrorCode::InvalidArgument, "no --scores files given");
    std::vector<ScoreTable> tables;
    for (const auto& path : cfg.score_files) tables.push_back(load_score_file(path, corpus));
    return merge(tables);
}

ReportMeta base_meta(const std::string& command, const RunConfig& cfg) {
    return {{"command", command},
            {"group", std::string(system_group_name(group_of(cfg)))},
            {"measure", correlation_measure_name(measure_of(cfg))},
            {"seed", std::to_string(cfg.seed)}};
}

int cmd_score(const RunConfig& cfg) {
    Corpus corpus = load_corpus(cfg.corpus_refs, cfg.systems_manifest, cfg.outputs_dir);
    ScoringConfig scoring;
    scoring.tokenizer.lowercase = cfg.lowercase;
    scoring.tokenizer.stem = cfg.stem;
    scoring.unknown_tokens = cfg.map_unknown;
    ScoreTable table = score_corpus(corpus, native_metrics(), scoring);
    fs::path dir = ensure_out_dir(cfg);
    auto systems = corpus.system_ids();
    auto docs = corpus.document_ids();
    for (const auto& metric : native_metrics())
        write_score_file(table, {metric}, systems, docs, dir / (metric + ".csv"));
    return 0;
}

int cmd_human(const RunConfig& cfg) {
    Corpus corpus = load_corpus_index(cfg.corpus_refs, cfg.systems_manifest);
    if (cfg.scus_path.empty()) raise(ErrorCode::InvalidArgument, "human requires --scus");
    if (cfg.annotations_path.empty()) raise(ErrorCode::InvalidArgument, "human requires --annotations");
    load_scus(cfg.scus_path, corpus);

    AnnotationSet annotations = load_annotations(cfg.annotations_path, corpus);
    for (const auto& w : annotation_warnings(annotations)) std::cerr << "warning: " << w << '\n';

    AnnotationSet retained = filter_noisy_workers(annotations);
    MajorityLabels labels = majority_vote(retained);
    HumanScoreTable human = human_scores_from_labels(labels, corpus);

    fs::path dir = ensure_out_dir(cfg);
    auto systems = corpus.system_ids();
    auto docs = corpus.document_ids();

    ScoreTable human_table;
    for (const auto& s : systems)
        for (const auto& d : docs)
            human_table.insert(kHumanMetricId, s, d, human.per_summary.at({s, d}));
    write_score_file(human_table, {kHumanMetricId}, systems, docs, dir / "human.csv");

    {
        std::ofstream out(dir / "human_system_means.tsv");
        if (!out) raise(ErrorCode::IoError, "cannot write human_system_means.tsv");
        out << "system\tmean_human_score\n";
        for (const auto& s : systems) out << s << '\t' << dtos(human.per_system_mean.at(s)) << '\n';
    }

    auto opt_field = [](const std::optional<double>& v) { return v ? dtos(*v) : "NA"; };
    auto alpha_pooled = krippendorff_alpha(retained);
    auto alpha_per_doc = krippendorff_alpha_per_document_mean(retained);
    std::optional<double> alpha_ext, alpha_abs;
    auto ext = group_systems(corpus, SystemGroup::Ext);
    auto abs = group_systems(corpus, SystemGroup::Abs);
    if (!ext.empty()) {
        auto subset = filter_by_systems(retained, ext);
        if (!subset.judgments.empty()) alpha_ext = krippendorff_alpha(subset);
    }
    if (!abs.empty()) {
        auto subset = filter_by_systems(retained, abs);
        if (!subset.judgments.empty()) alpha_abs = krippendorff_alpha(subset);
    }

    double scu_total = 0.0;
    for (const auto& d : corpus.documents) scu_total += static_cast<double>(d.scus.size());
    double scus_per_reference = corpus.documents.empty()
                                    ? 0.0
                                    : scu_total / static_cast<double>(corpus.documents.size());

    {
        std::ofstream out(dir / "agreement.tsv");
        if (!out) raise(ErrorCode::IoError, "cannot write agreement.tsv");
        out << "key\tvalue\n";
        out << "judgments_total\t" << annotations.judgments.size() << '\n';
        out << "judgments_retained\t" << retained.judgments.size() << '\n';
        out << "workers_removed\t" << corpus.documents.size() << '\n';
        out << "scus_per_reference_mean\t" << dtos(scus_per_reference) << '\n';
        out << "alpha\t" << opt_field(cfg.alpha_per_document ? alpha_per_doc : alpha_pooled) << '\n';
        out << "alpha_pooled\t" << opt_field(alpha_pooled) << '\n';
        out << "alpha_per_document_mean\t" << opt_field(alpha_per_doc) << '\n';
        out << "alpha_ext\t" << opt_field(alpha_ext) << '\n';
        out << "alpha_abs\t" << opt_field(alpha_abs) << '\n';
    }
    return 0;
}

int cmd_metaeval(const RunConfig& cfg, const std::string& experiment) {
    Corpus corpus = load_corpus_index(cfg.corpus_refs, cfg.systems_manifest);
    ScoreTable table = load_all_scores(cfg, corpus);
    SystemGroup group = group_of(cfg);
    CorrelationMeasure measure = measure_of(cfg);
    auto systems = group_systems(corpus, group);
    auto docs = corpus.document_ids();
    HumanScoreTable human = human_scores_from_table(table, systems, docs);
    fs::path dir = ensure_out_dir(cfg);

    std::string suffix = cfg.group + "_" + cfg.measure + ".tsv";
    if (experiment == "system") {
        auto report = system_level_correlation(table, human, docs, systems, measure, group);
        write_correlation_report(report, dir / ("system_" + suffix), base_meta("metaeval system", cfg));
    } else if (experiment == "summary") {
        auto report = summary_level_correlation(table, human, docs, systems, measure, group);
        write_correlation_report(report, dir / ("summary_" + suffix), base_meta("metaeval summary", cfg));
    } else if (experiment == "topk") {
        auto curve = topk_correlation_curve(table, human, docs, systems, measure, cfg.k_min, group);
        auto meta = base_meta("metaeval topk", cfg);
        meta.emplace_back("k_min", std::to_string(cfg.k_min));
        write_topk_curve(curve, dir / ("topk_" + suffix), meta);
    } else if (experiment == "williams") {
        if (measure != CorrelationMeasure::Pearson)
            raise(ErrorCode::InvalidArgument, "the Williams matrix is Pearson-only");
        auto matrix = williams_matrix(table, human, docs, systems);
        auto meta = base_meta("metaeval williams", cfg);
        meta.emplace_back("n_systems", std::to_string(matrix.n_systems));
        write_williams_matrix(matrix, dir / ("williams_" + cfg.group + ".tsv"), meta);
    } else if (experiment == "pairwise") {
        auto result =
            pairwise_system_f1(table, human, docs, systems, cfg.samples, cfg.confidence, cfg.seed);
        auto meta = base_meta("metaeval pairwise", cfg);
        meta.emplace_back("samples", std::to_string(cfg.samples));
        meta.emplace_back("confidence", dtos(cfg.confidence));
        write_pairwise_f1(result, dir / ("pairwise_f1_" + cfg.group + ".tsv"), meta);
        write_pairwise_labels(result, dir / ("pairwise_labels_" + cfg.group + ".tsv"), meta);
    } else if (experiment == "delta") {
        auto sys_report = system_level_correlation(table, human, docs, systems, measure, group);
        auto sum_report = summary_level_correlation(table, human, docs, systems, measure, group);
        auto deltas = level_difference(sys_report, sum_report);
        write_level_difference(sys_report, sum_report, deltas, dir / ("delta_" + suffix),
                               base_meta("metaeval delta", cfg));
    } else {
        raise(ErrorCode::InvalidArgument,
              "unknown experiment '" + experiment +
                  "' (expected system|summary|topk|williams|pairwise|delta)");
    }
    return 0;
}

int cmd_sample(const RunConfig& cfg) {
    Corpus corpus = load_corpus_index(cfg.corpus_refs, cfg.systems_manifest);
    ScoreTable table = load_all_scores(cfg, corpus);
    auto systems = corpus.system_ids();
    auto docs = corpus.document_ids();
    std::vector<MetricDifficulties> difficulties;
    for (const auto& metric : table.metrics_without_human())
        difficulties.push_back({metric, compute_difficulty(table, metric, systems, docs)});
    if (difficulties.empty()) raise(ErrorCode::InvalidArgument, "score files contain no metrics");
    SamplePlan plan = stratified_sample(difficulties, cfg.seed);
    fs::path dir = ensure_out_dir(cfg);
    write_sample_plan(plan, dir / "sample_plan.txt");
    for (const auto& w : plan.warnings) std::cerr << "warning: " << w << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Meta-evaluation harness for summarization metrics"};
    app.require_subcommand(1);
    RunConfig cfg;

    CLI::App* score = app.add_subcommand("score", "Compute native lexical metric scores");
    add_corpus_flags(*score, cfg);
    score->add_option("--outputs-dir", cfg.outputs_dir, "Directory of <system_id>.jsonl outputs")
        ->required();
    add_out_flag(*score, cfg);
    score->add_flag("--lowercase,!--no-lowercase", cfg.lowercase, "Lowercase before tokenizing");
    score->add_flag("--stem,!--no-stem", cfg.stem, "Porter-stem tokens");
    score->add_option("--map-unknown", cfg.map_unknown,
                      "Replace this token with a placeholder before scoring (repeatable)");

    CLI::App* human = app.add_subcommand("human", "Aggregate SCU judgments into human scores");
    add_corpus_flags(*human, cfg);
    human->add_option("--scus", cfg.scus_path, "SCU file (JSONL)")->required();
    human->add_option("--annotations", cfg.annotations_path, "Annotation CSV")->required();
    human->add_flag("--alpha-per-document", cfg.alpha_per_document,
                    "Report the per-document-mean alpha as the headline agreement value");
    add_out_flag(*human, cfg);

    CLI::App* metaeval = app.add_subcommand("metaeval", "Run a meta-evaluation experiment");
    std::string experiment;
    metaeval->add_option("experiment", experiment,
                         "One of: system, summary, topk, williams, pairwise, delta")
        ->required();
    add_corpus_flags(*metaeval, cfg);
    metaeval->add_option("--scores", cfg.score_files, "Score files (repeatable)")->required();
    metaeval->add_option("--group", cfg.group, "System group: ext, abs or mix");
    metaeval->add_option("--measure", cfg.measure, "Correlation measure: pearson or kendall");
    metaeval->add_option("--samples", cfg.samples, "Bootstrap resamples")->check(CLI::PositiveNumber);
    metaeval->add_option("--confidence", cfg.confidence, "Bootstrap confidence level");
    metaeval->add_option("--seed", cfg.seed, "Master seed for all randomized steps");
    metaeval->add_option("--k-min", cfg.k_min, "Smallest k for the top-k curve");
    add_out_flag(*metaeval, cfg);

    CLI::App* sample = app.add_subcommand("sample", "Stratified document sampling");
    add_corpus_flags(*sample, cfg);
    sample->add_option("--scores", cfg.score_files, "Score files with the sampling metrics")
        ->required();
    sample->add_option("--seed", cfg.seed, "Sampling seed");
    add_out_flag(*sample, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (score->parsed()) return cmd_score(cfg);
        if (human->parsed()) return cmd_human(cfg);
        if (metaeval->parsed()) return cmd_metaeval(cfg, experiment);
        if (sample->parsed()) return cmd_sample(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

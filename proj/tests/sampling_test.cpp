#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sumeta/sampling.hpp"

using namespace sumeta;

namespace {

std::vector<std::string> ids(const char* prefix, int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
    return out;
}

std::vector<DocumentDifficulty> random_difficulties(std::mt19937_64& gen, int docs) {
    std::uniform_real_distribution<double> value(0.0, 1.0);
    std::vector<DocumentDifficulty> out;
    for (int i = 0; i < docs; ++i)
        out.push_back({"d" + std::to_string(i), value(gen), value(gen)});
    return out;
}

} // namespace

TEST_CASE("compute_difficulty takes per-document mean and population stddev") {
    auto systems = ids("s", 2);
    auto docs = ids("d", 2);
    ScoreTable table;
    table.insert("m", "s0", "d0", 0.5);
    table.insert("m", "s1", "d0", 0.5);
    table.insert("m", "s0", "d1", 0.0);
    table.insert("m", "s1", "d1", 1.0);
    auto difficulties = compute_difficulty(table, "m", systems, docs);
    REQUIRE(difficulties.size() == 2);
    CHECK(difficulties[0].mean == 0.5);
    CHECK(difficulties[0].stddev == 0.0);
    CHECK(difficulties[1].mean == 0.5);
    CHECK(difficulties[1].stddev == 0.5); // population, not sample
}

TEST_CASE("compute_difficulty with a single system has zero spread") {
    auto systems = ids("s", 1);
    auto docs = ids("d", 3);
    ScoreTable table;
    for (const auto& d : docs) table.insert("m", "s0", d, 0.25);
    for (const auto& diff : compute_difficulty(table, "m", systems, docs))
        CHECK(diff.stddev == 0.0);
}

TEST_CASE("compute_difficulty requires total coverage") {
    ScoreTable table;
    table.insert("m", "s0", "d0", 0.5);
    try {
        compute_difficulty(table, "m", ids("s", 2), ids("d", 1));
        FAIL("expected IncompleteScores");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IncompleteScores);
    }
}

TEST_CASE("a 20-document corpus with one metric selects everything") {
    std::mt19937_64 gen(5);
    std::vector<MetricDifficulties> difficulties = {{"m", random_difficulties(gen, 20)}};
    SamplePlan plan = stratified_sample(difficulties, 42);
    CHECK(plan.selected.size() == 20);
    CHECK(plan.warnings.empty());
    std::set<std::string> unique(plan.selected.begin(), plan.selected.end());
    CHECK(unique.size() == 20);
}

TEST_CASE("sampling rejects undersized corpora") {
    std::mt19937_64 gen(6);
    std::vector<MetricDifficulties> difficulties = {{"m", random_difficulties(gen, 19)}};
    try {
        stratified_sample(difficulties, 1);
        FAIL("expected CorpusTooSmall");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CorpusTooSmall);
    }
}

TEST_CASE("sampling is deterministic under a fixed seed") {
    std::mt19937_64 gen(7);
    std::vector<MetricDifficulties> difficulties;
    const std::string metric_ids[] = {"m1", "m2", "m3"};
    for (const std::string& metric : metric_ids)
        difficulties.push_back({metric, random_difficulties(gen, 120)});
    SamplePlan a = stratified_sample(difficulties, 42);
    SamplePlan b = stratified_sample(difficulties, 42);
    CHECK(a.selected == b.selected);
    CHECK(a.warnings == b.warnings);
    SamplePlan c = stratified_sample(difficulties, 43);
    CHECK(c.selected != a.selected); // overwhelmingly likely with 120 docs
}

TEST_CASE("selection size is bounded by 20 per metric and has no duplicates") {
    std::mt19937_64 gen(9);
    std::vector<MetricDifficulties> difficulties;
    for (int m = 0; m < 5; ++m)
        difficulties.push_back({"m" + std::to_string(m), random_difficulties(gen, 200)});
    SamplePlan plan = stratified_sample(difficulties, 3);
    CHECK(plan.selected.size() <= 100);
    CHECK(plan.metrics_used.size() == 5);
    std::set<std::string> unique(plan.selected.begin(), plan.selected.end());
    CHECK(unique.size() == plan.selected.size());
    // with 200 documents and 5 metrics collisions are rare; nearly all
    // sub-bins should produce a document
    CHECK(plan.selected.size() + plan.warnings.size() == 100);
}

TEST_CASE("full-size corpus with five metrics yields a 100-document sample") {
    std::mt19937_64 gen(12);
    std::vector<MetricDifficulties> difficulties;
    for (int m = 0; m < 5; ++m)
        difficulties.push_back({"m" + std::to_string(m), random_difficulties(gen, 11490)});
    SamplePlan plan = stratified_sample(difficulties, 2718);
    // sub-bins hold ~574 documents each, so redraws never exhaust one
    CHECK(plan.warnings.empty());
    CHECK(plan.selected.size() == 100);
}

TEST_CASE("each metric pass draws one document per mean/stddev stratum") {
    // 40 docs, means ascending with doc index, stddev alternating so the
    // sigma sort is exercised inside each bin
    std::vector<DocumentDifficulty> docs;
    for (int i = 0; i < 40; ++i)
        docs.push_back({"d" + std::to_string(100 + i), static_cast<double>(i),
                        static_cast<double>(i % 8)});
    SamplePlan plan = stratified_sample({{"m", docs}}, 11);
    CHECK(plan.selected.size() == 20);
    // bins are contiguous ranges of 8 docs by mean; exactly 4 selected per bin
    for (int bin = 0; bin < 5; ++bin) {
        int in_bin = 0;
        for (const auto& id : plan.selected) {
            int index = std::stoi(id.substr(1)) - 100;
            if (index >= bin * 8 && index < (bin + 1) * 8) ++in_bin;
        }
        CHECK(in_bin == 4);
    }
}

TEST_CASE("identical difficulty lists across metrics exhaust sub-bins gracefully") {
    std::mt19937_64 gen(13);
    auto shared = random_difficulties(gen, 20);
    SamplePlan plan = stratified_sample({{"m1", shared}, {"m2", shared}}, 17);
    // first pass takes all 20 docs; second pass finds every sub-bin empty
    CHECK(plan.selected.size() == 20);
    CHECK(plan.warnings.size() == 20);
}

TEST_CASE("stratification respects the documented remainder rule") {
    // 23 documents: bins of 4,4,4,4,7; the last bin absorbs the remainder
    std::vector<DocumentDifficulty> docs;
    for (int i = 0; i < 23; ++i)
        docs.push_back({"d" + std::to_string(i), static_cast<double>(i), 0.0});
    SamplePlan plan = stratified_sample({{"m", docs}}, 1);
    CHECK(plan.selected.size() == 20);
    int last_bin = 0;
    for (const auto& id : plan.selected)
        if (std::stoi(id.substr(1)) >= 16) ++last_bin;
    CHECK(last_bin == 4); // one per sub-bin of the 7-document final bin
}

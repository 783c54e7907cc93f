#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sumeta/corpus.hpp"
#include "sumeta/metrics.hpp"

using namespace sumeta;

namespace {

TokenSequence toks(std::initializer_list<const char*> words) {
    TokenSequence t;
    for (const char* w : words) t.emplace_back(w);
    return t;
}

// Random token sequences over a small vocabulary so overlaps are common.
TokenSequence random_tokens(std::mt19937_64& gen, int max_len) {
    static const std::vector<std::string> vocab = {"a", "b", "c", "d", "e", "f"};
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    TokenSequence t;
    int n = len(gen);
    for (int i = 0; i < n; ++i) t.push_back(vocab[pick(gen)]);
    return t;
}

Corpus identity_corpus(int docs, int systems) {
    Corpus corpus;
    for (int d = 0; d < docs; ++d)
        corpus.documents.push_back({"d" + std::to_string(d), "ref text " + std::to_string(d), {}});
    for (int s = 0; s < systems; ++s)
        corpus.systems.push_back({"s" + std::to_string(s), SystemKind::Extractive});
    for (const auto& s : corpus.systems)
        for (const auto& d : corpus.documents) corpus.outputs[{s.id, d.id}] = d.reference;
    return corpus;
}

} // namespace

TEST_CASE("rouge-n recall on worked examples") {
    CHECK(rouge_n_recall(toks({"a", "b", "c"}), toks({"a", "b", "c"}), 2) == 1.0);
    CHECK(rouge_n_recall(toks({"the", "cat", "sat"}), toks({"the", "cat"}), 1) ==
          Catch::Approx(2.0 / 3.0).margin(1e-15));
    // reference bigrams {the-cat, cat-sat, sat-on, on-the, the-mat}; the
    // candidate hits the-cat, on-the and the-mat
    CHECK(rouge_n_recall(toks({"the", "cat", "sat", "on", "the", "mat"}),
                         toks({"the", "cat", "on", "the", "mat"}), 2) ==
          Catch::Approx(3.0 / 5.0).margin(1e-15));
}

TEST_CASE("rouge-n degenerate inputs return zero") {
    CHECK(rouge_n_recall(toks({"a"}), toks({"a"}), 2) == 0.0);
    CHECK(rouge_n_recall({}, toks({"a"}), 1) == 0.0);
    CHECK(rouge_n_recall(toks({"a"}), {}, 1) == 0.0);
}

TEST_CASE("rouge-n clips repeated candidate n-grams") {
    // candidate repeats "a" four times but the reference has it twice
    CHECK(rouge_n_recall(toks({"a", "b", "a"}), toks({"a", "a", "a", "a"}), 1) ==
          Catch::Approx(2.0 / 3.0).margin(1e-15));
}

TEST_CASE("rouge-l recall on worked examples") {
    CHECK(rouge_l_recall(toks({"a", "b", "c", "d"}), toks({"a", "b", "c", "d"})) == 1.0);
    CHECK(rouge_l_recall(toks({"a", "b", "c", "d"}), toks({"a", "c", "d"})) == 0.75);
    CHECK(rouge_l_recall(toks({"a", "b"}), {}) == 0.0);
    CHECK(rouge_l_recall({}, toks({"a", "b"})) == 0.0);
}

TEST_CASE("js-2 score on worked examples") {
    auto same = toks({"x", "y", "z", "x"});
    CHECK(js2_score(same, same) == 0.0);
    // disjoint bigram sets diverge maximally in base 2
    CHECK(js2_score(toks({"a", "b", "c"}), toks({"x", "y", "z"})) == -1.0);
    // P uniform on {a-b, b-c}, Q uniform on {a-b, b-d}: each KL term is
    // half a bit, computed by direct evaluation of the divergence sum
    CHECK(js2_score(toks({"a", "b", "c"}), toks({"a", "b", "d"})) ==
          Catch::Approx(-0.5).margin(1e-12));
}

TEST_CASE("js-2 empty-distribution rules") {
    CHECK(js2_score({}, {}) == 0.0);
    CHECK(js2_score(toks({"a"}), toks({"b"})) == 0.0);       // both have no bigrams
    CHECK(js2_score(toks({"a", "b"}), toks({"c"})) == -1.0); // candidate empty
    CHECK(js2_score(toks({"c"}), toks({"a", "b"})) == -1.0); // reference empty
}

TEST_CASE("js-2 is symmetric") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_tokens(gen, 20);
        auto b = random_tokens(gen, 20);
        CHECK(js2_score(a, b) == Catch::Approx(js2_score(b, a)).margin(1e-12));
    }
}

TEST_CASE("metric ranges and containment identities") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 100; ++trial) {
        auto ref = random_tokens(gen, 25);
        auto cand = random_tokens(gen, 25);
        for (int n : {1, 2}) {
            double r = rouge_n_recall(ref, cand, n);
            CHECK(r >= 0.0);
            CHECK(r <= 1.0);
        }
        double l = rouge_l_recall(ref, cand);
        CHECK(l >= 0.0);
        CHECK(l <= 1.0);
        double js = js2_score(ref, cand);
        CHECK(js >= -1.0);
        CHECK(js <= 0.0);
    }
    // candidate containing the reference contiguously scores full recall
    auto ref = toks({"a", "b", "c", "d"});
    auto cand = toks({"x", "a", "b", "c", "d", "y"});
    CHECK(rouge_n_recall(ref, cand, 1) == 1.0);
    CHECK(rouge_n_recall(ref, cand, 2) == 1.0);
    CHECK(rouge_l_recall(ref, cand) == 1.0);
}

TEST_CASE("rouge-1 ignores adjacent candidate swaps, bigram metrics may not") {
    std::mt19937_64 gen(13);
    for (int trial = 0; trial < 100; ++trial) {
        auto ref = random_tokens(gen, 20);
        auto cand = random_tokens(gen, 20);
        if (cand.size() < 2) continue;
        std::uniform_int_distribution<std::size_t> at(0, cand.size() - 2);
        std::size_t i = at(gen);
        auto swapped = cand;
        std::swap(swapped[i], swapped[i + 1]);
        CHECK(rouge_n_recall(ref, cand, 1) == rouge_n_recall(ref, swapped, 1));
    }
    // order sensitivity witness for the bigram metrics
    auto ref = toks({"a", "b"});
    CHECK(rouge_n_recall(ref, toks({"a", "b"}), 2) == 1.0);
    CHECK(rouge_n_recall(ref, toks({"b", "a"}), 2) == 0.0);
}

TEST_CASE("lexical metrics agree with brute-force oracles") {
    std::mt19937_64 gen(20200817);
    for (int trial = 0; trial < 200; ++trial) {
        auto ref = random_tokens(gen, 30);
        auto cand = random_tokens(gen, 30);
        CHECK(rouge_n_recall(ref, cand, 1) ==
              Catch::Approx(oracles::ngram_recall(ref, cand, 1)).margin(1e-12));
        CHECK(rouge_n_recall(ref, cand, 2) ==
              Catch::Approx(oracles::ngram_recall(ref, cand, 2)).margin(1e-12));
        CHECK(rouge_l_recall(ref, cand) ==
              Catch::Approx(oracles::lcs_recall(ref, cand)).margin(1e-12));
        CHECK(js2_score(ref, cand) == Catch::Approx(oracles::js2(ref, cand)).margin(1e-12));
    }
}

TEST_CASE("score_corpus covers every cell") {
    Corpus corpus = identity_corpus(2, 2);
    ScoreTable table = score_corpus(corpus, {"rouge-1", "js-2"});
    CHECK(table.size() == 8);
    for (const auto& s : corpus.systems) {
        for (const auto& d : corpus.documents) {
            CHECK(table.at("rouge-1", s.id, d.id) == 1.0);
            CHECK(table.at("js-2", s.id, d.id) == 0.0);
        }
    }
}

TEST_CASE("score_corpus at judgment-set scale") {
    Corpus corpus = identity_corpus(100, 25);
    ScoreTable table = score_corpus(corpus, native_metrics());
    CHECK(table.size() == 10000);
}

TEST_CASE("score_corpus handles empty summaries") {
    Corpus corpus = identity_corpus(1, 1);
    corpus.outputs[{"s0", "d0"}] = "";
    ScoreTable table = score_corpus(corpus, native_metrics());
    CHECK(table.at("rouge-1", "s0", "d0") == 0.0);
    CHECK(table.at("rouge-l", "s0", "d0") == 0.0);
    CHECK(table.at("js-2", "s0", "d0") == -1.0);
}

TEST_CASE("score_corpus rejects non-native metrics") {
    Corpus corpus = identity_corpus(1, 1);
    CHECK_THROWS_AS(score_corpus(corpus, {"bertscore"}), Error);
}

TEST_CASE("unknown-token mapping masks candidate tokens") {
    Corpus corpus = identity_corpus(1, 1);
    corpus.documents[0].reference = "alpha beta gamma";
    corpus.outputs[{"s0", "d0"}] = "alpha unk gamma";
    ScoringConfig plain;
    ScoringConfig masked;
    masked.unknown_tokens = {"unk"};
    double before = score_corpus(corpus, {"rouge-1"}, plain).at("rouge-1", "s0", "d0");
    double after = score_corpus(corpus, {"rouge-1"}, masked).at("rouge-1", "s0", "d0");
    CHECK(before == after); // "unk" matched nothing in the reference anyway
    corpus.outputs[{"s0", "d0"}] = "alpha beta gamma";
    ScoringConfig mask_real;
    mask_real.unknown_tokens = {"beta"};
    CHECK(score_corpus(corpus, {"rouge-1"}, mask_real).at("rouge-1", "s0", "d0") ==
          Catch::Approx(2.0 / 3.0).margin(1e-15));
}

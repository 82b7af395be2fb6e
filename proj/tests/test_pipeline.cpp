#include <deco/pipeline.hpp>

#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace deco;
using namespace deco::pipeline;

namespace {

const auto& registry() {
    static const auto reg = text::make_reader_registry();
    return reg;
}

StatsReport run(const std::string& stack, const std::string& input,
                const std::vector<std::string>& queries, EngineKind engine = EngineKind::mix) {
    static const auto table = text::make_reader_table();
    auto spec = parse_stack_spec(stack, registry());
    auto chain = build_chain(spec, text::CharSource::from_string(input), registry());
    return run_pipeline(chain, queries, table, engine);
}

}  // namespace

TEST(StackSpec, ParsesNamesOutermostFirst) {
    auto spec = parse_stack_spec("words|crc32", registry());
    ASSERT_EQ(spec.layers.size(), 2u);
    EXPECT_EQ(spec.layers[0], (LayerSpec{"words", {}}));
    EXPECT_EQ(spec.layers[1], (LayerSpec{"crc32", {}}));
}

TEST(StackSpec, ParsesParameters) {
    auto spec = parse_stack_spec("pushback(16)", registry());
    ASSERT_EQ(spec.layers.size(), 1u);
    EXPECT_EQ(spec.layers[0], (LayerSpec{"pushback", {16}}));
}

TEST(StackSpec, IgnoresWhitespace) {
    auto spec = parse_stack_spec("  words | pushback( 8 ) |counter ", registry());
    EXPECT_EQ(to_string(spec), "words|pushback(8)|counter");
    EXPECT_TRUE(parse_stack_spec("   ", registry()).layers.empty());
}

TEST(StackSpec, UnknownKind) {
    try {
        parse_stack_spec("bogus", registry());
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_STREQ(e.what(), "unknown layer kind: bogus");
    }
}

TEST(StackSpec, MalformedParameters) {
    for (const char* bad : {"pushback(", "pushback(x)", "pushback()", "pushback(1,)", "(3)",
                            "words)", "words||crc32", "pushback(1,2)", "counter(1)"}) {
        EXPECT_THROW(parse_stack_spec(bad, registry()), ConfigError) << bad;
    }
}

TEST(Pipeline, AnswersAllQueries) {
    auto report = run("sentences|words|counter", "Hi. Bye!", {"no_words", "no_sentences", "no_chars"});
    EXPECT_FALSE(report.has_unsupported());
    EXPECT_EQ(format_text(report),
              "chain=sentences|words|counter|source\n"
              "no_words=2\n"
              "no_sentences=2\n"
              "no_chars=8\n");
}

TEST(Pipeline, DrainsWithReadWordWhenWordsOutermost) {
    const std::string input = "Hello world. Again, hello?";
    auto report = run("words|sentences|crc32|counter", input,
                      {"no_words", "no_sentences", "checksum", "no_chars"});
    ASSERT_FALSE(report.has_unsupported());
    EXPECT_EQ(report.results[0].value, Value(std::int64_t{4}));
    EXPECT_EQ(report.results[1].value, Value(std::int64_t{2}));
    EXPECT_EQ(report.results[2].value, Value(std::int64_t{oracle::crc32_zlib(input)}));
    EXPECT_EQ(report.results[3].value, Value(oracle::char_count(input)));
}

TEST(Pipeline, MissingLayerReported) {
    auto report = run("words|counter", "abc", {"checksum", "no_chars"});
    EXPECT_TRUE(report.has_unsupported());
    ASSERT_TRUE(report.results[0].error);
    EXPECT_EQ(report.results[0].error->capability(), "get_checksum");
    EXPECT_EQ(format_text(report),
              "chain=words|counter|source\n"
              "checksum=!unsupported get_checksum chain=words|counter|source\n"
              "no_chars=3\n");
}

TEST(Pipeline, BareSourceSupportsNothing) {
    for (auto engine : {EngineKind::mix, EngineKind::d2}) {
        auto report = run("", "abc", {"no_chars"}, engine);
        EXPECT_TRUE(report.has_unsupported());
        EXPECT_EQ(report.results[0].error->chain(), (std::vector<std::string>{"source"}));
    }
}

TEST(Pipeline, ArgumentQueriesRejected) {
    EXPECT_THROW(run("pushback", "abc", {"unread"}), ConfigError);
}

TEST(Pipeline, EnginesProduceIdenticalReports) {
    const std::vector<std::string> stacks = {"sentences|words|counter", "words|crc32|pushback(4)",
                                             "buffered(3)|counter|crc32", "counter"};
    const std::vector<std::string> queries = {"no_chars", "no_words", "no_sentences", "checksum",
                                              "word", "f9"};
    for (const auto& stack : stacks) {
        const std::string input = "One two. Three four five! Six?";
        auto a = run(stack, input, queries, EngineKind::mix);
        auto b = run(stack, input, queries, EngineKind::d2);
        EXPECT_EQ(format_text(a), format_text(b)) << stack;
        EXPECT_EQ(format_json(a), format_json(b)) << stack;
    }
}

TEST(Pipeline, QueryOrderOnlyPermutesEntries) {
    std::vector<std::string> q = {"checksum", "no_chars", "no_sentences", "no_words"};
    auto reference = run("words|sentences|crc32|counter", "A b. C d e!", q);
    std::map<std::string, std::string> expected;
    for (const auto& r : reference.results) expected[r.query] = detail::format_value(*r.value);
    std::sort(q.begin(), q.end());
    do {
        auto report = run("words|sentences|crc32|counter", "A b. C d e!", q);
        for (std::size_t i = 0; i < q.size(); ++i) {
            EXPECT_EQ(report.results[i].query, q[i]);
            EXPECT_EQ(detail::format_value(*report.results[i].value), expected[q[i]]);
        }
    } while (std::next_permutation(q.begin(), q.end()));
}

TEST(Pipeline, JsonFormat) {
    auto report = run("words|counter", "ab cd", {"no_words", "checksum"});
    auto j = nlohmann::json::parse(format_json(report));
    EXPECT_EQ(j["chain"], nlohmann::json({"words", "counter", "source"}));
    EXPECT_EQ(j["results"][0]["value"], 2);
    EXPECT_EQ(j["results"][1]["error"]["capability"], "get_checksum");
    EXPECT_FALSE(j.contains("runtime_ms"));
    EXPECT_TRUE(nlohmann::json::parse(format_json(report, true)).contains("runtime_ms"));
}

TEST(Pipeline, TextValuesAreQuoted) {
    auto report = run("words", "say \"hi\"", {"word"});
    EXPECT_EQ(format_text(report), "chain=words|source\nword=none\n");
    EXPECT_EQ(detail::format_value(Value(std::string("a\"b\n"))), "\"a\\\"b\\n\"");
}

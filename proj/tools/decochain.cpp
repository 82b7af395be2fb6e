// decochain: build a reader decoration chain from a stack spec, drain an
// input through it and answer capability queries; or run the dispatch
// benchmark.
//
// Exit codes: 0 success, 1 input/configuration failure, 2 a query hit
// UnsupportedFunctionality.

#include <deco/bench.hpp>
#include <deco/pipeline.hpp>
#include <deco/text_readers.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_unsupported = 2;

std::vector<std::string> split_queries(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const auto& q : raw) {
        std::size_t start = 0;
        while (start <= q.size()) {
            auto comma = q.find(',', start);
            auto item = q.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!item.empty()) out.push_back(item);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decorated text reader pipeline and dispatch benchmark"};

    std::string stack;
    std::string input = "-";
    std::vector<std::string> queries;
    std::string engine = "mix";
    std::string format = "text";
    bool timing = false;
    bool bench = false;
    std::vector<std::size_t> depths{1, 4, 16};
    std::size_t iters = 100000;

    app.add_option("--stack", stack, "Layers outermost first, e.g. \"words|crc32|pushback(16)|counter\"");
    app.add_option("--input", input, "Input file, or - for standard input");
    app.add_option("--query", queries, "Capability to query (repeatable, or comma separated)");
    app.add_option("--engine", engine, "Dispatch engine")->check(CLI::IsMember({"mix", "d2"}));
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--timing", timing, "Include runtime_ms in the report");
    app.add_flag("--bench", bench, "Run the dispatch benchmark and print CSV");
    app.add_option("--depths", depths, "Chain depths for --bench")->delimiter(',');
    app.add_option("--iters", iters, "Calls timed per engine and depth");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_failure;
    }

    try {
        if (bench) {
            std::cout << deco::bench::to_csv(deco::bench::run(depths, iters));
            return exit_ok;
        }

        const auto registry = deco::text::make_reader_registry();
        const auto table = deco::text::make_reader_table();
        const auto spec = deco::pipeline::parse_stack_spec(stack, registry);

        std::shared_ptr<deco::text::CharReader> source =
            input == "-" ? deco::text::CharSource::from_stream(std::cin)
                         : deco::text::CharSource::from_file(input);
        auto chain = deco::pipeline::build_chain(spec, std::move(source), registry);

        const auto report = deco::pipeline::run_pipeline(
            chain, split_queries(queries), table,
            engine == "d2" ? deco::pipeline::EngineKind::d2 : deco::pipeline::EngineKind::mix);

        std::cout << (format == "json" ? deco::pipeline::format_json(report, timing)
                                       : deco::pipeline::format_text(report, timing));
        if (report.has_unsupported()) {
            for (const auto& r : report.results)
                if (r.error) std::cerr << "decochain: " << r.error->what() << '\n';
            return exit_unsupported;
        }
        return exit_ok;
    } catch (const deco::UnsupportedFunctionality& e) {
        std::cerr << "decochain: " << e.what() << '\n';
        return exit_unsupported;
    } catch (const std::exception& e) {
        std::cerr << "decochain: " << e.what() << '\n';
        return exit_failure;
    }
}

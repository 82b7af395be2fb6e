#pragma once

// Text form of a reader chain ("words|crc32|pushback(16)"), running input
// through a built chain and answering capability queries with either
// dynamic engine.

#include <deco/core.hpp>
#include <deco/d2.hpp>
#include <deco/mix.hpp>
#include <deco/text_readers.hpp>

#include <nlohmann/json.hpp>

#include <cctype>
#include <charconv>
#include <chrono>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace deco::pipeline {

struct LayerSpec {
    std::string kind;
    LayerParams params;

    friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

/// Layers outermost first.
struct StackSpec {
    std::vector<LayerSpec> layers;
};

namespace detail {

inline std::string strip(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

inline bool parse_int(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace detail

/// Splits on '|', left is outermost. Whitespace anywhere is ignored. An
/// empty spec means no layers at all.
inline StackSpec parse_stack_spec(std::string_view text,
                                  const LayerRegistry<text::CharReader>& registry) {
    StackSpec spec;
    const std::string cleaned = detail::strip(text);
    if (cleaned.empty()) return spec;
    std::size_t start = 0;
    while (true) {
        std::size_t bar = cleaned.find('|', start);
        std::string_view token = std::string_view(cleaned).substr(
            start, bar == std::string::npos ? std::string::npos : bar - start);
        if (token.empty()) throw ConfigError("empty layer in stack spec: " + std::string(text));

        LayerSpec layer;
        auto open = token.find('(');
        if (open == std::string_view::npos) {
            if (token.find(')') != std::string_view::npos)
                throw ConfigError("malformed layer parameters: " + std::string(token));
            layer.kind = std::string(token);
        } else {
            if (token.back() != ')' || open == 0)
                throw ConfigError("malformed layer parameters: " + std::string(token));
            layer.kind = std::string(token.substr(0, open));
            std::string_view args = token.substr(open + 1, token.size() - open - 2);
            std::size_t a = 0;
            while (true) {
                auto comma = args.find(',', a);
                std::string_view one = args.substr(a, comma == std::string_view::npos
                                                          ? std::string_view::npos
                                                          : comma - a);
                std::int64_t v;
                if (!detail::parse_int(one, v))
                    throw ConfigError("malformed layer parameters: " + std::string(token));
                layer.params.push_back(v);
                if (comma == std::string_view::npos) break;
                a = comma + 1;
            }
        }
        const auto* kind = registry.find(layer.kind);
        if (!kind) throw ConfigError("unknown layer kind: " + layer.kind);
        if (layer.params.size() > kind->max_params)
            throw ConfigError("too many parameters: " + std::string(token));
        spec.layers.push_back(std::move(layer));

        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return spec;
}

inline std::string to_string(const StackSpec& spec) {
    std::string out;
    for (std::size_t i = 0; i < spec.layers.size(); ++i) {
        if (i) out += '|';
        out += spec.layers[i].kind;
        if (!spec.layers[i].params.empty()) {
            out += '(';
            for (std::size_t k = 0; k < spec.layers[i].params.size(); ++k) {
                if (k) out += ',';
                out += std::to_string(spec.layers[i].params[k]);
            }
            out += ')';
        }
    }
    return out;
}

inline std::shared_ptr<text::CharReader> build_chain(const StackSpec& spec,
                                                     std::shared_ptr<text::CharReader> source,
                                                     const LayerRegistry<text::CharReader>& registry) {
    auto chain = std::move(source);
    for (auto it = spec.layers.rbegin(); it != spec.layers.rend(); ++it)
        chain = wrap(registry, std::move(chain), it->kind, it->params);
    return chain;
}

enum class EngineKind { mix, d2 };

/// Short query names accepted on the command line; anything else is taken
/// as a capability name.
inline std::string capability_for_query(std::string_view query) {
    static const std::map<std::string, std::string, std::less<>> aliases = {
        {"no_chars", "get_no_chars"},
        {"no_words", "get_no_words"},
        {"no_sentences", "get_no_sentences"},
        {"checksum", "get_checksum"},
        {"word", "read_word"},
        {"sentence", "read_sentence"},
    };
    auto it = aliases.find(query);
    return it == aliases.end() ? std::string(query) : it->second;
}

/// Invokes an argument-free capability on `chain` through the chosen engine.
class QueryRunner {
public:
    QueryRunner(const CapabilityTable& table, EngineKind engine)
        : table_(&table), engine_(engine), dispatchers_(table) {}

    Value call(text::CharReader& chain, std::string_view capability) const {
        if (engine_ == EngineKind::mix) return mix::invoke(*table_, chain, capability);
        // apply needs a decoration layer as receiver; a bare source has none
        auto* layer = chain.as_layer();
        if (!layer) throw UnsupportedFunctionality(std::string(capability), describe_chain(chain));
        return d2::apply(*layer, *dispatchers_.make(capability));
    }

private:
    const CapabilityTable* table_;
    EngineKind engine_;
    d2::DispatcherFactory dispatchers_;
};

struct QueryResult {
    std::string query;
    std::string capability;
    std::optional<Value> value;  // empty on error
    std::optional<UnsupportedFunctionality> error;
};

struct StatsReport {
    std::vector<std::string> chain;
    std::vector<QueryResult> results;
    double runtime_ms = 0.0;

    bool has_unsupported() const {
        for (const auto& r : results)
            if (r.error) return true;
        return false;
    }
};

/// Drains the input through `chain` and answers each query in order. Uses
/// read_word when the outermost layer is the word layer, read_char
/// otherwise, so every layer observes the full character flow.
inline StatsReport run_pipeline(const std::shared_ptr<text::CharReader>& chain,
                                const std::vector<std::string>& queries,
                                const CapabilityTable& table, EngineKind engine) {
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& q : queries) {
        const auto cap = capability_for_query(q);
        if (const auto* e = table.find(cap); e && !e->id.signature.params.empty())
            throw ConfigError("query '" + q + "' needs arguments; only argument-free capabilities can be queried");
    }

    QueryRunner runner(table, engine);
    StatsReport report;
    report.chain = describe_chain(*chain);

    if (chain->kind() == "words") {
        while (!std::holds_alternative<std::monostate>(runner.call(*chain, text::caps::read_word))) {
        }
    } else {
        while (chain->read_char()) {
        }
    }

    for (const auto& q : queries) {
        QueryResult r{q, capability_for_query(q), std::nullopt, std::nullopt};
        try {
            r.value = runner.call(*chain, r.capability);
        } catch (const UnsupportedFunctionality& e) {
            r.error = e;
        }
        report.results.push_back(std::move(r));
    }
    report.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

namespace detail {

inline std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out + '"';
}

inline std::string format_value(const Value& v) {
    struct V {
        std::string operator()(std::monostate) const { return "none"; }
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(char32_t c) const { return quote(utf8::encode(c)); }
        std::string operator()(const std::string& s) const { return quote(s); }
    };
    return std::visit(V{}, v);
}

inline nlohmann::json to_json(const Value& v) {
    struct V {
        nlohmann::json operator()(std::monostate) const { return nullptr; }
        nlohmann::json operator()(std::int64_t i) const { return i; }
        nlohmann::json operator()(char32_t c) const { return utf8::encode(c); }
        nlohmann::json operator()(const std::string& s) const { return s; }
    };
    return std::visit(V{}, v);
}

}  // namespace detail

/// One `key=value` line per entry:
///   chain=<kinds joined by '|'>
///   <query>=<value>                 integers in decimal, text quoted, none
///   <query>=!unsupported <capability> chain=<kinds>
///   runtime_ms=<ms>                 only with include_runtime
inline std::string format_text(const StatsReport& report, bool include_runtime = false) {
    std::ostringstream out;
    out << "chain=" << join_chain(report.chain) << '\n';
    for (const auto& r : report.results) {
        out << r.query << '=';
        if (r.error)
            out << "!unsupported " << r.error->capability()
                << " chain=" << join_chain(r.error->chain());
        else
            out << detail::format_value(*r.value);
        out << '\n';
    }
    if (include_runtime) out << "runtime_ms=" << std::fixed << std::setprecision(3) << report.runtime_ms << '\n';
    return out.str();
}

inline std::string format_json(const StatsReport& report, bool include_runtime = false) {
    nlohmann::json j;
    j["chain"] = report.chain;
    j["results"] = nlohmann::json::array();
    for (const auto& r : report.results) {
        nlohmann::json e{{"query", r.query}, {"capability", r.capability}};
        if (r.error) {
            e["error"] = {{"type", "UnsupportedFunctionality"},
                          {"capability", r.error->capability()},
                          {"chain", r.error->chain()}};
        } else {
            e["value"] = detail::to_json(*r.value);
        }
        j["results"].push_back(std::move(e));
    }
    if (include_runtime) j["runtime_ms"] = report.runtime_ms;
    return j.dump(2) + "\n";
}

}  // namespace deco::pipeline

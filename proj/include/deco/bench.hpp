#pragma once

// Per-call cost of reaching a capability held by the innermost layer of a
// depth-d chain, for each composition mechanism:
//   forward  base operation forwarded through all d layers
//   mix      mix::invoke (resolution walk + call)
//   d2       d2::apply with a shared dispatcher
//   static   direct member call on the equivalent static stack

#include <deco/basic.hpp>
#include <deco/d2.hpp>
#include <deco/mix.hpp>

#include <array>
#include <chrono>
#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace deco::bench {

inline constexpr std::size_t max_static_depth = 64;

struct Row {
    std::string engine;
    std::size_t depth = 0;
    double ns_per_call = 0.0;
};

template <class T>
inline void do_not_optimize(T& value) {
    asm volatile("" : : "r"(&value) : "memory");
}

namespace detail {

using Clock = std::chrono::steady_clock;

template <class F>
double time_per_call(std::size_t iterations, F&& call) {
    for (std::size_t i = 0; i < iterations / 10 + 1; ++i) call();
    const auto t0 = Clock::now();
    for (std::size_t i = 0; i < iterations; ++i) call();
    const auto ns = std::chrono::duration<double, std::nano>(Clock::now() - t0).count();
    return ns / static_cast<double>(iterations);
}

// (n - 1) forwarding layers over Decorator1
template <std::size_t N>
struct StaticChain {
    using type = basic::stacked::Forwarding<typename StaticChain<N - 1>::type>;
};
template <>
struct StaticChain<1> {
    using type = basic::stacked::Decorator1<>;
};

template <std::size_t N>
double time_static(std::size_t iterations) {
    auto stack = hybrid::build_stack<typename StaticChain<N>::type>(
        std::shared_ptr<basic::IComponent>(std::make_shared<basic::ConcreteComponent>()));
    return time_per_call(iterations, [&] {
        auto r = stack.f1();
        do_not_optimize(r);
    });
}

template <std::size_t... I>
double time_static_at(std::size_t depth, std::size_t iterations, std::index_sequence<I...>) {
    static constexpr std::array<double (*)(std::size_t), sizeof...(I)> table{&time_static<I + 1>...};
    return table[depth - 1](iterations);
}

}  // namespace detail

/// Dynamic chain of the shape the benchmark measures: `depth - 1` plain
/// forwarding layers over D1 over a concrete component.
inline std::shared_ptr<basic::IComponent> make_bench_chain(std::size_t depth) {
    const auto registry = basic::make_registry();
    std::shared_ptr<basic::IComponent> chain = std::make_shared<basic::ConcreteComponent>();
    chain = wrap(registry, chain, "D1");
    for (std::size_t i = 1; i < depth; ++i) chain = wrap(registry, chain, "Decorator");
    return chain;
}

/// Four rows per depth, in the order forward, mix, d2, static.
inline std::vector<Row> run(std::span<const std::size_t> depths, std::size_t iterations) {
    if (iterations == 0) throw ConfigError("bench: iterations must be positive");
    for (auto d : depths) {
        if (d < 1 || d > max_static_depth)
            throw ConfigError("bench: depth must be in [1, " + std::to_string(max_static_depth) +
                              "], got " + std::to_string(d));
    }
    const auto table = basic::make_table();
    const mix::Engine mix_engine(table);
    const d2::DispatcherFactory dispatchers(table);
    const auto f1 = dispatchers.make("f1");

    std::vector<Row> rows;
    for (auto depth : depths) {
        auto chain = make_bench_chain(depth);
        auto& layer = *chain->as_layer();

        rows.push_back({"forward", depth, detail::time_per_call(iterations, [&] {
                            chain->operation();
                        })});
        rows.push_back({"mix", depth, detail::time_per_call(iterations, [&] {
                            auto r = mix_engine.invoke(*chain, "f1");
                            do_not_optimize(r);
                        })});
        rows.push_back({"d2", depth, detail::time_per_call(iterations, [&] {
                            auto r = d2::apply(layer, *f1);
                            do_not_optimize(r);
                        })});
        rows.push_back({"static", depth,
                        detail::time_static_at(depth, iterations,
                                               std::make_index_sequence<max_static_depth>{})});
    }
    return rows;
}

inline std::string to_csv(const std::vector<Row>& rows) {
    std::ostringstream out;
    out << "engine,depth,ns_per_call\n";
    out.setf(std::ios::fixed);
    out.precision(3);
    for (const auto& r : rows) out << r.engine << ',' << r.depth << ',' << r.ns_per_call << '\n';
    return out.str();
}

}  // namespace deco::bench

#pragma once

// Capability resolution by walking a chain outermost to innermost and
// invoking the first layer that provides the requested capability.

#include <deco/core.hpp>

#include <span>
#include <string_view>
#include <vector>

namespace deco::mix {

struct ResolvedTarget {
    DecorationLayer* layer = nullptr;
    std::size_t depth = 0;  // 0 = outermost layer
};

/// Outermost layer supporting `capability`. The walk stops at the first
/// non-layer component; an unregistered capability is unsupported everywhere.
inline ResolvedTarget resolve(const CapabilityTable& table, Component& chain,
                              std::string_view capability) {
    if (const auto* entry = table.find(capability)) {
        std::size_t depth = 0;
        for (DecorationLayer* layer = chain.as_layer(); layer;
             layer = layer->wrapped().as_layer(), ++depth) {
            if (entry->kinds.contains(layer->kind())) return {layer, depth};
        }
    }
    throw UnsupportedFunctionality(std::string(capability), describe_chain(chain));
}

inline Value invoke(const CapabilityTable& table, Component& chain, std::string_view capability,
                    std::span<const Value> args = {}) {
    const auto* entry = table.find(capability);
    if (!entry) throw UnsupportedFunctionality(std::string(capability), describe_chain(chain));
    check_arguments(capability, entry->id.signature, args);
    return resolve(table, chain, capability).layer->execute(capability, args);
}

inline Value invoke(const CapabilityTable& table, Component& chain, std::string_view capability,
                    std::initializer_list<Value> args) {
    return invoke(table, chain, capability, std::span<const Value>(args.begin(), args.size()));
}

/// Makes `cap` resolvable on every chain containing one of `kinds`,
/// including chains built before the call.
inline CapabilityTable& register_capability(CapabilityTable& table, const CapabilityId& cap,
                                            const std::vector<std::string_view>& kinds) {
    return table.register_capability(cap, kinds);
}

/// Engine bound to one table; what the CLI and benchmarks hold on to.
class Engine {
public:
    explicit Engine(const CapabilityTable& table) : table_(&table) {}

    ResolvedTarget resolve(Component& chain, std::string_view capability) const {
        return mix::resolve(*table_, chain, capability);
    }

    Value invoke(Component& chain, std::string_view capability,
                 std::span<const Value> args = {}) const {
        return mix::invoke(*table_, chain, capability, args);
    }

    const CapabilityTable& table() const noexcept { return *table_; }

private:
    const CapabilityTable* table_;
};

}  // namespace deco::mix

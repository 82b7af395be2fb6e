#pragma once

// Double dispatch through command objects: a Dispatcher knows how to run one
// capability on one layer; apply() walks the chain offering the dispatcher
// to each layer in turn.

#include <deco/core.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace deco::d2 {

/// One capability plus its bound arguments. Immutable once built, so a
/// single instance can be applied any number of times.
class Dispatcher {
public:
    Dispatcher(const CapabilityTable& table, std::string capability, std::vector<Value> args = {})
        : table_(&table), capability_(std::move(capability)), args_(std::move(args)) {
        if (const auto* e = table_->find(capability_))
            check_arguments(capability_, e->id.signature, args_);
    }

    const std::string& capability() const noexcept { return capability_; }
    std::span<const Value> bound_args() const noexcept { return args_; }

    /// Runs the capability on `layer` if that layer provides it. Looks at
    /// this one layer only.
    std::optional<Value> try_dispatch(DecorationLayer& layer) const {
        if (!table_->provides(layer.kind(), capability_)) return std::nullopt;
        return layer.execute(capability_, args_);
    }

    Value dispatch(DecorationLayer& layer) const {
        if (auto v = try_dispatch(layer)) return std::move(*v);
        throw UnsupportedFunctionality(capability_, {std::string(layer.kind())});
    }

    const CapabilityTable& table() const noexcept { return *table_; }

private:
    const CapabilityTable* table_;
    std::string capability_;
    std::vector<Value> args_;
};

struct Applied {
    Value value;
    std::size_t depth = 0;
};

namespace detail {

inline std::vector<std::string> describe_from(const DecorationLayer& top) {
    std::vector<std::string> out;
    const DecorationLayer* layer = &top;
    while (true) {
        out.emplace_back(layer->kind());
        const Component& inner = layer->wrapped();
        if (const auto* next = inner.as_layer()) {
            layer = next;
        } else {
            out.emplace_back(inner.kind());
            return out;
        }
    }
}

}  // namespace detail

/// Offers `d` to `chain`, then to each inner layer until one accepts it.
/// Also reports at which depth the capability ran.
inline Applied apply_traced(DecorationLayer& chain, const Dispatcher& d) {
    if (const auto* e = d.table().find(d.capability()))
        check_arguments(d.capability(), e->id.signature, d.bound_args());
    std::size_t depth = 0;
    for (DecorationLayer* layer = &chain; layer; layer = layer->wrapped().as_layer(), ++depth) {
        if (auto v = d.try_dispatch(*layer)) return {std::move(*v), depth};
    }
    throw UnsupportedFunctionality(d.capability(), detail::describe_from(chain));
}

inline Value apply(DecorationLayer& chain, const Dispatcher& d) {
    return apply_traced(chain, d).value;
}

/// Builds dispatchers from a capability table. Argument-free dispatchers
/// are shared: asking twice for the same capability returns one instance.
class DispatcherFactory {
public:
    explicit DispatcherFactory(const CapabilityTable& table) : table_(&table) {}

    std::shared_ptr<const Dispatcher> make(std::string_view capability,
                                           std::vector<Value> args = {}) const {
        if (!args.empty())
            return std::make_shared<const Dispatcher>(*table_, std::string(capability),
                                                      std::move(args));
        std::lock_guard lock(mutex_);
        auto it = singletons_.find(capability);
        if (it == singletons_.end()) {
            it = singletons_
                     .emplace(std::string(capability),
                              std::make_shared<const Dispatcher>(*table_, std::string(capability)))
                     .first;
        }
        return it->second;
    }

    const CapabilityTable& table() const noexcept { return *table_; }

private:
    const CapabilityTable* table_;
    mutable std::mutex mutex_;
    mutable std::map<std::string, std::shared_ptr<const Dispatcher>, std::less<>> singletons_;
};

}  // namespace deco::d2

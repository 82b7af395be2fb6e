#pragma once

// Chain model shared by every dispatch engine: components, decoration
// layers, the capability table and the layer-kind registry.

#include <deco/value.hpp>

#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace deco {

class DecorationLayer;

/// Root of every decorable object. Domain interfaces (the ones that declare
/// the base operation) derive from this.
class Component {
public:
    virtual ~Component() = default;

    virtual std::string_view kind() const = 0;

    virtual DecorationLayer* as_layer() noexcept { return nullptr; }
    virtual const DecorationLayer* as_layer() const noexcept { return nullptr; }
};

/// The decoration half of a layer: access to the wrapped object and to the
/// capabilities the layer implements itself.
class DecorationLayer {
public:
    virtual ~DecorationLayer() = default;

    virtual std::string_view kind() const = 0;

    /// The immediately wrapped component. Never null.
    virtual std::shared_ptr<Component> base_component() const = 0;
    virtual Component& wrapped() const noexcept = 0;

    /// Runs a capability implemented by this very layer. Never searches the
    /// chain; engines decide which layer receives the call.
    virtual Value execute(std::string_view capability, std::span<const Value> args) = 0;
};

/// Error raised when no layer of a chain implements a requested capability.
class UnsupportedFunctionality : public std::runtime_error {
public:
    UnsupportedFunctionality(std::string capability, std::vector<std::string> chain)
        : std::runtime_error(make_message(capability, chain)),
          capability_(std::move(capability)),
          chain_(std::move(chain)) {}

    const std::string& capability() const noexcept { return capability_; }
    const std::vector<std::string>& chain() const noexcept { return chain_; }

private:
    static std::string make_message(const std::string& cap, const std::vector<std::string>& chain) {
        std::string msg = "unsupported functionality: " + cap + " (chain: ";
        for (std::size_t i = 0; i < chain.size(); ++i) {
            if (i) msg += '|';
            msg += chain[i];
        }
        return msg + ")";
    }

    std::string capability_;
    std::vector<std::string> chain_;
};

/// Unknown layer kind, malformed layer parameters and similar build errors.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class RegistrationConflict : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Layer that wraps an `Interface` (a Component subtype). Concrete layers
/// derive from this, override the base operation of `Interface` to forward
/// to base(), and override execute() for the capabilities they add.
template <class Interface>
class Decorator : public Interface, public DecorationLayer {
    static_assert(std::is_base_of_v<Component, Interface>);

public:
    explicit Decorator(std::shared_ptr<Interface> base) : base_(std::move(base)) {
        if (!base_) throw std::invalid_argument("decoration layer needs a base component");
    }

    // one final overrider for both Interface::kind and DecorationLayer::kind
    std::string_view kind() const override = 0;

    DecorationLayer* as_layer() noexcept override { return this; }
    const DecorationLayer* as_layer() const noexcept override { return this; }

    std::shared_ptr<Component> base_component() const override { return base_; }
    Component& wrapped() const noexcept override { return *base_; }

    /// Peels exactly one layer. Public on purpose, but capability access
    /// belongs to the dispatch engines, not to manual peeling.
    const std::shared_ptr<Interface>& base() const noexcept { return base_; }

    Value execute(std::string_view capability, std::span<const Value>) override {
        throw std::logic_error("layer kind '" + std::string(this->kind()) +
                               "' does not implement capability '" + std::string(capability) + "'");
    }

private:
    std::shared_ptr<Interface> base_;
};

struct CapabilityId {
    std::string name;
    Signature signature;
};

/// Registry of capabilities: name -> signature + the layer kinds that
/// implement it. Can be extended after chains have been built; chains see
/// new entries immediately because support is looked up, never cached.
class CapabilityTable {
public:
    struct Entry {
        CapabilityId id;
        std::set<std::string, std::less<>> kinds;
    };

    /// Adds `cap` (or extends its kind set when already present with the
    /// same signature).
    CapabilityTable& register_capability(const CapabilityId& cap,
                                         std::initializer_list<std::string_view> kinds) {
        return register_capability(cap, std::vector<std::string_view>(kinds));
    }

    CapabilityTable& register_capability(const CapabilityId& cap,
                                         const std::vector<std::string_view>& kinds) {
        if (cap.name.empty()) throw std::invalid_argument("capability name must not be empty");
        auto it = entries_.find(cap.name);
        if (it == entries_.end()) {
            it = entries_.emplace(cap.name, Entry{cap, {}}).first;
        } else if (!(it->second.id.signature == cap.signature)) {
            throw RegistrationConflict("capability '" + cap.name + "' already registered as " +
                                       describe(it->second.id.signature) + ", not " +
                                       describe(cap.signature));
        }
        for (auto k : kinds) it->second.kinds.emplace(k);
        return *this;
    }

    const Entry* find(std::string_view name) const {
        auto it = entries_.find(name);
        return it == entries_.end() ? nullptr : &it->second;
    }

    bool provides(std::string_view kind, std::string_view capability) const {
        const Entry* e = find(capability);
        return e && e->kinds.contains(kind);
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        out.reserve(entries_.size());
        for (const auto& [name, _] : entries_) out.push_back(name);
        return out;
    }

    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::map<std::string, Entry, std::less<>> entries_;
};

/// True iff the table lists `layer`'s kind as an implementer of `capability`.
inline bool supports(const CapabilityTable& table, const DecorationLayer& layer,
                     std::string_view capability) {
    return table.provides(layer.kind(), capability);
}

/// Layer kinds outermost first, ending with the concrete component's kind.
inline std::vector<std::string> describe_chain(const Component& c) {
    std::vector<std::string> out;
    const Component* cur = &c;
    while (true) {
        out.emplace_back(cur->kind());
        const DecorationLayer* layer = cur->as_layer();
        if (!layer) break;
        cur = &layer->wrapped();
    }
    return out;
}

inline std::string join_chain(const std::vector<std::string>& chain, std::string_view sep = "|") {
    std::string out;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i) out += sep;
        out += chain[i];
    }
    return out;
}

/// Number of decoration layers above the concrete component.
inline std::size_t chain_depth(const Component& c) {
    std::size_t n = 0;
    for (const DecorationLayer* l = c.as_layer(); l; l = l->wrapped().as_layer()) ++n;
    return n;
}

/// Peels one layer. Requesting the base of a concrete component violates
/// the precondition and throws std::invalid_argument.
template <class Interface>
std::shared_ptr<Interface> get_base(const Interface& c) {
    if (auto* layer = dynamic_cast<const Decorator<Interface>*>(&c)) return layer->base();
    throw std::invalid_argument("'" + std::string(c.kind()) + "' is not a decoration layer");
}

using LayerParams = std::vector<std::int64_t>;

/// Maps layer-kind names to factories for one domain interface.
template <class Interface>
class LayerRegistry {
public:
    using Factory =
        std::function<std::shared_ptr<Interface>(std::shared_ptr<Interface>, const LayerParams&)>;

    struct Kind {
        Factory make;
        std::size_t max_params = 0;
    };

    LayerRegistry& add(std::string name, std::size_t max_params, Factory make) {
        if (!kinds_.emplace(std::move(name), Kind{std::move(make), max_params}).second)
            throw RegistrationConflict("layer kind registered twice");
        return *this;
    }

    const Kind* find(std::string_view name) const {
        auto it = kinds_.find(name);
        return it == kinds_.end() ? nullptr : &it->second;
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& [n, _] : kinds_) out.push_back(n);
        return out;
    }

private:
    std::map<std::string, Kind, std::less<>> kinds_;
};

/// Builds a new layer of `kind` around `inner`. `inner` itself is untouched
/// and becomes the new layer's base.
template <class Interface>
std::shared_ptr<Interface> wrap(const LayerRegistry<Interface>& registry,
                                std::type_identity_t<std::shared_ptr<Interface>> inner,
                                std::string_view kind,
                                const LayerParams& params = {}) {
    const auto* k = registry.find(kind);
    if (!k) throw ConfigError("unknown layer kind: " + std::string(kind));
    if (params.size() > k->max_params)
        throw ConfigError("too many parameters for layer kind: " + std::string(kind));
    return k->make(std::move(inner), params);
}

}  // namespace deco

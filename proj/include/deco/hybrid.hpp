#pragma once

// Statically composed decoration stacks. A composition such as
// `L3<L1<L2<>>>` is a single class built by inheritance; only its innermost
// case holds the dynamically wrapped component. Every member function of
// every layer is callable directly, checked by the compiler.

#include <deco/core.hpp>

#include <memory>
#include <stdexcept>
#include <string_view>
#include <utility>

namespace deco::hybrid {

/// Innermost (basic) case of a static composition. A domain derives from
/// it once to forward its base operation to wrapped(); layer templates
/// then default their parameter to that derived class.
template <class Interface>
class Basic : public Interface {
public:
    explicit Basic(std::shared_ptr<Interface> base) : base_(std::move(base)) {
        if (!base_) throw std::invalid_argument("static stack needs a base component");
    }

    std::string_view kind() const override { return "StaticStack"; }

    /// The component the stack was built around, undecorated.
    const std::shared_ptr<Interface>& unwrap() const noexcept { return base_; }

protected:
    Interface& wrapped() const noexcept { return *base_; }

private:
    std::shared_ptr<Interface> base_;
};

template <class S>
concept StaticStack = requires(const S& s) {
    { s.unwrap() };
};

/// A stack value of composition `Stack` around `inner`. Constructor
/// arguments past the component are forwarded to the basic case.
template <StaticStack Stack, class Inner, class... Extra>
Stack build_stack(std::shared_ptr<Inner> inner, Extra&&... extra) {
    return Stack(std::move(inner), std::forward<Extra>(extra)...);
}

template <StaticStack Stack>
auto unwrap(const Stack& s) {
    return s.unwrap();
}

}  // namespace deco::hybrid

#pragma once

// Reference domain: a component with one base operation and decorators
// adding f1..f4. Every operation can append to a shared event log so tests
// can observe forwarding order.

#include <deco/core.hpp>
#include <deco/hybrid.hpp>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace deco::basic {

using EventLog = std::vector<std::string>;
using LogPtr = std::shared_ptr<EventLog>;

inline void note(const LogPtr& log, std::string_view event) {
    if (log) log->emplace_back(event);
}

class IComponent : public Component {
public:
    virtual void operation() = 0;
};

class ConcreteComponent : public IComponent {
public:
    explicit ConcreteComponent(LogPtr log = nullptr) : log_(std::move(log)) {}

    std::string_view kind() const override { return "Concrete"; }
    void operation() override { note(log_, "Concrete"); }

private:
    LogPtr log_;
};

/// Plain decoration: forwards `operation` and adds nothing.
class ForwardingDecorator : public Decorator<IComponent> {
public:
    explicit ForwardingDecorator(std::shared_ptr<IComponent> base, LogPtr log = nullptr)
        : Decorator<IComponent>(std::move(base)), log_(std::move(log)) {}

    std::string_view kind() const override { return "Decorator"; }

    void operation() override {
        before_forward();
        base()->operation();
    }

protected:
    virtual void before_forward() {}
    const LogPtr& log() const noexcept { return log_; }

private:
    LogPtr log_;
};

/// Decorator that records its kind each time `operation` passes through.
class InstrumentedDecorator : public ForwardingDecorator {
public:
    using ForwardingDecorator::ForwardingDecorator;

protected:
    void before_forward() override { note(log(), kind()); }

    std::string feature(std::string_view name) {
        std::string event = std::string(kind()) + "." + std::string(name);
        note(log(), event);
        return event;
    }
};

class Decorator1 : public InstrumentedDecorator {
public:
    using InstrumentedDecorator::InstrumentedDecorator;
    std::string_view kind() const override { return "D1"; }
    std::string f1() { return feature("f1"); }

    Value execute(std::string_view cap, std::span<const Value> args) override {
        if (cap == "f1") return f1();
        return InstrumentedDecorator::execute(cap, args);
    }
};

class Decorator2 : public InstrumentedDecorator {
public:
    using InstrumentedDecorator::InstrumentedDecorator;
    std::string_view kind() const override { return "D2"; }
    std::string f2() { return feature("f2"); }

    Value execute(std::string_view cap, std::span<const Value> args) override {
        if (cap == "f2") return f2();
        return InstrumentedDecorator::execute(cap, args);
    }
};

class Decorator3 : public InstrumentedDecorator {
public:
    using InstrumentedDecorator::InstrumentedDecorator;
    std::string_view kind() const override { return "D3"; }
    std::string f3() { return feature("f3"); }

    Value execute(std::string_view cap, std::span<const Value> args) override {
        if (cap == "f3") return f3();
        return InstrumentedDecorator::execute(cap, args);
    }
};

// Added after the f1..f3 suite; becomes reachable through register_extension.
class Decorator4 : public InstrumentedDecorator {
public:
    using InstrumentedDecorator::InstrumentedDecorator;
    std::string_view kind() const override { return "D4"; }
    virtual std::string f4() { return feature("f4"); }

    Value execute(std::string_view cap, std::span<const Value> args) override {
        if (cap == "f4") return f4();
        return InstrumentedDecorator::execute(cap, args);
    }
};

// Re-implements f4.
class Decorator4Prime : public Decorator4 {
public:
    using Decorator4::Decorator4;
    std::string_view kind() const override { return "D4'"; }
    std::string f4() override { return feature("f4"); }
};

inline const Signature& feature_signature() {
    static const Signature sig{{}, ValueKind::text, false};
    return sig;
}

/// Kinds: Decorator, D1, D2, D3, D4, D4'. Layers built here log into `log`.
inline LayerRegistry<IComponent> make_registry(LogPtr log = nullptr) {
    LayerRegistry<IComponent> reg;
    auto add = [&]<class L>(std::string name) {
        reg.add(std::move(name), 0, [log](std::shared_ptr<IComponent> inner, const LayerParams&) {
            return std::shared_ptr<IComponent>(std::make_shared<L>(std::move(inner), log));
        });
    };
    add.template operator()<ForwardingDecorator>("Decorator");
    add.template operator()<Decorator1>("D1");
    add.template operator()<Decorator2>("D2");
    add.template operator()<Decorator3>("D3");
    add.template operator()<Decorator4>("D4");
    add.template operator()<Decorator4Prime>("D4'");
    return reg;
}

/// The initially inventoried capabilities f1, f2, f3.
inline CapabilityTable make_table() {
    CapabilityTable table;
    table.register_capability({"f1", feature_signature()}, {"D1"});
    table.register_capability({"f2", feature_signature()}, {"D2"});
    table.register_capability({"f3", feature_signature()}, {"D3"});
    return table;
}

/// Adds f4, provided by D4 and D4'.
inline CapabilityTable& register_extension(CapabilityTable& table) {
    return table.register_capability({"f4", feature_signature()}, {"D4", "D4'"});
}

/// Static counterparts of the decorators above, composed by inheritance:
/// `stacked::Decorator3<stacked::Decorator1<stacked::Decorator2<>>>`.
namespace stacked {

class Base : public hybrid::Basic<IComponent> {
public:
    explicit Base(std::shared_ptr<IComponent> inner, LogPtr log = nullptr)
        : hybrid::Basic<IComponent>(std::move(inner)), log_(std::move(log)) {}

    void operation() override { wrapped().operation(); }

protected:
    const LogPtr& log() const noexcept { return log_; }

    std::string feature(std::string_view kind, std::string_view name) {
        std::string event = std::string(kind) + "." + std::string(name);
        note(log_, event);
        return event;
    }

private:
    LogPtr log_;
};

template <class T = Base>
class Forwarding : public T {
public:
    static constexpr std::string_view layer_kind = "Decorator";
    using T::T;
    void operation() override { T::operation(); }
};

template <class T = Base>
class Decorator1 : public T {
public:
    static constexpr std::string_view layer_kind = "D1";
    using T::T;
    void operation() override {
        note(this->log(), layer_kind);
        T::operation();
    }
    std::string f1() { return this->feature(layer_kind, "f1"); }
};

template <class T = Base>
class Decorator2 : public T {
public:
    static constexpr std::string_view layer_kind = "D2";
    using T::T;
    void operation() override {
        note(this->log(), layer_kind);
        T::operation();
    }
    std::string f2() { return this->feature(layer_kind, "f2"); }
};

template <class T = Base>
class Decorator3 : public T {
public:
    static constexpr std::string_view layer_kind = "D3";
    using T::T;
    void operation() override {
        note(this->log(), layer_kind);
        T::operation();
    }
    std::string f3() { return this->feature(layer_kind, "f3"); }
};

template <class T = Base>
class Decorator4 : public T {
public:
    static constexpr std::string_view layer_kind = "D4";
    using T::T;
    void operation() override {
        note(this->log(), layer_kind);
        T::operation();
    }
    std::string f4() { return this->feature(layer_kind, "f4"); }
};

template <class T = Base>
class Decorator4Prime : public T {
public:
    static constexpr std::string_view layer_kind = "D4'";
    using T::T;
    void operation() override {
        note(this->log(), layer_kind);
        T::operation();
    }
    std::string f4() { return this->feature(layer_kind, "f4"); }
};

}  // namespace stacked

}  // namespace deco::basic

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace deco {

/// Dynamically typed argument / result of a capability call.
/// `std::monostate` doubles as "unit" and as "no value" (e.g. end-of-input).
using Value = std::variant<std::monostate, std::int64_t, char32_t, std::string>;

enum class ValueKind { unit, integer, character, text };

constexpr std::string_view to_string(ValueKind kind) noexcept {
    switch (kind) {
    case ValueKind::unit: return "unit";
    case ValueKind::integer: return "integer";
    case ValueKind::character: return "character";
    case ValueKind::text: return "text";
    }
    return "?";
}

constexpr ValueKind kind_of(const Value& value) noexcept {
    return static_cast<ValueKind>(value.index());
}

struct Signature {
    std::vector<ValueKind> params;
    ValueKind result = ValueKind::unit;
    // result may be absent (monostate) even when `result` is not unit
    bool optional_result = false;

    friend bool operator==(const Signature&, const Signature&) = default;
};

std::string describe(const Signature& sig);

class SignatureError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline std::string describe(const Signature& sig) {
    std::string out = "(";
    for (std::size_t i = 0; i < sig.params.size(); ++i) {
        if (i) out += ", ";
        out += to_string(sig.params[i]);
    }
    out += ") -> ";
    out += to_string(sig.result);
    if (sig.optional_result) out += '?';
    return out;
}

/// Throws SignatureError unless `args` match `sig.params` in arity and kind.
inline void check_arguments(std::string_view capability, const Signature& sig,
                            std::span<const Value> args) {
    if (args.size() != sig.params.size()) {
        throw SignatureError(std::string(capability) + ": expected " +
                             std::to_string(sig.params.size()) + " argument(s), got " +
                             std::to_string(args.size()));
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (kind_of(args[i]) != sig.params[i]) {
            throw SignatureError(std::string(capability) + ": argument " + std::to_string(i) +
                                 " must be " + std::string(to_string(sig.params[i])) + ", got " +
                                 std::string(to_string(kind_of(args[i]))));
        }
    }
}

}  // namespace deco

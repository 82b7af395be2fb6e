#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace deco {

/// CRC-32 as used by zip/zlib/PNG: reflected polynomial 0x04C11DB7,
/// init 0xFFFFFFFF, final xor 0xFFFFFFFF.
class Crc32 {
public:
    void update(std::uint8_t byte) noexcept {
        state_ = table()[(state_ ^ byte) & 0xFFu] ^ (state_ >> 8);
    }

    void update(std::span<const std::uint8_t> bytes) noexcept {
        for (auto b : bytes) update(b);
    }

    void update(std::string_view bytes) noexcept {
        for (char c : bytes) update(static_cast<std::uint8_t>(c));
    }

    std::uint32_t value() const noexcept { return state_ ^ 0xFFFFFFFFu; }

    void reset() noexcept { state_ = 0xFFFFFFFFu; }

    static std::uint32_t of(std::string_view bytes) noexcept {
        Crc32 crc;
        crc.update(bytes);
        return crc.value();
    }

private:
    static constexpr std::array<std::uint32_t, 256> make_table() {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }

    static const std::array<std::uint32_t, 256>& table() noexcept {
        static constexpr auto t = make_table();
        return t;
    }

    std::uint32_t state_ = 0xFFFFFFFFu;
};

}  // namespace deco

#pragma once

// Character readers and the decorators layered over them: counting,
// word and sentence tokenizing, pushback, CRC-32 and buffering.
//
// Each layer observes only the characters that flow through it. A counter
// below a buffer therefore counts what the buffer prefetched, and a
// character pushed back and re-read is seen twice by layers above the
// pushback layer.

#include <deco/core.hpp>
#include <deco/crc32.hpp>
#include <deco/utf8.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace deco::text {

class CharReader : public Component {
public:
    /// Next character, or nullopt at end of input.
    virtual std::optional<char32_t> read_char() = 0;
};

class ReadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Decodes UTF-8 from a byte stream into Unicode scalar values.
class CharSource : public CharReader {
public:
    static std::shared_ptr<CharSource> from_string(std::string text) {
        return std::shared_ptr<CharSource>(
            new CharSource(std::make_unique<std::istringstream>(std::move(text))));
    }

    static std::shared_ptr<CharSource> from_file(const std::filesystem::path& path) {
        auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
        if (!*in) throw ReadError("cannot open input: " + path.string());
        return std::shared_ptr<CharSource>(new CharSource(std::move(in)));
    }

    /// Non-owning; `in` must outlive the source.
    static std::shared_ptr<CharSource> from_stream(std::istream& in) {
        return std::shared_ptr<CharSource>(new CharSource(&in));
    }

    std::string_view kind() const override { return "source"; }

    std::optional<char32_t> read_char() override {
        int lead = next_byte();
        if (lead < 0) return std::nullopt;
        char32_t c;
        int extra;
        if (lead < 0x80) {
            c = static_cast<char32_t>(lead);
            extra = 0;
        } else if ((lead & 0xE0) == 0xC0) {
            c = lead & 0x1F;
            extra = 1;
        } else if ((lead & 0xF0) == 0xE0) {
            c = lead & 0x0F;
            extra = 2;
        } else if ((lead & 0xF8) == 0xF0) {
            c = lead & 0x07;
            extra = 3;
        } else {
            throw invalid();
        }
        for (int i = 0; i < extra; ++i) {
            int b = next_byte();
            if (b < 0 || (b & 0xC0) != 0x80) throw invalid();
            c = (c << 6) | static_cast<char32_t>(b & 0x3F);
        }
        static constexpr char32_t min_for_length[] = {0, 0x80, 0x800, 0x10000};
        if (c < min_for_length[extra] || !utf8::is_scalar(c)) throw invalid();
        ++chars_;
        return c;
    }

    std::uint64_t bytes_consumed() const noexcept { return bytes_; }
    std::uint64_t chars_delivered() const noexcept { return chars_; }

private:
    explicit CharSource(std::unique_ptr<std::istream> owned)
        : owned_(std::move(owned)), in_(owned_.get()) {}
    explicit CharSource(std::istream* in) : in_(in) {}

    int next_byte() {
        auto r = in_->rdbuf() ? in_->rdbuf()->sbumpc() : std::char_traits<char>::eof();
        if (std::char_traits<char>::eq_int_type(r, std::char_traits<char>::eof())) {
            if (in_->bad()) throw ReadError("input stream failure");
            return -1;
        }
        ++bytes_;
        return static_cast<unsigned char>(std::char_traits<char>::to_char_type(r));
    }

    ReadError invalid() const {
        return ReadError("invalid UTF-8 near byte " + std::to_string(bytes_));
    }

    std::unique_ptr<std::istream> owned_;
    std::istream* in_;
    std::uint64_t bytes_ = 0;
    std::uint64_t chars_ = 0;
};

inline bool is_ascii_alnum(char32_t c) noexcept {
    return (c >= U'0' && c <= U'9') || (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
}

/// Which characters make words and which end sentences.
struct TextSyntax {
    std::function<bool(char32_t)> is_word_char = is_ascii_alnum;
    std::u32string terminators = U".!?";

    bool is_terminator(char32_t c) const { return terminators.find(c) != std::u32string::npos; }
};

inline bool is_space(char32_t c) noexcept {
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' || c == U'\f';
}

namespace caps {
inline constexpr std::string_view get_no_chars = "get_no_chars";
inline constexpr std::string_view read_word = "read_word";
inline constexpr std::string_view get_no_words = "get_no_words";
inline constexpr std::string_view read_sentence = "read_sentence";
inline constexpr std::string_view get_no_sentences = "get_no_sentences";
inline constexpr std::string_view unread = "unread";
inline constexpr std::string_view get_checksum = "get_checksum";
}  // namespace caps

class ReaderDecorator : public Decorator<CharReader> {
public:
    using Decorator<CharReader>::Decorator;

    std::optional<char32_t> read_char() override { return base()->read_char(); }
};

class CharCounter : public ReaderDecorator {
public:
    using ReaderDecorator::ReaderDecorator;

    std::string_view kind() const override { return "counter"; }

    std::optional<char32_t> read_char() override {
        auto c = base()->read_char();
        if (c) ++count_;
        return c;
    }

    std::int64_t get_no_chars() const noexcept { return count_; }

    Value execute(std::string_view cap, std::span<const Value> args) override {
        if (cap == caps::get_no_chars) return get_no_chars();
        return ReaderDecorator::execute(cap, args);
    }

private:
    std::int64_t count_ = 0;
};

class WordDecorator : public ReaderDecorator {
public:
    explicit WordDecorator(std::shared_ptr<CharReader> base, TextSyntax syntax = {})
        : ReaderDecorator(std::move(base)), syntax_(std::move(syntax)) {}

    std::string_view kind() const override { return "words"; }

    std::optional<char32_t> read_char() override { return observe(base()->read_char()); }

    /// Skips separators, then returns the next maximal run of word
    /// characters. The separator ending the run is consumed.
    std::optional<std::string> read_word() {
        std::optional<char32_t> c;
        do {
            c = observe(base()->read_char());
            if (!c) return std::nullopt;
        } while (!syntax_.is_word_char(*c));
        std::string word;
        while (c && syntax_.is_word_char(*c)) {
            utf8::append(word, *c);
            c = observe(base()->read_char());
        }
        return word;
    }

    std::int64_t get_no_words() const noexcept { return words_; }

    Value execute(std::string_view cap, std::span<const Value> args) override {
        if (cap == caps::read_word) {
            if (auto w = read_word()) return std::move(*w);
            return std::monostate{};
        }
        if (cap == caps::get_no_words) return get_no_words();
        return ReaderDecorator::execute(cap, args);
    }

private:
    std::optional<char32_t> observe(std::optional<char32_t> c) {
        if (!c) {
            in_word_ = false;
        } else if (syntax_.is_word_char(*c)) {
            if (!in_word_) ++words_;
            in_word_ = true;
        } else {
            in_word_ = false;
        }
        return c;
    }

    TextSyntax syntax_;
    std::int64_t words_ = 0;
    bool in_word_ = false;
};

/// A sentence runs up to and including a terminator. Trailing text without
/// a terminator counts as a sentence at end of input unless it is blank.
class SentenceDecorator : public ReaderDecorator {
public:
    explicit SentenceDecorator(std::shared_ptr<CharReader> base, TextSyntax syntax = {})
        : ReaderDecorator(std::move(base)), syntax_(std::move(syntax)) {}

    std::string_view kind() const override { return "sentences"; }

    std::optional<char32_t> read_char() override { return observe(base()->read_char()); }

    std::optional<std::string> read_sentence() {
        std::string sentence;
        bool blank = true;
        while (auto c = observe(base()->read_char())) {
            utf8::append(sentence, *c);
            if (syntax_.is_terminator(*c)) return sentence;
            if (!is_space(*c)) blank = false;
        }
        if (blank) return std::nullopt;
        return sentence;
    }

    std::int64_t get_no_sentences() const noexcept { return sentences_; }

    Value execute(std::string_view cap, std::span<const Value> args) override {
        if (cap == caps::read_sentence) {
            if (auto s = read_sentence()) return std::move(*s);
            return std::monostate{};
        }
        if (cap == caps::get_no_sentences) return get_no_sentences();
        return ReaderDecorator::execute(cap, args);
    }

private:
    std::optional<char32_t> observe(std::optional<char32_t> c) {
        if (!c) {
            if (pending_) ++sentences_;
            pending_ = false;
        } else if (syntax_.is_terminator(*c)) {
            ++sentences_;
            pending_ = false;
        } else if (!is_space(*c)) {
            pending_ = true;
        }
        return c;
    }

    TextSyntax syntax_;
    std::int64_t sentences_ = 0;
    bool pending_ = false;
};

class PushbackDecorator : public ReaderDecorator {
public:
    static constexpr std::size_t default_capacity = 64;

    explicit PushbackDecorator(std::shared_ptr<CharReader> base,
                               std::size_t capacity = default_capacity)
        : ReaderDecorator(std::move(base)), capacity_(capacity) {
        pushed_.reserve(capacity_);
    }

    std::string_view kind() const override { return "pushback"; }

    std::optional<char32_t> read_char() override {
        if (!pushed_.empty()) {
            char32_t c = pushed_.back();
            pushed_.pop_back();
            return c;
        }
        return base()->read_char();
    }

    /// The next read returns `c`; several unreads come back last-in first-out.
    void unread(char32_t c) {
        if (!utf8::is_scalar(c)) throw std::invalid_argument("unread: not a Unicode scalar value");
        if (pushed_.size() >= capacity_)
            throw CapacityError("pushback buffer full (capacity " + std::to_string(capacity_) + ")");
        pushed_.push_back(c);
    }

    std::size_t capacity() const noexcept { return capacity_; }

    Value execute(std::string_view cap, std::span<const Value> args) override {
        if (cap == caps::unread && args.size() == 1 && std::holds_alternative<char32_t>(args[0])) {
            unread(std::get<char32_t>(args[0]));
            return std::monostate{};
        }
        return ReaderDecorator::execute(cap, args);
    }

private:
    std::size_t capacity_;
    std::vector<char32_t> pushed_;
};

/// Maintains the CRC-32 of the UTF-8 bytes of every character delivered.
class ChecksumDecorator : public ReaderDecorator {
public:
    using ReaderDecorator::ReaderDecorator;

    std::string_view kind() const override { return "crc32"; }

    std::optional<char32_t> read_char() override {
        auto c = base()->read_char();
        if (c) crc_.update(utf8::encode(*c));
        return c;
    }

    std::uint32_t get_checksum() const noexcept { return crc_.value(); }

    Value execute(std::string_view cap, std::span<const Value> args) override {
        if (cap == caps::get_checksum) return static_cast<std::int64_t>(get_checksum());
        return ReaderDecorator::execute(cap, args);
    }

private:
    Crc32 crc_;
};

/// Prefetches blocks from its base. Adds no capability; the delivered
/// character sequence is unchanged.
class BufferedDecorator : public ReaderDecorator {
public:
    static constexpr std::size_t default_block = 8192;

    explicit BufferedDecorator(std::shared_ptr<CharReader> base,
                               std::size_t block_size = default_block)
        : ReaderDecorator(std::move(base)), block_(block_size) {
        if (block_ == 0) throw ConfigError("buffered: block size must be > 0");
        buffer_.reserve(block_);
    }

    std::string_view kind() const override { return "buffered"; }

    std::optional<char32_t> read_char() override {
        if (pos_ == buffer_.size()) {
            buffer_.clear();
            pos_ = 0;
            while (buffer_.size() < block_) {
                auto c = base()->read_char();
                if (!c) break;
                buffer_.push_back(*c);
            }
            if (buffer_.empty()) return std::nullopt;
        }
        return buffer_[pos_++];
    }

    std::size_t block_size() const noexcept { return block_; }

private:
    std::size_t block_;
    std::vector<char32_t> buffer_;
    std::size_t pos_ = 0;
};

inline CapabilityTable make_reader_table() {
    CapabilityTable t;
    const Signature count{{}, ValueKind::integer, false};
    const Signature token{{}, ValueKind::text, true};
    t.register_capability({std::string(caps::get_no_chars), count}, {"counter"});
    t.register_capability({std::string(caps::read_word), token}, {"words"});
    t.register_capability({std::string(caps::get_no_words), count}, {"words"});
    t.register_capability({std::string(caps::read_sentence), token}, {"sentences"});
    t.register_capability({std::string(caps::get_no_sentences), count}, {"sentences"});
    t.register_capability(
        {std::string(caps::unread), Signature{{ValueKind::character}, ValueKind::unit, false}},
        {"pushback"});
    t.register_capability({std::string(caps::get_checksum), count}, {"crc32"});
    return t;
}

/// Layer kinds: counter, words, sentences, pushback(capacity), crc32,
/// buffered(block_size).
inline LayerRegistry<CharReader> make_reader_registry(const TextSyntax& syntax = {}) {
    using Ptr = std::shared_ptr<CharReader>;
    auto size_param = [](const LayerParams& p, std::size_t fallback, std::string_view kind) {
        if (p.empty()) return fallback;
        if (p[0] <= 0) throw ConfigError(std::string(kind) + ": parameter must be positive");
        return static_cast<std::size_t>(p[0]);
    };
    LayerRegistry<CharReader> reg;
    reg.add("counter", 0, [](Ptr in, const LayerParams&) -> Ptr {
        return std::make_shared<CharCounter>(std::move(in));
    });
    reg.add("words", 0, [syntax](Ptr in, const LayerParams&) -> Ptr {
        return std::make_shared<WordDecorator>(std::move(in), syntax);
    });
    reg.add("sentences", 0, [syntax](Ptr in, const LayerParams&) -> Ptr {
        return std::make_shared<SentenceDecorator>(std::move(in), syntax);
    });
    reg.add("pushback", 1, [size_param](Ptr in, const LayerParams& p) -> Ptr {
        return std::make_shared<PushbackDecorator>(
            std::move(in), size_param(p, PushbackDecorator::default_capacity, "pushback"));
    });
    reg.add("crc32", 0, [](Ptr in, const LayerParams&) -> Ptr {
        return std::make_shared<ChecksumDecorator>(std::move(in));
    });
    reg.add("buffered", 1, [size_param](Ptr in, const LayerParams& p) -> Ptr {
        return std::make_shared<BufferedDecorator>(
            std::move(in), size_param(p, BufferedDecorator::default_block, "buffered"));
    });
    return reg;
}

}  // namespace deco::text

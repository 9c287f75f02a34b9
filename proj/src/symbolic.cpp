#include "ergot/symbolic.hpp"

#include <limits>

#include "ergot/errors.hpp"

namespace ergot {

std::uint64_t checked_pow(std::uint64_t base, int exponent) {
    if (exponent < 0) throw DomainError("negative exponent in word count");
    std::uint64_t result = 1;
    for (int k = 0; k < exponent; ++k) {
        if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base)
            throw ResourceError("word count overflows 64 bits");
        result *= base;
    }
    return result;
}

Alphabet::Alphabet(int size) : size_(size) {
    if (size < 2) throw DomainError("alphabet needs at least 2 symbols, got " + std::to_string(size));
}

std::uint64_t Alphabet::word_count(int length) const { return checked_pow(static_cast<std::uint64_t>(size_), length); }

Word::Word(std::vector<int> symbols, Alphabet alphabet) : symbols_(std::move(symbols)) {
    for (int s : symbols_)
        if (!alphabet.contains(s))
            throw DomainError("symbol " + std::to_string(s) + " outside 1.." + std::to_string(alphabet.size()));
}

Word Word::parse(std::string_view text, Alphabet alphabet) {
    if (alphabet.size() > 9) throw DomainError("digit-string words need an alphabet of at most 9 symbols");
    std::vector<int> symbols;
    symbols.reserve(text.size());
    for (char c : text) {
        if (c < '0' || c > '9') throw DomainError("invalid character '" + std::string(1, c) + "' in word");
        symbols.push_back(c - '0');
    }
    return Word(std::move(symbols), alphabet);
}

Word Word::decode(std::uint64_t code, int length, Alphabet alphabet) {
    const auto d = static_cast<std::uint64_t>(alphabet.size());
    if (code >= alphabet.word_count(length)) throw DomainError("word code out of range");
    std::vector<int> symbols(static_cast<std::size_t>(length));
    for (int k = length - 1; k >= 0; --k) {
        symbols[static_cast<std::size_t>(k)] = static_cast<int>(code % d) + 1;
        code /= d;
    }
    return Word(std::move(symbols), alphabet);
}

std::uint64_t Word::code(Alphabet alphabet) const {
    const auto d = static_cast<std::uint64_t>(alphabet.size());
    alphabet.word_count(length());
    std::uint64_t c = 0;
    for (int s : symbols_) {
        if (!alphabet.contains(s)) throw DomainError("symbol outside alphabet");
        c = c * d + static_cast<std::uint64_t>(s - 1);
    }
    return c;
}

std::string Word::str() const {
    std::string out;
    out.reserve(symbols_.size());
    for (int s : symbols_) out.push_back(static_cast<char>('0' + s));
    return out;
}

WindowState::WindowState(Alphabet alphabet, int length, std::uint64_t code)
    : alphabet_(alphabet), length_(length), code_(code) {
    if (length < 1) throw DomainError("window length must be at least 1");
    if (code >= alphabet.word_count(length)) throw DomainError("window code out of range");
}

WindowState::WindowState(const Word& word, Alphabet alphabet)
    : WindowState(alphabet, word.length(), word.code(alphabet)) {}

int WindowState::symbol(int position) const {
    if (position < 1 || position > length_) throw DomainError("window position out of range");
    const auto d = static_cast<std::uint64_t>(alphabet_.size());
    return static_cast<int>((code_ / checked_pow(d, length_ - position)) % d) + 1;
}

std::uint64_t WindowState::prefix_code(int k) const {
    if (k < 0 || k > length_) throw DomainError("prefix longer than window");
    return code_ / checked_pow(static_cast<std::uint64_t>(alphabet_.size()), length_ - k);
}

Word WindowState::word() const { return Word::decode(code_, length_, alphabet_); }

WindowState prepend(const WindowState& state, int symbol) {
    const Alphabet alphabet = state.alphabet();
    if (!alphabet.contains(symbol))
        throw DomainError("cannot prepend symbol " + std::to_string(symbol) + " outside 1.." +
                          std::to_string(alphabet.size()));
    const auto d = static_cast<std::uint64_t>(alphabet.size());
    const std::uint64_t lead = checked_pow(d, state.length() - 1);
    return WindowState(alphabet, state.length(), static_cast<std::uint64_t>(symbol - 1) * lead + state.code() / d);
}

int cylinder_indicator(const Word& word, const WindowState& state) {
    if (word.length() > state.length())
        throw DomainError("cylinder word of length " + std::to_string(word.length()) +
                          " exceeds window length " + std::to_string(state.length()));
    return state.prefix_code(word.length()) == word.code(state.alphabet()) ? 1 : 0;
}

}  // namespace ergot

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ergot {

/// Symbols of an alphabet are 1..size(). Internally words are encoded in
/// base `size()` with the first symbol as the most significant digit.
class Alphabet {
public:
    explicit Alphabet(int size);

    int size() const noexcept { return size_; }
    bool contains(int symbol) const noexcept { return symbol >= 1 && symbol <= size_; }

    /// size()^length, checked against overflow.
    std::uint64_t word_count(int length) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    int size_;
};

/// Finite word over an alphabet.
class Word {
public:
    Word() = default;
    Word(std::vector<int> symbols, Alphabet alphabet);

    /// Parses a comma-free digit string such as "121".
    static Word parse(std::string_view text, Alphabet alphabet);
    /// Word whose base-d code is `code`.
    static Word decode(std::uint64_t code, int length, Alphabet alphabet);

    int length() const noexcept { return static_cast<int>(symbols_.size()); }
    bool empty() const noexcept { return symbols_.empty(); }
    int operator[](int position) const { return symbols_.at(static_cast<std::size_t>(position)); }
    const std::vector<int>& symbols() const noexcept { return symbols_; }

    std::uint64_t code(Alphabet alphabet) const;
    std::string str() const;

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<int> symbols_;
};

/// Fixed-length window onto the leading coordinates of a point of the
/// shift space. Stored as the base-d code of the window word.
class WindowState {
public:
    WindowState(Alphabet alphabet, int length, std::uint64_t code = 0);
    WindowState(const Word& word, Alphabet alphabet);

    Alphabet alphabet() const noexcept { return alphabet_; }
    int length() const noexcept { return length_; }
    std::uint64_t code() const noexcept { return code_; }

    /// Symbol at 1-based position.
    int symbol(int position) const;
    /// Code of the first `k` symbols.
    std::uint64_t prefix_code(int k) const;
    Word word() const;

    friend bool operator==(const WindowState&, const WindowState&) = default;

private:
    Alphabet alphabet_;
    int length_;
    std::uint64_t code_;
};

/// Shifts the window right and inserts `symbol` in front.
WindowState prepend(const WindowState& state, int symbol);

/// 1 iff the window starts with `word`.
int cylinder_indicator(const Word& word, const WindowState& state);

/// Integer power with overflow check, used for d^k.
std::uint64_t checked_pow(std::uint64_t base, int exponent);

}  // namespace ergot

#include <doctest.h>

#include "ergot/errors.hpp"
#include "ergot/symbolic.hpp"

using namespace ergot;

namespace {

WindowState window(const char* text, int d = 2) { return WindowState(Word::parse(text, Alphabet(d)), Alphabet(d)); }

}  // namespace

TEST_CASE("alphabet and words") {
    CHECK_THROWS_AS(Alphabet(1), DomainError);
    const Alphabet a(3);
    CHECK(a.contains(1));
    CHECK(a.contains(3));
    CHECK_FALSE(a.contains(0));
    CHECK(a.word_count(4) == 81);
    CHECK_THROWS_AS(Alphabet(2).word_count(64), DomainError);

    const Word w = Word::parse("312", a);
    CHECK(w.length() == 3);
    CHECK(w.code(a) == 2 * 9 + 0 * 3 + 1);
    CHECK(Word::decode(w.code(a), 3, a) == w);
    CHECK(w.str() == "312");
    CHECK_THROWS_AS(Word::parse("14", a), DomainError);
    CHECK_THROWS_AS(Word::parse("1a", a), DomainError);
    CHECK(Word::parse("", a).empty());
}

TEST_CASE("decode inverts code for every word") {
    const Alphabet a(3);
    for (int len = 0; len <= 4; ++len)
        for (std::uint64_t c = 0; c < a.word_count(len); ++c) CHECK(Word::decode(c, len, a).code(a) == c);
}

TEST_CASE("prepend") {
    CHECK(prepend(window("12"), 2).word() == Word::parse("21", Alphabet(2)));
    CHECK(prepend(window("1"), 1).word() == Word::parse("1", Alphabet(2)));
    CHECK(prepend(window("221"), 1).word() == Word::parse("122", Alphabet(2)));
    CHECK(prepend(window("2"), 1).word() == Word::parse("1", Alphabet(2)));
    CHECK_THROWS_AS(prepend(window("12"), 3), DomainError);
    CHECK_THROWS_AS(prepend(window("12"), 0), DomainError);
}

TEST_CASE("window symbols and prefixes") {
    const WindowState s = window("2131", 3);
    CHECK(s.symbol(1) == 2);
    CHECK(s.symbol(4) == 1);
    CHECK(s.prefix_code(2) == Word::parse("21", Alphabet(3)).code(Alphabet(3)));
    CHECK(s.prefix_code(0) == 0);
    CHECK_THROWS_AS(s.symbol(5), DomainError);
    CHECK_THROWS_AS(WindowState(Alphabet(2), 0), DomainError);
    CHECK_THROWS_AS(WindowState(Alphabet(2), 2, 4), DomainError);
}

TEST_CASE("cylinder indicator") {
    const Alphabet a(2);
    CHECK(cylinder_indicator(Word::parse("1", a), window("12")) == 1);
    CHECK(cylinder_indicator(Word::parse("21", a), window("22")) == 0);
    CHECK(cylinder_indicator(Word(), window("22")) == 1);
    CHECK(cylinder_indicator(Word::parse("12", a), window("12")) == 1);
    CHECK_THROWS_AS(cylinder_indicator(Word::parse("121", a), window("12")), DomainError);
}

TEST_CASE("checked_pow") {
    CHECK(checked_pow(2, 10) == 1024);
    CHECK(checked_pow(7, 0) == 1);
    CHECK_THROWS(checked_pow(10, 30));
}

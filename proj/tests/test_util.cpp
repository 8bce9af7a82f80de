#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "toklens/encoding.hpp"
#include "toklens/error.hpp"
#include "toklens/rng.hpp"
#include "toklens/utf8.hpp"

using namespace toklens;

TEST_CASE("utf8 validation accepts well-formed sequences") {
    CHECK(utf8::is_valid(""));
    CHECK(utf8::is_valid("plain ascii"));
    CHECK(utf8::is_valid("\xC3\xA9"));               // é
    CHECK(utf8::is_valid("\xE9\xA5\x95"));           // U+9955
    CHECK(utf8::is_valid("\xF0\x9F\x98\x80"));       // U+1F600
    CHECK(utf8::is_valid("\xE0\xBA\x81"));           // U+0E81 (Lao)
}

TEST_CASE("utf8 validation rejects malformed sequences with the right offset") {
    CHECK(utf8::find_invalid("\xFF") == 0);
    CHECK(utf8::find_invalid("ab\x80") == 2);
    CHECK(utf8::find_invalid("\xC3") == 0);             // truncated
    CHECK(utf8::find_invalid("\xC0\xAF") == 0);         // overlong lead
    CHECK(utf8::find_invalid("\xE0\x80\x80") == 0);     // overlong 3-byte
    CHECK(utf8::find_invalid("\xED\xA0\x80") == 0);     // surrogate
    CHECK(utf8::find_invalid("\xF4\x90\x80\x80") == 0); // > U+10FFFF
    CHECK(utf8::find_invalid("ok\xE9\xA5") == 2);       // truncated tail
    CHECK_THROWS_AS(utf8::require_valid("ab\xFFzz"), error);
}

TEST_CASE("utf8 encode matches the independent oracle across ranges") {
    SplitMix64 rng(42);
    for (int i = 0; i < 5000; ++i) {
        char32_t cp = support::random_scalar(rng);
        CHECK(utf8::encode(cp) == support::encode_cp(cp));
    }
    CHECK(utf8::encode(U'饕') == "\xE9\xA5\x95");
}

TEST_CASE("utf8 decode round-trips random strings") {
    SplitMix64 rng(7);
    for (int i = 0; i < 500; ++i) {
        std::string s = support::random_utf8(rng);
        REQUIRE(utf8::is_valid(s));
        std::string rebuilt;
        std::size_t pos = 0;
        std::size_t scalars = 0;
        while (pos < s.size()) {
            rebuilt += utf8::encode(utf8::decode_at(s, pos));
            ++scalars;
        }
        CHECK(rebuilt == s);
        CHECK(scalars == utf8::count_scalars(s));
    }
}

TEST_CASE("unicode whitespace covers the fixed set") {
    CHECK(utf8::is_whitespace(U' '));
    CHECK(utf8::is_whitespace(U'\t'));
    CHECK(utf8::is_whitespace(U'　'));
    CHECK(utf8::is_whitespace(U' '));
    CHECK_FALSE(utf8::is_whitespace(U'a'));
    CHECK_FALSE(utf8::is_whitespace(U'​'));  // zero-width space is not White_Space
}

TEST_CASE("base64 round-trips arbitrary bytes") {
    CHECK(base64_encode("") == "");
    CHECK(base64_encode("f") == "Zg==");
    CHECK(base64_encode("fo") == "Zm8=");
    CHECK(base64_encode("foo") == "Zm9v");
    CHECK(base64_decode("Zm9v") == "foo");

    SplitMix64 rng(99);
    for (int i = 0; i < 300; ++i) {
        std::string bytes;
        std::size_t n = rng.next_below(64);
        for (std::size_t j = 0; j < n; ++j) {
            bytes.push_back(static_cast<char>(rng.next_below(256)));
        }
        CHECK(base64_decode(base64_encode(bytes)) == bytes);
    }
    CHECK_THROWS_AS(base64_decode("a"), error);
    CHECK_THROWS_AS(base64_decode("Zm=v"), error);
    CHECK_THROWS_AS(base64_decode("Zm9$"), error);
}

TEST_CASE("splitmix64 is deterministic and bounded draws stay in range") {
    SplitMix64 a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    SplitMix64 c(5);
    for (int i = 0; i < 1000; ++i) CHECK(c.next_below(17) < 17);
}

TEST_CASE("fnv1a64 digest is stable") {
    CHECK(to_hex(fnv1a64("")) == "cbf29ce484222325");
    CHECK(fnv1a64("abc") != fnv1a64("abd"));
    CHECK(to_hex(fnv1a64("a")).size() == 16);
}

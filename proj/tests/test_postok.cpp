#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "test_support.hpp"
#include "toklens/error.hpp"
#include "toklens/postok.hpp"
#include "toklens/tokenizer.hpp"
#include "toklens/utf8.hpp"

using namespace toklens;

namespace {

Corpus mono(std::vector<std::string> lines) {
    return Corpus::monolingual("xx", std::move(lines));
}

// Lao U+0E81 = E0 BA 81 (checked against the independent encoder below).
const char* kLao = "\xE0\xBA\x81";

}  // namespace

TEST_CASE("ascii corpora have no dominant prefix and fraction 0") {
    CharCensus c = census(mono({"plain ascii only", "more ascii"}));
    CHECK_FALSE(c.dominant_prefix.has_value());
    CHECK(c.over_tokenized_char_fraction == 0.0);
    CHECK(detect_prefix(c) == std::nullopt);
}

TEST_CASE("a pure lao corpus is dominated by 0xE0 with fraction 1") {
    CHECK(support::encode_cp(U'ກ') == kLao);
    std::vector<std::string> lines(10, kLao);
    CharCensus c = census(mono(lines));
    REQUIRE(c.dominant_prefix.has_value());
    CHECK(*c.dominant_prefix == 0xE0);
    CHECK(c.total_chars == 10);
    CHECK(c.over_tokenized_char_fraction == 1.0);
}

TEST_CASE("detected codec prefix is byte-token id 227 under the tokenizer offset") {
    std::vector<std::string> lines(3, kLao);
    auto codec = detect_prefix(census(mono(lines)));
    REQUIRE(codec.has_value());
    CHECK(codec->prefix_byte == 0xE0);
    CHECK(codec->prefix_byte + kByteTokenBase == 227);
}

TEST_CASE("census lead-byte tie resolves to the smaller byte") {
    // U+0E81 leads with E0; U+9955 leads with E9. One of each.
    CharCensus c = census(mono({std::string(kLao) + "\xE9\xA5\x95"}));
    CHECK(c.lead_counts[0] == 1);
    CHECK(c.lead_counts[9] == 1);
    REQUIRE(c.dominant_prefix.has_value());
    CHECK(*c.dominant_prefix == 0xE0);
}

TEST_CASE("census counts mixed-width characters correctly") {
    // 1-byte 'a', 2-byte é (C3 A9), 3-byte U+9955, 4-byte U+1F600.
    CharCensus c = census(mono({"a\xC3\xA9\xE9\xA5\x95\xF0\x9F\x98\x80"}));
    CHECK(c.total_chars == 4);
    CHECK(c.lead_counts[9] == 1);
    CHECK(c.over_tokenized_char_fraction == doctest::Approx(0.25));
}

TEST_CASE("compress strips the dominant lead byte only") {
    PrefixCodec codec{0xE0};
    CHECK(compress(kLao, codec) == "\xBA\x81");
    CHECK(compress("abc", codec) == "abc");
    CHECK(compress("\xE9\xA5\x95", codec) == "\xE9\xA5\x95");  // non-dominant lead kept
}

TEST_CASE("compressed lao maps to token ids 189 132 under byte fallback") {
    std::string stripped = compress(kLao, PrefixCodec{0xE0});
    std::vector<TokenId> ids = Tokenizer::byte_fallback().encode_bytes(stripped);
    CHECK(ids == std::vector<TokenId>{0xBA + 3, 0x81 + 3});
    CHECK(ids == std::vector<TokenId>{189, 132});
}

TEST_CASE("decompress inverts the compress examples") {
    PrefixCodec codec{0xE0};
    CHECK(decompress("\xBA\x81", codec) == kLao);
    CHECK(decompress("abc", codec) == "abc");
    CHECK(decompress("\xE9\xA5\x95", codec) == "\xE9\xA5\x95");
}

TEST_CASE("decompress reports truncation with an offset") {
    try {
        decompress("\xBA", PrefixCodec{0xE0});
        FAIL("expected truncation error");
    } catch (const error& e) {
        CHECK(e.code() == "truncated");
        CHECK(std::string(e.what()).find("0") != std::string::npos);
    }
    CHECK_THROWS_AS(decompress("ab\xE9\xA5", PrefixCodec{0xE0}), error);
}

TEST_CASE("bijectivity holds for random unicode under every prefix byte") {
    SplitMix64 rng(555);
    for (int i = 0; i < 400; ++i) {
        std::string text = support::random_utf8(rng, 48);
        for (int p = 0xE0; p <= 0xEF; ++p) {
            PrefixCodec codec{static_cast<unsigned char>(p)};
            CHECK(decompress(compress(text, codec), codec) == text);
        }
    }
}

TEST_CASE("exact savings on pure dominant-script text") {
    std::string text;
    for (int i = 0; i < 120; ++i) text += support::encode_cp(0x0E81 + (i % 5));  // Lao block
    REQUIRE(text.size() == 360);
    std::string packed = compress(text, PrefixCodec{0xE0});
    CHECK(packed.size() * 3 == text.size() * 2);  // |compress| = (2/3)|utf8|
}

TEST_CASE("compression never expands") {
    SplitMix64 rng(808);
    for (int i = 0; i < 500; ++i) {
        std::string text = support::random_utf8(rng, 64);
        for (int p : {0xE0, 0xE5, 0xEF}) {
            CHECK(compress(text, PrefixCodec{static_cast<unsigned char>(p)}).size() <=
                  text.size());
        }
    }
}

TEST_CASE("byte-fallback encoding of compressed text spends 2 tokens per stripped char") {
    std::string text;
    for (int i = 0; i < 9; ++i) text += support::encode_cp(0x0E81 + (i % 3));
    PrefixCodec codec{0xE0};
    Tokenizer t = Tokenizer::byte_fallback();
    CHECK(t.encode(text).size() == 27);  // 3 byte tokens per character
    CHECK(t.encode_bytes(compress(text, codec)).size() == 18);  // 2 per character
}

TEST_CASE("codec composes with trained tokenizers through the byte path") {
    std::vector<std::string> lines(8, "\xE0\xBA\x81\xE0\xBA\x82 \xE0\xBA\x83");
    PrefixCodec codec{0xE0};
    std::vector<std::string> stripped_lines;
    for (const std::string& line : lines) stripped_lines.push_back(compress(line, codec));
    Tokenizer t = train_bbpe(mono(stripped_lines), 280);
    for (const std::string& line : lines) {
        std::string packed = compress(line, codec);
        std::vector<TokenId> ids = t.encode_bytes(packed);
        CHECK(decompress(t.decode_bytes(ids), codec) == line);
    }
}

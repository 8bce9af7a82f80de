#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "test_support.hpp"
#include "toklens/error.hpp"
#include "toklens/lang_registry.hpp"

using namespace toklens;

TEST_CASE("builtin registry has exactly 101 entries") {
    const LanguageRegistry& reg = LanguageRegistry::builtin();
    CHECK(reg.size() == 101);
}

TEST_CASE("builtin registry: ro row") {
    const LanguageInfo& ro = LanguageRegistry::builtin().lookup("ro");
    CHECK(ro.name == "Romanian");
    REQUIRE(ro.family_l1.has_value());
    CHECK(*ro.family_l1 == "Indo-European");
    REQUIRE(ro.family_l2.has_value());
    CHECK(*ro.family_l2 == "Italic");
    REQUIRE(ro.family_l3.has_value());
    CHECK(*ro.family_l3 == "Latino-Faliscan");
    CHECK(ro.space_separated);
    CHECK(ro.llama_supported);
}

TEST_CASE("builtin registry: th row is Kra-Dai and not space separated") {
    const LanguageInfo& th = LanguageRegistry::builtin().lookup("th");
    REQUIRE(th.family_l1.has_value());
    CHECK(*th.family_l1 == "Kra–Dai");
    CHECK_FALSE(th.space_separated);
    CHECK_FALSE(th.llama_supported);
}

TEST_CASE("builtin registry: af row") {
    const LanguageInfo& af = LanguageRegistry::builtin().lookup("af");
    REQUIRE(af.family_l1.has_value());
    CHECK(*af.family_l1 == "Indo-European");
    CHECK(af.space_separated);
}

TEST_CASE("non-spacing scripts are exactly the seven expected codes") {
    const LanguageRegistry& reg = LanguageRegistry::builtin();
    std::vector<std::string> no_space;
    for (const LanguageInfo& e : reg.entries()) {
        if (!e.space_separated) no_space.push_back(e.iso_code);
    }
    std::sort(no_space.begin(), no_space.end());
    CHECK(no_space == std::vector<std::string>{"ja", "km", "lo", "my", "th", "zh", "zhtrad"});
}

TEST_CASE("all 12 representative languages are present") {
    const LanguageRegistry& reg = LanguageRegistry::builtin();
    for (std::string_view code : LanguageRegistry::representative_languages()) {
        CHECK(reg.find(code) != nullptr);
        CHECK(reg.is_representative(code));
    }
    CHECK_FALSE(reg.is_representative("fr"));
}

TEST_CASE("lookup round-trips every builtin entry") {
    const LanguageRegistry& reg = LanguageRegistry::builtin();
    for (const LanguageInfo& e : reg.entries()) {
        const LanguageInfo& found = reg.lookup(e.iso_code);
        CHECK(found.iso_code == e.iso_code);
        CHECK(found.name == e.name);
        CHECK(found.family_l1 == e.family_l1);
        CHECK(found.family_l2 == e.family_l2);
        CHECK(found.family_l3 == e.family_l3);
        CHECK(found.space_separated == e.space_separated);
        CHECK(found.llama_supported == e.llama_supported);
    }
}

TEST_CASE("family levels nest: deeper levels imply the shallower ones") {
    for (const LanguageInfo& e : LanguageRegistry::builtin().entries()) {
        if (e.family_l3) CHECK(e.family_l2.has_value());
        if (e.family_l2) CHECK(e.family_l1.has_value());
    }
}

TEST_CASE("lookup failures carry the code") {
    const LanguageRegistry& reg = LanguageRegistry::builtin();
    CHECK_THROWS_WITH_AS(reg.lookup("zz"), "unknown language code 'zz'", error);
    CHECK_THROWS_AS(reg.lookup(""), error);
    try {
        reg.lookup("zz");
    } catch (const error& e) {
        CHECK(e.code() == "not-found");
    }
}

TEST_CASE("csv registry loads and overrides defaults") {
    support::TempFile file(
        "iso,name,family1,family2,family3,space_separated,llama_supported\n"
        "xx,Exlang,Fam1,Fam2,,false,true\n"
        "yy,Whylang,,,,true,false\n",
        ".csv");
    LanguageRegistry reg = LanguageRegistry::from_csv(file.path());
    CHECK(reg.size() == 2);
    const LanguageInfo& xx = reg.lookup("xx");
    CHECK_FALSE(xx.space_separated);
    CHECK(xx.llama_supported);
    CHECK(xx.family_l2 == "Fam2");
    CHECK_FALSE(xx.family_l3.has_value());
    CHECK_FALSE(reg.lookup("yy").family_l1.has_value());
}

TEST_CASE("csv registry rejects duplicate codes, naming the code") {
    support::TempFile file(
        "iso,name,family1,family2,family3,space_separated,llama_supported\n"
        "xx,First,,,,true,false\n"
        "xx,Second,,,,true,false\n",
        ".csv");
    try {
        LanguageRegistry::from_csv(file.path());
        FAIL("expected duplicate-code error");
    } catch (const error& e) {
        CHECK(e.code() == "duplicate-code");
        CHECK(std::string(e.what()).find("xx") != std::string::npos);
    }
}

TEST_CASE("csv registry reports malformed rows with line numbers") {
    support::TempFile file(
        "iso,name,family1,family2,family3,space_separated,llama_supported\n"
        "xx,Exlang,true\n",
        ".csv");
    try {
        LanguageRegistry::from_csv(file.path());
        FAIL("expected parse error");
    } catch (const error& e) {
        CHECK(e.code() == "parse");
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("csv registry rejects family level gaps") {
    support::TempFile file(
        "iso,name,family1,family2,family3,space_separated,llama_supported\n"
        "xx,Exlang,,Fam2,,true,false\n",
        ".csv");
    CHECK_THROWS_AS(LanguageRegistry::from_csv(file.path()), error);
}

TEST_CASE("llama-supported entries are the 19 wikipedia pretraining targets") {
    std::size_t supported = 0;
    for (const LanguageInfo& e : LanguageRegistry::builtin().entries()) {
        if (e.llama_supported) ++supported;
    }
    CHECK(supported == 19);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <map>
#include <set>

#include "test_support.hpp"
#include "toklens/error.hpp"
#include "toklens/quadrant.hpp"

using namespace toklens;

namespace {

std::filesystem::path fixture(const char* name) {
    return std::filesystem::path(TOKLENS_FIXTURE_DIR) / name;
}

PerformanceMatrix ted_matrix() {
    return PerformanceMatrix::from_csv(fixture("ted_flores_devtest.csv"));
}

std::map<std::string, std::string> ted_labels() {
    std::ifstream in(fixture("ted_quadrant_labels.csv"));
    REQUIRE(in.good());
    std::map<std::string, std::string> labels;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t comma = line.find(',');
        labels[line.substr(0, comma)] = line.substr(comma + 1);
    }
    return labels;
}

SignificanceParams default_params(const PerformanceMatrix& m) {
    return SignificanceParams{threshold(m.baseline), 2.0};
}

}  // namespace

TEST_CASE("direction labels canonicalize the arrow form") {
    CHECK(canonical_direction("en-af") == "en-af");
    CHECK(canonical_direction("en\xE2\x86\x92"
                              "af") == "en-af");
}

TEST_CASE("threshold over the fixture baseline is 25.1 / 12") {
    PerformanceMatrix m = ted_matrix();
    CHECK(m.baseline.size() == 12);
    CHECK(threshold(m.baseline) == doctest::Approx(2.0917).epsilon(1e-4));
    CHECK(threshold(m.baseline) == doctest::Approx(25.1 / 12.0).epsilon(1e-12));
}

TEST_CASE("threshold of a single direction is that score; all-zero gives 0") {
    CHECK(threshold({{"en-xx", 5.0}}) == 5.0);
    CHECK(threshold({{"en-xx", 0.0}, {"en-yy", 0.0}}) == 0.0);
    CHECK_THROWS_AS(threshold({}), error);
}

TEST_CASE("delta: high-pre branch on the fixture ro cell") {
    SignificanceParams params{25.1 / 12.0, 2.0};
    DeltaResult r = delta(3.6, 15.5, params);
    CHECK(r.branch == DeltaBranch::HighPre);
    CHECK(r.value == doctest::Approx(15.5 / 3.6 - 2.0).epsilon(1e-12));
    CHECK(r.value == doctest::Approx(2.306).epsilon(1e-3));
    CHECK(r.gain);
}

TEST_CASE("delta: boundary doubling is not a gain (strict inequality)") {
    SignificanceParams params{2.0, 2.0};
    DeltaResult r = delta(2.0, 4.0, params);  // P_pre = T, P_post = 2T
    CHECK(r.value == 0.0);
    CHECK_FALSE(r.gain);
}

TEST_CASE("delta: low-pre branch on the fixture ta cell") {
    SignificanceParams params{25.1 / 12.0, 2.0};
    DeltaResult r = delta(0.4, 0.1, params);
    CHECK(r.branch == DeltaBranch::LowPre);
    CHECK(r.value == doctest::Approx((0.1 - 2.0 * 25.1 / 12.0) / 0.4).epsilon(1e-12));
    CHECK(r.value == doctest::Approx(-10.2).epsilon(1e-2));
    CHECK_FALSE(r.gain);
}

TEST_CASE("delta: epsilon floor keeps zero-pre values finite") {
    SignificanceParams params{2.0, 2.0};
    DeltaResult r = delta(0.0, 1.0, params);
    CHECK(std::isfinite(r.value));
    CHECK_FALSE(r.gain);  // 1.0 < k*T = 4
    DeltaResult g = delta(0.0, 5.0, params);
    CHECK(g.gain);  // 5.0 > k*T = 4
}

TEST_CASE("multilingual score averages the two probe directions") {
    PerformanceMatrix m = ted_matrix();
    CHECK(multilingual_score(m.models.at("he"), m.mult_directions) == doctest::Approx(14.8));
    CHECK(multilingual_score(m.baseline, m.mult_directions) == doctest::Approx(3.55));
    std::map<std::string, double> partial{{"en-ro", 1.0}};
    CHECK_THROWS_AS(multilingual_score(partial, {"en-af", "en-ro"}), error);
    try {
        multilingual_score(partial, {"en-af", "en-ro"});
    } catch (const error& e) {
        CHECK(std::string(e.what()).find("en-af") != std::string::npos);
    }
}

TEST_CASE("classify reproduces the dual-verifiable fixture languages") {
    PerformanceMatrix m = ted_matrix();
    std::vector<QuadrantAssignment> out = classify(m, default_params(m));
    CHECK(out.size() == 50);
    std::map<std::string, Quadrant> got;
    for (const QuadrantAssignment& a : out) {
        if (a.bilingual_delta) got[a.language] = a.quadrant;
    }
    REQUIRE(got.size() == 7);
    CHECK(got.at("ro") == Quadrant::Reciprocal);
    CHECK(got.at("he") == Quadrant::Altruistic);
    CHECK(got.at("tr") == Quadrant::Altruistic);
    CHECK(got.at("et") == Quadrant::Altruistic);
    CHECK(got.at("th") == Quadrant::Altruistic);
    CHECK(got.at("ta") == Quadrant::Stagnant);
    CHECK(got.at("zh") == Quadrant::Stagnant);
}

TEST_CASE("classify output is sorted by language code") {
    PerformanceMatrix m = ted_matrix();
    std::vector<QuadrantAssignment> out = classify(m, default_params(m));
    for (std::size_t i = 1; i < out.size(); ++i) {
        CHECK(out[i - 1].language < out[i].language);
    }
}

TEST_CASE("classify errors when a model lacks its baselined direction") {
    PerformanceMatrix m;
    m.baseline = {{"en-af", 3.5}, {"en-ro", 3.6}, {"en-xx", 1.0}};
    m.models["xx"] = {{"en-af", 5.0}, {"en-ro", 6.0}};  // missing en-xx
    try {
        classify(m, SignificanceParams{1.0, 2.0});
        FAIL("expected missing-direction error");
    } catch (const error& e) {
        CHECK(e.code() == "missing-direction");
    }
}

TEST_CASE("multilingual delta sign matches the published grouping for all 50 rows") {
    PerformanceMatrix m = ted_matrix();
    std::map<std::string, std::string> labels = ted_labels();
    REQUIRE(labels.size() == 50);
    std::vector<QuadrantAssignment> out = classify(m, default_params(m));
    REQUIRE(out.size() == 50);
    for (const QuadrantAssignment& a : out) {
        REQUIRE(labels.count(a.language) == 1);
        const std::string& label = labels.at(a.language);
        bool expect_gain = label == "Reciprocal" || label == "Altruistic";
        CHECK_MESSAGE(a.multilingual_delta.gain == expect_gain,
                      a.language, " labeled ", label, " but multilingual delta is ",
                      a.multilingual_delta.value);
    }
}

TEST_CASE("sweep at k=2 splits the seven fully-specified languages 1/4/2") {
    PerformanceMatrix m = ted_matrix();
    std::vector<SweepRow> rows = sweep(m, {2.0});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].reciprocal == 1);
    CHECK(rows[0].altruistic == 4);
    CHECK(rows[0].selfish == 0);
    CHECK(rows[0].stagnant == 2);
    CHECK(rows[0].mult_only_gain + rows[0].mult_only_no_gain == 43);
}

TEST_CASE("sweep: stagnant count is non-decreasing and k=20 stalls everything") {
    PerformanceMatrix m = ted_matrix();
    std::vector<SweepRow> rows = sweep(m, {2.0, 3.0, 5.0, 10.0, 20.0});
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].stagnant >= rows[i - 1].stagnant);
    }
    CHECK(rows.back().stagnant == 7);
    CHECK(rows.back().reciprocal == 0);
    CHECK(rows.back().altruistic == 0);
    CHECK(rows.back().selfish == 0);
    CHECK(rows.back().mult_only_gain == 0);  // nothing gains 20x
}

TEST_CASE("sweep of a single k equals classify counts") {
    PerformanceMatrix m = ted_matrix();
    std::vector<SweepRow> rows = sweep(m, {2.0});
    std::vector<QuadrantAssignment> out = classify(m, default_params(m));
    std::size_t reciprocal = 0;
    for (const QuadrantAssignment& a : out) {
        reciprocal += a.quadrant == Quadrant::Reciprocal ? 1 : 0;
    }
    CHECK(rows[0].reciprocal == reciprocal);
}

TEST_CASE("sweep validates its k values") {
    PerformanceMatrix m = ted_matrix();
    CHECK_THROWS_AS(sweep(m, {}), error);
    CHECK_THROWS_AS(sweep(m, {2.0, 0.0}), error);
    CHECK_THROWS_AS(sweep(m, {-1.0}), error);
}

TEST_CASE("delta value is strictly decreasing in k on both branches") {
    SplitMix64 rng(90210);
    for (int i = 0; i < 200; ++i) {
        double t = static_cast<double>(rng.next_below(400)) / 100.0 + 0.01;
        double pre = static_cast<double>(rng.next_below(2000)) / 100.0;
        double post = static_cast<double>(rng.next_below(2000)) / 100.0;
        double prev = delta(pre, post, {t, 1.0}).value;
        for (double k : {2.0, 3.0, 5.0, 10.0, 20.0}) {
            double cur = delta(pre, post, {t, k}).value;
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("high-pre branch is scale covariant") {
    SignificanceParams params{2.0, 2.0};
    DeltaResult base = delta(4.0, 10.0, params);
    for (double c : {1.5, 2.0, 10.0, 100.0}) {
        DeltaResult scaled = delta(4.0 * c, 10.0 * c, params);
        CHECK(scaled.branch == DeltaBranch::HighPre);
        CHECK(scaled.value == doctest::Approx(base.value).epsilon(1e-12));
    }
}

TEST_CASE("gain criterion restates as threshold comparisons") {
    SplitMix64 rng(31337);
    for (int i = 0; i < 500; ++i) {
        double t = static_cast<double>(rng.next_below(300)) / 100.0 + 0.01;
        double k = static_cast<double>(rng.next_below(500)) / 100.0 + 0.1;
        double pre = static_cast<double>(rng.next_below(1000)) / 100.0;
        double post = static_cast<double>(rng.next_below(1000)) / 100.0;
        DeltaResult r = delta(pre, post, {t, k});
        if (pre >= t) {
            CHECK(r.gain == (post > k * pre));
        } else if (pre > 0.0) {
            CHECK(r.gain == (post > k * t));
        }
    }
}

TEST_CASE("matrix csv loader rejects malformed rows") {
    support::TempFile bad_header("lang,dir,score\n", ".csv");
    CHECK_THROWS_AS(PerformanceMatrix::from_csv(bad_header.path()), error);
    support::TempFile bad_score("model_lang,direction,score\nx,en-a,notanumber\n", ".csv");
    CHECK_THROWS_AS(PerformanceMatrix::from_csv(bad_score.path()), error);
    support::TempFile negative("model_lang,direction,score\nx,en-a,-1.0\n", ".csv");
    CHECK_THROWS_AS(PerformanceMatrix::from_csv(negative.path()), error);
    support::TempFile dup("model_lang,direction,score\nx,en-a,1.0\nx,en-a,2.0\n", ".csv");
    CHECK_THROWS_AS(PerformanceMatrix::from_csv(dup.path()), error);
    CHECK_THROWS_AS(PerformanceMatrix::from_csv(fixture("nope.csv")), error);
}

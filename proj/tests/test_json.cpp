#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "plumb/series_json.hpp"

#include "helpers.hpp"

using plumb::Complex;
using plumb::Json;
using plumb::Series;
using plumb::domain_error;
using plumb::parse_error;
using plumb::testing::RandomSeriesOptions;
using plumb::testing::random_series;

TEST_CASE("serialization round-trips to an identical value") {
    std::mt19937 rng(53);
    RandomSeriesOptions opt;
    opt.integer = false;
    for (int trial = 0; trial < 20; ++trial) {
        Series s = random_series(rng, {"z", "w", "s"}, 7, opt);
        Series back = plumb::series_from_json(plumb::series_to_json(s));
        REQUIRE(s == back);
    }
}

TEST_CASE("emitted JSON is byte-stable under reparse") {
    std::mt19937 rng(59);
    RandomSeriesOptions opt;
    opt.integer = false;
    for (int trial = 0; trial < 20; ++trial) {
        Series s = random_series(rng, {"z", "w"}, 6, opt);
        std::string once = plumb::series_to_json(s).dump();
        Series back = plumb::series_from_json(plumb::parse_json_text(once));
        std::string twice = plumb::series_to_json(back).dump();
        REQUIRE(once == twice);
    }
}

TEST_CASE("irrational and signed-zero coefficients stay byte-stable") {
    Series s = Series::monomial({"z"}, 3, {1}, Complex(1.0 / 3.0, -0.0)) +
               Series::monomial({"z"}, 3, {2}, Complex(3.141592653589793, 1e-300 * 0.0));
    std::string once = plumb::series_to_json(s).dump();
    std::string twice = plumb::series_to_json(plumb::series_from_json(plumb::parse_json_text(once))).dump();
    REQUIRE(once == twice);
}

TEST_CASE("Laurent lower bounds survive the round trip") {
    Series s = Series::monomial({"zeta", "t"}, 4, {-2, 1}, Complex(2.5, -1.0), {-3, 0});
    Series back = plumb::series_from_json(plumb::series_to_json(s));
    REQUIRE(back.lower() == std::vector<int>{-3, 0});
    REQUIRE(s == back);
}

TEST_CASE("reader rejects duplicate exponent tuples") {
    Json j;
    j["vars"] = {"z"};
    j["trunc"] = 3;
    j["terms"] = Json::array({{{"exp", {1}}, {"re", 1.0}, {"im", 0.0}}, {{"exp", {1}}, {"re", 2.0}, {"im", 0.0}}});
    REQUIRE_THROWS_AS(plumb::series_from_json(j), parse_error);
}

TEST_CASE("reader rejects malformed schemas") {
    REQUIRE_THROWS_AS(plumb::series_from_json(Json::array()), parse_error);

    Json missing;
    missing["vars"] = {"z"};
    missing["trunc"] = 3;
    REQUIRE_THROWS_AS(plumb::series_from_json(missing), parse_error);

    Json bad_terms;
    bad_terms["vars"] = {"z"};
    bad_terms["trunc"] = 3;
    bad_terms["terms"] = 7;
    REQUIRE_THROWS_AS(plumb::series_from_json(bad_terms), parse_error);

    Json incomplete;
    incomplete["vars"] = {"z"};
    incomplete["trunc"] = 3;
    incomplete["terms"] = Json::array({{{"exp", {1}}, {"re", 1.0}}});
    REQUIRE_THROWS_AS(plumb::series_from_json(incomplete), parse_error);
}

TEST_CASE("reader surfaces series-contract violations as domain errors") {
    Json neg_trunc;
    neg_trunc["vars"] = {"z"};
    neg_trunc["trunc"] = -1;
    neg_trunc["terms"] = Json::array();
    REQUIRE_THROWS_AS(plumb::series_from_json(neg_trunc), domain_error);

    Json too_deep;
    too_deep["vars"] = {"z"};
    too_deep["trunc"] = 2;
    too_deep["terms"] = Json::array({{{"exp", {5}}, {"re", 1.0}, {"im", 0.0}}});
    REQUIRE_THROWS_AS(plumb::series_from_json(too_deep), domain_error);

    Json wrong_len;
    wrong_len["vars"] = {"z", "w"};
    wrong_len["trunc"] = 2;
    wrong_len["terms"] = Json::array({{{"exp", {1}}, {"re", 1.0}, {"im", 0.0}}});
    REQUIRE_THROWS_AS(plumb::series_from_json(wrong_len), domain_error);
}

TEST_CASE("text parsing maps JSON syntax failures to parse errors") {
    REQUIRE_THROWS_AS(plumb::parse_json_text("{not json"), parse_error);
    REQUIRE_THROWS_AS(plumb::parse_json_text(""), parse_error);
    Json ok = plumb::parse_json_text("{\"vars\":[\"z\"],\"trunc\":1,\"terms\":[]}");
    REQUIRE(plumb::series_from_json(ok).is_zero());
}

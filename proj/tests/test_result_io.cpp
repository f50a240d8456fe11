#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mgp/clearing.hpp"
#include "mgp/errors.hpp"
#include "mgp/result_io.hpp"
#include "test_support.hpp"

using namespace mgp;
using mgp::test::fixture_path;
using mgp::test::make_topology;

namespace {

ClearingResult sample_result(const NetworkTopology& topo) {
    std::vector<Offer> offers{
        {Purpose::Sell, 1, 0, 20.0, 10.0, 0},
        {Purpose::Sell, 1, 1, 20.0, 30.0, 1},
        {Purpose::Buy, 1, 0, 5.0, 50.0, 2},
        {Purpose::Buy, 1, 1, 25.0, 50.0, 3},
    };
    std::vector<TransitLimit> limits{{0, 1, 10.0}, {1, 0, 10.0}};
    ClearingConfig config;
    return clear_hour(offers, topo, limits, 1, config);
}

}  // namespace

TEST_CASE("result json carries the full fixed layout") {
    NetworkTopology topo = make_topology({"A", "B"}, {{"A", "B"}});
    const ClearingResult r = sample_result(topo);
    const nlohmann::ordered_json j = result_to_json(r, topo, ClearingConfig::PriceMode::Both);

    CHECK(j["hour"] == 1);
    CHECK(j["welfare"].get<double>() == r.welfare);
    REQUIRE(j["macrozones"].size() == 2);
    CHECK(j["macrozones"][0][0] == "A");
    CHECK(j["prices"]["A"]["marginal"].get<double>() == r.prices_marginal[0]);
    CHECK(j["prices"]["B"]["dual"].get<double>() == r.prices_dual[1]);
    REQUIRE(j["transits"].size() == 2);
    CHECK(j["transits"][0]["from"] == "A");
    CHECK(j["transits"][0]["flow"].get<double>() == r.transits[0].flow);
    CHECK(j["accepted"].size() == 4);
    CHECK(j["saturated_edges"][0][0] == "A");
    CHECK(j["saturated_edges"][0][1] == "B");

    // field order is part of the format
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"hour", "welfare", "macrozones", "prices", "transits",
                                           "accepted", "saturated_edges"});
}

TEST_CASE("price mode filters the emitted prices") {
    NetworkTopology topo = make_topology({"A", "B"}, {{"A", "B"}});
    const ClearingResult r = sample_result(topo);

    const auto marginal_only = result_to_json(r, topo, ClearingConfig::PriceMode::Marginal);
    CHECK(marginal_only["prices"]["A"].contains("marginal"));
    CHECK_FALSE(marginal_only["prices"]["A"].contains("dual"));

    const auto dual_only = result_to_json(r, topo, ClearingConfig::PriceMode::Dual);
    CHECK_FALSE(dual_only["prices"]["A"].contains("marginal"));
    CHECK(dual_only["prices"]["A"].contains("dual"));
}

TEST_CASE("json round-trip reproduces every value bit-exactly") {
    NetworkTopology topo = make_topology({"A", "B"}, {{"A", "B"}});
    ClearingResult r = sample_result(topo);
    // make the doubles awkward on purpose
    r.welfare = 1.0 / 3.0;
    r.prices_dual[0] = 0.1 + 0.2;

    const std::string rendered =
        render_results_json(std::vector<ClearingResult>{r}, topo, ClearingConfig::PriceMode::Both);
    CHECK(rendered.back() == '\n');

    const nlohmann::json parsed = nlohmann::json::parse(rendered);
    REQUIRE(parsed.is_array());
    const ClearingResult back = result_from_json(parsed[0], topo);

    CHECK(back.hour == r.hour);
    CHECK(back.welfare == r.welfare);
    CHECK(back.macrozones == r.macrozones);
    CHECK(back.prices_marginal == r.prices_marginal);
    CHECK(back.prices_dual == r.prices_dual);
    REQUIRE(back.transits.size() == r.transits.size());
    for (std::size_t i = 0; i < r.transits.size(); ++i) {
        CHECK(back.transits[i].from == r.transits[i].from);
        CHECK(back.transits[i].to == r.transits[i].to);
        CHECK(back.transits[i].flow == r.transits[i].flow);
    }
    REQUIRE(back.accepted.size() == r.accepted.size());
    for (std::size_t i = 0; i < r.accepted.size(); ++i) {
        CHECK(back.accepted[i].offer_id == r.accepted[i].offer_id);
        CHECK(back.accepted[i].quantity == r.accepted[i].quantity);
    }
    CHECK(back.saturated_edges == r.saturated_edges);
}

TEST_CASE("csv emits one row per zone per hour") {
    NetworkTopology topo = make_topology({"A", "B"}, {{"A", "B"}});
    const ClearingResult r = sample_result(topo);
    std::ostringstream out;
    write_results_csv(out, std::vector<ClearingResult>{r}, topo, ClearingConfig::PriceMode::Both);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "hour,zone,macrozone,price_marginal,price_dual");
    std::getline(lines, line);
    CHECK(line == "1,A,0,10,10");
    std::getline(lines, line);
    CHECK(line == "1,B,1,30,30");
    CHECK_FALSE(std::getline(lines, line));

    // marginal-only leaves the dual column empty
    std::ostringstream filtered;
    write_results_csv(filtered, std::vector<ClearingResult>{r}, topo,
                      ClearingConfig::PriceMode::Marginal);
    std::istringstream flines(filtered.str());
    std::getline(flines, line);
    std::getline(flines, line);
    CHECK(line == "1,A,0,10,");
}

TEST_CASE("malformed result json is reported as input error") {
    NetworkTopology topo = make_topology({"A", "B"}, {{"A", "B"}});
    const nlohmann::json missing = nlohmann::json::object({{"hour", 1}});
    CHECK_THROWS_AS(result_from_json(missing, topo), mgp::input_error);
}

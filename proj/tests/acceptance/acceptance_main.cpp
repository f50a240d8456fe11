// Acceptance suite: one self-contained check per release criterion, one
// PASS/FAIL line each, exit code = number of failures. Kept independent of
// the unit-test framework so the output reads as a checklist.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mgp/clearing.hpp"
#include "mgp/errors.hpp"
#include "mgp/lp.hpp"
#include "mgp/market_data.hpp"
#include "mgp/network.hpp"
#include "mgp/result_io.hpp"
#include "test_support.hpp"

using namespace mgp;
using mgp::test::TestInstance;

namespace {

namespace fs = std::filesystem;

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome fail(std::string detail) {
    return {false, std::move(detail)};
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

bool near_abs(double a, double b, double tol) {
    return std::abs(a - b) <= tol;
}

bool near_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

TestInstance load_fixture_instance(const std::string& topo_name, const std::string& offers_name,
                                   const std::string& limits_name, int hour) {
    TestInstance inst{load_topology_file(mgp::test::fixture_path(topo_name)), {}, {}, hour};
    std::ifstream offers_in(mgp::test::fixture_path(offers_name));
    inst.offers = parse_offers(offers_in, inst.topology);
    if (!limits_name.empty()) {
        std::ifstream limits_in(mgp::test::fixture_path(limits_name));
        inst.limits = parse_limits(limits_in, inst.topology);
    }
    return inst;
}

TestInstance canonical_two_zone() {
    TestInstance inst{mgp::test::make_topology({"A", "B"}, {{"A", "B"}}), {}, {}, 1};
    inst.offers = {
        {Purpose::Sell, 1, 0, 20.0, 10.0, 0},
        {Purpose::Sell, 1, 1, 20.0, 30.0, 1},
        {Purpose::Buy, 1, 0, 5.0, 50.0, 2},
        {Purpose::Buy, 1, 1, 25.0, 50.0, 3},
    };
    inst.limits = {{0, 1, 10.0}, {1, 0, 10.0}};
    return inst;
}

double accepted_sell_volume(const ClearingResult& r, std::span<const Offer> offers) {
    double volume = 0.0;
    for (const AcceptedQuantity& a : r.accepted) {
        if (offers[static_cast<std::size_t>(a.offer_id)].purpose == Purpose::Sell)
            volume += a.quantity;
    }
    return volume;
}

// ---------------------------------------------------------------------------
// 1. Single-zone LP results match the merit-order oracle on 500 random books.
Outcome oracle_single_zone() {
    std::mt19937 rng(1001);
    ClearingConfig config;
    const auto start = std::chrono::steady_clock::now();
    for (int round = 0; round < 500; ++round) {
        const TestInstance inst = mgp::test::random_single_zone(rng);
        const std::vector<int> zone{0};
        const auto [supply, demand] = build_merit_curves(inst.offers, zone);
        const MeritClearResult oracle = merit_order_clear(supply, demand);

        const ClearingResult r = clear_hour(inst.offers, inst.topology, inst.limits, 1, config);
        const double volume = accepted_sell_volume(r, inst.offers);
        if (!near_abs(volume, oracle.volume, 1e-6)) {
            return fail("round " + std::to_string(round) + ": volume " + fmt(volume) + " vs oracle " +
                        fmt(oracle.volume));
        }
        if (!near_rel(r.prices_marginal[0], oracle.price, 1e-6)) {
            return fail("round " + std::to_string(round) + ": price " + fmt(r.prices_marginal[0]) +
                        " vs oracle " + fmt(oracle.price));
        }
        if (!near_rel(r.welfare, oracle.welfare, 1e-6)) {
            return fail("round " + std::to_string(round) + ": welfare " + fmt(r.welfare) +
                        " vs oracle " + fmt(oracle.welfare));
        }
    }
    const double ms = elapsed_ms(start);
    if (ms >= 5000.0) return fail("500 instances took " + fmt(ms) + " ms (budget 5000)");
    return {true, "500 instances in " + fmt(ms) + " ms"};
}

// ---------------------------------------------------------------------------
// 2. Canonical two-zone congestion case, exact to 1e-9.
Outcome canonical_case() {
    const TestInstance inst = canonical_two_zone();
    ClearingConfig config;
    const ClearingResult r = clear_hour(inst.offers, inst.topology, inst.limits, 1, config);

    const std::vector<double> expected_x{15.0, 15.0, 5.0, 25.0};
    for (std::size_t i = 0; i < expected_x.size(); ++i) {
        if (!near_abs(r.accepted[i].quantity, expected_x[i], 1e-9))
            return fail("accepted[" + std::to_string(i) + "] = " + fmt(r.accepted[i].quantity));
    }
    if (r.macrozones != std::vector<std::vector<int>>{{0}, {1}}) return fail("wrong macrozones");
    if (!near_abs(r.prices_marginal[0], 10.0, 1e-9) || !near_abs(r.prices_marginal[1], 30.0, 1e-9))
        return fail("marginal prices " + fmt(r.prices_marginal[0]) + ", " + fmt(r.prices_marginal[1]));
    if (!near_abs(r.prices_dual[0], 10.0, 1e-9) || !near_abs(r.prices_dual[1], 30.0, 1e-9))
        return fail("dual prices " + fmt(r.prices_dual[0]) + ", " + fmt(r.prices_dual[1]));
    if (r.transits.size() != 2 || !near_abs(r.transits[0].flow, 10.0, 1e-9))
        return fail("transit A->B = " + fmt(r.transits.empty() ? -1.0 : r.transits[0].flow));
    if (!near_abs(r.welfare, 900.0, 1e-9)) return fail("welfare " + fmt(r.welfare));
    if (r.saturated_edges.size() != 1) return fail("saturated edge count");
    return {};
}

// ---------------------------------------------------------------------------
// 3. Same book with limit 20: single macrozone, price 30, transit 15.
Outcome relaxed_case() {
    TestInstance inst = canonical_two_zone();
    inst.limits = {{0, 1, 20.0}, {1, 0, 20.0}};
    ClearingConfig config;
    const ClearingResult r = clear_hour(inst.offers, inst.topology, inst.limits, 1, config);

    if (r.macrozones != std::vector<std::vector<int>>{{0, 1}}) return fail("expected one macrozone");
    const std::vector<double> expected_x{20.0, 10.0, 5.0, 25.0};
    for (std::size_t i = 0; i < expected_x.size(); ++i) {
        if (!near_abs(r.accepted[i].quantity, expected_x[i], 1e-9))
            return fail("accepted[" + std::to_string(i) + "] = " + fmt(r.accepted[i].quantity));
    }
    for (int z = 0; z < 2; ++z) {
        if (!near_abs(r.prices_marginal[static_cast<std::size_t>(z)], 30.0, 1e-9))
            return fail("marginal price zone " + std::to_string(z));
        if (!near_abs(r.prices_dual[static_cast<std::size_t>(z)], 30.0, 1e-9))
            return fail("dual price zone " + std::to_string(z));
    }
    if (!near_abs(r.transits[0].flow, 15.0, 1e-9)) return fail("transit " + fmt(r.transits[0].flow));
    if (!near_abs(r.welfare, 1000.0, 1e-9)) return fail("welfare " + fmt(r.welfare));
    if (!r.saturated_edges.empty()) return fail("no edge should be saturated");
    return {};
}

// ---------------------------------------------------------------------------
// 4. KKT conditions hold on every solved LP across the whole corpus.
Outcome kkt_suite() {
    std::mt19937 rng(2002);
    std::vector<TestInstance> corpus;
    for (int i = 0; i < 200; ++i) corpus.push_back(mgp::test::random_single_zone(rng));
    for (int i = 0; i < 200; ++i) corpus.push_back(mgp::test::random_tree(rng, 2, 8));
    for (int i = 0; i < 50; ++i) corpus.push_back(mgp::test::sell_marginal_tree(rng));
    corpus.push_back(canonical_two_zone());
    {
        TestInstance relaxed = canonical_two_zone();
        relaxed.limits = {{0, 1, 20.0}, {1, 0, 20.0}};
        corpus.push_back(std::move(relaxed));
    }
    corpus.push_back(load_fixture_instance("golden22.topo", "golden_offers.csv", "golden_limits.csv", 9));
    corpus.push_back(load_fixture_instance("golden22.topo", "bsp_offers.csv", "bsp_limits.csv", 9));

    ClearingConfig config;
    int solved = 0;
    for (std::size_t k = 0; k < corpus.size(); ++k) {
        const TestInstance& inst = corpus[k];
        ClearingTrace trace;
        clear_hour(inst.offers, inst.topology, inst.limits, inst.hour, config, &trace);
        for (std::size_t l = 0; l < trace.lps.size(); ++l) {
            const LinearProgram& lp = trace.lps[l];
            const KktReport report = verify_kkt(lp, trace.solutions[l]);
            ++solved;
            if (!report.ok()) {
                return fail("instance " + std::to_string(k) + ": " + report.violations.front());
            }
            const double b_max = lp.rows() > 0 ? lp.b.cwiseAbs().maxCoeff() : 0.0;
            if (report.max_row_violation > 1e-6 || report.max_bound_violation > 1e-9 ||
                report.max_dual_violation > 1e-9 ||
                report.max_comp_slack > 1e-6 * (1.0 + b_max) ||
                report.duality_gap > 1e-6 * (1.0 + std::abs(trace.solutions[l].objective))) {
                return fail("instance " + std::to_string(k) + ": tolerances exceeded");
            }
        }
    }
    return {true, std::to_string(solved) + " LPs verified"};
}

// ---------------------------------------------------------------------------
// 5. Dual and marginal prices agree on books whose marginal offers are sells.
Outcome dual_marginal_agreement() {
    std::mt19937 rng(3003);
    ClearingConfig config;
    int splits = 0;
    for (int round = 0; round < 200; ++round) {
        const TestInstance inst = mgp::test::sell_marginal_tree(rng);
        const ClearingResult r = clear_hour(inst.offers, inst.topology, inst.limits, 1, config);
        if (r.macrozones.size() > 1) ++splits;
        for (int z = 0; z < inst.topology.zone_count(); ++z) {
            const auto zi = static_cast<std::size_t>(z);
            if (r.price_warning[zi]) {
                return fail("round " + std::to_string(round) + ": zone priced without accepted sells");
            }
            const double marginal = r.prices_marginal[zi];
            const double dual = r.prices_dual[zi];
            if (std::abs(marginal - dual) > 1e-6 * (1.0 + std::abs(marginal))) {
                return fail("round " + std::to_string(round) + " zone " + std::to_string(z) + ": " +
                            fmt(marginal) + " vs " + fmt(dual));
            }
        }
    }
    return {true, "200 instances, " + std::to_string(splits) + " with market splitting"};
}

// ---------------------------------------------------------------------------
// 6. LP welfare dominates exhaustive enumeration on a 0.25-quantity grid.
Outcome brute_force_dominance() {
    std::mt19937 rng(4004);
    ClearingConfig config;
    for (int round = 0; round < 100; ++round) {
        const TestInstance inst = mgp::test::grid_instance(rng);
        const double best = mgp::test::best_grid_welfare(inst);
        const ClearingResult r = clear_hour(inst.offers, inst.topology, inst.limits, 1, config);
        if (r.welfare < best - 1e-6) {
            return fail("round " + std::to_string(round) + ": LP " + fmt(r.welfare) +
                        " < enumerated " + fmt(best));
        }
    }
    return {true, "100 instances enumerated"};
}

// ---------------------------------------------------------------------------
// 7. Regularization keeps totals/transits and produces prefix acceptances.
Outcome regularization_invariants() {
    std::mt19937 rng(5005);
    std::vector<TestInstance> corpus;
    for (int i = 0; i < 100; ++i) corpus.push_back(mgp::test::random_single_zone(rng));
    for (int i = 0; i < 100; ++i) corpus.push_back(mgp::test::random_tree(rng, 2, 8));
    for (int i = 0; i < 50; ++i) corpus.push_back(mgp::test::sell_marginal_tree(rng));
    corpus.push_back(canonical_two_zone());
    corpus.push_back(load_fixture_instance("golden22.topo", "golden_offers.csv", "golden_limits.csv", 9));

    ClearingConfig config;
    for (std::size_t k = 0; k < corpus.size(); ++k) {
        const TestInstance& inst = corpus[k];
        ClearingTrace trace;
        const ClearingResult result =
            clear_hour(inst.offers, inst.topology, inst.limits, inst.hour, config, &trace);
        const std::string tag = "instance " + std::to_string(k);

        const auto& offers = trace.hour_offers;
        const auto& macrozones = result.macrozones;

        // membership lookup
        std::vector<int> zone_group(static_cast<std::size_t>(inst.topology.zone_count()), -1);
        for (std::size_t m = 0; m < macrozones.size(); ++m) {
            for (int z : macrozones[m]) zone_group[static_cast<std::size_t>(z)] = static_cast<int>(m);
        }

        for (std::size_t m = 0; m < macrozones.size(); ++m) {
            for (Purpose side : {Purpose::Sell, Purpose::Buy}) {
                std::vector<int> members;
                double before = 0.0;
                double after = 0.0;
                for (std::size_t i = 0; i < offers.size(); ++i) {
                    if (offers[i].purpose != side) continue;
                    if (zone_group[static_cast<std::size_t>(offers[i].zone)] != static_cast<int>(m))
                        continue;
                    members.push_back(static_cast<int>(i));
                    before += trace.x_snapped[static_cast<Eigen::Index>(i)];
                    after += trace.x_regularized[static_cast<Eigen::Index>(i)];
                }
                if (!near_abs(before, after, 1e-9 * (1.0 + std::abs(before)))) {
                    return fail(tag + ": side total changed " + fmt(before) + " -> " + fmt(after));
                }
                std::sort(members.begin(), members.end(), [&](int a, int b) {
                    const auto& oa = offers[static_cast<std::size_t>(a)];
                    const auto& ob = offers[static_cast<std::size_t>(b)];
                    if (oa.price != ob.price)
                        return side == Purpose::Sell ? oa.price < ob.price : oa.price > ob.price;
                    return oa.id < ob.id;
                });
                // prefix property: full, full, ..., one partial, zeros
                bool boundary_seen = false;
                for (int i : members) {
                    const double x = trace.x_regularized[static_cast<Eigen::Index>(i)];
                    const double q = offers[static_cast<std::size_t>(i)].quantity;
                    if (boundary_seen && x > 1e-9) {
                        return fail(tag + ": acceptance after the partial offer");
                    }
                    if (x < q - 1e-9) boundary_seen = true;
                }
            }
        }

        // transits computed from the snapped and regularized vectors agree
        Eigen::VectorXd nets_before = Eigen::VectorXd::Zero(inst.topology.zone_count());
        Eigen::VectorXd nets_after = Eigen::VectorXd::Zero(inst.topology.zone_count());
        for (std::size_t i = 0; i < offers.size(); ++i) {
            const double sign = offers[i].purpose == Purpose::Sell ? 1.0 : -1.0;
            nets_before[offers[i].zone] += sign * trace.x_snapped[static_cast<Eigen::Index>(i)];
            nets_after[offers[i].zone] += sign * trace.x_regularized[static_cast<Eigen::Index>(i)];
        }
        for (auto [a, b] : trace.opened.edges()) {
            const EdgeCut cut = edge_cut(trace.opened, a, b);
            double flow_before = 0.0;
            double flow_after = 0.0;
            for (int z = 0; z < inst.topology.zone_count(); ++z) {
                if (!cut.side_membership[static_cast<std::size_t>(z)]) continue;
                flow_before += nets_before[z];
                flow_after += nets_after[z];
            }
            if (!near_abs(flow_before, flow_after, 1e-9)) {
                return fail(tag + ": transit changed on edge " + std::to_string(a) + "-" +
                            std::to_string(b) + " by " + fmt(flow_after - flow_before));
            }
        }
    }
    return {true, std::to_string(corpus.size()) + " instances checked"};
}

// ---------------------------------------------------------------------------
// 8. Performance: 22 zones, 1000 offers/hour, 24 hours.
Outcome performance() {
    const NetworkTopology topo = load_topology_file(mgp::test::fixture_path("golden22.topo"));
    std::mt19937 rng(6006);
    std::uniform_real_distribution<double> price(0.0, 300.0);
    std::uniform_real_distribution<double> quantity(1.0, 400.0);
    std::uniform_int_distribution<int> zone(0, topo.zone_count() - 1);

    std::vector<Offer> offers;
    offers.reserve(24000);
    int id = 0;
    for (int hour = 1; hour <= 24; ++hour) {
        for (int z = 0; z < topo.zone_count(); ++z) {  // every zone active both ways
            offers.push_back({Purpose::Sell, hour, z, quantity(rng), price(rng), id++});
            offers.push_back({Purpose::Buy, hour, z, quantity(rng), price(rng), id++});
        }
        for (int k = topo.zone_count() * 2; k < 1000; ++k) {
            const Purpose purpose = (k % 2) == 0 ? Purpose::Sell : Purpose::Buy;
            offers.push_back({purpose, hour, zone(rng), quantity(rng), price(rng), id++});
        }
    }
    std::vector<TransitLimit> limits;
    for (auto [a, b] : topo.edges()) {
        limits.push_back({a, b, 500.0});
        limits.push_back({b, a, 500.0});
    }

    ClearingConfig config;
    double slowest = 0.0;
    const auto total_start = std::chrono::steady_clock::now();
    for (int hour = 1; hour <= 24; ++hour) {
        const auto start = std::chrono::steady_clock::now();
        const ClearingResult r = clear_hour(offers, topo, limits, hour, config);
        const double ms = elapsed_ms(start);
        slowest = std::max(slowest, ms);
        if (ms >= 250.0) {
            return fail("hour " + std::to_string(hour) + " took " + fmt(ms) + " ms (budget 250)");
        }
        if (r.welfare <= 0.0) return fail("degenerate synthetic book");
    }
    const double total = elapsed_ms(total_start);
    if (total >= 6000.0) return fail("24 hours took " + fmt(total) + " ms (budget 6000)");
    return {true, "slowest hour " + fmt(slowest) + " ms, day " + fmt(total) + " ms"};
}

// ---------------------------------------------------------------------------
// 9. Committed golden results: three-way split and the BSP policy, byte-exact.
Outcome golden_fixture() {
    const fs::path dir = fs::temp_directory_path() / "mgpclear_acceptance";
    fs::create_directories(dir);
    const std::string out = (dir / "golden_hour9.json").string();
    const std::string cmd = std::string(MGPCLEAR_BIN) + " clear --topology " +
                            mgp::test::fixture_path("golden22.topo") + " --offers " +
                            mgp::test::fixture_path("golden_offers.csv") + " --limits " +
                            mgp::test::fixture_path("golden_limits.csv") + " --hours 9 --out " + out;
    const auto run = mgp::test::run_command(cmd);
    if (run.exit_code != 0) return fail("clear exited " + std::to_string(run.exit_code));

    const std::string produced = mgp::test::read_file(out);
    std::string committed;
    try {
        committed = mgp::test::read_file(mgp::test::fixture_path("golden_hour9.json"));
    } catch (const std::exception&) {
        return fail("golden_hour9.json fixture is missing");
    }
    if (produced != committed) return fail("output differs from the committed golden file");

    const nlohmann::json result = nlohmann::json::parse(produced)[0];
    const NetworkTopology topo = load_topology_file(mgp::test::fixture_path("golden22.topo"));
    if (result["macrozones"].size() != 3) return fail("expected three macrozones");
    const std::vector<std::pair<std::string, double>> targets{
        {"NORD", 64.37}, {"CSUD", 64.37}, {"SUD", 36.33}, {"GREC", 36.33}, {"SICI", 55.0},
        {"MALT", 55.0}};
    for (const auto& [code, price] : targets) {
        const double got = result["prices"][code]["marginal"].get<double>();
        if (!near_abs(got, price, 1e-9)) return fail(code + " priced " + fmt(got));
        const double dual = result["prices"][code]["dual"].get<double>();
        if (!near_abs(dual, price, 1e-6)) return fail(code + " dual priced " + fmt(dual));
    }

    // BSP policy: its own macrozone prices at exactly 0
    const std::string bsp_out = (dir / "bsp_hour9.json").string();
    const std::string bsp_cmd = std::string(MGPCLEAR_BIN) + " clear --topology " +
                                mgp::test::fixture_path("golden22.topo") + " --offers " +
                                mgp::test::fixture_path("bsp_offers.csv") + " --limits " +
                                mgp::test::fixture_path("bsp_limits.csv") + " --hours 9 --out " +
                                bsp_out;
    const auto bsp_run = mgp::test::run_command(bsp_cmd);
    if (bsp_run.exit_code != 0) return fail("bsp clear exited " + std::to_string(bsp_run.exit_code));
    const nlohmann::json bsp = nlohmann::json::parse(mgp::test::read_file(bsp_out))[0];
    if (bsp["prices"]["BSP"]["marginal"].get<double>() != 0.0) {
        return fail("BSP marginal price is not 0");
    }
    if (!near_abs(bsp["prices"]["BSP"]["dual"].get<double>(), 0.0, 1e-9)) {
        return fail("BSP dual price is not 0");
    }
    return {};
}

// ---------------------------------------------------------------------------
// 10. Determinism and price-scaling invariance.
Outcome determinism_and_scaling() {
    // byte-identical repeated runs of the full CLI pipeline
    const fs::path dir = fs::temp_directory_path() / "mgpclear_acceptance";
    fs::create_directories(dir);
    const std::string base = std::string(MGPCLEAR_BIN) + " clear --topology " +
                             mgp::test::fixture_path("golden22.topo") + " --offers " +
                             mgp::test::fixture_path("golden_offers.csv") + " --limits " +
                             mgp::test::fixture_path("golden_limits.csv") + " --hours 9 --out ";
    const std::string out_a = (dir / "det_a.json").string();
    const std::string out_b = (dir / "det_b.json").string();
    if (mgp::test::run_command(base + out_a).exit_code != 0) return fail("first run failed");
    if (mgp::test::run_command(base + out_b).exit_code != 0) return fail("second run failed");
    if (mgp::test::read_file(out_a) != mgp::test::read_file(out_b)) {
        return fail("repeated runs are not byte-identical");
    }

    // scaling all prices by 7.3 (and the foreign-zone cap with them) keeps
    // the partition and acceptances, and scales prices linearly
    const double factor = 7.3;
    std::mt19937 rng(7007);
    std::vector<TestInstance> corpus;
    corpus.push_back(canonical_two_zone());
    corpus.push_back(load_fixture_instance("golden22.topo", "golden_offers.csv", "golden_limits.csv", 9));
    for (int i = 0; i < 20; ++i) corpus.push_back(mgp::test::random_tree(rng, 2, 6));
    for (int i = 0; i < 10; ++i) corpus.push_back(mgp::test::sell_marginal_tree(rng));

    ClearingConfig config;
    ClearingConfig scaled_config;
    scaled_config.foreign_buy_price_cap *= factor;

    for (std::size_t k = 0; k < corpus.size(); ++k) {
        const TestInstance& inst = corpus[k];
        const std::string tag = "instance " + std::to_string(k);
        const ClearingResult plain =
            clear_hour(inst.offers, inst.topology, inst.limits, inst.hour, config);
        const ClearingResult scaled =
            clear_hour(mgp::test::scale_prices(inst.offers, factor), inst.topology, inst.limits,
                       inst.hour, scaled_config);

        if (plain.macrozones != scaled.macrozones) return fail(tag + ": partition changed");
        if (plain.saturated_edges != scaled.saturated_edges) {
            return fail(tag + ": saturated set changed");
        }
        for (std::size_t i = 0; i < plain.accepted.size(); ++i) {
            if (!near_abs(plain.accepted[i].quantity, scaled.accepted[i].quantity,
                          1e-9 * (1.0 + plain.accepted[i].quantity))) {
                return fail(tag + ": acceptance changed on offer " + std::to_string(i));
            }
        }
        for (int z = 0; z < inst.topology.zone_count(); ++z) {
            const auto zi = static_cast<std::size_t>(z);
            if (!near_rel(scaled.prices_marginal[zi], factor * plain.prices_marginal[zi], 1e-9)) {
                return fail(tag + ": marginal price scaling broke in zone " + std::to_string(z));
            }
            if (!near_rel(scaled.prices_dual[zi], factor * plain.prices_dual[zi], 1e-9)) {
                return fail(tag + ": dual price scaling broke in zone " + std::to_string(z));
            }
        }
        if (!near_rel(scaled.welfare, factor * plain.welfare, 1e-9)) {
            return fail(tag + ": welfare scaling broke");
        }
    }
    return {};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"oracle-single-zone", oracle_single_zone},
        {"canonical-two-zone", canonical_case},
        {"relaxed-two-zone", relaxed_case},
        {"kkt-suite", kkt_suite},
        {"dual-marginal-agreement", dual_marginal_agreement},
        {"brute-force-dominance", brute_force_dominance},
        {"regularization-invariants", regularization_invariants},
        {"performance-22-zones", performance},
        {"golden-fixtures", golden_fixture},
        {"determinism-and-scaling", determinism_and_scaling},
    };

    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome outcome;
        try {
            outcome = run();
        } catch (const std::exception& e) {
            outcome = fail(std::string("exception: ") + e.what());
        }
        if (outcome.pass) {
            std::cout << "PASS  " << name;
            if (!outcome.detail.empty()) std::cout << " (" << outcome.detail << ")";
            std::cout << '\n';
        } else {
            ++failures;
            std::cout << "FAIL  " << name << ": " << outcome.detail << '\n';
        }
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
              << " criteria passed" << std::endl;
    return failures;
}

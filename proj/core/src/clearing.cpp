#include "mgp/clearing.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "mgp/errors.hpp"

namespace mgp {

namespace {

std::string hour_prefix(int hour) { return "hour " + std::to_string(hour) + ": "; }

std::vector<bool> membership_of(const std::vector<int>& zones, int zone_count) {
    std::vector<bool> member(static_cast<std::size_t>(zone_count), false);
    for (int z : zones) member[static_cast<std::size_t>(z)] = true;
    return member;
}

// writes the failing LP next to the system temp dir and returns the path
std::string dump_failed_lp(const LinearProgram& lp, int hour) {
    auto path = std::filesystem::temp_directory_path() /
                ("mgpclear_lp_dump_hour" + std::to_string(hour) + ".txt");
    std::ofstream out(path);
    if (out) dump_lp(out, lp);
    return path.string();
}

}  // namespace

std::vector<Offer> apply_foreign_zone_policy(std::vector<Offer> offers, const NetworkTopology& topology,
                                             const ClearingConfig& config) {
    std::vector<bool> foreign(static_cast<std::size_t>(topology.zone_count()), false);
    for (const auto& code : config.foreign_zones) {
        int z = topology.find_zone(code);
        if (z >= 0) foreign[static_cast<std::size_t>(z)] = true;
    }
    for (auto& offer : offers) {
        if (!foreign[static_cast<std::size_t>(offer.zone)]) continue;
        offer.price = offer.purpose == Purpose::Sell ? 0.0 : config.foreign_buy_price_cap;
    }
    return offers;
}

Eigen::VectorXd snap_small_quantities(Eigen::VectorXd x, double threshold) {
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x[i] <= threshold) x[i] = 0.0;
    return x;
}

std::vector<std::vector<int>> detect_macrozones(const NetworkTopology& topology, const Eigen::VectorXd& mu,
                                                std::span<const DirectedEdge> row_tags,
                                                double saturation_dual_tol) {
    if (mu.size() != static_cast<Eigen::Index>(row_tags.size()))
        throw internal_error("detect_macrozones: mu and row_tags disagree in length");
    std::vector<EdgePair> saturated;
    for (Eigen::Index r = 0; r < mu.size(); ++r) {
        if (std::abs(mu[r]) > saturation_dual_tol) {
            EdgePair e = make_edge(row_tags[static_cast<std::size_t>(r)].from,
                                   row_tags[static_cast<std::size_t>(r)].to);
            if (std::find(saturated.begin(), saturated.end(), e) == saturated.end()) saturated.push_back(e);
        }
    }
    return connected_components(topology, saturated);
}

Eigen::VectorXd regularize_acceptances(const Eigen::VectorXd& x, std::span<const Offer> offers,
                                       const std::vector<std::vector<int>>& macrozones) {
    if (x.size() != static_cast<Eigen::Index>(offers.size()))
        throw internal_error("regularize_acceptances: x and offers disagree in length");
    int zone_count = 0;
    for (const auto& mz : macrozones)
        for (int z : mz) zone_count = std::max(zone_count, z + 1);

    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    for (const auto& mz : macrozones) {
        auto member = membership_of(mz, zone_count);
        for (Purpose side : {Purpose::Sell, Purpose::Buy}) {
            std::vector<int> positions;
            double total = 0.0;
            for (int k = 0; k < static_cast<int>(offers.size()); ++k) {
                const Offer& o = offers[static_cast<std::size_t>(k)];
                if (o.purpose != side || !member[static_cast<std::size_t>(o.zone)]) continue;
                positions.push_back(k);
                total += x[k];
            }
            const bool ascending = side == Purpose::Sell;
            std::sort(positions.begin(), positions.end(), [&](int a, int b) {
                const Offer& oa = offers[static_cast<std::size_t>(a)];
                const Offer& ob = offers[static_cast<std::size_t>(b)];
                if (oa.price != ob.price) return ascending ? oa.price < ob.price : oa.price > ob.price;
                return oa.id < ob.id;
            });
            double remaining = total;
            for (int k : positions) {
                double take = std::min(offers[static_cast<std::size_t>(k)].quantity,
                                       std::max(remaining, 0.0));
                out[k] = take;
                remaining -= take;
            }
            if (remaining > 1e-6)
                throw internal_error("regularize_acceptances: accepted volume exceeds offered volume by " +
                                     std::to_string(remaining));
        }
    }
    return out;
}

ZonalPriceSet compute_zonal_prices_marginal(const Eigen::VectorXd& x_regularized,
                                            std::span<const Offer> offers,
                                            const std::vector<std::vector<int>>& macrozones,
                                            int zone_count) {
    if (x_regularized.size() != static_cast<Eigen::Index>(offers.size()))
        throw internal_error("compute_zonal_prices_marginal: x and offers disagree in length");
    ZonalPriceSet prices;
    prices.values.assign(static_cast<std::size_t>(zone_count), 0.0);
    prices.warning.assign(static_cast<std::size_t>(zone_count), false);
    // Redistribution arithmetic can leave a ~1e-12 sliver on the offer just
    // past the true margin; quantities that small must not set the price.
    constexpr double accepted_eps = 1e-9;
    for (const auto& mz : macrozones) {
        auto member = membership_of(mz, zone_count);
        double best = 0.0;
        bool any_sell = false;
        for (int k = 0; k < static_cast<int>(offers.size()); ++k) {
            const Offer& o = offers[static_cast<std::size_t>(k)];
            if (o.purpose != Purpose::Sell || x_regularized[k] <= accepted_eps) continue;
            if (o.zone >= zone_count || !member[static_cast<std::size_t>(o.zone)]) continue;
            if (!any_sell || o.price > best) best = o.price;
            any_sell = true;
        }
        for (int z : mz) {
            prices.values[static_cast<std::size_t>(z)] = any_sell ? best : 0.0;
            prices.warning[static_cast<std::size_t>(z)] = !any_sell;
        }
    }
    return prices;
}

std::vector<double> compute_zonal_prices_dual(double lambda, const Eigen::VectorXd& mu,
                                              std::span<const EdgeCut> row_cuts, int zone_count) {
    if (mu.size() != static_cast<Eigen::Index>(row_cuts.size()))
        throw internal_error("compute_zonal_prices_dual: mu and cuts disagree in length");
    std::vector<double> prices(static_cast<std::size_t>(zone_count), lambda);
    for (Eigen::Index r = 0; r < mu.size(); ++r) {
        const auto& side = row_cuts[static_cast<std::size_t>(r)].side_membership;
        for (int z = 0; z < zone_count && z < static_cast<int>(side.size()); ++z)
            if (side[static_cast<std::size_t>(z)]) prices[static_cast<std::size_t>(z)] -= mu[r];
    }
    return prices;
}

std::vector<DirectedFlow> compute_transits(const Eigen::MatrixXd& A, const Eigen::VectorXd& x,
                                           std::span<const DirectedEdge> row_tags) {
    if (A.rows() != static_cast<Eigen::Index>(row_tags.size()) || A.cols() != x.size())
        throw internal_error("compute_transits: dimension mismatch");
    std::vector<DirectedFlow> flows;
    flows.reserve(row_tags.size());
    Eigen::VectorXd t = A * x;
    for (Eigen::Index r = 0; r < t.size(); ++r) {
        const auto& tag = row_tags[static_cast<std::size_t>(r)];
        flows.push_back({tag.from, tag.to, t[r]});
    }
    return flows;
}

std::vector<DirectedFlow> compute_transits_by_balance(const NetworkTopology& topology,
                                                      const Eigen::VectorXd& net_injection,
                                                      std::optional<EdgePair> opened_edge) {
    const int n = topology.zone_count();
    if (net_injection.size() != n)
        throw internal_error("compute_transits_by_balance: net injection length mismatch");
    const auto& edges = topology.edges();
    std::optional<EdgePair> opened;
    if (opened_edge) {
        opened = make_edge(opened_edge->first, opened_edge->second);
        if (std::find(edges.begin(), edges.end(), *opened) == edges.end())
            throw input_error("compute_transits_by_balance: opened edge is not a topology edge");
    }

    // peel leaves of the (forest) graph minus the opened edge
    std::vector<double> net(net_injection.data(), net_injection.data() + n);
    std::vector<double> flow(edges.size(), 0.0);  // along canonical orientation
    std::vector<bool> done(edges.size(), false);
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (opened && edges[e] == *opened) {
            done[e] = true;  // opened edge carries no flow
            continue;
        }
        ++degree[static_cast<std::size_t>(edges[e].first)];
        ++degree[static_cast<std::size_t>(edges[e].second)];
    }

    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (int z = 0; z < n; ++z) {
            if (degree[static_cast<std::size_t>(z)] != 1) continue;
            // unique remaining edge at z
            for (std::size_t e = 0; e < edges.size(); ++e) {
                if (done[e]) continue;
                auto [a, b] = edges[e];
                if (a != z && b != z) continue;
                int other = a == z ? b : a;
                flow[e] = (a == z) ? net[static_cast<std::size_t>(z)] : -net[static_cast<std::size_t>(z)];
                net[static_cast<std::size_t>(other)] += net[static_cast<std::size_t>(z)];
                net[static_cast<std::size_t>(z)] = 0.0;
                done[e] = true;
                --degree[static_cast<std::size_t>(z)];
                --degree[static_cast<std::size_t>(other)];
                progressed = true;
                break;
            }
        }
    }

    for (std::size_t e = 0; e < edges.size(); ++e)
        if (!done[e])
            throw internal_error("compute_transits_by_balance: graph minus the opened edge is not a forest");
    for (int z = 0; z < n; ++z) {
        if (std::abs(net[static_cast<std::size_t>(z)]) > 1e-6)
            throw internal_error("compute_transits_by_balance: zone " + topology.zone(z).code +
                                 " keeps an energy imbalance of " +
                                 std::to_string(net[static_cast<std::size_t>(z)]));
    }

    std::vector<DirectedFlow> result;
    result.reserve(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e)
        result.push_back({edges[e].first, edges[e].second, flow[e]});
    return result;
}

ClearingResult clear_hour(std::span<const Offer> offers, const NetworkTopology& topology,
                          std::span<const TransitLimit> limits, int hour, const ClearingConfig& config,
                          ClearingTrace* trace) {
    if (hour < 1 || hour > 24) throw input_error("hour must be in 1..24, got " + std::to_string(hour));
    if (config.snap_threshold < 0.0 || config.saturation_dual_tol < 0.0 ||
        config.foreign_buy_price_cap < 0.0)
        throw input_error("clearing config values must be >= 0");

    const int n_zones = topology.zone_count();
    auto hour_offers_raw = filter_by_hour(offers, hour);
    if (hour_offers_raw.empty()) throw input_error(hour_prefix(hour) + "empty hour (no offers)");
    bool any_sell = false;
    bool any_buy = false;
    for (const auto& o : hour_offers_raw) {
        if (o.quantity > 0.0) (o.purpose == Purpose::Sell ? any_sell : any_buy) = true;
    }
    if (!any_sell) throw input_error(hour_prefix(hour) + "empty hour (no sell offers)");
    if (!any_buy) throw input_error(hour_prefix(hour) + "empty hour (no buy offers)");

    auto hour_offers = apply_foreign_zone_policy(hour_offers_raw, topology, config);
    const int n_hour = static_cast<int>(hour_offers.size());

    // ring opening: a single configured cycle is opened, anything else is fatal
    NetworkTopology opened = topology;
    bool ring_opened = false;
    EdgePair opened_edge{-1, -1};
    if (!detect_cycles(topology).empty()) {
        if (!config.ring_open_edge)
            throw topology_error(hour_prefix(hour) +
                                 "topology has a cycle and no ring-open edge is configured");
        const auto& [code_a, code_b] = *config.ring_open_edge;
        int a = topology.find_zone(code_a);
        int b = topology.find_zone(code_b);
        if (a < 0 || b < 0 || !topology.has_edge(a, b))
            throw topology_error(hour_prefix(hour) + "configured ring-open edge " + code_a + "-" + code_b +
                                 " is not a topology edge");
        opened_edge = make_edge(a, b);
        opened = topology.without_edge(opened_edge);
        if (!detect_cycles(opened).empty())
            throw topology_error(hour_prefix(hour) + "unsupported cycle: removing " + code_a + "-" +
                                 code_b + " leaves the network cyclic");
        ring_opened = true;
    }

    // limits on the opened edge vanish together with the edge
    std::vector<TransitLimit> usable_limits;
    for (const auto& lim : limits) {
        if (!topology.has_edge(lim.from, lim.to))
            throw input_error(hour_prefix(hour) + "transit limit " + topology.zone(lim.from).code + "->" +
                              topology.zone(lim.to).code + " does not match a topology edge");
        if (ring_opened && make_edge(lim.from, lim.to) == opened_edge) continue;
        usable_limits.push_back(lim);
    }

    // one LP per connected component that has offers
    auto components = connected_components(opened, {});
    Eigen::VectorXd x_solved = Eigen::VectorXd::Zero(n_hour);
    std::vector<LinearProgram> lps;
    std::vector<LpSolution> solutions;
    std::vector<std::vector<int>> lp_positions;
    std::vector<std::vector<int>> lp_component;  // zones of each LP's component

    for (const auto& comp : components) {
        auto member = membership_of(comp, n_zones);
        std::vector<int> positions;
        std::vector<Offer> comp_offers;
        for (int k = 0; k < n_hour; ++k) {
            if (member[static_cast<std::size_t>(hour_offers[static_cast<std::size_t>(k)].zone)]) {
                positions.push_back(k);
                comp_offers.push_back(hour_offers[static_cast<std::size_t>(k)]);
            }
        }
        if (comp_offers.empty()) continue;
        std::vector<TransitLimit> comp_limits;
        for (const auto& lim : usable_limits)
            if (member[static_cast<std::size_t>(lim.from)] && member[static_cast<std::size_t>(lim.to)])
                comp_limits.push_back(lim);

        LinearProgram lp = build_clearing_lp(comp_offers, opened, comp_limits);
        LpSolution sol = solve_lp(lp);
        if (sol.status != LpStatus::Optimal) {
            std::string dump_path = dump_failed_lp(lp, hour);
            throw internal_error(hour_prefix(hour) + "solver returned " +
                                 (sol.status == LpStatus::Infeasible ? "Infeasible" : "Unbounded") +
                                 " on a bounded balanced instance; LP dump at " + dump_path);
        }
        for (std::size_t i = 0; i < positions.size(); ++i)
            x_solved[positions[i]] = sol.x[static_cast<Eigen::Index>(i)];
        lps.push_back(std::move(lp));
        solutions.push_back(std::move(sol));
        lp_positions.push_back(std::move(positions));
        lp_component.push_back(comp);
    }

    Eigen::VectorXd x_snapped = snap_small_quantities(x_solved, config.snap_threshold);

    // concatenated duals and tags across component LPs
    std::vector<DirectedEdge> all_tags;
    std::vector<double> all_mu;
    for (std::size_t l = 0; l < lps.size(); ++l) {
        for (Eigen::Index r = 0; r < lps[l].rows(); ++r) {
            all_tags.push_back(lps[l].row_tags[static_cast<std::size_t>(r)]);
            all_mu.push_back(solutions[l].mu[r]);
        }
    }
    Eigen::VectorXd mu_all = Eigen::Map<Eigen::VectorXd>(all_mu.data(), static_cast<Eigen::Index>(all_mu.size()));

    auto macrozones = detect_macrozones(opened, mu_all, all_tags, config.saturation_dual_tol);
    Eigen::VectorXd x_regularized = regularize_acceptances(x_snapped, hour_offers, macrozones);

    ClearingResult result;
    result.hour = hour;
    result.macrozones = macrozones;

    auto marginal = compute_zonal_prices_marginal(x_regularized, hour_offers, macrozones, n_zones);
    result.prices_marginal = marginal.values;
    result.price_warning = marginal.warning;

    result.prices_dual.assign(static_cast<std::size_t>(n_zones), 0.0);
    for (std::size_t l = 0; l < lps.size(); ++l) {
        std::vector<EdgeCut> cuts;
        cuts.reserve(lps[l].row_tags.size());
        for (const auto& tag : lps[l].row_tags) cuts.push_back(edge_cut(opened, tag.from, tag.to));
        auto dual = compute_zonal_prices_dual(solutions[l].lambda, solutions[l].mu, cuts, n_zones);
        for (int z : lp_component[l]) result.prices_dual[static_cast<std::size_t>(z)] = dual[static_cast<std::size_t>(z)];
    }

    // per-zone net injections of the regularized acceptance
    Eigen::VectorXd nets = Eigen::VectorXd::Zero(n_zones);
    for (int k = 0; k < n_hour; ++k) {
        const Offer& o = hour_offers[static_cast<std::size_t>(k)];
        nets[o.zone] += o.purpose == Purpose::Sell ? x_regularized[k] : -x_regularized[k];
    }

    std::vector<std::pair<EdgePair, double>> edge_flows;  // canonical orientation
    if (ring_opened) {
        for (const auto& f : compute_transits_by_balance(topology, nets, opened_edge))
            edge_flows.push_back({make_edge(f.from, f.to), f.flow});
    } else {
        // declared rows first, the cut/balance identity fills the gaps
        std::vector<std::pair<DirectedEdge, double>> row_flows;
        for (std::size_t l = 0; l < lps.size(); ++l) {
            Eigen::VectorXd x_comp(static_cast<Eigen::Index>(lp_positions[l].size()));
            for (std::size_t i = 0; i < lp_positions[l].size(); ++i)
                x_comp[static_cast<Eigen::Index>(i)] = x_regularized[lp_positions[l][i]];
            for (const auto& f : compute_transits(lps[l].A, x_comp, lps[l].row_tags))
                row_flows.push_back({{f.from, f.to}, f.flow});
        }
        for (auto [a, b] : topology.edges()) {
            double value = 0.0;
            bool found = false;
            for (const auto& [tag, f] : row_flows) {
                if (tag.from == a && tag.to == b) {
                    value = f;
                    found = true;
                    break;
                }
                if (tag.from == b && tag.to == a) {
                    value = -f;
                    found = true;
                    break;
                }
            }
            if (!found) {
                EdgeCut cut = edge_cut(opened, a, b);
                for (int z = 0; z < n_zones; ++z)
                    if (cut.side_membership[static_cast<std::size_t>(z)]) value += nets[z];
            }
            edge_flows.push_back({EdgePair{a, b}, value});
        }
    }
    for (auto [a, b] : topology.edges()) {
        for (const auto& [edge, f] : edge_flows) {
            if (edge == EdgePair{a, b}) {
                // + 0.0 turns the -0.0 produced by negating a zero flow into +0.0
                result.transits.push_back({a, b, f + 0.0});
                result.transits.push_back({b, a, -f + 0.0});
                break;
            }
        }
    }

    result.welfare = 0.0;
    for (const auto& sol : solutions) result.welfare -= sol.objective;

    std::vector<EdgePair> saturated;
    for (std::size_t r = 0; r < all_tags.size(); ++r) {
        if (std::abs(mu_all[static_cast<Eigen::Index>(r)]) > config.saturation_dual_tol) {
            EdgePair e = make_edge(all_tags[r].from, all_tags[r].to);
            if (std::find(saturated.begin(), saturated.end(), e) == saturated.end()) saturated.push_back(e);
        }
    }
    std::sort(saturated.begin(), saturated.end());
    result.saturated_edges = std::move(saturated);

    result.accepted.reserve(static_cast<std::size_t>(n_hour));
    for (int k = 0; k < n_hour; ++k)
        result.accepted.push_back({hour_offers[static_cast<std::size_t>(k)].id, x_regularized[k]});

    if (trace) {
        trace->hour_offers = std::move(hour_offers);
        trace->opened = std::move(opened);
        trace->ring_opened = ring_opened;
        trace->opened_edge = opened_edge;
        trace->lps = std::move(lps);
        trace->solutions = std::move(solutions);
        trace->lp_positions = std::move(lp_positions);
        trace->x_solved = std::move(x_solved);
        trace->x_snapped = std::move(x_snapped);
        trace->x_regularized = std::move(x_regularized);
    }
    return result;
}

}  // namespace mgp

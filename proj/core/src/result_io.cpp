#include "mgp/result_io.hpp"

#include <ostream>
#include <sstream>

#include "mgp/errors.hpp"
#include "mgp/numeric_text.hpp"

namespace mgp {

namespace {

using nlohmann::ordered_json;

bool want_marginal(ClearingConfig::PriceMode mode) {
    return mode != ClearingConfig::PriceMode::Dual;
}

bool want_dual(ClearingConfig::PriceMode mode) {
    return mode != ClearingConfig::PriceMode::Marginal;
}

/// Macrozone index per zone, or -1 for zones absent from every macrozone
/// (cannot happen for results produced by clear_hour, but keeps the writer
/// total).
std::vector<int> macrozone_index(const ClearingResult& result, int zone_count) {
    std::vector<int> index(static_cast<std::size_t>(zone_count), -1);
    for (std::size_t m = 0; m < result.macrozones.size(); ++m) {
        for (int z : result.macrozones[m]) {
            index[static_cast<std::size_t>(z)] = static_cast<int>(m);
        }
    }
    return index;
}

}  // namespace

ordered_json result_to_json(const ClearingResult& result, const NetworkTopology& topology,
                            ClearingConfig::PriceMode price_mode) {
    ordered_json j;
    j["hour"] = result.hour;
    j["welfare"] = result.welfare;

    ordered_json zones_of = ordered_json::array();
    for (const auto& group : result.macrozones) {
        ordered_json codes = ordered_json::array();
        for (int z : group) codes.push_back(topology.zone(z).code);
        zones_of.push_back(std::move(codes));
    }
    j["macrozones"] = std::move(zones_of);

    ordered_json prices = ordered_json::object();
    for (const Zone& zone : topology.zones()) {
        ordered_json entry = ordered_json::object();
        if (want_marginal(price_mode)) {
            entry["marginal"] = result.prices_marginal[static_cast<std::size_t>(zone.index)];
        }
        if (want_dual(price_mode)) {
            entry["dual"] = result.prices_dual[static_cast<std::size_t>(zone.index)];
        }
        prices[zone.code] = std::move(entry);
    }
    j["prices"] = std::move(prices);

    ordered_json transits = ordered_json::array();
    for (const DirectedFlow& t : result.transits) {
        ordered_json entry = ordered_json::object();
        entry["from"] = topology.zone(t.from).code;
        entry["to"] = topology.zone(t.to).code;
        entry["flow"] = t.flow;
        transits.push_back(std::move(entry));
    }
    j["transits"] = std::move(transits);

    ordered_json accepted = ordered_json::array();
    for (const AcceptedQuantity& a : result.accepted) {
        ordered_json entry = ordered_json::object();
        entry["offer_id"] = a.offer_id;
        entry["quantity"] = a.quantity;
        accepted.push_back(std::move(entry));
    }
    j["accepted"] = std::move(accepted);

    ordered_json saturated = ordered_json::array();
    for (const EdgePair& e : result.saturated_edges) {
        saturated.push_back(
            ordered_json::array({topology.zone(e.first).code, topology.zone(e.second).code}));
    }
    j["saturated_edges"] = std::move(saturated);
    return j;
}

std::string render_results_json(std::span<const ClearingResult> results, const NetworkTopology& topology,
                                ClearingConfig::PriceMode price_mode) {
    ordered_json array = ordered_json::array();
    for (const ClearingResult& result : results) {
        array.push_back(result_to_json(result, topology, price_mode));
    }
    return array.dump(2) + "\n";
}

void write_results_csv(std::ostream& out, std::span<const ClearingResult> results,
                       const NetworkTopology& topology, ClearingConfig::PriceMode price_mode) {
    out << "hour,zone,macrozone,price_marginal,price_dual\n";
    for (const ClearingResult& result : results) {
        const std::vector<int> index = macrozone_index(result, topology.zone_count());
        for (const Zone& zone : topology.zones()) {
            out << result.hour << ',' << zone.code << ',' << index[static_cast<std::size_t>(zone.index)]
                << ',';
            if (want_marginal(price_mode)) {
                out << format_double(result.prices_marginal[static_cast<std::size_t>(zone.index)]);
            }
            out << ',';
            if (want_dual(price_mode)) {
                out << format_double(result.prices_dual[static_cast<std::size_t>(zone.index)]);
            }
            out << '\n';
        }
    }
}

ClearingResult result_from_json(const nlohmann::json& j, const NetworkTopology& topology) {
    ClearingResult result;
    try {
        result.hour = j.at("hour").get<int>();
        result.welfare = j.at("welfare").get<double>();
        for (const auto& group : j.at("macrozones")) {
            std::vector<int> zones;
            for (const auto& code : group) {
                zones.push_back(topology.require_zone(code.get<std::string>()));
            }
            result.macrozones.push_back(std::move(zones));
        }
        const std::size_t n = static_cast<std::size_t>(topology.zone_count());
        result.prices_marginal.assign(n, 0.0);
        result.prices_dual.assign(n, 0.0);
        result.price_warning.assign(n, false);
        for (const auto& [code, entry] : j.at("prices").items()) {
            const std::size_t z = static_cast<std::size_t>(topology.require_zone(code));
            if (entry.contains("marginal")) result.prices_marginal[z] = entry["marginal"].get<double>();
            if (entry.contains("dual")) result.prices_dual[z] = entry["dual"].get<double>();
        }
        for (const auto& entry : j.at("transits")) {
            result.transits.push_back({topology.require_zone(entry.at("from").get<std::string>()),
                                       topology.require_zone(entry.at("to").get<std::string>()),
                                       entry.at("flow").get<double>()});
        }
        for (const auto& entry : j.at("accepted")) {
            result.accepted.push_back(
                {entry.at("offer_id").get<int>(), entry.at("quantity").get<double>()});
        }
        for (const auto& pair : j.at("saturated_edges")) {
            result.saturated_edges.push_back(make_edge(topology.require_zone(pair.at(0).get<std::string>()),
                                                       topology.require_zone(pair.at(1).get<std::string>())));
        }
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("result json: ") + e.what());
    }
    return result;
}

}  // namespace mgp

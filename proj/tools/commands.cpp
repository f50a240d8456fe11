#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "mgp/errors.hpp"
#include "mgp/market_data.hpp"
#include "mgp/network.hpp"
#include "mgp/numeric_text.hpp"
#include "mgp/result_io.hpp"

namespace mgp::tool {

namespace {

struct LoadedInputs {
    NetworkTopology topology;
    std::vector<Offer> offers;
    std::vector<TransitLimit> limits;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error(path + ": cannot open file");
    return in;
}

/// Loads and parses all three inputs, prefixing parser messages with the
/// offending file path.
LoadedInputs load_inputs(const RunRequest& request) {
    LoadedInputs inputs{load_topology_file(request.topology_path), {}, {}};
    {
        std::ifstream in = open_input(request.offers_path);
        try {
            inputs.offers = parse_offers(in, inputs.topology);
        } catch (const input_error& e) {
            throw input_error(request.offers_path + ": " + e.what());
        }
    }
    if (!request.limits_path.empty()) {
        std::ifstream in = open_input(request.limits_path);
        try {
            inputs.limits = parse_limits(in, inputs.topology);
        } catch (const input_error& e) {
            throw input_error(request.limits_path + ": " + e.what());
        }
    }
    return inputs;
}

std::vector<int> hours_to_run(const RunRequest& request, std::span<const Offer> offers) {
    if (!request.hours.empty()) return request.hours;
    std::set<int> present;
    for (const Offer& o : offers) present.insert(o.hour);
    if (present.empty()) throw input_error(request.offers_path + ": no offers, nothing to clear");
    return {present.begin(), present.end()};
}

std::string fixed_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", ms);
    return buf;
}

void summarize_hour(std::ostream& out, const ClearingResult& result, const ClearingConfig& config,
                    double wall_ms) {
    const std::vector<double>& prices = config.price_mode == ClearingConfig::PriceMode::Dual
                                            ? result.prices_dual
                                            : result.prices_marginal;
    const auto [lo, hi] = std::minmax_element(prices.begin(), prices.end());
    out << "hour " << result.hour << ": macrozones=" << result.macrozones.size() << " prices=["
        << format_double(*lo) << ", " << format_double(*hi) << "]";
    if (config.price_mode == ClearingConfig::PriceMode::Both) {
        double gap = 0.0;
        for (std::size_t z = 0; z < prices.size(); ++z) {
            if (result.price_warning[z]) continue;
            gap = std::max(gap, std::abs(result.prices_marginal[z] - result.prices_dual[z]));
        }
        out << " max_price_gap=" << format_double(gap);
    }
    out << " wall_ms=" << fixed_ms(wall_ms) << '\n';
}

void write_payload(const RunRequest& request, std::span<const ClearingResult> results,
                   const NetworkTopology& topology, std::ostream& fallback) {
    std::string rendered;
    if (request.output_format == Format::Json) {
        rendered = render_results_json(results, topology, request.config.price_mode);
    } else {
        std::ostringstream csv;
        write_results_csv(csv, results, topology, request.config.price_mode);
        rendered = csv.str();
    }
    if (request.output_path.empty()) {
        fallback << rendered;
        return;
    }
    std::ofstream out(request.output_path, std::ios::binary);
    if (!out) throw input_error(request.output_path + ": cannot open for writing");
    out << rendered;
    if (!out) throw input_error(request.output_path + ": write failed");
}

/// Shared error-to-exit-code mapping: 2 for anything wrong with the inputs,
/// 1 for engine bugs and everything unexpected.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace

std::vector<int> parse_hours_spec(const std::string& spec) {
    std::set<int> hours;
    std::stringstream tokens(spec);
    std::string token;
    auto parse_one = [&](const std::string& text) {
        std::optional<int> h = parse_int(text);
        if (!h || *h < 1 || *h > 24) {
            throw input_error("--hours: '" + text + "' is not an hour in 1..24");
        }
        return *h;
    };
    while (std::getline(tokens, token, ',')) {
        if (token.empty()) throw input_error("--hours: empty entry in '" + spec + "'");
        const std::size_t dash = token.find('-');
        if (dash == std::string::npos) {
            hours.insert(parse_one(token));
            continue;
        }
        const int first = parse_one(token.substr(0, dash));
        const int last = parse_one(token.substr(dash + 1));
        if (first > last) throw input_error("--hours: descending range '" + token + "'");
        for (int h = first; h <= last; ++h) hours.insert(h);
    }
    if (hours.empty()) throw input_error("--hours: no hours given");
    return {hours.begin(), hours.end()};
}

ClearingConfig::PriceMode parse_price_mode(const std::string& word) {
    if (word == "marginal") return ClearingConfig::PriceMode::Marginal;
    if (word == "dual") return ClearingConfig::PriceMode::Dual;
    if (word == "both") return ClearingConfig::PriceMode::Both;
    throw input_error("--price-mode: expected marginal, dual or both, got '" + word + "'");
}

std::optional<std::pair<std::string, std::string>> parse_ring_spec(const std::string& spec) {
    if (spec == "none") return std::nullopt;
    const std::size_t dash = spec.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == spec.size()) {
        throw input_error("--ring-open: expected CODE_A-CODE_B or none, got '" + spec + "'");
    }
    return std::make_pair(spec.substr(0, dash), spec.substr(dash + 1));
}

int cmd_clear(const RunRequest& request, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const LoadedInputs inputs = load_inputs(request);
        const std::vector<int> hours = hours_to_run(request, inputs.offers);

        // keep stdout parseable: summaries move to stderr when the payload
        // has nowhere else to go
        std::ostream& progress = request.output_path.empty() ? err : out;
        std::vector<ClearingResult> results;
        results.reserve(hours.size());
        for (int hour : hours) {
            const auto start = std::chrono::steady_clock::now();
            results.push_back(clear_hour(inputs.offers, inputs.topology, inputs.limits, hour,
                                         request.config));
            const auto stop = std::chrono::steady_clock::now();
            const double wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
            summarize_hour(progress, results.back(), request.config, wall_ms);
        }
        write_payload(request, results, inputs.topology, out);
        return 0;
    });
}

int cmd_curves(const RunRequest& request, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        LoadedInputs inputs = load_inputs(request);
        if (request.curve_hour < 1 || request.curve_hour > 24) {
            throw input_error("--hour: expected a single hour in 1..24");
        }

        std::vector<int> subset;
        if (request.zones_given) {
            for (const std::string& code : request.zone_subset) {
                subset.push_back(inputs.topology.require_zone(code));
            }
        } else {
            for (const Zone& zone : inputs.topology.zones()) subset.push_back(zone.index);
        }

        const std::vector<Offer> hour_offers = filter_by_hour(inputs.offers, request.curve_hour);
        const auto [supply, demand] = build_merit_curves(hour_offers, subset);

        std::ostringstream csv;
        csv << "side,cumulative_mwh,price\n";
        for (const MeritStep& step : supply.steps) {
            csv << "supply," << format_double(step.cumulative_quantity) << ','
                << format_double(step.price) << '\n';
        }
        for (const MeritStep& step : demand.steps) {
            csv << "demand," << format_double(step.cumulative_quantity) << ','
                << format_double(step.price) << '\n';
        }

        if (request.output_path.empty()) {
            out << csv.str();
        } else {
            std::ofstream file(request.output_path, std::ios::binary);
            if (!file) throw input_error(request.output_path + ": cannot open for writing");
            file << csv.str();
        }
        return 0;
    });
}

int cmd_validate(const RunRequest& request, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::vector<std::string> findings;

        std::optional<NetworkTopology> topology;
        try {
            topology = load_topology_file(request.topology_path);
        } catch (const input_error& e) {
            findings.emplace_back(e.what());
        }

        std::vector<Offer> offers;
        if (topology && !request.offers_path.empty()) {
            std::vector<std::string> parse_findings;
            std::ifstream in = open_input(request.offers_path);
            offers = parse_offers(in, *topology, &parse_findings);
            for (std::string& f : parse_findings) {
                findings.push_back(request.offers_path + ": " + f);
            }
        }
        if (topology && !request.limits_path.empty()) {
            std::vector<std::string> parse_findings;
            std::ifstream in = open_input(request.limits_path);
            parse_limits(in, *topology, &parse_findings);
            for (std::string& f : parse_findings) {
                findings.push_back(request.limits_path + ": " + f);
            }
        }

        // The engine only handles cycles it can open at the configured edge.
        if (topology && !detect_cycles(*topology).empty()) {
            const auto& ring = request.config.ring_open_edge;
            const int a = ring ? topology->find_zone(ring->first) : -1;
            const int b = ring ? topology->find_zone(ring->second) : -1;
            if (!ring) {
                findings.emplace_back("unsupported cycle: topology is cyclic and ring opening is disabled");
            } else if (a < 0 || b < 0 || !topology->has_edge(a, b)) {
                findings.push_back("unsupported cycle: ring-opening edge " + ring->first + "-" +
                                   ring->second + " is not in the topology");
            } else if (!detect_cycles(topology->without_edge(make_edge(a, b))).empty()) {
                findings.push_back("unsupported cycle: removing " + ring->first + "-" + ring->second +
                                   " leaves the network cyclic");
            }
        }

        // Hours must still be clearable after the foreign-zone transform.
        if (topology && !offers.empty()) {
            const std::vector<Offer> transformed =
                apply_foreign_zone_policy(offers, *topology, request.config);
            std::set<int> check(request.hours.begin(), request.hours.end());
            if (check.empty()) {
                for (const Offer& o : transformed) check.insert(o.hour);
            }
            for (int hour : check) {
                bool sell = false;
                bool buy = false;
                for (const Offer& o : transformed) {
                    if (o.hour != hour || o.quantity <= 0.0) continue;
                    (o.purpose == Purpose::Sell ? sell : buy) = true;
                }
                if (!sell && !buy) {
                    findings.push_back("hour " + std::to_string(hour) + ": empty hour (no offers)");
                } else if (!sell) {
                    findings.push_back("hour " + std::to_string(hour) + ": empty hour (no sell offers)");
                } else if (!buy) {
                    findings.push_back("hour " + std::to_string(hour) + ": empty hour (no buy offers)");
                }
            }
        }

        for (const std::string& finding : findings) out << finding << '\n';
        out << findings.size() << " findings\n";
        return findings.empty() ? 0 : 2;
    });
}

}  // namespace mgp::tool

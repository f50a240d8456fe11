#include "mgp/market_data.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "mgp/errors.hpp"
#include "mgp/numeric_text.hpp"

namespace mgp {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    for (auto& f : fields) {
        while (!f.empty() && (f.back() == '\r' || f.back() == ' ' || f.back() == '\t')) f.pop_back();
        std::size_t start = 0;
        while (start < f.size() && (f[start] == ' ' || f[start] == '\t')) ++start;
        f.erase(0, start);
    }
    return fields;
}

// reports to `findings` and returns false, or throws when findings is null
bool report(std::vector<std::string>* findings, const std::string& msg) {
    if (findings) {
        findings->push_back(msg);
        return false;
    }
    throw input_error(msg);
}

std::string at_line(const char* file_kind, int line_no) {
    return std::string(file_kind) + " line " + std::to_string(line_no) + ": ";
}

}  // namespace

std::vector<Offer> parse_offers(std::istream& in, const NetworkTopology& topology,
                                std::vector<std::string>* findings) {
    static const std::vector<std::string> kHeader = {"CD_PURPOSE", "N_INTERVAL", "CD_ZONE", "N_QUANTITY",
                                                     "N_ENERGY_PRICE"};
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw input_error("offers file is empty");
    ++line_no;
    if (split_csv(line) != kHeader)
        throw input_error("offers line 1: expected header CD_PURPOSE,N_INTERVAL,CD_ZONE,N_QUANTITY,N_ENERGY_PRICE");

    std::vector<Offer> offers;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv(line);
        const std::string where = at_line("offers", line_no);
        if (fields.size() != 5) {
            report(findings, where + "expected 5 fields, got " + std::to_string(fields.size()));
            continue;
        }
        Offer offer;
        if (fields[0] == "OFF") {
            offer.purpose = Purpose::Sell;
        } else if (fields[0] == "BID") {
            offer.purpose = Purpose::Buy;
        } else {
            report(findings, where + "CD_PURPOSE must be OFF or BID, got '" + fields[0] + "'");
            continue;
        }
        auto hour = parse_int(fields[1]);
        if (!hour || *hour < 1 || *hour > 24) {
            report(findings, where + "N_INTERVAL must be an integer in 1..24, got '" + fields[1] + "'");
            continue;
        }
        offer.hour = *hour;
        int zone = topology.find_zone(fields[2]);
        if (zone < 0) {
            report(findings, where + "unknown zone '" + fields[2] + "'");
            continue;
        }
        offer.zone = zone;
        auto quantity = parse_double(fields[3]);
        if (!quantity || *quantity < 0.0) {
            report(findings, where + "N_QUANTITY must be a number >= 0, got '" + fields[3] + "'");
            continue;
        }
        offer.quantity = *quantity;
        auto price = parse_double(fields[4]);
        if (!price || *price < 0.0) {
            report(findings, where + "N_ENERGY_PRICE must be a number >= 0, got '" + fields[4] + "'");
            continue;
        }
        offer.price = *price;
        offer.id = static_cast<int>(offers.size());
        offers.push_back(offer);
    }
    return offers;
}

std::vector<TransitLimit> parse_limits(std::istream& in, const NetworkTopology& topology,
                                       std::vector<std::string>* findings) {
    static const std::vector<std::string> kHeader = {"DA", "A", "LIMITE_TRANSITO"};
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw input_error("limits file is empty");
    ++line_no;
    if (split_csv(line) != kHeader) throw input_error("limits line 1: expected header DA,A,LIMITE_TRANSITO");

    std::vector<TransitLimit> limits;
    std::vector<std::pair<int, int>> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv(line);
        const std::string where = at_line("limits", line_no);
        if (fields.size() != 3) {
            report(findings, where + "expected 3 fields, got " + std::to_string(fields.size()));
            continue;
        }
        int from = topology.find_zone(fields[0]);
        int to = topology.find_zone(fields[1]);
        if (from < 0) {
            report(findings, where + "unknown zone '" + fields[0] + "'");
            continue;
        }
        if (to < 0) {
            report(findings, where + "unknown zone '" + fields[1] + "'");
            continue;
        }
        if (!topology.has_edge(from, to)) {
            report(findings, where + "no edge between " + fields[0] + " and " + fields[1]);
            continue;
        }
        if (std::find(seen.begin(), seen.end(), std::pair{from, to}) != seen.end()) {
            report(findings, where + "duplicate limit for direction " + fields[0] + "->" + fields[1]);
            continue;
        }
        auto max_flow = parse_double(fields[2]);
        if (!max_flow || *max_flow < 0.0) {
            report(findings, where + "LIMITE_TRANSITO must be a number >= 0, got '" + fields[2] + "'");
            continue;
        }
        seen.emplace_back(from, to);
        limits.push_back({from, to, *max_flow});
    }
    return limits;
}

void write_offers(std::ostream& out, std::span<const Offer> offers, const NetworkTopology& topology) {
    out << "CD_PURPOSE,N_INTERVAL,CD_ZONE,N_QUANTITY,N_ENERGY_PRICE\n";
    for (const auto& o : offers) {
        out << (o.purpose == Purpose::Sell ? "OFF" : "BID") << ',' << o.hour << ','
            << topology.zone(o.zone).code << ',' << format_double(o.quantity) << ','
            << format_double(o.price) << '\n';
    }
}

std::vector<Offer> filter_by_hour(std::span<const Offer> offers, int hour) {
    if (hour < 1 || hour > 24) throw input_error("hour must be in 1..24, got " + std::to_string(hour));
    std::vector<Offer> result;
    for (const auto& o : offers)
        if (o.hour == hour) result.push_back(o);
    return result;
}

std::pair<MeritCurve, MeritCurve> build_merit_curves(std::span<const Offer> offers,
                                                     std::span<const int> zone_subset) {
    std::vector<bool> in_subset;
    if (!zone_subset.empty()) {
        int max_zone = *std::max_element(zone_subset.begin(), zone_subset.end());
        in_subset.resize(static_cast<std::size_t>(max_zone) + 1, false);
        for (int z : zone_subset) in_subset[static_cast<std::size_t>(z)] = true;
    }
    auto selected = [&](const Offer& o) {
        return o.zone >= 0 && o.zone < static_cast<int>(in_subset.size()) &&
               in_subset[static_cast<std::size_t>(o.zone)];
    };

    std::vector<const Offer*> sells;
    std::vector<const Offer*> buys;
    for (const auto& o : offers) {
        if (!selected(o) || o.quantity <= 0.0) continue;
        (o.purpose == Purpose::Sell ? sells : buys).push_back(&o);
    }
    std::sort(sells.begin(), sells.end(), [](const Offer* a, const Offer* b) {
        return a->price != b->price ? a->price < b->price : a->id < b->id;
    });
    std::sort(buys.begin(), buys.end(), [](const Offer* a, const Offer* b) {
        return a->price != b->price ? a->price > b->price : a->id < b->id;
    });

    MeritCurve supply{CurveSide::Supply, {}};
    double cum = 0.0;
    for (const Offer* o : sells) {
        cum += o->quantity;
        supply.steps.push_back({cum, o->price});
    }
    MeritCurve demand{CurveSide::Demand, {}};
    cum = 0.0;
    for (const Offer* o : buys) {
        cum += o->quantity;
        demand.steps.push_back({cum, o->price});
    }
    return {std::move(supply), std::move(demand)};
}

MeritClearResult merit_order_clear(const MeritCurve& supply, const MeritCurve& demand) {
    MeritClearResult result;
    std::size_t i = 0;  // supply step under consideration
    std::size_t j = 0;  // demand step under consideration
    double volume = 0.0;
    double welfare = 0.0;
    double marginal_price = 0.0;
    bool any_trade = false;

    while (i < supply.steps.size() && j < demand.steps.size()) {
        const auto& s = supply.steps[i];
        const auto& d = demand.steps[j];
        if (s.price > d.price) break;  // next marginal unit would trade at a loss
        double q = std::min(s.cumulative_quantity, d.cumulative_quantity);
        double taken = q - volume;
        if (taken > 0.0) {
            welfare += taken * (d.price - s.price);
            volume = q;
            marginal_price = s.price;
            any_trade = true;
        }
        if (s.cumulative_quantity <= q) ++i;
        if (d.cumulative_quantity <= q) ++j;
    }

    if (!any_trade) return {0.0, 0.0, 0.0};
    result.volume = volume;
    result.price = marginal_price;
    result.welfare = welfare;
    return result;
}

}  // namespace mgp

#ifndef MGP_MARKET_DATA_HPP
#define MGP_MARKET_DATA_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mgp/network.hpp"

namespace mgp {

enum class Purpose { Sell, Buy };  // CD_PURPOSE: OFF / BID

struct Offer {
    Purpose purpose = Purpose::Sell;
    int hour = 1;           // 1..24 (N_INTERVAL)
    int zone = 0;           // zone index into the topology
    double quantity = 0.0;  // MWh, >= 0
    double price = 0.0;     // EUR/MWh, >= 0
    int id = 0;             // stable input ordinal (0-based)
};

struct TransitLimit {
    int from = 0;  // zone index, direction of flow
    int to = 0;
    double max_flow = 0.0;  // MWh, >= 0
};

enum class CurveSide { Supply, Demand };

struct MeritStep {
    double cumulative_quantity = 0.0;  // strictly increasing along the curve
    double price = 0.0;
};

/// Aggregated stepwise curve: supply sorted by ascending price, demand by
/// descending price (ties broken by offer id). Zero-quantity offers
/// contribute no step.
struct MeritCurve {
    CurveSide side = CurveSide::Supply;
    std::vector<MeritStep> steps;
};

struct MeritClearResult {
    double volume = 0.0;   // MWh traded
    double price = 0.0;    // price of the marginal (last accepted) supply step
    double welfare = 0.0;  // buyer value minus seller cost over the cleared volume
};

/// Offers CSV with header CD_PURPOSE,N_INTERVAL,CD_ZONE,N_QUANTITY,N_ENERGY_PRICE.
/// Zone codes are resolved against `topology`; ids are assigned in input
/// order. Errors name the offending line. When `findings` is non-null, bad
/// rows are reported there and skipped instead of throwing.
std::vector<Offer> parse_offers(std::istream& in, const NetworkTopology& topology,
                                std::vector<std::string>* findings = nullptr);

/// Limits CSV with header DA,A,LIMITE_TRANSITO; one row per directed edge.
/// Each (from,to) must be a topology edge and may appear at most once.
std::vector<TransitLimit> parse_limits(std::istream& in, const NetworkTopology& topology,
                                       std::vector<std::string>* findings = nullptr);

/// Offers CSV writer (same schema as parse_offers); numbers are written in
/// shortest round-trip form so parse(write(x)) reproduces x exactly.
void write_offers(std::ostream& out, std::span<const Offer> offers, const NetworkTopology& topology);

/// Offers of one trading hour, input order preserved.
std::vector<Offer> filter_by_hour(std::span<const Offer> offers, int hour);

/// Aggregated supply and demand curves of the given offers restricted to
/// `zone_subset` (zone indices; pass all indices for a whole-market curve).
std::pair<MeritCurve, MeritCurve> build_merit_curves(std::span<const Offer> offers,
                                                     std::span<const int> zone_subset);

/// Uniform-price merit-order crossing of two curves: clears the largest
/// volume whose marginal supply price does not exceed the marginal demand
/// price; the price is that of the last accepted supply step. No trade
/// yields {0, 0, 0}.
MeritClearResult merit_order_clear(const MeritCurve& supply, const MeritCurve& demand);

}  // namespace mgp

#endif

#ifndef MGPCLEAR_TEST_SUPPORT_HPP
#define MGPCLEAR_TEST_SUPPORT_HPP

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mgp/clearing.hpp"
#include "mgp/market_data.hpp"
#include "mgp/network.hpp"

namespace mgp::test {

/// A complete clearing problem: topology, offer book, limits, trading hour.
struct TestInstance {
    NetworkTopology topology;
    std::vector<Offer> offers;
    std::vector<TransitLimit> limits;
    int hour = 1;
};

NetworkTopology make_topology(const std::vector<std::string>& codes,
                              const std::vector<std::pair<std::string, std::string>>& edges);

/// One zone, up to 30 offers, prices in [0,3000], quantities in [0,1000];
/// always at least one sell and one buy with positive quantity.
TestInstance random_single_zone(std::mt19937& rng);

/// Random tree of zone_min..zone_max zones with mixed offers and partially
/// declared directed limits; stresses the full pipeline.
TestInstance random_tree(std::mt19937& rng, int zone_min, int zone_max);

/// 3..6 zone tree engineered so every macrozone's marginal offer is a sell
/// with a unique price: each zone has more cheap supply than its demand plus
/// all incident transit capacity, and buys are priced far above every sell.
TestInstance sell_marginal_tree(std::mt19937& rng);

/// 1..3 zones in a line, up to 8 offers with quantities on a 0.25 grid and
/// integer prices, limits on the same grid — small enough for exhaustive
/// enumeration.
TestInstance grid_instance(std::mt19937& rng);

/// All offer prices multiplied by `factor` (used by the scaling property).
std::vector<Offer> scale_prices(std::vector<Offer> offers, double factor);

/// Best welfare over every acceptance pattern of `inst` on the 0.25 grid
/// that balances exactly and respects the declared limits. Flow feasibility
/// is checked with an independent breadth-first cut computation, not the
/// engine's own machinery.
double best_grid_welfare(const TestInstance& inst);

/// Fixture files committed under tests/fixtures.
std::string fixture_path(const std::string& name);
std::string read_file(const std::string& path);

/// Runs a shell command, captures combined stdout+stderr.
struct CommandResult {
    int exit_code;
    std::string output;
};
CommandResult run_command(const std::string& command);

}  // namespace mgp::test

#endif

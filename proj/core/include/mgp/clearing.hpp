#ifndef MGP_CLEARING_HPP
#define MGP_CLEARING_HPP

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mgp/lp.hpp"
#include "mgp/market_data.hpp"
#include "mgp/network.hpp"

namespace mgp {

struct ClearingConfig {
    /// Accepted quantities at or below this are forced to exactly zero.
    double snap_threshold = 1e-4;
    /// |mu| above this marks the row's edge as saturated.
    double saturation_dual_tol = 1e-7;
    /// Virtual foreign zones: their sells are re-priced to 0, their buys to
    /// the price cap, before the LP is assembled.
    std::vector<std::string> foreign_zones = {"BSP", "XFRA", "XAUS", "MALT"};
    double foreign_buy_price_cap = 3000.0;
    /// Edge removed before LP assembly when the topology closes a ring.
    std::optional<std::pair<std::string, std::string>> ring_open_edge =
        std::pair<std::string, std::string>{"CNOR", "CORS"};
    enum class PriceMode { Marginal, Dual, Both };
    PriceMode price_mode = PriceMode::Both;
};

struct DirectedFlow {
    int from = 0;
    int to = 0;
    double flow = 0.0;  // MWh moved from `from` to `to` (negative = reverse)
};

struct AcceptedQuantity {
    int offer_id = 0;
    double quantity = 0.0;
};

struct ClearingResult {
    int hour = 1;
    double welfare = 0.0;  // -objective of the solved LP(s)
    /// Partition of all zones into macrozones (connected components after
    /// removing saturated edges), ordered by smallest zone index.
    std::vector<std::vector<int>> macrozones;
    std::vector<double> prices_marginal;  // per zone index
    std::vector<double> prices_dual;      // per zone index
    /// Set where the zone's macrozone had no accepted sell (price forced 0).
    std::vector<bool> price_warning;
    /// Both directions of every topology edge, in topology edge order.
    std::vector<DirectedFlow> transits;
    /// Regularized accepted quantity per offer of the hour, input order.
    std::vector<AcceptedQuantity> accepted;
    std::vector<EdgePair> saturated_edges;  // normalized, ascending
};

/// Optional insight into the pipeline stages, mainly for tests/diagnostics.
struct ClearingTrace {
    std::vector<Offer> hour_offers;  // post foreign-zone policy, x-aligned
    NetworkTopology opened;          // topology the LP ran on
    bool ring_opened = false;
    EdgePair opened_edge{-1, -1};
    std::vector<LinearProgram> lps;  // one per cleared component
    std::vector<LpSolution> solutions;
    std::vector<std::vector<int>> lp_positions;  // LP column -> hour offer position
    Eigen::VectorXd x_solved;                    // hour-aligned, pre-snap
    Eigen::VectorXd x_snapped;
    Eigen::VectorXd x_regularized;
};

/// Re-prices offers sitting in configured foreign zones (sells to 0, buys
/// to the cap); everything else passes through unchanged.
std::vector<Offer> apply_foreign_zone_policy(std::vector<Offer> offers, const NetworkTopology& topology,
                                             const ClearingConfig& config);

/// Forces entries with value <= threshold to exactly 0 (solver residue on
/// rejected offers shows up around 1e-8).
Eigen::VectorXd snap_small_quantities(Eigen::VectorXd x, double threshold);

/// Market splitting: removes every edge carrying a row with |mu| above the
/// tolerance and returns the resulting connected components.
std::vector<std::vector<int>> detect_macrozones(const NetworkTopology& topology, const Eigen::VectorXd& mu,
                                                std::span<const DirectedEdge> row_tags,
                                                double saturation_dual_tol);

/// Per macrozone and side, reassigns the side's total accepted volume
/// greedily along the merit order (sells ascending price, buys descending,
/// ties by id), so at most one offer per side per macrozone ends up
/// partially accepted and totals are preserved.
Eigen::VectorXd regularize_acceptances(const Eigen::VectorXd& x, std::span<const Offer> offers,
                                       const std::vector<std::vector<int>>& macrozones);

struct ZonalPriceSet {
    std::vector<double> values;  // per zone index
    std::vector<bool> warning;   // true where the macrozone had no accepted sell
};

/// Zonal price as the price of the highest-priced accepted sell of the
/// zone's macrozone; macrozones without accepted sells get 0 + warning.
ZonalPriceSet compute_zonal_prices_marginal(const Eigen::VectorXd& x_regularized,
                                            std::span<const Offer> offers,
                                            const std::vector<std::vector<int>>& macrozones,
                                            int zone_count);

/// Dual route: price[z] = lambda - sum of mu over rows whose cut side
/// contains z.
std::vector<double> compute_zonal_prices_dual(double lambda, const Eigen::VectorXd& mu,
                                              std::span<const EdgeCut> row_cuts, int zone_count);

/// Transit per inequality row: flow = (A.x)[r] in the row's direction.
std::vector<DirectedFlow> compute_transits(const Eigen::MatrixXd& A, const Eigen::VectorXd& x,
                                           std::span<const DirectedEdge> row_tags);

/// Flow reconstruction from per-zone net injections (accepted sells minus
/// accepted buys) by peeling leaves of the tree; the opened ring edge, when
/// given, carries zero. One entry per topology edge, canonical orientation.
/// internal_error if some zone keeps a residual imbalance above 1e-6.
std::vector<DirectedFlow> compute_transits_by_balance(const NetworkTopology& topology,
                                                      const Eigen::VectorXd& net_injection,
                                                      std::optional<EdgePair> opened_edge);

/// Full per-hour pipeline: filter -> foreign-zone transform -> ring opening
/// -> one LP per connected component with offers -> solve -> snap ->
/// macrozones -> regularize -> prices -> transits.
ClearingResult clear_hour(std::span<const Offer> offers, const NetworkTopology& topology,
                          std::span<const TransitLimit> limits, int hour, const ClearingConfig& config,
                          ClearingTrace* trace = nullptr);

}  // namespace mgp

#endif

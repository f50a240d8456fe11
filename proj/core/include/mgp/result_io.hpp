#ifndef MGP_RESULT_IO_HPP
#define MGP_RESULT_IO_HPP

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <span>
#include <string>

#include "mgp/clearing.hpp"
#include "mgp/network.hpp"

namespace mgp {

/// One result object per hour with a fixed field layout:
///   hour, welfare, macrozones (arrays of zone codes),
///   prices {code: {marginal, dual}}, transits [{from,to,flow}],
///   accepted [{offer_id,quantity}], saturated_edges.
/// Numbers keep full precision (shortest round-trip form), zones follow
/// topology order, so rendering is deterministic.
nlohmann::ordered_json result_to_json(const ClearingResult& result, const NetworkTopology& topology,
                                      ClearingConfig::PriceMode price_mode);

/// JSON array of per-hour objects, 2-space indent, trailing newline.
std::string render_results_json(std::span<const ClearingResult> results, const NetworkTopology& topology,
                                ClearingConfig::PriceMode price_mode);

/// Flat per-zone view: hour,zone,macrozone,price_marginal,price_dual with
/// price columns left empty when the mode does not select them.
void write_results_csv(std::ostream& out, std::span<const ClearingResult> results,
                       const NetworkTopology& topology, ClearingConfig::PriceMode price_mode);

/// Inverse of result_to_json for the fields it emits (price_warning is not
/// serialized); values round-trip exactly.
ClearingResult result_from_json(const nlohmann::json& j, const NetworkTopology& topology);

}  // namespace mgp

#endif

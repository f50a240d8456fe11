#include <CLI11.hpp>
#include <iostream>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "mgp/errors.hpp"

namespace {

using mgp::tool::RunRequest;

void add_input_flags(CLI::App& cmd, RunRequest& request, bool offers_required) {
    cmd.add_option("--topology", request.topology_path, "Topology file (zones: / edges: sections)")
        ->required();
    auto* offers = cmd.add_option("--offers", request.offers_path,
                                  "Offers CSV (CD_PURPOSE,N_INTERVAL,CD_ZONE,N_QUANTITY,N_ENERGY_PRICE)");
    if (offers_required) offers->required();
    cmd.add_option("--limits", request.limits_path, "Transit limits CSV (DA,A,LIMITE_TRANSITO)");
}

void add_config_flags(CLI::App& cmd, RunRequest& request, std::string& hours_spec,
                      std::string& price_mode, std::string& ring_spec) {
    cmd.add_option("--hours", hours_spec,
                   "Hours to clear, e.g. 9 or 1-24 or 1,5,9-11 (default: all hours in the offers file)");
    cmd.add_option("--snap-threshold", request.config.snap_threshold,
                   "Accepted quantities at or below this are rounded to zero (MWh)");
    cmd.add_option("--price-cap", request.config.foreign_buy_price_cap,
                   "Price assigned to priceless foreign-zone buy offers (EUR/MWh)");
    cmd.add_option("--price-mode", price_mode, "Zonal prices to report: marginal, dual or both");
    cmd.add_option("--ring-open", ring_spec,
                   "Edge removed to open a cyclic topology, CODE_A-CODE_B or none");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mgpclear - day-ahead zonal electricity market clearing engine"};
    app.require_subcommand(1);

    RunRequest request;
    std::string hours_spec;
    std::string price_mode;
    std::string ring_spec;
    std::string format = "json";

    CLI::App* clear = app.add_subcommand("clear", "Clear selected hours and write zonal results");
    add_input_flags(*clear, request, /*offers_required=*/true);
    add_config_flags(*clear, request, hours_spec, price_mode, ring_spec);
    clear->add_option("--out", request.output_path, "Result file (default: stdout)");
    clear->add_option("--format", format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* curves = app.add_subcommand("curves", "Export supply/demand step curves for one hour");
    add_input_flags(*curves, request, /*offers_required=*/true);
    curves->add_option("--hour", request.curve_hour, "Trading hour (1..24)")->required();
    std::string zones_csv;
    auto* zones_opt = curves->add_option(
        "--zones", zones_csv, "Comma-separated zone codes to aggregate (default: all zones)");
    curves->add_option("--out", request.output_path, "Curve CSV file (default: stdout)");

    CLI::App* validate = app.add_subcommand("validate", "Check inputs and report all findings");
    add_input_flags(*validate, request, /*offers_required=*/false);
    add_config_flags(*validate, request, hours_spec, price_mode, ring_spec);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!hours_spec.empty()) request.hours = mgp::tool::parse_hours_spec(hours_spec);
        if (!price_mode.empty()) request.config.price_mode = mgp::tool::parse_price_mode(price_mode);
        if (!ring_spec.empty()) request.config.ring_open_edge = mgp::tool::parse_ring_spec(ring_spec);
        request.output_format = format == "csv" ? mgp::tool::Format::Csv : mgp::tool::Format::Json;
        request.zones_given = zones_opt->count() > 0;
        if (request.zones_given && !zones_csv.empty()) {
            std::stringstream tokens(zones_csv);
            std::string code;
            while (std::getline(tokens, code, ',')) request.zone_subset.push_back(code);
        }
    } catch (const mgp::input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    if (clear->parsed()) return mgp::tool::cmd_clear(request, std::cout, std::cerr);
    if (curves->parsed()) return mgp::tool::cmd_curves(request, std::cout, std::cerr);
    return mgp::tool::cmd_validate(request, std::cout, std::cerr);
}

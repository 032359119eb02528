#pragma once

#include "sqw/circuit.hpp"
#include "sqw/graph_io.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace sqw::circuit {

/// Parameter file: `{"c":..., "l":..., "L":..., "C_J":..., "E_J":..., "Phi0":...}` in SI units.
inline CircuitParams parse_params_json(const std::string &text) {
    const auto j = sqw::detail::parse_json_text(text, "parameter file");
    if (!j.is_object()) {
        throw DomainError("parameter file: expected a JSON object");
    }
    auto field = [&](const char *name) {
        if (!j.contains(name) || !j.at(name).is_number()) {
            throw DomainError(std::string("parameter file: missing numeric field \"") + name +
                              "\"");
        }
        return j.at(name).get<double>();
    };
    CircuitParams p{field("c"), field("l"), field("L"), field("C_J"), field("E_J"),
                    field("Phi0")};
    p.validate();
    return p;
}

inline std::string emit_params_json(const CircuitParams &p) {
    nlohmann::json j{{"c", p.c}, {"l", p.l}, {"L", p.L}, {"C_J", p.C_J}, {"E_J", p.E_J},
                     {"Phi0", p.Phi0}};
    return j.dump(2);
}

/**
 * @brief Report for one operating point.
 *
 * Top-level kL, omega, A and couplings describe the all-on configuration
 * (every SQUID at Phi_on); "switched" holds the one-on/rest-off configuration
 * that a pulse interval actually realises.
 */
inline nlohmann::json circuit_report(const OperatingPoint &op, double theta, double tau_s,
                                     const std::vector<std::string> &warnings) {
    nlohmann::json j;
    j["kL"] = op.all_on.kL;
    j["omega_rad_s"] = op.all_on.omega;
    j["A"] = op.all_on.A;
    j["kappa_cap"] = op.all_on_coupling.kappa_cap;
    j["kappa_ind"] = op.all_on_coupling.kappa_ind;
    j["kappa_total"] = op.all_on_coupling.kappa_total;
    j["flux_on"] = op.flux_on;
    j["flux_off"] = op.flux_off;
    j["chi_c"] = op.chi_c;
    j["chi_l_max"] = op.chi_l_max;
    j["squids_per_resonator"] = op.squids;
    j["switched"] = {
        {"kL", op.switched.kL},
        {"omega_rad_s", op.switched.omega},
        {"A", op.switched.A},
        {"chi_l_off", op.chi_l_off},
        {"cos_off", op.cos_off},
        {"kappa_cap", op.on_coupling.kappa_cap},
        {"kappa_ind", op.on_coupling.kappa_ind},
        {"kappa_total", op.on_coupling.kappa_total},
        {"kappa_total_off", op.off_coupling.kappa_total},
    };
    j["theta"] = theta;
    j["tau_s"] = tau_s;
    j["warnings"] = warnings;
    return j;
}

} // namespace sqw::circuit

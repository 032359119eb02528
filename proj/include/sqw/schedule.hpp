#pragma once

#include "sqw/circuit.hpp"
#include "sqw/error.hpp"
#include "sqw/graph.hpp"
#include "sqw/graph_io.hpp"
#include "sqw/walk.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace sqw {

inline constexpr int schedule_version = 1;

/// SQUIDs driven at Phi_on during one interval; every other SQUID sits at Phi_off.
struct ScheduleInterval {
    std::size_t index = 0;
    std::vector<Edge> on_pairs;

    friend bool operator==(const ScheduleInterval &, const ScheduleInterval &) = default;
};

/**
 * @brief Piecewise-constant flux timeline.
 *
 * Intervals run back to back with no idle gap, each lasting tau_seconds.
 * One step is d consecutive intervals (one per tessellation, in order) and
 * the step pattern repeats `repetitions` times.
 */
struct PulseSchedule {
    double tau_seconds = 0.0;
    double flux_on_ratio = 1.0;
    double flux_off_ratio = 0.5;
    std::size_t repetitions = 0;
    std::vector<ScheduleInterval> intervals;

    [[nodiscard]] std::size_t intervals_per_step() const {
        return repetitions == 0 ? 0 : intervals.size() / repetitions;
    }

    friend bool operator==(const PulseSchedule &, const PulseSchedule &) = default;
};

/// Ordered tessellations and angle equivalent to the schedule.
struct UnitaryProgram {
    std::size_t node_count = 0;
    TessellationSet tessellations;
    double theta = 0.0;
    std::size_t steps = 0;
};

struct CompiledRun {
    PulseSchedule schedule;
    UnitaryProgram predicted;
    circuit::OperatingPoint operating_point;
    std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<Violation> matching_violations(const ScheduleInterval &iv, std::size_t slot) {
    std::vector<Violation> out;
    std::vector<Node> seen;
    for (const auto &[a, b] : iv.on_pairs) {
        if (a == b) {
            out.push_back({slot, "pair (" + std::to_string(a) + "," + std::to_string(b) +
                                     ") drives a node against itself"});
        }
        for (Node v : {a, b}) {
            if (std::find(seen.begin(), seen.end(), v) != seen.end()) {
                out.push_back({slot, "node " + std::to_string(v) + " double-driven"});
            } else {
                seen.push_back(v);
            }
        }
    }
    return out;
}

inline std::vector<Edge> sorted_pairs(std::vector<Edge> pairs) {
    for (auto &[a, b] : pairs) {
        if (a > b) {
            std::swap(a, b);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

} // namespace detail

/// Tessellations of one step rebuilt from the schedule: each interval's on_pairs
/// padded with singletons.
inline TessellationSet tessellations_from_schedule(const PulseSchedule &s, std::size_t node_count) {
    TessellationSet ts;
    for (std::size_t k = 0; k < s.intervals_per_step(); ++k) {
        ts.tessellations.push_back(detail::pad_with_singletons(node_count, s.intervals[k].on_pairs));
    }
    return ts;
}

/**
 * @brief Check a schedule against its graph.
 *
 * Violations cover: non-positive or non-finite tau, interval indices out of
 * sequence, on_pairs that are not edges, nodes driven twice in an interval,
 * an interval count that does not split into identical steps, and steps whose
 * on_pairs miss graph edges.
 */
inline std::vector<Violation> validate_schedule(const PulseSchedule &s, const Graph &g) {
    std::vector<Violation> out;
    if (!std::isfinite(s.tau_seconds) || !(s.tau_seconds > 0.0)) {
        out.push_back({Violation::no_element, "tau must be finite and > 0"});
    }
    if (!std::isfinite(s.flux_on_ratio) || !std::isfinite(s.flux_off_ratio)) {
        out.push_back({Violation::no_element, "flux ratios must be finite"});
    }
    for (std::size_t k = 0; k < s.intervals.size(); ++k) {
        const auto &iv = s.intervals[k];
        if (iv.index != k) {
            out.push_back({k, "interval index " + std::to_string(iv.index) + " out of sequence"});
        }
        for (const auto &[a, b] : iv.on_pairs) {
            if (!g.has_edge(a, b)) {
                out.push_back({k, "(" + std::to_string(a) + "," + std::to_string(b) +
                                      ") is not an edge"});
            }
        }
        auto m = detail::matching_violations(iv, k);
        out.insert(out.end(), m.begin(), m.end());
    }

    if (s.repetitions == 0) {
        if (!s.intervals.empty()) {
            out.push_back({Violation::no_element, "zero steps but intervals present"});
        }
        return out;
    }
    if (s.intervals.empty() || s.intervals.size() % s.repetitions != 0) {
        out.push_back({Violation::no_element,
                       std::to_string(s.intervals.size()) +
                           " intervals do not split into " + std::to_string(s.repetitions) +
                           " equal steps"});
        return out;
    }
    const std::size_t d = s.intervals_per_step();
    for (std::size_t k = d; k < s.intervals.size(); ++k) {
        if (detail::sorted_pairs(s.intervals[k].on_pairs) !=
            detail::sorted_pairs(s.intervals[k % d].on_pairs)) {
            out.push_back({k, "interval differs from the same slot in step 0"});
        }
    }
    std::vector<Edge> covered;
    for (std::size_t k = 0; k < d; ++k) {
        auto p = detail::sorted_pairs(s.intervals[k].on_pairs);
        covered.insert(covered.end(), p.begin(), p.end());
    }
    std::sort(covered.begin(), covered.end());
    covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
    if (covered != g.edges()) {
        out.push_back({Violation::no_element, "one step does not drive every edge"});
    }
    return out;
}

/**
 * @brief Lower a walk program onto per-SQUID flux pulses.
 *
 * tau is the smallest positive interval with kappa_on * tau = theta (mod 2pi),
 * where kappa_on is the switched-configuration coupling for resonators with
 * max_degree SQUIDs. Feasibility notes against the hardware timescales are
 * attached as warnings and never fail compilation.
 */
inline CompiledRun compile_schedule(const Graph &g, const TessellationSet &ts, double theta,
                                    const circuit::CircuitParams &params, std::size_t steps) {
    require_valid(g, ts);
    if (!std::isfinite(theta)) {
        throw DomainError("theta must be finite");
    }
    CompiledRun run;
    run.operating_point = circuit::solve_operating_point(params, std::max<std::size_t>(1, g.max_degree()));
    const double kappa = run.operating_point.on_coupling.kappa_total;
    const double tau = circuit::pulse_duration(theta, kappa, true);

    auto &s = run.schedule;
    s.tau_seconds = tau;
    s.flux_on_ratio = run.operating_point.flux_on;
    s.flux_off_ratio = run.operating_point.flux_off;
    s.repetitions = steps;
    for (std::size_t step = 0; step < steps; ++step) {
        for (const auto &t : ts.tessellations) {
            s.intervals.push_back({s.intervals.size(), t.pairs()});
        }
    }

    run.predicted.node_count = g.node_count();
    run.predicted.theta = theta;
    run.predicted.steps = steps;
    for (const auto &t : ts.tessellations) {
        run.predicted.tessellations.tessellations.push_back(
            detail::pad_with_singletons(g.node_count(), t.pairs()));
    }
    const double total = tau * static_cast<double>(ts.size() * steps);
    run.warnings = circuit::feasibility_warnings(tau, total, kappa);
    return run;
}

/// Runs the predicted program through walk::evolve.
inline StateVector simulate(const UnitaryProgram &program, const StateVector &state,
                            Convention convention = Convention::physical) {
    WalkConfig cfg;
    cfg.theta = program.theta;
    cfg.steps = program.steps;
    cfg.convention = convention;
    return evolve(state, program.tessellations, cfg).final_state;
}

/// Schema version 1:
/// `{"version": 1, "tau_s": float, "flux_on": float, "flux_off": float,
///   "steps": int, "intervals": [{"idx": int, "on": [[i,j],...]},...]}`.
/// Intervals are back to back (zero idle time).
inline std::string emit_schedule(const PulseSchedule &s) {
    nlohmann::json j;
    j["version"] = schedule_version;
    j["tau_s"] = s.tau_seconds;
    j["flux_on"] = s.flux_on_ratio;
    j["flux_off"] = s.flux_off_ratio;
    j["steps"] = s.repetitions;
    auto intervals = nlohmann::json::array();
    for (const auto &iv : s.intervals) {
        auto on = nlohmann::json::array();
        for (const auto &[a, b] : iv.on_pairs) {
            on.push_back({a, b});
        }
        intervals.push_back({{"idx", iv.index}, {"on", std::move(on)}});
    }
    j["intervals"] = std::move(intervals);
    return j.dump(2);
}

/// Parses and enforces the graph-independent invariants (positive tau,
/// sequential indices, matchings, whole steps). Edge membership needs the
/// graph and is left to validate_schedule.
inline PulseSchedule parse_schedule(const std::string &text) {
    const auto j = detail::parse_json_text(text, "schedule");
    auto require = [&](bool ok, const std::string &what) {
        if (!ok) {
            throw DomainError("schedule: " + what);
        }
    };
    require(j.is_object(), "expected a JSON object");
    for (const char *key : {"version", "tau_s", "flux_on", "flux_off", "steps", "intervals"}) {
        require(j.contains(key), std::string("missing field \"") + key + "\"");
    }
    require(j.at("version").is_number_integer() && j.at("version").get<int>() == schedule_version,
            "unsupported version");
    for (const char *key : {"tau_s", "flux_on", "flux_off"}) {
        require(j.at(key).is_number(), std::string("\"") + key + "\" must be a number");
    }

    PulseSchedule s;
    s.tau_seconds = j.at("tau_s").get<double>();
    s.flux_on_ratio = j.at("flux_on").get<double>();
    s.flux_off_ratio = j.at("flux_off").get<double>();
    s.repetitions = detail::as_index(j.at("steps"), "steps");
    require(std::isfinite(s.tau_seconds) && s.tau_seconds > 0.0, "tau_s must be finite and > 0");
    require(j.at("intervals").is_array(), "\"intervals\" must be an array");
    for (const auto &jiv : j.at("intervals")) {
        require(jiv.is_object() && jiv.contains("idx") && jiv.contains("on") &&
                    jiv.at("on").is_array(),
                "interval needs \"idx\" and \"on\"");
        ScheduleInterval iv;
        iv.index = detail::as_index(jiv.at("idx"), "idx");
        require(iv.index == s.intervals.size(), "interval index out of sequence");
        for (const auto &p : jiv.at("on")) {
            require(p.is_array() && p.size() == 2, "on-pair must be [i, j]");
            iv.on_pairs.emplace_back(detail::as_index(p[0], "node"), detail::as_index(p[1], "node"));
        }
        auto m = detail::matching_violations(iv, iv.index);
        require(m.empty(), m.empty() ? "" : "interval " + std::to_string(iv.index) + ": " + m.front().reason);
        s.intervals.push_back(std::move(iv));
    }
    if (s.repetitions == 0) {
        require(s.intervals.empty(), "zero steps but intervals present");
    } else {
        require(!s.intervals.empty() && s.intervals.size() % s.repetitions == 0,
                "interval count is not a whole number of steps");
    }
    return s;
}

} // namespace sqw

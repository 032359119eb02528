#pragma once

#include "sqw/angle.hpp"
#include "sqw/circuit.hpp"
#include "sqw/circuit_io.hpp"
#include "sqw/graph.hpp"
#include "sqw/graph_io.hpp"
#include "sqw/output.hpp"
#include "sqw/schedule.hpp"
#include "sqw/walk.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace sqw::cli {

namespace fs = std::filesystem;

enum ExitCode : int { ok = 0, usage_error = 1, domain_error = 2, numeric_error = 3 };

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// What one invocation reads and writes. Outputs are refused when they exist
/// unless `force` is set.
struct RunManifest {
    std::string subcommand;
    std::vector<fs::path> inputs;
    std::vector<std::string> overrides; ///< explicitly given options, as name=value
    std::optional<fs::path> out_dir;
    bool force = false;

    void check_inputs() const {
        for (const auto &p : inputs) {
            if (!fs::exists(p)) {
                throw UsageError("input file not found: " + p.string());
            }
        }
    }

    /// Fails before anything is written if any target exists and force is off.
    void check_outputs(const std::vector<std::string> &names) const {
        if (!out_dir || force) {
            return;
        }
        for (const auto &n : names) {
            if (fs::exists(*out_dir / n)) {
                throw UsageError("refusing to overwrite " + (*out_dir / n).string() +
                                 " (use --force)");
            }
        }
    }

    void write(const std::string &name, const std::string &content) const {
        fs::create_directories(*out_dir);
        std::ofstream f(*out_dir / name, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw UsageError("cannot write " + (*out_dir / name).string());
        }
        f << content;
    }
};

inline std::string read_file(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) {
        throw UsageError("cannot read " + p.string());
    }
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

struct GraphSource {
    std::optional<std::size_t> path;
    std::string lattice;
    std::string file;
};

struct ResolvedGraph {
    Graph graph;
    TessellationSet tessellations;
    std::string source;
    std::vector<std::string> warnings;
};

inline std::vector<std::size_t> parse_dims(const std::string &text) {
    std::vector<std::size_t> dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size() || v < 1) {
                throw std::invalid_argument(item);
            }
            dims.push_back(static_cast<std::size_t>(v));
        } catch (const std::logic_error &) {
            throw UsageError("bad lattice dimension '" + item + "'");
        }
    }
    if (dims.empty()) {
        throw UsageError("--lattice needs at least one dimension");
    }
    return dims;
}

inline ResolvedGraph resolve_graph(const GraphSource &src) {
    const int chosen = (src.path ? 1 : 0) + (src.lattice.empty() ? 0 : 1) + (src.file.empty() ? 0 : 1);
    if (chosen != 1) {
        throw UsageError("choose exactly one of --path, --lattice, --graph");
    }
    if (src.path) {
        auto g = generate_path_tessellations(*src.path);
        return {std::move(g.graph), std::move(g.tessellations), "path-generator", {}};
    }
    if (!src.lattice.empty()) {
        auto g = generate_lattice_tessellations(parse_dims(src.lattice));
        return {std::move(g.graph), std::move(g.tessellations), "lattice-generator", {}};
    }
    auto file = parse_graph_json(read_file(src.file));
    if (file.tessellations) {
        return {std::move(file.graph), std::move(*file.tessellations), "file", {}};
    }
    ResolvedGraph r{file.graph, greedy_tessellate(file.graph), "greedy", {}};
    if (r.tessellations.size() > r.graph.max_degree()) {
        r.warnings.push_back("greedy tessellation uses " + std::to_string(r.tessellations.size()) +
                             " tessellations, more than the maximum degree " +
                             std::to_string(r.graph.max_degree()));
    }
    return r;
}

inline std::size_t thread_budget(std::size_t requested) {
    std::size_t n = std::max<std::size_t>(1, requested);
    if (const char *env = std::getenv("SQW_THREADS")) {
        try {
            n = std::min<std::size_t>(n, std::max(1LL, std::stoll(env)));
        } catch (const std::logic_error &) {
            throw UsageError("SQW_THREADS must be an integer");
        }
    }
    return n;
}

inline void add_graph_options(CLI::App &cmd, GraphSource &src) {
    cmd.add_option("--path", src.path, "path graph with N nodes");
    cmd.add_option("--lattice", src.lattice, "open-boundary lattice d1,d2[,d3]");
    cmd.add_option("--graph", src.file, "graph JSON file");
}

struct WalkOptions {
    GraphSource graph;
    std::string theta = "pi/3";
    std::size_t steps = 1;
    std::optional<std::size_t> start;
    std::string convention = "physical";
    std::size_t threads = 1;
    bool svg = false;
};

inline int cmd_walk(const WalkOptions &o, RunManifest &m, std::ostream &out, std::ostream &err) {
    const double theta = parse_angle(o.theta);
    m.check_inputs();
    auto r = resolve_graph(o.graph);
    for (const auto &w : r.warnings) {
        err << "warning: " << w << '\n';
    }
    const std::size_t n = r.graph.node_count();
    const Node start = o.start.value_or((n - 1) / 2);

    WalkConfig cfg;
    cfg.theta = theta;
    cfg.steps = o.steps;
    cfg.convention = parse_convention(o.convention);
    cfg.threads = thread_budget(o.threads);

    std::vector<std::string> names{"distribution.csv", "metadata.json"};
    if (o.svg) {
        names.emplace_back("distribution.svg");
    }
    m.check_outputs(names);

    const auto run = evolve(initial_basis_state(n, start), r.tessellations, cfg, true);
    std::vector<std::vector<double>> history;
    history.reserve(run.history.size());
    for (const auto &s : run.history) {
        history.push_back(probability_distribution(s));
    }
    const auto sigma = spread_statistics(history, start);

    nlohmann::json meta{{"n", n},
                        {"theta", theta},
                        {"steps", o.steps},
                        {"convention", std::string(to_string(cfg.convention))},
                        {"tessellation_source", r.source},
                        {"start", start},
                        {"overrides", m.overrides}};
    if (m.out_dir) {
        m.write("distribution.csv", output::distribution_csv(history));
        m.write("metadata.json", meta.dump(2) + "\n");
        if (o.svg) {
            m.write("distribution.svg",
                    output::svg_bar_plot(history.back(), "P(n) after " + std::to_string(o.steps) +
                                                             " steps"));
        }
    } else {
        out << output::distribution_csv({history.back()}, o.steps);
    }
    err << "n=" << n << " steps=" << o.steps << " sigma=" << output::fmt17(sigma.back())
        << " norm=" << output::fmt17(run.final_state.norm()) << '\n';
    return ExitCode::ok;
}

struct CircuitOptions {
    std::string params_file;
    std::string theta = "pi/3";
    std::size_t squids = 2;
    std::size_t sweep = 0;
};

inline circuit::CircuitParams load_params(const std::string &file) {
    return file.empty() ? circuit::CircuitParams::reference()
                        : circuit::parse_params_json(read_file(file));
}

inline int cmd_circuit(const CircuitOptions &o, RunManifest &m, std::ostream &out,
                       std::ostream &err) {
    const double theta = parse_angle(o.theta);
    m.check_inputs();
    const auto params = load_params(o.params_file);
    std::vector<std::string> names{"circuit.json"};
    if (o.sweep > 0) {
        names.emplace_back("sweep.csv");
    }
    m.check_outputs(names);

    circuit::OperatingPoint op;
    try {
        op = circuit::solve_operating_point(params, o.squids);
    } catch (const circuit::UnreachableFlux &e) {
        err << "hint: E_J >= "
            << output::fmt17(circuit::required_josephson_energy(params, e.required_chi_l_max()))
            << " J is needed to switch couplings off\n";
        throw;
    }
    const double kappa = op.on_coupling.kappa_total;
    const double tau = circuit::pulse_duration(theta, kappa, true);
    const auto warnings = circuit::feasibility_warnings(tau, tau * 2.0, kappa);
    const auto report = circuit::circuit_report(op, theta, tau, warnings).dump(2) + "\n";

    std::string sweep_csv;
    if (o.sweep > 0) {
        // link flux swept with both modes held at the switched configuration
        sweep_csv = "flux_ratio,chi_l,kappa_cap,kappa_ind,kappa_total\n";
        for (std::size_t i = 0; i < o.sweep; ++i) {
            const double f =
                o.sweep == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(o.sweep - 1);
            const double chi_l =
                circuit::chi_from_params(params, circuit::josephson_coefficient(f, params)).chi_l;
            const auto k = circuit::couplings(op.switched, op.switched, op.chi_c, chi_l);
            sweep_csv += output::fmt17(f) + ',' + output::fmt17(chi_l) + ',' +
                         output::fmt17(k.kappa_cap) + ',' + output::fmt17(k.kappa_ind) + ',' +
                         output::fmt17(k.kappa_total) + '\n';
        }
    }
    if (m.out_dir) {
        m.write("circuit.json", report);
        if (o.sweep > 0) {
            m.write("sweep.csv", sweep_csv);
        }
    }
    out << report;
    for (const auto &w : warnings) {
        err << "warning: " << w << '\n';
    }
    return ExitCode::ok;
}

struct ScheduleOptions {
    GraphSource graph;
    std::string theta = "pi/3";
    std::size_t steps = 1;
    std::string params_file;
};

inline int cmd_schedule(const ScheduleOptions &o, RunManifest &m, std::ostream &out,
                        std::ostream &err) {
    const double theta = parse_angle(o.theta);
    m.check_inputs();
    auto r = resolve_graph(o.graph);
    for (const auto &w : r.warnings) {
        err << "warning: " << w << '\n';
    }
    const auto params = load_params(o.params_file);
    m.check_outputs({"schedule.json", "validation.json"});

    const auto run = compile_schedule(r.graph, r.tessellations, theta, params, o.steps);
    const auto text = emit_schedule(run.schedule) + "\n";
    const auto violations = validate_schedule(parse_schedule(text), r.graph);

    nlohmann::json report;
    report["ok"] = violations.empty();
    auto jv = nlohmann::json::array();
    for (const auto &v : violations) {
        jv.push_back({{"interval", v.element_index == Violation::no_element
                                       ? nlohmann::json(nullptr)
                                       : nlohmann::json(v.element_index)},
                      {"reason", v.reason}});
    }
    report["violations"] = std::move(jv);
    report["intervals"] = run.schedule.intervals.size();
    report["tessellations"] = r.tessellations.size();
    report["tessellation_source"] = r.source;
    report["tau_s"] = run.schedule.tau_seconds;
    report["kappa_on_rad_s"] = run.operating_point.on_coupling.kappa_total;
    report["warnings"] = run.warnings;
    const auto report_text = report.dump(2) + "\n";

    if (m.out_dir) {
        m.write("schedule.json", text);
        m.write("validation.json", report_text);
    } else {
        out << text;
    }
    out << report_text;
    for (const auto &w : run.warnings) {
        err << "warning: " << w << '\n';
    }
    return violations.empty() ? ExitCode::ok : ExitCode::domain_error;
}

/// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Staggered quantum walk workbench"};
    app.require_subcommand(1);

    RunManifest manifest;
    std::string out_dir;

    WalkOptions walk;
    auto *walk_cmd = app.add_subcommand("walk", "evolve a single photon and emit P(n) per step");
    add_graph_options(*walk_cmd, walk.graph);
    walk_cmd->add_option("--theta", walk.theta, "angle: decimal or pi/k form");
    walk_cmd->add_option("--steps", walk.steps, "number of walk steps");
    walk_cmd->add_option("--start", walk.start, "initial node (default: middle)");
    walk_cmd->add_option("--convention", walk.convention, "abstract|physical")
        ->check(CLI::IsMember({"abstract", "physical"}));
    walk_cmd->add_option("--threads", walk.threads, "pair-update threads (capped by SQW_THREADS)");
    walk_cmd->add_flag("--svg", walk.svg, "also write distribution.svg");
    walk_cmd->add_option("--out", out_dir, "output directory");
    walk_cmd->add_flag("--force", manifest.force, "overwrite existing outputs");

    CircuitOptions circ;
    auto *circ_cmd = app.add_subcommand("circuit", "solve resonator modes, couplings and fluxes");
    circ_cmd->add_option("--params", circ.params_file, "circuit parameter JSON");
    circ_cmd->add_option("--theta", circ.theta, "angle used for the pulse interval");
    circ_cmd->add_option("--squids", circ.squids, "SQUIDs per resonator")->check(CLI::PositiveNumber);
    circ_cmd->add_option("--sweep", circ.sweep, "flux sweep points over [0, 1] (writes sweep.csv)");
    circ_cmd->add_option("--out", out_dir, "output directory");
    circ_cmd->add_flag("--force", manifest.force, "overwrite existing outputs");

    ScheduleOptions sched;
    auto *sched_cmd = app.add_subcommand("schedule", "compile a walk into a flux pulse schedule");
    add_graph_options(*sched_cmd, sched.graph);
    sched_cmd->add_option("--theta", sched.theta, "angle: decimal or pi/k form");
    sched_cmd->add_option("--steps", sched.steps, "number of walk steps");
    sched_cmd->add_option("--params", sched.params_file, "circuit parameter JSON");
    sched_cmd->add_option("--out", out_dir, "output directory");
    sched_cmd->add_flag("--force", manifest.force, "overwrite existing outputs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return ExitCode::ok;
    } catch (const CLI::ParseError &e) {
        err << "usage: " << e.what() << '\n';
        return ExitCode::usage_error;
    }
    if (!out_dir.empty()) {
        manifest.out_dir = out_dir;
    }
    for (const auto *sub : app.get_subcommands()) {
        for (const auto *opt : sub->get_options()) {
            if (opt->count() > 0 && opt->get_name() != "--out" && opt->get_name() != "--force" &&
                opt->get_name() != "--help") {
                std::string joined;
                for (const auto &r : opt->results()) {
                    joined += (joined.empty() ? "" : ",") + r;
                }
                manifest.overrides.push_back(opt->get_name() + "=" + joined);
            }
        }
    }

    try {
        if (*walk_cmd) {
            manifest.subcommand = "walk";
            if (!walk.graph.file.empty()) {
                manifest.inputs.emplace_back(walk.graph.file);
            }
            return cmd_walk(walk, manifest, out, err);
        }
        if (*circ_cmd) {
            manifest.subcommand = "circuit";
            if (!circ.params_file.empty()) {
                manifest.inputs.emplace_back(circ.params_file);
            }
            return cmd_circuit(circ, manifest, out, err);
        }
        manifest.subcommand = "schedule";
        for (const auto &f : {sched.graph.file, sched.params_file}) {
            if (!f.empty()) {
                manifest.inputs.emplace_back(f);
            }
        }
        return cmd_schedule(sched, manifest, out, err);
    } catch (const UsageError &e) {
        err << "usage: " << e.what() << '\n';
        return ExitCode::usage_error;
    } catch (const NumericError &e) {
        err << "numeric failure: " << e.what() << '\n';
        return ExitCode::numeric_error;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::domain_error;
    }
}

} // namespace sqw::cli

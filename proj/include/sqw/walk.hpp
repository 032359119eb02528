#pragma once

#include "sqw/error.hpp"
#include "sqw/graph.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace sqw {

using Amplitude = std::complex<double>;

inline constexpr double norm_tolerance = 1e-12;

/**
 * How singletons evolve under a local unitary.
 *
 * abstract: the reflection has eigenvalue +1 on a singleton, so it picks up
 * e^{i theta}. physical: the resonator on a singleton only carries its bare
 * frequency, whose global phase is dropped, so it is left untouched.
 * Pair blocks are identical under both.
 */
enum class Convention { abstract, physical };

inline std::string_view to_string(Convention c) {
    return c == Convention::abstract ? "abstract" : "physical";
}

inline Convention parse_convention(std::string_view s) {
    if (s == "abstract") {
        return Convention::abstract;
    }
    if (s == "physical") {
        return Convention::physical;
    }
    throw DomainError("unknown convention '" + std::string(s) + "'");
}

/// Reflection H = 2 sum_k |a_k><a_k| - I stored by its pairs and singletons.
struct HamiltonianSpec {
    std::size_t dimension = 0;
    std::vector<Edge> pairs;
    std::vector<Node> singletons;

    friend bool operator==(const HamiltonianSpec &, const HamiltonianSpec &) = default;
};

/// Single-excitation state: one complex amplitude per node, unit norm.
class StateVector {
  public:
    StateVector() = default;

    /// Throws DomainError when the squared norm differs from 1 by more than norm_tolerance.
    explicit StateVector(std::vector<Amplitude> amplitudes) : amps_(std::move(amplitudes)) {
        const double n2 = squared_norm();
        if (!std::isfinite(n2) || std::abs(n2 - 1.0) > norm_tolerance) {
            throw DomainError("state is not normalised (|psi|^2 = " + std::to_string(n2) + ")");
        }
    }

    /// Wraps evolved amplitudes without re-checking the norm.
    static StateVector adopt(std::vector<Amplitude> amplitudes) {
        StateVector s;
        s.amps_ = std::move(amplitudes);
        return s;
    }

    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    const Amplitude &operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double squared_norm() const noexcept {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }
    [[nodiscard]] double norm() const noexcept { return std::sqrt(squared_norm()); }

    friend bool operator==(const StateVector &, const StateVector &) = default;

  private:
    std::vector<Amplitude> amps_;
};

struct WalkConfig {
    double theta = 0.0; ///< theta = kappa * tau
    Convention convention = Convention::physical;
    std::size_t steps = 0;
    /// Worker threads for pair updates within one tessellation; 1 = serial.
    std::size_t threads = 1;
};

/// Builds the reflection for @p t, checking only that it partitions [0, n)
/// into 1- and 2-node elements.
inline HamiltonianSpec hamiltonian_from_partition(std::size_t n, const Tessellation &t) {
    HamiltonianSpec h{n, {}, {}};
    std::vector<bool> seen(n, false);
    auto claim = [&](Node v) {
        if (v >= n) {
            throw DomainError("tessellation node " + std::to_string(v) + " out of range");
        }
        if (seen[v]) {
            throw DomainError("tessellation node " + std::to_string(v) + " repeated");
        }
        seen[v] = true;
    };
    for (const auto &el : t.elements) {
        if (el.size() == 1) {
            claim(el[0]);
            h.singletons.push_back(el[0]);
        } else if (el.size() == 2) {
            claim(el[0]);
            claim(el[1]);
            h.pairs.emplace_back(el[0], el[1]);
        } else {
            throw DomainError("tessellation element with " + std::to_string(el.size()) +
                              " nodes");
        }
    }
    for (Node v = 0; v < n; ++v) {
        if (!seen[v]) {
            throw DomainError("tessellation misses node " + std::to_string(v));
        }
    }
    return h;
}

inline HamiltonianSpec hamiltonian_from_tessellation(const Graph &g, const Tessellation &t) {
    auto v = validate_tessellation(g, t);
    if (!v.empty()) {
        throw DomainError("invalid tessellation: " + v.front().reason);
    }
    return hamiltonian_from_partition(g.node_count(), t);
}

inline std::vector<HamiltonianSpec> hamiltonians_from_partitions(std::size_t n,
                                                                 const TessellationSet &ts) {
    std::vector<HamiltonianSpec> out;
    out.reserve(ts.size());
    for (const auto &t : ts.tessellations) {
        out.push_back(hamiltonian_from_partition(n, t));
    }
    return out;
}

namespace detail {

inline constexpr std::size_t min_pairs_per_thread = 256;

inline void rotate_pairs(std::span<Amplitude> amps, std::span<const Edge> pairs, double c,
                         double s) {
    const Amplitude is{0.0, s};
    for (const auto &[i, j] : pairs) {
        const Amplitude ai = amps[i];
        const Amplitude aj = amps[j];
        amps[i] = c * ai + is * aj;
        amps[j] = is * ai + c * aj;
    }
}

/// In-place exp(i theta H) on the pair blocks, plus the convention's singleton phase.
inline void apply_local_unitary(std::span<Amplitude> amps, const HamiltonianSpec &h,
                                const WalkConfig &cfg) {
    if (amps.size() != h.dimension) {
        throw DomainError("state dimension " + std::to_string(amps.size()) +
                          " does not match Hamiltonian dimension " +
                          std::to_string(h.dimension));
    }
    const double c = std::cos(cfg.theta);
    const double s = std::sin(cfg.theta);

    const std::span<const Edge> pairs(h.pairs);
    const std::size_t workers =
        std::min(cfg.threads, std::max<std::size_t>(1, pairs.size() / min_pairs_per_thread));
    if (workers <= 1) {
        rotate_pairs(amps, pairs, c, s);
    } else {
        // pairs are disjoint, so chunks touch disjoint amplitudes
        std::vector<std::jthread> pool;
        const std::size_t chunk = (pairs.size() + workers - 1) / workers;
        for (std::size_t begin = 0; begin < pairs.size(); begin += chunk) {
            auto part = pairs.subspan(begin, std::min(chunk, pairs.size() - begin));
            pool.emplace_back([amps, part, c, s] { rotate_pairs(amps, part, c, s); });
        }
    }

    if (cfg.convention == Convention::abstract) {
        const Amplitude phase{c, s};
        for (Node v : h.singletons) {
            amps[v] *= phase;
        }
    }
}

} // namespace detail

inline StateVector local_unitary(const StateVector &state, const HamiltonianSpec &h,
                                 const WalkConfig &cfg) {
    std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
    detail::apply_local_unitary(amps, h, cfg);
    return StateVector::adopt(std::move(amps));
}

struct Evolution {
    StateVector final_state;
    /// history[l] is the state after l steps; empty unless requested.
    std::vector<StateVector> history;
};

/**
 * @brief Apply cfg.steps walk steps, each the product of local unitaries in
 * list order (hamiltonians[0] acts first).
 */
inline Evolution evolve(const StateVector &state, const std::vector<HamiltonianSpec> &hamiltonians,
                        const WalkConfig &cfg, bool record_history = false) {
    for (const auto &h : hamiltonians) {
        if (h.dimension != state.size()) {
            throw DomainError("state dimension " + std::to_string(state.size()) +
                              " does not match Hamiltonian dimension " +
                              std::to_string(h.dimension));
        }
    }
    std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
    Evolution out;
    if (record_history) {
        out.history.reserve(cfg.steps + 1);
        out.history.push_back(state);
    }
    for (std::size_t step = 0; step < cfg.steps; ++step) {
        for (const auto &h : hamiltonians) {
            detail::apply_local_unitary(amps, h, cfg);
        }
        if (record_history) {
            out.history.push_back(StateVector::adopt(amps));
        }
    }
    out.final_state = StateVector::adopt(std::move(amps));
    return out;
}

inline Evolution evolve(const StateVector &state, const TessellationSet &ts, const WalkConfig &cfg,
                        bool record_history = false) {
    return evolve(state, hamiltonians_from_partitions(state.size(), ts), cfg, record_history);
}

inline StateVector initial_basis_state(std::size_t n, Node node) {
    if (node >= n) {
        throw DomainError("start node " + std::to_string(node) + " outside [0, " +
                          std::to_string(n) + ")");
    }
    std::vector<Amplitude> amps(n, Amplitude{0.0, 0.0});
    amps[node] = 1.0;
    return StateVector(std::move(amps));
}

inline std::vector<double> probability_distribution(const StateVector &state) {
    std::vector<double> p;
    p.reserve(state.size());
    for (const auto &a : state.amplitudes()) {
        p.push_back(std::norm(a));
    }
    return p;
}

/// Standard deviation of the position about @p origin for each distribution.
inline std::vector<double> spread_statistics(const std::vector<std::vector<double>> &history,
                                             Node origin) {
    if (history.empty()) {
        throw DomainError("spread statistics need at least one distribution");
    }
    std::vector<double> sigma;
    sigma.reserve(history.size());
    for (const auto &p : history) {
        double m1 = 0.0, m2 = 0.0;
        for (std::size_t n = 0; n < p.size(); ++n) {
            const double x = static_cast<double>(n) - static_cast<double>(origin);
            m1 += p[n] * x;
            m2 += p[n] * x * x;
        }
        sigma.push_back(std::sqrt(std::max(0.0, m2 - m1 * m1)));
    }
    return sigma;
}

} // namespace sqw

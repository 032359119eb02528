#pragma once

// Generators and independent oracles shared by the unit and acceptance tests.

#include "sqw/graph.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <vector>

namespace sqw::fixtures {

inline Graph random_tree(std::size_t n, std::mt19937_64 &rng) {
    std::vector<Edge> edges;
    for (Node v = 1; v < n; ++v) {
        std::uniform_int_distribution<Node> parent(0, v - 1);
        edges.emplace_back(parent(rng), v);
    }
    return Graph(n, edges);
}

inline Graph cycle(std::size_t n) {
    std::vector<Edge> edges;
    for (Node v = 0; v < n; ++v) {
        edges.emplace_back(v, (v + 1) % n);
    }
    return Graph(n, edges);
}

/// Random edges added one at a time, skipping any that would close a triangle.
inline Graph random_triangle_free(std::size_t n, std::size_t attempts, std::mt19937_64 &rng) {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    std::vector<Edge> edges;
    std::uniform_int_distribution<Node> pick(0, n - 1);
    for (std::size_t k = 0; k < attempts; ++k) {
        Node a = pick(rng), b = pick(rng);
        if (a == b || adj[a][b]) {
            continue;
        }
        bool closes = false;
        for (Node c = 0; c < n && !closes; ++c) {
            closes = adj[a][c] && adj[b][c];
        }
        if (!closes) {
            adj[a][b] = adj[b][a] = true;
            edges.emplace_back(a, b);
        }
    }
    return Graph(n, edges);
}

inline Graph random_graph(std::size_t n, double p, std::mt19937_64 &rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (Node a = 0; a < n; ++a) {
        for (Node b = a + 1; b < n; ++b) {
            if (coin(rng)) {
                edges.emplace_back(a, b);
            }
        }
    }
    return Graph(n, edges);
}

inline Graph petersen() {
    std::vector<Edge> edges;
    for (Node i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);         // outer cycle
        edges.emplace_back(i, i + 5);               // spokes
        edges.emplace_back(5 + i, 5 + (i + 2) % 5); // inner pentagram
    }
    return Graph(10, edges);
}

/// Graph distances from @p source by breadth-first search (unreachable = max).
inline std::vector<std::size_t> bfs_distances(const Graph &g, Node source) {
    std::vector<std::size_t> dist(g.node_count(), static_cast<std::size_t>(-1));
    std::queue<Node> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        Node v = q.front();
        q.pop();
        for (Node w : g.neighbors(v)) {
            if (dist[w] == static_cast<std::size_t>(-1)) {
                dist[w] = dist[v] + 1;
                q.push(w);
            }
        }
    }
    return dist;
}

/// Composite Simpson rule with @p panels (even) sub-intervals.
inline double simpson(const std::function<double(double)> &f, double a, double b,
                      std::size_t panels = 20000) {
    const double h = (b - a) / static_cast<double>(panels);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < panels; ++i) {
        s += f(a + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

/**
 * Normalisation amplitude by quadrature, in units where L = 1:
 * u(x) = cos(kx) + b sin(k|x|) with b = B/A = -4 chi_c kL + chi_l_sum / (2kL)
 * taken from the boundary condition at x = 0 (not from tan kL), then
 * A^2 [ int_{-1}^{1} u^2 dx + 8 chi_c ] = 1.
 */
inline double quadrature_amplitude(double kL, double chi_c, double chi_l_sum) {
    const double b = -4.0 * chi_c * kL + chi_l_sum / (2.0 * kL);
    auto u2 = [&](double x) {
        const double u = std::cos(kL * x) + b * std::sin(kL * std::abs(x));
        return u * u;
    };
    const double integral = simpson(u2, -1.0, 0.0) + simpson(u2, 0.0, 1.0);
    return 1.0 / std::sqrt(integral + 8.0 * chi_c);
}

/**
 * Same integral with b = tan kL taken from the open ends, u'(+-1) = 0. Valid at
 * any kL, root or not, so it pins the closed form at a fixed kL.
 */
inline double quadrature_amplitude_open_end(double kL, double chi_c) {
    const double b = std::tan(kL);
    auto u2 = [&](double x) {
        const double u = std::cos(kL * x) + b * std::sin(kL * std::abs(x));
        return u * u;
    };
    const double integral = simpson(u2, -1.0, 0.0) + simpson(u2, 0.0, 1.0);
    return 1.0 / std::sqrt(integral + 8.0 * chi_c);
}

} // namespace sqw::fixtures

#pragma once

#include "sqw/error.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sqw {

using Node = std::size_t;
using Edge = std::pair<Node, Node>;

/**
 * @brief Simple undirected graph on nodes [0, node_count).
 *
 * Edges are stored normalized (first < second), sorted and deduplicated.
 * Self-loops and out-of-range endpoints are rejected on construction.
 */
class Graph {
  public:
    Graph() = default;

    Graph(std::size_t node_count, std::vector<Edge> edges)
        : node_count_(node_count), adjacency_(node_count) {
        for (auto &[a, b] : edges) {
            if (a >= node_count || b >= node_count) {
                throw DomainError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") references a node outside [0, " +
                                  std::to_string(node_count) + ")");
            }
            if (a == b) {
                throw DomainError("self-loop on node " + std::to_string(a));
            }
            if (a > b) {
                std::swap(a, b);
            }
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        edges_ = std::move(edges);
        for (const auto &[a, b] : edges_) {
            adjacency_[a].push_back(b);
            adjacency_[b].push_back(a);
        }
        for (auto &nbrs : adjacency_) {
            std::sort(nbrs.begin(), nbrs.end());
        }
    }

    [[nodiscard]] std::size_t node_count() const noexcept { return node_count_; }
    [[nodiscard]] const std::vector<Edge> &edges() const noexcept { return edges_; }
    [[nodiscard]] const std::vector<Node> &neighbors(Node n) const { return adjacency_.at(n); }
    [[nodiscard]] std::size_t degree(Node n) const { return adjacency_.at(n).size(); }

    [[nodiscard]] std::size_t max_degree() const noexcept {
        std::size_t d = 0;
        for (const auto &nbrs : adjacency_) {
            d = std::max(d, nbrs.size());
        }
        return d;
    }

    [[nodiscard]] bool has_edge(Node a, Node b) const {
        if (a >= node_count_ || b >= node_count_) {
            return false;
        }
        const auto &nbrs = adjacency_[a];
        return std::binary_search(nbrs.begin(), nbrs.end(), b);
    }

    friend bool operator==(const Graph &x, const Graph &y) {
        return x.node_count_ == y.node_count_ && x.edges_ == y.edges_;
    }

  private:
    std::size_t node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Node>> adjacency_;
};

inline Graph build_graph(std::size_t node_count, std::vector<Edge> edges) {
    return Graph(node_count, std::move(edges));
}

/// One element of a tessellation. Valid elements hold one node or two
/// adjacent nodes; other sizes are representable so that loaders can report them.
using Element = std::vector<Node>;

struct Tessellation {
    std::vector<Element> elements;

    [[nodiscard]] std::vector<Edge> pairs() const {
        std::vector<Edge> out;
        for (const auto &e : elements) {
            if (e.size() == 2) {
                out.emplace_back(std::min(e[0], e[1]), std::max(e[0], e[1]));
            }
        }
        return out;
    }

    friend bool operator==(const Tessellation &, const Tessellation &) = default;
};

/// Ordered tessellations; element k of the list is applied k-th within a step.
struct TessellationSet {
    std::vector<Tessellation> tessellations;

    [[nodiscard]] std::size_t size() const noexcept { return tessellations.size(); }
    [[nodiscard]] bool empty() const noexcept { return tessellations.empty(); }
    const Tessellation &operator[](std::size_t i) const { return tessellations[i]; }

    friend bool operator==(const TessellationSet &, const TessellationSet &) = default;
};

struct GeneratedGraph {
    Graph graph;
    TessellationSet tessellations;
};

inline bool is_triangle_free(const Graph &g) {
    std::vector<Node> common;
    for (const auto &[a, b] : g.edges()) {
        const auto &na = g.neighbors(a);
        const auto &nb = g.neighbors(b);
        common.clear();
        std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                              std::back_inserter(common));
        if (!common.empty()) {
            return false;
        }
    }
    return true;
}

struct Violation {
    static constexpr std::size_t no_element = std::numeric_limits<std::size_t>::max();

    std::size_t element_index = no_element;
    std::string reason;
};

/**
 * @brief Check that @p t partitions the nodes of @p g into 1- and 2-node
 * cliques.
 *
 * Returns an empty list when the tessellation is valid. Each violation names
 * the offending element (or no_element for uncovered nodes) and the reason.
 */
inline std::vector<Violation> validate_tessellation(const Graph &g, const Tessellation &t) {
    std::vector<Violation> out;
    constexpr std::size_t unseen = Violation::no_element;
    std::vector<std::size_t> owner(g.node_count(), unseen);

    for (std::size_t k = 0; k < t.elements.size(); ++k) {
        const auto &el = t.elements[k];
        if (el.empty() || el.size() > 2) {
            out.push_back({k, "element has " + std::to_string(el.size()) +
                                  " nodes; expected 1 or 2"});
            continue;
        }
        bool in_range = true;
        for (Node n : el) {
            if (n >= g.node_count()) {
                out.push_back({k, "node " + std::to_string(n) + " is out of range"});
                in_range = false;
            }
        }
        if (!in_range) {
            continue;
        }
        if (el.size() == 2) {
            if (el[0] == el[1]) {
                out.push_back({k, "node " + std::to_string(el[0]) + " repeated within element"});
                continue;
            }
            if (!g.has_edge(el[0], el[1])) {
                out.push_back({k, "(" + std::to_string(el[0]) + "," + std::to_string(el[1]) +
                                      ") is not an edge"});
            }
        }
        for (Node n : el) {
            if (owner[n] != unseen) {
                out.push_back({k, "node " + std::to_string(n) + " repeated (already in element " +
                                      std::to_string(owner[n]) + ")"});
            } else {
                owner[n] = k;
            }
        }
    }
    for (Node n = 0; n < g.node_count(); ++n) {
        if (owner[n] == unseen) {
            out.push_back({Violation::no_element, "node " + std::to_string(n) + " not covered"});
        }
    }
    return out;
}

/// True when the union of all 2-node elements equals the edge set of @p g.
inline bool covers_edges(const Graph &g, const TessellationSet &ts) {
    std::vector<Edge> seen;
    for (const auto &t : ts.tessellations) {
        auto p = t.pairs();
        seen.insert(seen.end(), p.begin(), p.end());
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    return seen == g.edges();
}

/// Throws DomainError unless every tessellation validates and the set covers all edges.
inline void require_valid(const Graph &g, const TessellationSet &ts) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
        auto v = validate_tessellation(g, ts[i]);
        if (!v.empty()) {
            std::string msg = "tessellation " + std::to_string(i) + " invalid: " + v.front().reason;
            if (v.front().element_index != Violation::no_element) {
                msg += " (element " + std::to_string(v.front().element_index) + ")";
            }
            throw DomainError(msg);
        }
    }
    if (!covers_edges(g, ts)) {
        throw DomainError("tessellations do not cover the edge set exactly");
    }
}

namespace detail {

/// Turns a matching into a tessellation: one element per pair, remaining nodes as
/// singletons, elements ordered by their smallest node.
inline Tessellation pad_with_singletons(std::size_t node_count, const std::vector<Edge> &matching) {
    std::vector<bool> used(node_count, false);
    Tessellation t;
    for (const auto &[a, b] : matching) {
        t.elements.push_back({std::min(a, b), std::max(a, b)});
        used[a] = used[b] = true;
    }
    for (Node n = 0; n < node_count; ++n) {
        if (!used[n]) {
            t.elements.push_back({n});
        }
    }
    std::sort(t.elements.begin(), t.elements.end());
    return t;
}

} // namespace detail

/**
 * @brief Square lattice with open boundaries and its 2·dims.size()
 * tessellations.
 *
 * Nodes are indexed row-major (last axis fastest). For axis a and parity p,
 * node x is paired with x + e_a whenever the coordinate sum of x has parity p.
 * Every interior node therefore belongs to exactly two pairs per axis, and
 * each pairing is a matching. In one dimension this reduces to the even/odd
 * pairing of a path.
 */
inline GeneratedGraph generate_lattice_tessellations(const std::vector<std::size_t> &dims) {
    if (dims.empty()) {
        throw DomainError("lattice needs at least one dimension");
    }
    std::size_t n = 1;
    for (auto d : dims) {
        if (d < 1) {
            throw DomainError("lattice dimensions must be >= 1");
        }
        n *= d;
    }
    const std::size_t rank = dims.size();
    std::vector<std::size_t> stride(rank, 1);
    for (std::size_t a = rank - 1; a > 0; --a) {
        stride[a - 1] = stride[a] * dims[a];
    }

    std::vector<Edge> edges;
    std::vector<std::vector<Edge>> matchings(2 * rank);
    std::vector<std::size_t> coord(rank, 0);
    for (Node x = 0; x < n; ++x) {
        std::size_t rem = x;
        std::size_t sum = 0;
        for (std::size_t a = 0; a < rank; ++a) {
            coord[a] = rem / stride[a];
            rem %= stride[a];
            sum += coord[a];
        }
        for (std::size_t a = 0; a < rank; ++a) {
            if (coord[a] + 1 < dims[a]) {
                Edge e{x, x + stride[a]};
                edges.push_back(e);
                matchings[2 * a + (sum % 2)].push_back(e);
            }
        }
    }

    GeneratedGraph out{Graph(n, std::move(edges)), {}};
    for (const auto &m : matchings) {
        out.tessellations.tessellations.push_back(detail::pad_with_singletons(n, m));
    }
    return out;
}

/**
 * @brief Path on @p node_count nodes with its even and odd tessellations.
 *
 * Tessellation 0 pairs (2l, 2l+1), tessellation 1 pairs (2l+1, 2l+2); nodes
 * left over at the boundary become singletons.
 */
inline GeneratedGraph generate_path_tessellations(std::size_t node_count) {
    if (node_count == 0) {
        throw DomainError("path needs at least one node");
    }
    return generate_lattice_tessellations({node_count});
}

namespace detail {

/// Rounds of maximal matchings over the not-yet-covered edges, in edge order.
inline std::vector<std::vector<Edge>> greedy_matchings(const Graph &g) {
    std::vector<std::vector<Edge>> rounds;
    std::vector<Edge> remaining = g.edges();
    std::vector<bool> matched(g.node_count());
    while (!remaining.empty()) {
        std::fill(matched.begin(), matched.end(), false);
        std::vector<Edge> round, rest;
        for (const auto &e : remaining) {
            if (!matched[e.first] && !matched[e.second]) {
                matched[e.first] = matched[e.second] = true;
                round.push_back(e);
            } else {
                rest.push_back(e);
            }
        }
        rounds.push_back(std::move(round));
        remaining = std::move(rest);
    }
    return rounds;
}

/// Misra–Gries edge colouring with at most max_degree + 1 colours.
class MisraGries {
  public:
    explicit MisraGries(const Graph &g)
        : g_(g), colors_(g.max_degree() + 1),
          at_(g.node_count(), std::vector<Node>(colors_, none)) {}

    std::vector<std::vector<Edge>> run() {
        for (const auto &[u, v] : g_.edges()) {
            color_edge(u, v);
        }
        std::vector<std::vector<Edge>> classes(colors_);
        for (const auto &[u, v] : g_.edges()) {
            classes[color_of(u, v)].push_back({u, v});
        }
        std::erase_if(classes, [](const auto &c) { return c.empty(); });
        return classes;
    }

  private:
    static constexpr Node none = std::numeric_limits<Node>::max();
    static constexpr std::size_t no_color = std::numeric_limits<std::size_t>::max();

    bool is_free(Node u, std::size_t c) const { return at_[u][c] == none; }

    std::size_t free_color(Node u) const {
        for (std::size_t c = 0; c < colors_; ++c) {
            if (is_free(u, c)) {
                return c;
            }
        }
        throw NumericError("edge colouring ran out of colours");
    }

    std::size_t color_of(Node u, Node v) const {
        for (std::size_t c = 0; c < colors_; ++c) {
            if (at_[u][c] == v) {
                return c;
            }
        }
        return no_color;
    }

    void set(Node u, Node v, std::size_t c) {
        at_[u][c] = v;
        at_[v][c] = u;
    }

    void clear(Node u, Node v) {
        auto c = color_of(u, v);
        if (c != no_color) {
            at_[u][c] = none;
            at_[v][c] = none;
        }
    }

    void color_edge(Node x, Node v) {
        // maximal fan of x starting at v
        std::vector<Node> fan{v};
        std::vector<bool> in_fan(g_.node_count(), false);
        in_fan[v] = true;
        for (bool grew = true; grew;) {
            grew = false;
            for (Node w : g_.neighbors(x)) {
                if (in_fan[w]) {
                    continue;
                }
                auto c = color_of(x, w);
                if (c != no_color && is_free(fan.back(), c)) {
                    fan.push_back(w);
                    in_fan[w] = true;
                    grew = true;
                    break;
                }
            }
        }

        const auto c = free_color(x);
        const auto d = free_color(fan.back());

        // invert the cd-path starting at x
        if (c != d) {
            std::vector<std::pair<Edge, std::size_t>> path;
            Node cur = x;
            std::size_t want = d;
            while (!is_free(cur, want)) {
                Node nxt = at_[cur][want];
                path.push_back({{cur, nxt}, want});
                cur = nxt;
                want = (want == d) ? c : d;
            }
            for (const auto &[e, col] : path) {
                clear(e.first, e.second);
            }
            for (const auto &[e, col] : path) {
                set(e.first, e.second, col == d ? c : d);
            }
        }

        // first w in the fan with d free whose prefix is still a fan
        std::size_t w = 0;
        for (; w < fan.size(); ++w) {
            bool prefix_ok = true;
            for (std::size_t j = 1; j <= w && prefix_ok; ++j) {
                auto cj = color_of(x, fan[j]);
                prefix_ok = cj != no_color && is_free(fan[j - 1], cj);
            }
            if (prefix_ok && is_free(fan[w], d)) {
                break;
            }
        }
        if (w == fan.size()) {
            throw NumericError("edge colouring failed to find a rotatable fan");
        }

        // rotate fan[0..w] and colour (x, fan[w]) with d
        for (std::size_t i = 0; i < w; ++i) {
            auto next_c = color_of(x, fan[i + 1]);
            clear(x, fan[i + 1]);
            set(x, fan[i], next_c);
        }
        set(x, fan[w], d);
    }

    const Graph &g_;
    std::size_t colors_;
    std::vector<std::vector<Node>> at_;
};

} // namespace detail

/**
 * @brief Cover the edges of a triangle-free graph with tessellations built
 * from matchings.
 *
 * Tries rounds of greedy maximal matchings first and falls back to a
 * Misra–Gries edge colouring, keeping whichever uses fewer tessellations. The
 * result never exceeds max_degree + 1 tessellations, and an edgeless graph
 * yields a single all-singleton tessellation.
 */
inline TessellationSet greedy_tessellate(const Graph &g) {
    if (!is_triangle_free(g)) {
        throw DomainError("graph contains a triangle; 2-node tessellations cannot cover it");
    }
    TessellationSet out;
    if (g.edges().empty()) {
        out.tessellations.push_back(detail::pad_with_singletons(g.node_count(), {}));
        return out;
    }
    auto rounds = detail::greedy_matchings(g);
    if (rounds.size() > g.max_degree()) {
        auto colouring = detail::MisraGries(g).run();
        if (colouring.size() < rounds.size()) {
            rounds = std::move(colouring);
        }
    }
    for (const auto &m : rounds) {
        out.tessellations.push_back(detail::pad_with_singletons(g.node_count(), m));
    }
    return out;
}

} // namespace sqw

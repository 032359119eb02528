#pragma once

#include "sqw/error.hpp"
#include "sqw/graph.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace sqw {

/// Contents of a graph file: `{"nodes": int, "edges": [[i,j],...],
/// "tessellations": [[[i,j]|[i],...],...]}`, tessellations optional.
struct GraphFile {
    Graph graph;
    std::optional<TessellationSet> tessellations;
};

namespace detail {

inline nlohmann::json parse_json_text(const std::string &text, const std::string &what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw DomainError(what + ": parse error at byte " + std::to_string(e.byte) + ": " +
                          e.what());
    }
}

inline std::size_t as_index(const nlohmann::json &j, const std::string &field) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw DomainError(field + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

} // namespace detail

/// Parse and validate a graph file. Tessellations, when present, must pass
/// validate_tessellation and cover every edge.
inline GraphFile parse_graph_json(const std::string &text) {
    const auto j = detail::parse_json_text(text, "graph file");
    if (!j.is_object() || !j.contains("nodes") || !j.contains("edges")) {
        throw DomainError("graph file: expected object with \"nodes\" and \"edges\"");
    }
    const auto n = detail::as_index(j.at("nodes"), "nodes");
    std::vector<Edge> edges;
    if (!j.at("edges").is_array()) {
        throw DomainError("graph file: \"edges\" must be an array");
    }
    for (const auto &e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) {
            throw DomainError("graph file: each edge must be a pair [i, j]");
        }
        edges.emplace_back(detail::as_index(e[0], "edge endpoint"),
                           detail::as_index(e[1], "edge endpoint"));
    }
    GraphFile out{Graph(n, std::move(edges)), std::nullopt};

    if (j.contains("tessellations")) {
        const auto &jt = j.at("tessellations");
        if (!jt.is_array()) {
            throw DomainError("graph file: \"tessellations\" must be an array");
        }
        TessellationSet ts;
        for (const auto &tess : jt) {
            if (!tess.is_array()) {
                throw DomainError("graph file: each tessellation must be an array of elements");
            }
            Tessellation t;
            for (const auto &el : tess) {
                if (!el.is_array()) {
                    throw DomainError("graph file: tessellation elements must be arrays");
                }
                Element e;
                for (const auto &node : el) {
                    e.push_back(detail::as_index(node, "tessellation node"));
                }
                t.elements.push_back(std::move(e));
            }
            ts.tessellations.push_back(std::move(t));
        }
        require_valid(out.graph, ts);
        out.tessellations = std::move(ts);
    }
    return out;
}

inline std::string emit_graph_json(const Graph &g, const TessellationSet *ts = nullptr) {
    nlohmann::json j;
    j["nodes"] = g.node_count();
    auto edges = nlohmann::json::array();
    for (const auto &[a, b] : g.edges()) {
        edges.push_back({a, b});
    }
    j["edges"] = std::move(edges);
    if (ts != nullptr) {
        auto jt = nlohmann::json::array();
        for (const auto &t : ts->tessellations) {
            auto els = nlohmann::json::array();
            for (const auto &el : t.elements) {
                els.push_back(el);
            }
            jt.push_back(std::move(els));
        }
        j["tessellations"] = std::move(jt);
    }
    return j.dump();
}

} // namespace sqw

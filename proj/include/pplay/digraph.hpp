#pragma once

// Directed communication graphs. Every node always carries a self-loop:
// an agent is an in- and out-neighbor of itself, which also keeps every
// out-degree at least one (the broadcast divisor in the protocol).

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pplay {

class Digraph {
public:
    explicit Digraph(int n) : n_(n), out_(static_cast<std::size_t>(n)) {
        if (n < 1) throw std::invalid_argument("digraph needs at least one node");
        for (int i = 0; i < n; ++i) out_[static_cast<std::size_t>(i)].push_back(i);
    }

    int node_count() const { return n_; }

    void add_edge(int u, int v) {
        check_node(u);
        check_node(v);
        auto& adj = out_[static_cast<std::size_t>(u)];
        auto it = std::lower_bound(adj.begin(), adj.end(), v);
        if (it == adj.end() || *it != v) adj.insert(it, v);
    }

    bool has_edge(int u, int v) const {
        check_node(u);
        check_node(v);
        const auto& adj = out_[static_cast<std::size_t>(u)];
        return std::binary_search(adj.begin(), adj.end(), v);
    }

    int out_degree(int u) const {
        check_node(u);
        return static_cast<int>(out_[static_cast<std::size_t>(u)].size());
    }

    const std::vector<int>& out_neighbors(int u) const {
        check_node(u);
        return out_[static_cast<std::size_t>(u)];
    }

    std::size_t edge_count() const {
        std::size_t c = 0;
        for (const auto& adj : out_) c += adj.size();
        return c;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        e.reserve(edge_count());
        for (int u = 0; u < n_; ++u) {
            for (int v : out_[static_cast<std::size_t>(u)]) e.emplace_back(u, v);
        }
        return e;
    }

    bool operator==(const Digraph& other) const { return n_ == other.n_ && out_ == other.out_; }

private:
    void check_node(int u) const {
        if (u < 0 || u >= n_) {
            throw std::invalid_argument("node " + std::to_string(u) + " out of range [0, " +
                                        std::to_string(n_) + ")");
        }
    }

    int n_;
    std::vector<std::vector<int>> out_;
};

namespace detail {

inline void reach(const Digraph& g, int start, std::vector<char>& seen, bool reversed) {
    const int n = g.node_count();
    std::vector<std::vector<int>> in;
    if (reversed) {
        in.assign(static_cast<std::size_t>(n), {});
        for (int u = 0; u < n; ++u) {
            for (int v : g.out_neighbors(u)) in[static_cast<std::size_t>(v)].push_back(u);
        }
    }
    std::vector<int> stack{start};
    seen.assign(static_cast<std::size_t>(n), 0);
    seen[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        const auto& next = reversed ? in[static_cast<std::size_t>(u)] : g.out_neighbors(u);
        for (int v : next) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                stack.push_back(v);
            }
        }
    }
}

}  // namespace detail

// Node 0 reaches everyone and everyone reaches node 0 iff the graph is
// strongly connected.
inline bool is_strongly_connected(const Digraph& g) {
    std::vector<char> seen;
    detail::reach(g, 0, seen, /*reversed=*/false);
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return false;
    detail::reach(g, 0, seen, /*reversed=*/true);
    return std::find(seen.begin(), seen.end(), 0) == seen.end();
}

inline Digraph union_graph(std::span<const Digraph> graphs) {
    if (graphs.empty()) throw std::invalid_argument("union_graph: empty sequence");
    const int n = graphs.front().node_count();
    Digraph u(n);
    for (const auto& g : graphs) {
        if (g.node_count() != n) throw std::invalid_argument("union_graph: node count mismatch");
        for (int a = 0; a < n; ++a) {
            for (int b : g.out_neighbors(a)) u.add_edge(a, b);
        }
    }
    return u;
}

}  // namespace pplay

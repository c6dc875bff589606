#pragma once

// Time-varying graph schedules. A schedule promises that the union of any
// S consecutive graphs is strongly connected; the generator is a pure
// function of (t, seed) so schedules replay bit-exactly.

#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pplay/digraph.hpp"
#include "pplay/rng.hpp"

namespace pplay {

class GraphSchedule {
public:
    using Generator = std::function<Digraph(std::int64_t)>;

    GraphSchedule(int n, int s, Generator gen) : n_(n), s_(s), gen_(std::move(gen)) {
        if (n < 1) throw std::invalid_argument("graph schedule needs at least one node");
        if (s < 1) throw std::invalid_argument("graph schedule window must be >= 1");
        if (!gen_) throw std::invalid_argument("graph schedule needs a generator");
    }

    int node_count() const { return n_; }
    int window() const { return s_; }

    Digraph graph_at(std::int64_t t) const {
        if (t < 0) throw std::invalid_argument("graph schedule index must be >= 0");
        Digraph g = gen_(t);
        if (g.node_count() != n_) throw std::invalid_argument("generator produced wrong node count");
        return g;
    }

    static GraphSchedule constant(const Digraph& g, int s = 1) {
        return GraphSchedule(g.node_count(), s, [g](std::int64_t) { return g; });
    }

    // Replays a fixed list; queries past the end throw.
    static GraphSchedule from_list(std::vector<Digraph> graphs, int s) {
        if (graphs.empty()) throw std::invalid_argument("graph list is empty");
        const int n = graphs.front().node_count();
        auto shared = std::make_shared<std::vector<Digraph>>(std::move(graphs));
        return GraphSchedule(n, s, [shared](std::int64_t t) {
            if (t >= static_cast<std::int64_t>(shared->size())) {
                throw std::invalid_argument("graph list exhausted at t=" + std::to_string(t));
            }
            return (*shared)[static_cast<std::size_t>(t)];
        });
    }

private:
    int n_;
    int s_;
    Generator gen_;
};

struct ConnectivityReport {
    bool ok = false;
    std::int64_t first_violation = -1;  // start of the first bad window
    std::int64_t horizon = 0;
    int window = 0;

    std::string to_text() const {
        std::ostringstream os;
        if (ok) {
            os << "pass: every window of " << window << " graphs over [0, " << horizon
               << ") has a strongly connected union";
        } else {
            os << "fail: union over [" << first_violation << ", " << first_violation + window
               << ") is not strongly connected";
        }
        return os.str();
    }
};

inline ConnectivityReport verify_s_strong_connectivity(const GraphSchedule& sched, std::int64_t horizon) {
    const int s = sched.window();
    if (horizon < s) throw std::invalid_argument("verification horizon must cover at least one window");
    ConnectivityReport rep;
    rep.horizon = horizon;
    rep.window = s;
    // sliding window of the last S graphs
    std::vector<Digraph> win;
    win.reserve(static_cast<std::size_t>(s));
    for (std::int64_t t = 0; t < horizon; ++t) {
        if (static_cast<int>(win.size()) == s) win.erase(win.begin());
        win.push_back(sched.graph_at(t));
        if (static_cast<int>(win.size()) == s) {
            if (!is_strongly_connected(union_graph(win))) {
                rep.ok = false;
                rep.first_violation = t - s + 1;
                return rep;
            }
        }
    }
    rep.ok = true;
    return rep;
}

// Random schedule that is S-strongly connected by construction: every slot
// t with t % s == 0 carries a directed Hamiltonian cycle (written starting
// from offset (t/s) mod n), so any window of length S contains one full
// cycle; the remaining slots carry random edges of the given density.
// Self-loops are always present.
inline GraphSchedule generate_random_s_connected(int n, int s, double density, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("schedule needs at least one node");
    if (s < 1) throw std::invalid_argument("schedule window must be >= 1");
    if (!(density >= 0.0) || density > 1.0) {
        throw std::invalid_argument("edge density must lie in [0, 1]");
    }
    auto gen = [n, s, density, seed](std::int64_t t) {
        Digraph g(n);
        if (t % s == 0) {
            const int offset = static_cast<int>((t / s) % n);
            for (int k = 0; k < n; ++k) {
                const int u = (offset + k) % n;
                g.add_edge(u, (u + 1) % n);
            }
            return g;
        }
        std::mt19937_64 rng(splitmix64(seed ^ static_cast<std::uint64_t>(t)));
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v) {
                if (u == v) continue;
                if (u01(rng) < density) g.add_edge(u, v);
            }
        }
        return g;
    };
    return GraphSchedule(n, s, gen);
}

// Line-oriented edge-list format: one "t src dst" triple per line.
inline void write_edge_list(std::ostream& os, const GraphSchedule& sched, std::int64_t horizon) {
    for (std::int64_t t = 0; t < horizon; ++t) {
        const Digraph g = sched.graph_at(t);
        for (const auto& [u, v] : g.edges()) {
            os << t << ' ' << u << ' ' << v << '\n';
        }
    }
}

// Reads the format written above. Node count is inferred from the largest
// node id; slots without any listed edge keep just their self-loops. The
// number of slots (max t + 1) is reported through horizon_out when given.
inline GraphSchedule read_edge_list(std::istream& is, int s, std::int64_t* horizon_out = nullptr) {
    struct Triple {
        std::int64_t t;
        int u, v;
    };
    std::vector<Triple> triples;
    std::int64_t max_t = -1;
    int max_node = -1;
    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        Triple tr{};
        if (!(ls >> tr.t >> tr.u >> tr.v)) {
            throw std::runtime_error("bad edge line " + std::to_string(line_no) + ": '" + line + "'");
        }
        if (tr.t < 0 || tr.u < 0 || tr.v < 0) {
            throw std::runtime_error("negative value on edge line " + std::to_string(line_no));
        }
        max_t = std::max(max_t, tr.t);
        max_node = std::max({max_node, tr.u, tr.v});
        triples.push_back(tr);
    }
    if (triples.empty()) throw std::runtime_error("edge list is empty");
    if (horizon_out) *horizon_out = max_t + 1;
    const int n = max_node + 1;
    std::vector<Digraph> graphs(static_cast<std::size_t>(max_t + 1), Digraph(n));
    for (const auto& tr : triples) graphs[static_cast<std::size_t>(tr.t)].add_edge(tr.u, tr.v);
    return GraphSchedule::from_list(std::move(graphs), s);
}

}  // namespace pplay

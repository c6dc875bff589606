#pragma once

// One synchronous round of the perturbed push-sum protocol over a digraph.
// Each agent i keeps (w_i, y_i, a_hat_i, x_i) with y_i(0) = 1 and updates
//
//   w_i'     = sum_{j : j -> i} x_j / d_j        (d_j = out-degree of j)
//   y_i'     = sum_{j : j -> i} y_j / d_j
//   a_hat_i' = w_i' / y_i'
//   x_i'     = w_i' + e_i                        (caller-supplied perturbation)
//
// The mixing is column-stochastic, so sum_i y_i stays at N and
// sum_i w_i' equals sum_i x_i of the previous round.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "pplay/digraph.hpp"
#include "pplay/vec.hpp"

namespace pplay {

struct PushSumState {
    // one row per agent
    std::vector<std::vector<double>> w;
    std::vector<std::vector<double>> x;
    std::vector<std::vector<double>> a_hat;
    std::vector<double> y;

    static PushSumState from_initial(const std::vector<std::vector<double>>& x0) {
        if (x0.empty()) throw std::invalid_argument("push-sum needs at least one agent");
        const std::size_t d = x0.front().size();
        if (d == 0) throw std::invalid_argument("push-sum state dimension must be >= 1");
        for (const auto& v : x0) {
            if (v.size() != d) throw std::invalid_argument("push-sum initial vectors must share a dimension");
            if (!all_finite(v)) throw std::invalid_argument("push-sum initial vectors must be finite");
        }
        PushSumState s;
        s.w = x0;
        s.x = x0;
        s.a_hat = x0;
        s.y.assign(x0.size(), 1.0);
        return s;
    }

    int agent_count() const { return static_cast<int>(x.size()); }
    int dim() const { return x.empty() ? 0 : static_cast<int>(x.front().size()); }

    std::vector<double> x_average() const { return mean_vector(x); }
};

namespace detail {

inline void check_round_inputs(const PushSumState& s, const Digraph& g) {
    if (g.node_count() != s.agent_count()) {
        throw std::invalid_argument("push-sum state and graph disagree on agent count");
    }
    for (double yi : s.y) {
        if (!(yi > 0.0)) throw std::invalid_argument("push-sum weights must stay positive");
    }
    for (int u = 0; u < g.node_count(); ++u) {
        if (g.out_degree(u) < 1) throw std::invalid_argument("push-sum requires positive out-degrees");
    }
}

}  // namespace detail

// Protocol round with zero perturbation: mixing only, x' = w'.
inline PushSumState push_sum_mix(const PushSumState& s, const Digraph& g) {
    detail::check_round_inputs(s, g);
    const int n = s.agent_count();
    const std::size_t d = static_cast<std::size_t>(s.dim());
    PushSumState out;
    out.w.assign(static_cast<std::size_t>(n), std::vector<double>(d, 0.0));
    out.y.assign(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        const double inv_deg = 1.0 / static_cast<double>(g.out_degree(j));
        const auto& xj = s.x[static_cast<std::size_t>(j)];
        const double yj = s.y[static_cast<std::size_t>(j)] * inv_deg;
        for (int i : g.out_neighbors(j)) {
            auto& wi = out.w[static_cast<std::size_t>(i)];
            for (std::size_t k = 0; k < d; ++k) wi[k] += xj[k] * inv_deg;
            out.y[static_cast<std::size_t>(i)] += yj;
        }
    }
    out.a_hat.assign(static_cast<std::size_t>(n), std::vector<double>(d, 0.0));
    for (int i = 0; i < n; ++i) {
        const double inv_y = 1.0 / out.y[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < d; ++k) {
            out.a_hat[static_cast<std::size_t>(i)][k] = out.w[static_cast<std::size_t>(i)][k] * inv_y;
        }
    }
    out.x = out.w;
    return out;
}

// Full round: mixing followed by x_i' = w_i' + e_i.
inline PushSumState push_sum_round(const PushSumState& s, const Digraph& g,
                                   const std::vector<std::vector<double>>& perturbations) {
    if (perturbations.size() != static_cast<std::size_t>(s.agent_count())) {
        throw std::invalid_argument("one perturbation vector per agent is required");
    }
    PushSumState out = push_sum_mix(s, g);
    const std::size_t d = static_cast<std::size_t>(s.dim());
    for (std::size_t i = 0; i < perturbations.size(); ++i) {
        if (perturbations[i].size() != d) {
            throw std::invalid_argument("perturbation dimension mismatch");
        }
        for (std::size_t k = 0; k < d; ++k) out.x[i][k] += perturbations[i][k];
    }
    return out;
}

// ||a_hat_i - xbar|| per agent against an explicit reference average.
inline std::vector<double> consensus_errors(const PushSumState& s, std::span<const double> xbar) {
    std::vector<double> errs(static_cast<std::size_t>(s.agent_count()));
    for (std::size_t i = 0; i < errs.size(); ++i) errs[i] = l2_distance(s.a_hat[i], xbar);
    return errs;
}

// Same, against the average of the state's own x vectors.
inline std::vector<double> consensus_errors(const PushSumState& s) {
    const auto xbar = s.x_average();
    return consensus_errors(s, xbar);
}

inline double max_consensus_error(const PushSumState& s, std::span<const double> xbar) {
    double m = 0.0;
    for (double e : consensus_errors(s, xbar)) m = std::max(m, e);
    return m;
}

// Worst-case mixing constants for an N-agent, window-S schedule:
// delta = N^(-N*S) and lambda = (1 - N^(-N*S))^(1/S). Computed in log
// space; when delta underflows it is clamped to the smallest positive
// double, which is still a valid (even smaller) choice.
struct MixingBound {
    double delta = 1.0;
    double lambda = 0.5;

    MixingBound(double d, double l) : delta(d), lambda(l) {
        if (!(delta > 0.0)) throw std::invalid_argument("mixing delta must be > 0");
        if (!(lambda > 0.0) || !(lambda < 1.0)) throw std::invalid_argument("mixing lambda must lie in (0, 1)");
    }

    static MixingBound worst_case(int n, int s) {
        if (n < 1 || s < 1) throw std::invalid_argument("mixing bound needs n >= 1 and s >= 1");
        if (n == 1) return MixingBound(1.0, 0.5);  // single agent: error is identically zero
        const double log_pow = -static_cast<double>(n) * static_cast<double>(s) * std::log(static_cast<double>(n));
        double delta = std::exp(log_pow);
        if (delta <= 0.0) delta = std::numeric_limits<double>::denorm_min();
        double lambda = std::pow(1.0 - delta, 1.0 / static_cast<double>(s));
        if (lambda >= 1.0) lambda = std::nextafter(1.0, 0.0);
        return MixingBound(delta, lambda);
    }
};

// Right-hand side of the worst-case consensus-error inequality at time t:
//   (8/delta) * (lambda^t * sum_j ||x_j(0)||_1
//                + sum_{s=1..t} lambda^(t-s) * total_perturbation_l1(s))
// perturbation_l1[s-1] holds sum_j ||e_j(s)||_1; rounds beyond the recorded
// history count as unperturbed.
inline double consensus_error_bound(const MixingBound& bound, double initial_l1_sum,
                                    std::span<const double> perturbation_l1, std::int64_t t) {
    if (t < 0) throw std::invalid_argument("consensus_error_bound: t must be >= 0");
    if (initial_l1_sum < 0.0) throw std::invalid_argument("consensus_error_bound: negative l1 sum");
    double acc = 0.0;
    for (std::int64_t s = 1; s <= t; ++s) {
        const auto idx = static_cast<std::size_t>(s - 1);
        acc = acc * bound.lambda + (idx < perturbation_l1.size() ? perturbation_l1[idx] : 0.0);
    }
    const double decay = std::pow(bound.lambda, static_cast<double>(t));
    return (8.0 / bound.delta) * (decay * initial_l1_sum + acc);
}

// Least-squares slope of log(error) against t, reported as the implied
// per-round decay factor. Diagnostic only; zero entries are skipped.
inline double fit_decay_rate(std::span<const double> errors) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::int64_t m = 0;
    for (std::size_t t = 0; t < errors.size(); ++t) {
        if (!(errors[t] > 0.0)) continue;
        const double xv = static_cast<double>(t);
        const double yv = std::log(errors[t]);
        sx += xv;
        sy += yv;
        sxx += xv * xv;
        sxy += xv * yv;
        ++m;
    }
    if (m < 2) return 0.0;
    const double dm = static_cast<double>(m);
    const double denom = dm * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    const double slope = (dm * sxy - sx * sy) / denom;
    return std::exp(slope);
}

}  // namespace pplay

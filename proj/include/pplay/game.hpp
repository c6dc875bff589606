#pragma once

// Continuous-action potential games. A game exposes the potential phi,
// per-agent utilities U_i, and their analytic own-coordinate partials.
// For a proper potential game d(phi)/da_i == d(U_i)/da_i everywhere; the
// two are kept as separate entry points so that deliberately broken games
// can be expressed in tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pplay/rng.hpp"
#include "pplay/vec.hpp"

namespace pplay {

using JointAction = std::vector<double>;

class GameModel {
public:
    virtual ~GameModel() = default;

    int agent_count() const { return n_agents_; }

    double potential(const JointAction& a) const {
        check_action(a);
        return eval_potential(a);
    }

    double utility(int i, const JointAction& a) const {
        check_agent(i);
        check_action(a);
        return eval_utility(i, a);
    }

    // Analytic d(U_i)/da_i.
    double utility_partial(int i, const JointAction& a) const {
        check_agent(i);
        check_action(a);
        return eval_utility_partial(i, a);
    }

    // Analytic d(phi)/da_i. Defaults to the utility partial, which is the
    // defining identity of a potential game.
    double potential_partial(int i, const JointAction& a) const {
        check_agent(i);
        check_action(a);
        return eval_potential_partial(i, a);
    }

    std::vector<double> potential_gradient(const JointAction& a) const {
        check_action(a);
        std::vector<double> g(a.size());
        for (int i = 0; i < n_agents_; ++i) g[static_cast<std::size_t>(i)] = eval_potential_partial(i, a);
        return g;
    }

    void check_action(const JointAction& a) const {
        if (a.size() != static_cast<std::size_t>(n_agents_)) {
            throw std::invalid_argument("joint action has dimension " + std::to_string(a.size()) +
                                        ", game has " + std::to_string(n_agents_) + " agents");
        }
        if (!all_finite(a)) throw std::invalid_argument("joint action has non-finite entries");
    }

    void check_agent(int i) const {
        if (i < 0 || i >= n_agents_) {
            throw std::invalid_argument("agent index " + std::to_string(i) + " out of range [0, " +
                                        std::to_string(n_agents_) + ")");
        }
    }

protected:
    explicit GameModel(int n_agents) : n_agents_(n_agents) {
        if (n_agents < 1) throw std::invalid_argument("game needs at least one agent");
    }

private:
    virtual double eval_potential(const JointAction& a) const = 0;
    virtual double eval_utility(int i, const JointAction& a) const = 0;
    virtual double eval_utility_partial(int i, const JointAction& a) const = 0;
    virtual double eval_potential_partial(int i, const JointAction& a) const {
        return eval_utility_partial(i, a);
    }

    int n_agents_;
};

namespace detail {

// log(1 + e^x) without overflow.
inline double softplus(double x) {
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

inline double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// log(1 + sum_j exp(t_j)) via the usual max-shift.
inline double log1p_sum_exp(std::span<const double> t) {
    double m = 0.0;
    for (double v : t) m = std::max(m, v);
    double s = std::exp(-m);
    for (double v : t) s += std::exp(v - m);
    return m + std::log(s);
}

}  // namespace detail

// Flow-control profit game: N users pick flow intensities a_i; the shared
// profit is log(1 + sum_i h_i e^{a_i}) with per-user reward factors
// h_i in (0, 1], and each user pays the cost 3 log(1 + e^{a_i}) - a_i.
//
//   phi(a)  = log(1 + sum_j h_j e^{a_j}) - sum_i (3 log(1 + e^{a_i}) - a_i)
//   U_i(a)  = log(1 + h_i e^{a_i} / (1 + sum_{j!=i} h_j e^{a_j})) - cost_i
//   d(phi)/da_i = d(U_i)/da_i
//             = h_i e^{a_i} / (1 + sum_j h_j e^{a_j}) - 3 logistic(a_i) + 1
class FlowControlGame final : public GameModel {
public:
    explicit FlowControlGame(std::vector<double> rewards)
        : GameModel(static_cast<int>(rewards.size())), h_(std::move(rewards)) {
        for (double hi : h_) {
            if (!(hi > 0.0) || hi > 1.0 || !std::isfinite(hi)) {
                throw std::invalid_argument("flow-control reward factors must lie in (0, 1]");
            }
        }
    }

    const std::vector<double>& rewards() const { return h_; }

    // Reward factors drawn uniformly in (0, 1].
    static FlowControlGame random(int n, std::uint64_t seed) {
        if (n < 1) throw std::invalid_argument("flow-control game needs n >= 1");
        std::mt19937_64 rng(seed);
        std::vector<double> h(static_cast<std::size_t>(n));
        for (auto& v : h) v = u01_open_low(rng);
        return FlowControlGame(std::move(h));
    }

private:
    // Shifted exponents a_j + log h_j, the building block of every term.
    std::vector<double> shifted(const JointAction& a) const {
        std::vector<double> t(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) t[j] = a[j] + std::log(h_[j]);
        return t;
    }

    static double cost(double ai) { return 3.0 * detail::softplus(ai) - ai; }

    double eval_potential(const JointAction& a) const override {
        double v = detail::log1p_sum_exp(shifted(a));
        for (double ai : a) v -= cost(ai);
        return v;
    }

    double eval_utility(int i, const JointAction& a) const override {
        const auto t = shifted(a);
        std::vector<double> rest;
        rest.reserve(t.size());
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (j != static_cast<std::size_t>(i)) rest.push_back(t[j]);
        }
        const double log_full = detail::log1p_sum_exp(t);
        const double log_rest = detail::log1p_sum_exp(rest);
        return log_full - log_rest - cost(a[static_cast<std::size_t>(i)]);
    }

    double eval_utility_partial(int i, const JointAction& a) const override {
        const auto t = shifted(a);
        const double log_full = detail::log1p_sum_exp(t);
        const double share = std::exp(t[static_cast<std::size_t>(i)] - log_full);
        return share - 3.0 * detail::logistic(a[static_cast<std::size_t>(i)]) + 1.0;
    }

    std::vector<double> h_;
};

// phi(a) = -||a - c||^2 with identical utilities; the optimum is known in
// closed form, which makes it the reference game for learner tests.
class QuadraticGame final : public GameModel {
public:
    explicit QuadraticGame(std::vector<double> center)
        : GameModel(static_cast<int>(center.size())), c_(std::move(center)) {
        if (!all_finite(c_)) throw std::invalid_argument("quadratic game center must be finite");
    }

    const std::vector<double>& center() const { return c_; }

private:
    double eval_potential(const JointAction& a) const override {
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double d = a[k] - c_[k];
            s -= d * d;
        }
        return s;
    }
    double eval_utility(int, const JointAction& a) const override { return eval_potential(a); }
    double eval_utility_partial(int i, const JointAction& a) const override {
        return -2.0 * (a[static_cast<std::size_t>(i)] - c_[static_cast<std::size_t>(i)]);
    }

    std::vector<double> c_;
};

// Central difference of phi along coordinate i; the derivative oracle used
// to certify analytic partials.
inline double finite_diff_partial(const GameModel& game, int i, const JointAction& a, double step = 1e-6) {
    if (!(step > 0.0)) throw std::invalid_argument("finite_diff_partial: step must be > 0");
    game.check_agent(i);
    game.check_action(a);
    JointAction hi = a;
    JointAction lo = a;
    hi[static_cast<std::size_t>(i)] += step;
    lo[static_cast<std::size_t>(i)] -= step;
    return (game.potential(hi) - game.potential(lo)) / (2.0 * step);
}

struct IdentityReport {
    int samples = 0;
    double radius = 0.0;
    double fd_step = 0.0;
    // max over samples and coordinates of |dU_i/da_i - dphi/da_i|, both analytic
    double max_analytic_gap = 0.0;
    // max of |dU_i/da_i - central difference of phi|
    double max_fd_gap = 0.0;
};

// Samples the cube [-radius, radius]^N and reports the worst observed
// violation of the potential identity, analytic-vs-analytic and
// analytic-vs-finite-difference.
inline IdentityReport check_potential_identity(const GameModel& game, int samples, double radius,
                                               std::uint64_t seed, double fd_step = 1e-6) {
    if (samples < 1) throw std::invalid_argument("check_potential_identity: samples must be >= 1");
    if (!(radius > 0.0)) throw std::invalid_argument("check_potential_identity: radius must be > 0");
    IdentityReport rep;
    rep.samples = samples;
    rep.radius = radius;
    rep.fd_step = fd_step;
    std::mt19937_64 rng(seed);
    const int n = game.agent_count();
    JointAction a(static_cast<std::size_t>(n));
    for (int s = 0; s < samples; ++s) {
        for (auto& v : a) v = uniform_symmetric(rng, radius);
        for (int i = 0; i < n; ++i) {
            const double du = game.utility_partial(i, a);
            const double dphi = game.potential_partial(i, a);
            const double dfd = finite_diff_partial(game, i, a, fd_step);
            rep.max_analytic_gap = std::max(rep.max_analytic_gap, std::abs(du - dphi));
            rep.max_fd_gap = std::max(rep.max_fd_gap, std::abs(du - dfd));
        }
    }
    return rep;
}

// Largest |dphi/da_i| seen over random samples in the cube.
inline double max_abs_partial_probe(const GameModel& game, int samples, double radius, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("max_abs_partial_probe: samples must be >= 1");
    if (!(radius > 0.0)) throw std::invalid_argument("max_abs_partial_probe: radius must be > 0");
    std::mt19937_64 rng(seed);
    const int n = game.agent_count();
    JointAction a(static_cast<std::size_t>(n));
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        for (auto& v : a) v = uniform_symmetric(rng, radius);
        for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(game.potential_partial(i, a)));
    }
    return worst;
}

namespace detail {

// Sample pairs for a Lipschitz ratio: even draws are independent points,
// odd draws perturb the previous point a little. The local pairs pick up
// the curvature maximum that far-apart pairs average away.
inline void draw_pair(std::mt19937_64& rng, double radius, int s, JointAction& x, JointAction& y) {
    if (s % 2 == 0) {
        for (auto& v : x) v = uniform_symmetric(rng, radius);
        for (auto& v : y) v = uniform_symmetric(rng, radius);
    } else {
        for (std::size_t k = 0; k < y.size(); ++k) {
            y[k] = x[k] + uniform_symmetric(rng, 1e-4 * radius);
        }
    }
}

}  // namespace detail

// Empirical coordinate-wise Lipschitz constant of the gradient:
// max over sample pairs of |dphi/da_i(x) - dphi/da_i(y)| / ||x - y||.
inline double coordinate_lipschitz_probe(const GameModel& game, int pairs, double radius, std::uint64_t seed) {
    if (pairs < 1) throw std::invalid_argument("coordinate_lipschitz_probe: pairs must be >= 1");
    if (!(radius > 0.0)) throw std::invalid_argument("coordinate_lipschitz_probe: radius must be > 0");
    std::mt19937_64 rng(seed);
    const int n = game.agent_count();
    JointAction x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    double worst = 0.0;
    for (int s = 0; s < pairs; ++s) {
        detail::draw_pair(rng, radius, s, x, y);
        const double dist = l2_distance(x, y);
        if (dist < 1e-12) continue;
        for (int i = 0; i < n; ++i) {
            const double d = std::abs(game.potential_partial(i, x) - game.potential_partial(i, y));
            worst = std::max(worst, d / dist);
        }
    }
    return worst;
}

// Same probe for the full gradient map.
inline double gradient_lipschitz_probe(const GameModel& game, int pairs, double radius, std::uint64_t seed) {
    if (pairs < 1) throw std::invalid_argument("gradient_lipschitz_probe: pairs must be >= 1");
    if (!(radius > 0.0)) throw std::invalid_argument("gradient_lipschitz_probe: radius must be > 0");
    std::mt19937_64 rng(seed);
    const int n = game.agent_count();
    JointAction x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    double worst = 0.0;
    for (int s = 0; s < pairs; ++s) {
        detail::draw_pair(rng, radius, s, x, y);
        const double dist = l2_distance(x, y);
        if (dist < 1e-12) continue;
        const auto gx = game.potential_gradient(x);
        const auto gy = game.potential_gradient(y);
        worst = std::max(worst, l2_distance(gx, gy) / dist);
    }
    return worst;
}

// Scans phi(t * u) on a grid and reports the smallest onset T0 after which
// the profile decreases monotonically up to t_max, if one exists.
inline std::optional<double> coercivity_onset(const GameModel& game, const std::vector<double>& direction,
                                              double t_max, int grid_points = 200) {
    if (grid_points < 2) throw std::invalid_argument("coercivity_onset: need at least 2 grid points");
    if (!(t_max > 0.0)) throw std::invalid_argument("coercivity_onset: t_max must be > 0");
    const double norm = l2_norm(direction);
    if (norm < 1e-12) throw std::invalid_argument("coercivity_onset: direction must be nonzero");
    const int n = game.agent_count();
    if (direction.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("coercivity_onset: direction dimension mismatch");
    }
    JointAction a(static_cast<std::size_t>(n));
    std::vector<double> values(static_cast<std::size_t>(grid_points));
    const double dt = t_max / (grid_points - 1);
    for (int k = 0; k < grid_points; ++k) {
        const double t = k * dt;
        for (std::size_t j = 0; j < a.size(); ++j) a[j] = t * direction[j] / norm;
        values[static_cast<std::size_t>(k)] = game.potential(a);
    }
    // last index after which the profile only decreases
    int onset = grid_points - 1;
    for (int k = grid_points - 2; k >= 0; --k) {
        if (values[static_cast<std::size_t>(k)] > values[static_cast<std::size_t>(k + 1)]) {
            onset = k;
        } else {
            break;
        }
    }
    if (onset == grid_points - 1) return std::nullopt;
    return onset * dt;
}

// max_i |U_i(a)| / (1 + ||a||) over far-out samples; finite for utilities
// with at most linear growth.
inline double utility_growth_probe(const GameModel& game, int samples, double radius, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("utility_growth_probe: samples must be >= 1");
    if (!(radius > 0.0)) throw std::invalid_argument("utility_growth_probe: radius must be > 0");
    std::mt19937_64 rng(seed);
    const int n = game.agent_count();
    JointAction a(static_cast<std::size_t>(n));
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        for (auto& v : a) v = uniform_symmetric(rng, radius);
        const double denom = 1.0 + l2_norm(a);
        for (int i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(game.utility(i, a)) / denom);
        }
    }
    return worst;
}

}  // namespace pplay

#pragma once

// Shared helpers for the test suites: known-answer and deliberately broken
// games, a bisection root finder used as an independent optimum oracle,
// and small sample-statistics utilities.

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pplay/game.hpp"

namespace pplay::testing {

// Wraps a proper potential game and adds +a_1 to U_1, so the potential
// identity is violated by exactly 1 in coordinate 0.
class CorruptedGame final : public GameModel {
public:
    explicit CorruptedGame(std::shared_ptr<const GameModel> base)
        : GameModel(base->agent_count()), base_(std::move(base)) {}

private:
    double eval_potential(const JointAction& a) const override { return base_->potential(a); }
    double eval_utility(int i, const JointAction& a) const override {
        double u = base_->utility(i, a);
        if (i == 0) u += a[0];
        return u;
    }
    double eval_utility_partial(int i, const JointAction& a) const override {
        double d = base_->utility_partial(i, a);
        if (i == 0) d += 1.0;
        return d;
    }
    double eval_potential_partial(int i, const JointAction& a) const override {
        return base_->potential_partial(i, a);
    }

    std::shared_ptr<const GameModel> base_;
};

// One agent, U(x) = phi(x) = x. Makes the payoff estimators exact in
// expectation: the smoothed gradient is 1 for every policy.
class LinearGame final : public GameModel {
public:
    LinearGame() : GameModel(1) {}

private:
    double eval_potential(const JointAction& a) const override { return a[0]; }
    double eval_utility(int, const JointAction& a) const override { return a[0]; }
    double eval_utility_partial(int, const JointAction&) const override { return 1.0; }
};

inline double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                          int iterations = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw std::invalid_argument("bisect_root: no sign change");
    for (int k = 0; k < iterations; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline double sample_mean(const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

inline double sample_variance(const std::vector<double>& xs) {
    const double m = sample_mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

inline double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median of empty sample");
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size() / 2;
    return xs.size() % 2 == 1 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

}  // namespace pplay::testing
